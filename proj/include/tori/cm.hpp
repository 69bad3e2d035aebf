#pragma once

#include "tori/contfrac.hpp"
#include "tori/core.hpp"

#include <optional>
#include <vector>

namespace tori::cm {

using contfrac::QuadraticIrrational;

/// Order Z[A*tau] in an imaginary quadratic field, classified by the
/// discriminant of tau's primitive minimal polynomial A x^2 + B x + C.
struct QuadraticOrder {
    Int discriminant;               // D = B^2 - 4AC < 0
    Int conductor;                  // f with D = f^2 * (fundamental discriminant)
    QuadraticIrrational generator;  // A*tau, an algebraic integer
    Int poly_a, poly_b, poly_c;     // primitive minimal polynomial of tau
    std::int64_t field_d;           // squarefree d < 0, K = Q(sqrt(d))
};

/// Modulus given exactly: an imaginary quadratic surd, or the "generic"
/// marker for a modulus with no quadratic relation.
struct ExactModulus {
    std::optional<QuadraticIrrational> tau;

    static ExactModulus generic() { return {}; }
    static ExactModulus from_surd(QuadraticIrrational t);

    bool is_generic() const noexcept { return !tau.has_value(); }
};

/// A non-rational element of the order, reported up to units and conjugation.
struct Multiplier {
    QuadraticIrrational alpha;
    Int norm;     // |alpha|^2, exact
    Int u, v;     // alpha = u + v * generator
};

// Trivial ring (rational integers only) is nullopt; CM moduli get their order.
std::optional<QuadraticOrder> endomorphism_ring(const ExactModulus& tau);

// Exact membership alpha * (Z + tau Z) inside Z + tau Z. Rational alpha are
// admitted (they act iff they are integers); irrational alpha must lie in
// tau's field.
bool is_endomorphism(const QuadraticIrrational& alpha, const ExactModulus& tau);

// All non-rational order elements with 1 < |alpha|^2 <= norm_bound, one
// canonical representative per unit-and-conjugation class (smallest v > 0,
// then smallest |u|, preferring u > 0).
std::vector<Multiplier> multiplier_candidates(const QuadraticOrder& order,
                                              long long norm_bound);

}  // namespace tori::cm
