#pragma once

#include "tori/contfrac.hpp"
#include "tori/core.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace tori::nctorus {

using contfrac::ContinuedFraction;
using contfrac::QuadraticIrrational;
using contfrac::UnimodularMatrix;

/// Norm of a positive functional; every positive functional on the torus is
/// omega times the unique tracial state.
struct StateScale {
    double omega;

    explicit StateScale(double w);
};

/// Monotone scaling family f_n(omega) applied to the ln tr A_n sequence.
/// The default keeps f_n(omega) = omega for every n; the geometric family
/// multiplies by rho^n and exists as a configuration hook.
struct FFamily {
    static FFamily standard();
    static FFamily geometric(double rho);

    double eval(std::size_t n, double omega) const;

    bool is_geometric = false;
    double rho = 1.0;
};

/// Noncommutative torus carried purely by its Rieffel parameter and its
/// cached continued fraction. Exact when built from a quadratic surd.
class NcTorus {
public:
    // Exact path; theta must be a real irrational surd.
    explicit NcTorus(QuadraticIrrational theta);

    // Floating path: the expansion depth is capped by expand_real and the
    // result is flagged heuristic everywhere. Values that terminate within
    // the cap are rejected as (numerically) rational.
    explicit NcTorus(double theta, std::size_t depth = 40);

    // Wraps an externally extracted quotient stream (correspondence output).
    static NcTorus from_cf(ContinuedFraction cf);

    bool exact() const noexcept { return surd_.has_value(); }
    const std::optional<QuadraticIrrational>& surd() const noexcept { return surd_; }
    const ContinuedFraction& cf() const noexcept { return cf_; }
    double theta() const;

private:
    NcTorus() = default;

    std::optional<QuadraticIrrational> surd_;
    ContinuedFraction cf_;
};

struct MoritaWitness {
    long long shift;
    UnimodularMatrix matrix;  // theta2 = matrix * theta1
    bool exact;
};

// Theorem-3 style equivalence through shifted tails; witness matrix built
// from the convergent frames bridging the tails.
std::optional<MoritaWitness> morita_equivalent(const NcTorus& t1, const NcTorus& t2,
                                               const contfrac::TailCompareOptions& opts = {});

// phi_n = A_n, the n-th composition of isometry factors.
UnimodularMatrix dimension_group_step(const NcTorus& t, std::size_t n);

// { f_k(omega) ln tr A_k } for k = 0..n.
std::vector<double> v_map(const NcTorus& t, const StateScale& s, std::size_t n,
                          const FFamily& family = FFamily::standard());

// omega' = omega * |c theta + d|, the automorphy-factor realization of the
// discrete action on state scales.
StateScale scale_action(const StateScale& s, const UnimodularMatrix& m, const NcTorus& t);

}  // namespace tori::nctorus
