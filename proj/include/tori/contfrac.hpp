#pragma once

#include "tori/core.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tori::contfrac {

/// Exact number (p + q*sqrt(d))/r with integer p, q and r > 0, d squarefree.
///
/// Construction normalizes: the square part of d is folded into q, signs are
/// arranged so r > 0, and gcd(p, q, r) = 1. The public constructor rejects
/// values that normalize to a rational (q = 0); cm-style field arithmetic
/// that legitimately passes through rationals uses from_parts().
class QuadraticIrrational {
public:
    QuadraticIrrational(Int p, Int q, Int r, std::int64_t d);

    // Permissive factory: same normalization, rationals allowed (q may
    // become 0, in which case d is canonicalized to 1).
    static QuadraticIrrational from_parts(Int p, Int q, Int r, std::int64_t d);

    // Embeds num/den into Q(sqrt(d)).
    static QuadraticIrrational rational(Int num, Int den);

    const Int& p() const noexcept { return p_; }
    const Int& q() const noexcept { return q_; }
    const Int& r() const noexcept { return r_; }
    std::int64_t d() const noexcept { return d_; }

    bool is_irrational() const noexcept { return q_ != 0; }
    bool is_imaginary() const noexcept { return q_ != 0 && d_ < 0; }

    double value() const;                  // real values only
    std::complex<double> complex_value() const;

    QuadraticIrrational conjugate() const; // sqrt(d) -> -sqrt(d)
    Rational norm() const;                 // value * conjugate
    Rational trace_rational() const;       // value + conjugate

    QuadraticIrrational operator-() const;
    QuadraticIrrational operator+(const QuadraticIrrational& o) const;
    QuadraticIrrational operator-(const QuadraticIrrational& o) const;
    QuadraticIrrational operator*(const QuadraticIrrational& o) const;
    QuadraticIrrational inverse() const;
    QuadraticIrrational operator/(const QuadraticIrrational& o) const;

    bool operator==(const QuadraticIrrational& o) const = default;

private:
    QuadraticIrrational() = default;
    void normalize();

    Int p_{0}, q_{0}, r_{1};
    std::int64_t d_{1};
};

/// 2x2 integer matrix with determinant +1 or -1.
struct UnimodularMatrix {
    Int a, b, c, d;

    UnimodularMatrix(Int a_, Int b_, Int c_, Int d_);

    static UnimodularMatrix identity() { return {1, 0, 0, 1}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    UnimodularMatrix inverse() const;

    // Fractional-linear action on complex numbers (floating).
    std::complex<double> apply(std::complex<double> z) const;
    double apply(double x) const;

    bool operator==(const UnimodularMatrix& o) const = default;
};

/// Regular continued fraction [a0; a1, a2, ...]: finite, or eventually
/// periodic with an explicit preperiod and period. Tail and period entries
/// are >= 1. Periodic instances are kept canonical: primitive (shortest)
/// period, preperiod as short as possible.
class ContinuedFraction {
public:
    struct Periodicity {
        std::size_t preperiod_len = 0;   // number of tail entries before the period
        std::vector<Int> period;
        bool operator==(const Periodicity&) const = default;
    };

    ContinuedFraction() = default;       // [0]

    static ContinuedFraction finite(Int a0, std::vector<Int> tail);
    static ContinuedFraction periodic(Int a0, std::vector<Int> tail,
                                      std::vector<Int> period);

    const Int& a0() const noexcept { return a0_; }
    const std::vector<Int>& tail() const noexcept { return tail_; }
    const std::optional<Periodicity>& periodicity() const noexcept { return periodicity_; }

    bool is_periodic() const noexcept { return periodicity_.has_value(); }

    // Quotients available without unrolling a period; SIZE_MAX when periodic.
    std::size_t available() const noexcept;

    // a_i, unrolling the period as needed. Throws for finite cfs past the end.
    Int quotient(std::size_t i) const;

    // First count quotients as a flat list.
    std::vector<Int> prefix(std::size_t count) const;

    // Number of quotients before the periodic part starts (a0 included);
    // equals the total count for finite cfs.
    std::size_t head_size() const noexcept { return 1 + (periodicity_ ? periodicity_->preperiod_len : tail_.size()); }

    double evaluate(std::size_t max_quotients = 64) const;

    bool operator==(const ContinuedFraction& o) const = default;

private:
    void canonicalize();

    Int a0_{0};
    std::vector<Int> tail_;
    std::optional<Periodicity> periodicity_;
};

/// Convergent p/q with the seeds p_{-1}/q_{-1} = 0/1 and p_0/q_0 = 1/0.
struct Convergent {
    Int p, q;
    long long nu;

    bool operator==(const Convergent&) const = default;
};

struct QuotientEstimate {
    long long value;   // rounded, clamped to >= 1
    double raw;        // pre-rounding estimate
    bool flagged;      // raw farther than 0.25 from the nearest integer
};

struct KleinWitness {
    bool holds;
    std::pair<Int, Int> segment_i;  // (p_nu - p_{nu-2}, q_nu - q_{nu-2})
    std::pair<Int, Int> segment_j;  // (p_{nu-1}, q_{nu-1})
    Int mu;
};

struct TailShift {
    long long shift;   // k with a_{m+k} = b_m for all large m
    bool exact;        // false when decided from floating prefixes
};

struct TailCompareOptions {
    std::size_t depth = 40;      // quotients compared in heuristic mode
    long long max_shift = 10;
    std::size_t min_overlap = 4; // heuristic verdicts need this much agreement
};

// Floor/reciprocal expansion of a real number; at most n quotients, stopping
// early when the fractional part drops below eps (rational detection).
// Doubles lose about a digit per quotient, so the expansion is capped at 15
// quotients regardless of n.
ContinuedFraction expand_real(double x, std::size_t n, double eps = 1e-10);

// Exact expansion of a real quadratic irrational; always eventually periodic.
ContinuedFraction expand_surd(const QuadraticIrrational& x);

// Evaluates a periodic cf back to its exact value (fixed point of the period
// matrix, then the preperiod applied as a Mobius map). field_hint pins the
// squarefree d of the result when the caller knows it; otherwise a bounded
// scan recovers it.
QuadraticIrrational reconstruct_value(const ContinuedFraction& cf,
                                      std::optional<std::int64_t> field_hint = std::nullopt);

// Convergents for nu = -1 .. n.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n);

// [[p_nu, p_{nu-1}], [q_nu, q_{nu-1}]]; the matrix B with x = B * tail_nu.
UnimodularMatrix convergent_frame(const ContinuedFraction& cf, std::size_t nu);

// A_i = [[a_0,1],[1,0]] ... [[a_i,1],[1,0]] for i = 0 .. n. Requires a0 >= 1.
std::vector<UnimodularMatrix> an_matrices(const ContinuedFraction& cf, std::size_t n);

// Exact check of (p_nu - p_{nu-2}, q_nu - q_{nu-2}) = mu_nu (p_{nu-1}, q_{nu-1}).
KleinWitness klein_check(const ContinuedFraction& cf, std::size_t nu);

// lengths[i] = |omega_{i+1}|, quotients[i] = mu_{i+1}; returns
// |omega_nu| - (|omega_{nu-2}| + mu_nu |omega_{nu-1}|) for nu >= 3.
double length_recurrence_residual(std::span<const double> lengths,
                                  std::span<const Int> quotients,
                                  std::size_t nu);

// Inverts the length recurrence: estimates mu_3, mu_4, ... from a strictly
// increasing length sequence.
std::vector<QuotientEstimate> quotients_from_lengths(std::span<const double> lengths);

// |omega_{nu+N}| / |omega_nu| under the same 1-based indexing.
double window_ratio(std::span<const double> lengths, std::size_t nu, std::size_t N);

// Shifted-tail equality. Exact and complete when both cfs are periodic;
// prefix-based otherwise (the last quotient of each prefix is ignored as
// untrustworthy, and verdicts are flagged non-exact).
std::optional<TailShift> tail_equivalent(const ContinuedFraction& cf1,
                                         const ContinuedFraction& cf2,
                                         const TailCompareOptions& opts = {});

// Exact (a x + b)/(c x + d) in Q(sqrt(d)).
QuadraticIrrational mobius_apply(const UnimodularMatrix& m, const QuadraticIrrational& x);

}  // namespace tori::contfrac
