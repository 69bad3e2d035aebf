#pragma once

#include "tori/core.hpp"
#include "tori/lattice.hpp"

#include <complex>

namespace tori::weierstrass {

using lattice::Complex;
using lattice::Lattice;

/// Curve y^2 = x^3 + a x + b attached to a lattice. Degeneracy
/// (4a^3 + 27b^2 = 0) is reported, not enforced.
struct CubicCurve {
    Complex a, b;
    bool degenerate;
};

struct WpValue {
    Complex p;             // Weierstrass p(z; L)
    Complex p_prime_half;  // (1/2) p'(z; L)
};

// G_k(L) = sum over nonzero lattice points of 1/omega^{2k}.
//
// For k = 2, 3 the series is evaluated through the exponentially convergent
// q-expansion on the reduced basis; a plain box truncation has O(box^-2)
// error and cannot reach the certified accuracy. For k >= 4 the direct sum
// itself converges fast enough and is used with a box-doubling certificate
// (relative 1e-8 between box and 2*box, else an error asks for a larger box).
Complex eisenstein(const Lattice& L, int k, long long box);

// Literal truncated lattice sum over |m|, |n| <= box; the independent oracle
// route for eisenstein, accurate only to its own truncation error.
Complex eisenstein_direct(const Lattice& L, int k, long long box);

// a = -15 G_4(L), b = -35 G_6(L).
CubicCurve cubic_of_lattice(const Lattice& L, long long box);

// p and p'/2, evaluated via the q-series on the reduced basis with z reduced
// into the centered fundamental cell. Rejects z within 1e-6 of a lattice
// point.
WpValue wp(Complex z, const Lattice& L, long long box);

// Literal truncated series for p (oracle route; O(box^-2) accuracy).
Complex wp_direct(Complex z, const Lattice& L, long long box);

}  // namespace tori::weierstrass
