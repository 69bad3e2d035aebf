#pragma once

#include "tori/contfrac.hpp"
#include "tori/core.hpp"

#include <complex>
#include <optional>

namespace tori::lattice {

using contfrac::UnimodularMatrix;
using Complex = std::complex<double>;

/// Rank-2 lattice omega1 Z + omega2 Z in the complex plane.
struct Lattice {
    Complex omega1, omega2;

    Lattice(Complex w1, Complex w2);

    // Oriented area of the basis cell, |Im(conj(omega1) omega2)|.
    double covolume() const;
};

/// Complex modulus tau = omega2/omega1 normalized into the upper half plane.
struct Modulus {
    Complex tau;

    explicit Modulus(Complex t);
};

struct ReduceResult {
    Modulus reduced;
    UnimodularMatrix matrix;  // det +1; reduced.tau = matrix * tau
};

/// Witness for Lemma-6 style equivalence. When conjugated is true the matrix
/// has det -1 and acts through tau -> (a conj(tau) + b)/(c conj(tau) + d).
struct IsomorphismWitness {
    UnimodularMatrix matrix;
    bool conjugated;

    Complex apply(Complex tau) const;
};

Modulus modulus(const Lattice& L);

// SL(2,Z) reduction into {-1/2 <= Re < 1/2, |tau| >= 1, Re <= 0 on |tau| = 1}.
ReduceResult reduce(const Modulus& m);

// GL(2,Z) equivalence of moduli: SL(2,Z) orbit, plus the det -1 branch via
// the orbit of -conj(tau).
std::optional<IsomorphismWitness> isomorphic(const Modulus& t1, const Modulus& t2,
                                             double tol = 1e-9);

// Basis change omega1' = a omega1 + b omega2, omega2' = c omega1 + d omega2.
Lattice apply_automorphism(const Lattice& L, const UnimodularMatrix& m);

}  // namespace tori::lattice
