#include "tori/lattice.hpp"

#include <cmath>

namespace tori::lattice {

Lattice::Lattice(Complex w1, Complex w2) : omega1(w1), omega2(w2) {
    if (std::abs(w1) == 0.0 || std::abs(w2) == 0.0)
        throw Error("collinear_basis", "basis vectors must be nonzero");
    if (std::imag(w2 / w1) == 0.0)
        throw Error("collinear_basis", "basis vectors are collinear over the reals");
}

double Lattice::covolume() const {
    return std::abs(std::imag(std::conj(omega1) * omega2));
}

Modulus::Modulus(Complex t) : tau(t) {
    if (!(std::imag(t) > 0.0))
        throw Error("lower_half_plane", "modulus must have positive imaginary part");
}

Modulus modulus(const Lattice& L) {
    Complex t = L.omega2 / L.omega1;
    if (std::imag(t) < 0) t = L.omega1 / L.omega2;  // swap basis orientation
    return Modulus(t);
}

ReduceResult reduce(const Modulus& m) {
    Complex tau = m.tau;
    UnimodularMatrix acc = UnimodularMatrix::identity();
    const UnimodularMatrix S(0, -1, 1, 0);

    constexpr int kMaxSteps = 10'000;
    for (int step = 0; step < kMaxSteps; ++step) {
        double n = std::round(std::real(tau));
        if (n != 0.0) {
            Int ni(static_cast<long long>(n));
            acc = UnimodularMatrix(1, -ni, 0, 1) * acc;
            tau -= n;
        }
        double abs2 = std::norm(tau);
        if (abs2 < 1.0) {
            acc = S * acc;
            tau = -1.0 / tau;
            continue;
        }
        // Boundary conventions: Re in [-1/2, 1/2), and Re <= 0 when |tau| = 1.
        if (std::real(tau) >= 0.5) {
            acc = UnimodularMatrix(1, -1, 0, 1) * acc;
            tau -= 1.0;
            continue;
        }
        if (abs2 == 1.0 && std::real(tau) > 0.0) {
            acc = S * acc;
            tau = -1.0 / tau;
            continue;
        }
        return {Modulus(tau), acc};
    }
    throw Error("convergence_failure", "fundamental-domain reduction did not terminate");
}

Complex IsomorphismWitness::apply(Complex tau) const {
    Complex z = conjugated ? std::conj(tau) : tau;
    return matrix.apply(z);
}

std::optional<IsomorphismWitness> isomorphic(const Modulus& t1, const Modulus& t2,
                                             double tol) {
    ReduceResult r1 = reduce(t1);
    ReduceResult r2 = reduce(t2);
    if (std::abs(r1.reduced.tau - r2.reduced.tau) <= tol) {
        // tau2 = M2^{-1} M1 tau1
        return IsomorphismWitness{r2.matrix.inverse() * r1.matrix, false};
    }
    // det -1 branch: compare against the mirror lattice -conj(tau1).
    Modulus mirror(-std::conj(t1.tau));
    ReduceResult rm = reduce(mirror);
    if (std::abs(rm.reduced.tau - r2.reduced.tau) <= tol) {
        // tau2 = M2^{-1} Mm (-conj tau1); fold the mirror into the matrix.
        UnimodularMatrix flip(-1, 0, 0, 1);
        return IsomorphismWitness{r2.matrix.inverse() * rm.matrix * flip, true};
    }
    return std::nullopt;
}

Lattice apply_automorphism(const Lattice& L, const UnimodularMatrix& m) {
    double a = to_double(m.a), b = to_double(m.b);
    double c = to_double(m.c), d = to_double(m.d);
    return Lattice(a * L.omega1 + b * L.omega2, c * L.omega1 + d * L.omega2);
}

}  // namespace tori::lattice
