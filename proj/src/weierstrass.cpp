#include "tori/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tori::weierstrass {

namespace {

constexpr double kPi = std::numbers::pi;

struct ReducedBasis {
    Complex omega1;  // L = omega1 (Z + tau Z)
    Complex tau;     // in the fundamental domain
    Complex q;       // e^{2 pi i tau}, |q| <= e^{-pi sqrt(3)}
};

ReducedBasis reduce_basis(const Lattice& L) {
    Complex w1 = L.omega1, w2 = L.omega2;
    if (std::imag(w2 / w1) < 0) std::swap(w1, w2);
    lattice::ReduceResult red = lattice::reduce(lattice::Modulus(w2 / w1));
    const auto& m = red.matrix;
    Complex w1p = to_double(m.c) * w2 + to_double(m.d) * w1;
    Complex tau = red.reduced.tau;
    return {w1p, tau, std::exp(Complex(0, 2 * kPi) * tau)};
}

long long divisor_power_sum(int e, long long n) {
    long long s = 0;
    for (long long d = 1; d <= n; ++d) {
        if (n % d) continue;
        long long t = 1;
        for (int i = 0; i < e; ++i) t *= d;
        s += t;
    }
    return s;
}

// E_{2k} normalized q-series; weight is 2k in {2, 4, 6}.
Complex eisenstein_series_E(int weight, Complex q) {
    double coef = weight == 2 ? -24.0 : (weight == 4 ? 240.0 : -504.0);
    Complex acc = 1.0;
    Complex qn = 1.0;
    for (long long n = 1; n <= 64; ++n) {
        qn *= q;
        Complex term = coef * static_cast<double>(divisor_power_sum(weight - 1, n)) * qn;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc) && n >= 8) return acc;
    }
    return acc;
}

Complex pow_int(Complex b, int e) {
    Complex acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= b;
    return acc;
}

}  // namespace

Complex eisenstein_direct(const Lattice& L, int k, long long box) {
    if (k < 2) throw Error("invalid_argument", "Eisenstein weight requires k >= 2");
    if (box < 1) throw Error("invalid_argument", "box must be positive");
    Complex acc = 0;
    for (long long m = -box; m <= box; ++m) {
        for (long long n = -box; n <= box; ++n) {
            if (m == 0 && n == 0) continue;
            Complex w = static_cast<double>(m) * L.omega1 + static_cast<double>(n) * L.omega2;
            acc += 1.0 / pow_int(w * w, k);
        }
    }
    return acc;
}

Complex eisenstein(const Lattice& L, int k, long long box) {
    if (k < 2) throw Error("invalid_argument", "Eisenstein weight requires k >= 2");
    if (box < 8) throw Error("invalid_argument", "box must be at least 8");

    if (k <= 3) {
        ReducedBasis rb = reduce_basis(L);
        // zeta(4) = pi^4/90, zeta(6) = pi^6/945.
        double zeta2k = k == 2 ? std::pow(kPi, 4) / 90.0 : std::pow(kPi, 6) / 945.0;
        Complex e = eisenstein_series_E(2 * k, rb.q);
        return 2.0 * zeta2k * e / pow_int(rb.omega1 * rb.omega1, k);
    }

    Complex coarse = eisenstein_direct(L, k, box);
    Complex fine = eisenstein_direct(L, k, 2 * box);
    double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) > 1e-8 * scale)
        throw Error("convergence_failure",
                    "box-doubling certificate failed; raise the box");
    return fine;
}

CubicCurve cubic_of_lattice(const Lattice& L, long long box) {
    Complex g4 = eisenstein(L, 2, box);
    Complex g6 = eisenstein(L, 3, box);
    Complex a = -15.0 * g4;
    Complex b = -35.0 * g6;
    double disc = std::abs(4.0 * a * a * a + 27.0 * b * b);
    double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return {a, b, disc < 1e-12 * scale * scale * scale};
}

namespace {

struct CellCoordinates {
    double x, y;       // z = x omega1 + y omega2, x and y in [-1/2, 1/2)
    Complex z_reduced;
};

CellCoordinates reduce_point(Complex z, Complex w1, Complex w2) {
    double det = std::real(w1) * std::imag(w2) - std::real(w2) * std::imag(w1);
    double x = (std::real(z) * std::imag(w2) - std::real(w2) * std::imag(z)) / det;
    double y = (std::real(w1) * std::imag(z) - std::real(z) * std::imag(w1)) / det;
    x -= std::floor(x + 0.5);
    y -= std::floor(y + 0.5);
    return {x, y, x * w1 + y * w2};
}

double lattice_distance(Complex z_reduced, Complex w1, Complex w2) {
    double best = std::abs(z_reduced);
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::abs(z_reduced - (static_cast<double>(i) * w1 +
                                                        static_cast<double>(j) * w2)));
        }
    }
    return best;
}

}  // namespace

WpValue wp(Complex z, const Lattice& L, long long box) {
    if (box < 8) throw Error("invalid_argument", "box must be at least 8");
    ReducedBasis rb = reduce_basis(L);
    Complex w2 = rb.omega1 * rb.tau;
    CellCoordinates cc = reduce_point(z, rb.omega1, w2);
    if (lattice_distance(cc.z_reduced, rb.omega1, w2) < 1e-6)
        throw Error("pole_proximity", "z is within 1e-6 of a lattice point");

    // zeta = z/omega1 reduced into the cell; u = e^{2 pi i zeta} satisfies
    // |q|^{1/2} <= |u| <= |q|^{-1/2}, where both series converge geometrically.
    Complex zeta = Complex(cc.x, 0) + Complex(cc.y, 0) * rb.tau;
    Complex u = std::exp(Complex(0, 2 * kPi) * zeta);
    const Complex q = rb.q;

    Complex sp = 1.0 / 12.0 + u / ((1.0 - u) * (1.0 - u));
    Complex spp = u * (1.0 + u) / pow_int(1.0 - u, 3);
    bool converged = false;
    Complex qn = 1.0;
    for (int n = 1; n <= 512; ++n) {
        qn *= q;
        Complex qu = qn * u;
        Complex qiu = qn / u;
        Complex tp = qu / pow_int(1.0 - qu, 2) + qiu / pow_int(1.0 - qiu, 2) -
                     2.0 * qn / pow_int(1.0 - qn, 2);
        sp += tp;

        Complex wneg = u / qn;  // q^{-n} u
        Complex tpp = qu * (1.0 + qu) / pow_int(1.0 - qu, 3);
        if (std::abs(wneg) < 1e100)
            tpp += wneg * (1.0 + wneg) / pow_int(1.0 - wneg, 3);
        spp += tpp;

        if (n >= 8 && std::abs(tp) < 1e-17 * (1.0 + std::abs(sp)) &&
            std::abs(tpp) < 1e-17 * (1.0 + std::abs(spp))) {
            converged = true;
            break;
        }
    }
    if (!converged) throw Error("convergence_failure", "q-series did not converge");

    const Complex two_pi_i(0, 2 * kPi);
    Complex p = two_pi_i * two_pi_i * sp / (rb.omega1 * rb.omega1);
    Complex p_prime = two_pi_i * two_pi_i * two_pi_i * spp / pow_int(rb.omega1, 3);
    return {p, 0.5 * p_prime};
}

Complex wp_direct(Complex z, const Lattice& L, long long box) {
    if (box < 1) throw Error("invalid_argument", "box must be positive");
    Complex acc = 1.0 / (z * z);
    for (long long m = -box; m <= box; ++m) {
        for (long long n = -box; n <= box; ++n) {
            if (m == 0 && n == 0) continue;
            Complex w = static_cast<double>(m) * L.omega1 + static_cast<double>(n) * L.omega2;
            acc += 1.0 / ((z + w) * (z + w)) - 1.0 / (w * w);
        }
    }
    return acc;
}

}  // namespace tori::weierstrass
