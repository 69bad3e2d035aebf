#include "tori/cm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tori::cm {

ExactModulus ExactModulus::from_surd(QuadraticIrrational t) {
    if (!t.is_irrational()) throw Error("not_irrational", "modulus must be irrational");
    if (t.d() > 0) throw Error("real_quadratic", "a torus modulus must be imaginary quadratic");
    if (t.q() <= 0) throw Error("lower_half_plane", "modulus must have positive imaginary part");
    ExactModulus m;
    m.tau = std::move(t);
    return m;
}

std::optional<QuadraticOrder> endomorphism_ring(const ExactModulus& mod) {
    if (mod.is_generic()) return std::nullopt;
    const QuadraticIrrational& tau = *mod.tau;
    if (tau.d() > 0) throw Error("real_quadratic", "a torus modulus must be imaginary quadratic");

    // tau = (p + q sqrt(d))/r satisfies r^2 x^2 - 2pr x + (p^2 - q^2 d) = 0.
    Int A = tau.r() * tau.r();
    Int B = -2 * tau.p() * tau.r();
    Int C = tau.p() * tau.p() - tau.q() * tau.q() * Int(tau.d());
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(boost::multiprecision::abs(A),
                                                                  boost::multiprecision::abs(B)),
                                       boost::multiprecision::abs(C));
    A /= g;
    B /= g;
    C /= g;

    Int D = B * B - 4 * A * C;
    std::int64_t d = tau.d();
    Int fundamental = (((d % 4) + 4) % 4 == 1) ? Int(d) : Int(4 * d);
    Int ratio = D / fundamental;
    if (D % fundamental != 0 || !is_perfect_square(ratio))
        throw Error("internal", "discriminant is not a square multiple of the fundamental one");
    Int conductor = isqrt(ratio);

    QuadraticIrrational generator = QuadraticIrrational::from_parts(
        A * tau.p(), A * tau.q(), tau.r(), tau.d());

    return QuadraticOrder{std::move(D), std::move(conductor), std::move(generator),
                          std::move(A), std::move(B), std::move(C), d};
}

namespace {

// alpha = x + y tau with x, y rational; integral iff both denominators are 1.
struct Decomposition {
    Rational x, y;
    bool integral() const {
        return boost::multiprecision::denominator(x) == 1 &&
               boost::multiprecision::denominator(y) == 1;
    }
};

Decomposition decompose(const QuadraticIrrational& alpha, const QuadraticIrrational& tau) {
    // Surd parts: y * (tau.q/tau.r) = alpha.q/alpha.r.
    Rational y(alpha.q() * tau.r(), alpha.r() * tau.q());
    Rational x = Rational(alpha.p(), alpha.r()) - y * Rational(tau.p(), tau.r());
    return {std::move(x), std::move(y)};
}

}  // namespace

bool is_endomorphism(const QuadraticIrrational& alpha, const ExactModulus& mod) {
    if (mod.is_generic()) {
        // Lemma-8 dichotomy: only rational integers act on a generic modulus.
        return !alpha.is_irrational() && alpha.r() == 1;
    }
    const QuadraticIrrational& tau = *mod.tau;
    if (alpha.is_irrational() && alpha.d() != tau.d())
        throw Error("field_mismatch", "alpha lies in a different quadratic field");

    if (!decompose(alpha, tau).integral()) return false;
    return decompose(alpha * tau, tau).integral();
}

namespace {

struct Coord {
    long long u, v;
    auto operator<=>(const Coord&) const = default;
};

}  // namespace

std::vector<Multiplier> multiplier_candidates(const QuadraticOrder& order,
                                              long long norm_bound) {
    if (norm_bound < 0) throw Error("invalid_argument", "norm bound must be >= 0");
    std::vector<Multiplier> out;
    if (norm_bound < 2) return out;

    if (!fits_int64(order.poly_b) || !fits_int64(order.poly_a * order.poly_c) ||
        !fits_int64(order.discriminant))
        throw Error("resource_limit", "order data too large for candidate enumeration");
    const long long B = order.poly_b.convert_to<long long>();
    const long long AC = (order.poly_a * order.poly_c).convert_to<long long>();
    const long long absD = (-order.discriminant).convert_to<long long>();

    // N(u + v g) = u^2 - B u v + AC v^2 = (u - Bv/2)^2 + |D| v^2 / 4.
    auto norm_of = [&](long long u, long long v) { return u * u - B * u * v + AC * v * v; };
    auto conj_of = [&](Coord c) { return Coord{c.u - B * c.v, -c.v}; };
    auto mul = [&](Coord a, Coord b) {
        return Coord{a.u * b.u - AC * a.v * b.v, a.u * b.v + b.u * a.v - B * a.v * b.v};
    };

    // Units of this order: elements of norm 1 (|v| <= sqrt(4/|D|)).
    std::vector<Coord> units;
    const long long unit_vmax = static_cast<long long>(std::sqrt(4.0 / static_cast<double>(absD)));
    for (long long v = -unit_vmax; v <= unit_vmax; ++v) {
        long long span = static_cast<long long>(
            std::sqrt(std::max(0.0, 1.0 - static_cast<double>(absD * v * v) / 4.0)) + 1.0);
        long long center = (B * v) / 2;
        for (long long u = center - span - 1; u <= center + span + 1; ++u) {
            if (norm_of(u, v) == 1) units.push_back({u, v});
        }
    }

    auto canonical = [&](Coord c) -> std::optional<Coord> {
        std::optional<Coord> best;
        for (Coord base : {c, conj_of(c)}) {
            for (const Coord& e : units) {
                Coord m = mul(e, base);
                if (m.v == 0) return std::nullopt;  // class contains a rational
                if (m.v < 0) continue;
                if (!best || std::tuple(m.v, std::llabs(m.u), -m.u) <
                                 std::tuple(best->v, std::llabs(best->u), -best->u)) {
                    best = m;
                }
            }
        }
        return best;
    };

    std::set<Coord> seen;
    const long long vmax = static_cast<long long>(
        std::sqrt(4.0 * static_cast<double>(norm_bound) / static_cast<double>(absD)) + 1.0);
    for (long long v = 1; v <= vmax; ++v) {
        double disc_room = static_cast<double>(norm_bound) -
                           static_cast<double>(absD) * static_cast<double>(v * v) / 4.0;
        if (disc_room < 0) continue;
        long long span = static_cast<long long>(std::sqrt(disc_room) + 1.0);
        long long center = (B * v) / 2;
        for (long long u = center - span - 1; u <= center + span + 1; ++u) {
            long long n = norm_of(u, v);
            if (n <= 1 || n > norm_bound) continue;
            auto canon = canonical({u, v});
            if (!canon || !seen.insert(*canon).second) continue;

            // alpha = u + v g with g = (-B + w sqrt(d))/2.
            Int w2 = 2 * order.conductor;
            if ((((order.field_d % 4) + 4) % 4) == 1) w2 = order.conductor;
            QuadraticIrrational alpha = QuadraticIrrational::from_parts(
                2 * Int(canon->u) - Int(canon->v) * order.poly_b, Int(canon->v) * w2, 2,
                order.field_d);
            out.push_back({std::move(alpha), Int(norm_of(canon->u, canon->v)),
                           Int(canon->u), Int(canon->v)});
        }
    }

    std::sort(out.begin(), out.end(), [](const Multiplier& a, const Multiplier& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        if (a.v != b.v) return a.v < b.v;
        return a.u < b.u;
    });
    return out;
}

}  // namespace tori::cm
