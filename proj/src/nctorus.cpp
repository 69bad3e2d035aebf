#include "tori/nctorus.hpp"

#include <cmath>

namespace tori::nctorus {

StateScale::StateScale(double w) : omega(w) {
    if (!(w > 0)) throw Error("invalid_argument", "state scale must be positive");
}

FFamily FFamily::standard() { return {}; }

FFamily FFamily::geometric(double rho) {
    if (!(rho > 0)) throw Error("invalid_argument", "geometric family needs rho > 0");
    return {true, rho};
}

double FFamily::eval(std::size_t n, double omega) const {
    if (!is_geometric) return omega;
    return omega * std::pow(rho, static_cast<double>(n));
}

NcTorus::NcTorus(QuadraticIrrational theta)
    : surd_(std::move(theta)), cf_(contfrac::expand_surd(*surd_)) {
    if (surd_->d() < 0) throw Error("invalid_argument", "Rieffel parameter must be real");
}

NcTorus::NcTorus(double theta, std::size_t depth)
    : cf_(contfrac::expand_real(theta, depth)) {
    // A floating expansion that stops before the cap looked rational.
    std::size_t got = cf_.available();
    if (got < std::min<std::size_t>(depth, 15))
        throw Error("not_irrational", "floating theta terminated its expansion early");
}

NcTorus NcTorus::from_cf(ContinuedFraction cf) {
    NcTorus t;
    t.cf_ = std::move(cf);
    return t;
}

double NcTorus::theta() const {
    if (surd_) return surd_->value();
    return cf_.evaluate();
}

namespace {

// x = B_nu * tail_nu with B_nu the convergent frame at the first index where
// both streams have entered their matching tails. For periodic cfs that is
// the head boundary; for floating prefixes it is the verified match zone.
UnimodularMatrix bridge_matrix(const NcTorus& t1, const NcTorus& t2, long long k,
                               bool exact) {
    long long m;
    if (exact) {
        long long h1 = static_cast<long long>(t1.cf().head_size());
        long long h2 = static_cast<long long>(t2.cf().head_size());
        m = std::max<long long>({h2, h1 - k, 1});
    } else {
        m = std::max<long long>(1, 1 - k);
    }
    auto b2 = contfrac::convergent_frame(t2.cf(), static_cast<std::size_t>(m));
    auto b1 = contfrac::convergent_frame(t1.cf(), static_cast<std::size_t>(m + k));
    return b2 * b1.inverse();
}

}  // namespace

std::optional<MoritaWitness> morita_equivalent(const NcTorus& t1, const NcTorus& t2,
                                               const contfrac::TailCompareOptions& opts) {
    auto shift = contfrac::tail_equivalent(t1.cf(), t2.cf(), opts);
    if (!shift) return std::nullopt;
    UnimodularMatrix w = bridge_matrix(t1, t2, shift->shift, shift->exact);
    return MoritaWitness{shift->shift, std::move(w), shift->exact};
}

UnimodularMatrix dimension_group_step(const NcTorus& t, std::size_t n) {
    return contfrac::an_matrices(t.cf(), n).back();
}

std::vector<double> v_map(const NcTorus& t, const StateScale& s, std::size_t n,
                          const FFamily& family) {
    auto mats = contfrac::an_matrices(t.cf(), n);
    std::vector<double> out;
    out.reserve(mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        Int tr = mats[k].trace();
        if (tr <= 0) throw Error("invalid_argument", "non-positive trace in the matrix sequence");
        out.push_back(family.eval(k, s.omega) * log_big(tr));
    }
    return out;
}

StateScale scale_action(const StateScale& s, const UnimodularMatrix& m, const NcTorus& t) {
    double factor = std::abs(to_double(m.c) * t.theta() + to_double(m.d));
    if (factor == 0.0) throw Error("degenerate_mobius", "c theta + d vanishes");
    return StateScale(s.omega * factor);
}

}  // namespace tori::nctorus
