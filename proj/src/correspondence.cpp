#include "tori/correspondence.hpp"

#include <algorithm>
#include <cmath>

namespace tori::correspondence {

namespace {

struct RawSpectrum {
    LengthSpectrum normalized;
    double raw_systole;
};

RawSpectrum w_map_raw(const Modulus& tau, double cutoff, Mode mode) {
    lattice::Lattice L(1.0, tau.tau);
    double probe = std::min(1.0, std::abs(tau.tau));
    LengthSpectrum first = spectrum::enumerate(L, probe, mode);
    double sys = spectrum::systole(first);
    LengthSpectrum raw = spectrum::enumerate(L, cutoff * sys, mode);
    return {spectrum::scale(raw, 1.0 / sys), sys};
}

std::optional<PeriodicHint> detect_periodic_hint(const std::vector<long long>& vals) {
    const std::size_t n = vals.size();
    for (std::size_t period = 1; period <= n / 2; ++period) {
        for (std::size_t pre = 0; pre + 2 * period <= n; ++pre) {
            bool ok = true;
            for (std::size_t i = pre; i + period < n && ok; ++i) {
                ok = vals[i] == vals[i + period];
            }
            if (ok) {
                return PeriodicHint{pre, {vals.begin() + static_cast<long>(pre),
                                          vals.begin() + static_cast<long>(pre + period)}};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

LengthSpectrum w_map(const Modulus& tau, double cutoff, Mode mode) {
    return w_map_raw(tau, cutoff, mode).normalized;
}

CurvatureResult curvature_extract(const LengthSpectrum& sp, std::size_t max_quotients) {
    std::vector<double> lengths = sp.distinct_lengths();
    if (lengths.size() < 4)
        throw Error("invalid_argument", "curvature extraction needs at least 4 distinct lengths");
    if (max_quotients < 4)
        throw Error("invalid_argument", "max_quotients must be at least 4");
    if (lengths.size() > max_quotients) lengths.resize(max_quotients);

    CurvatureResult res;
    res.omega = spectrum::systole(sp);

    // Seeds: mu_1 from l_1, mu_2 from l_2/l_1; the recurrence covers nu >= 3.
    auto push = [&res](std::size_t index, double raw) {
        long long value = std::llround(raw);
        bool flagged = std::abs(raw - static_cast<double>(value)) > 0.25;
        if (value < 1) {
            value = 1;
            flagged = true;
        }
        res.diagnostics.push_back(
            {index, value, raw, std::abs(raw - static_cast<double>(value)), flagged});
    };
    push(1, lengths[0]);
    push(2, lengths[1] / lengths[0]);
    for (const auto& est : contfrac::quotients_from_lengths(lengths)) {
        res.diagnostics.push_back({res.diagnostics.size() + 1, est.value, est.raw,
                                   std::abs(est.raw - static_cast<double>(est.value)),
                                   est.flagged});
    }

    std::vector<long long> vals;
    vals.reserve(res.diagnostics.size());
    for (const auto& d : res.diagnostics) vals.push_back(d.value);

    std::vector<Int> tail;
    for (std::size_t i = 1; i < vals.size(); ++i) tail.emplace_back(vals[i]);
    res.theta_cf = ContinuedFraction::finite(Int(vals.front()), std::move(tail));
    res.theta_value = res.theta_cf.evaluate();
    res.periodic_hint = detect_periodic_hint(vals);
    return res;
}

TorusPackage torus_to_nctorus(const Modulus& tau, double cutoff, std::size_t max_quotients) {
    RawSpectrum rs = w_map_raw(tau, cutoff, Mode::Full);
    CurvatureResult cr = curvature_extract(rs.normalized, max_quotients);
    cr.omega = rs.raw_systole;
    nctorus::NcTorus torus = nctorus::NcTorus::from_cf(cr.theta_cf);
    return {std::move(torus), nctorus::StateScale(rs.raw_systole), std::move(cr)};
}

EquivarianceReport equivariance_check(const Modulus& tau, const UnimodularMatrix& m,
                                      double cutoff, std::size_t depth) {
    if (m.det() != 1)
        throw Error("invalid_argument", "equivariance check expects a det +1 matrix");

    TorusPackage base = torus_to_nctorus(tau, cutoff, depth);
    Modulus moved(m.apply(tau.tau));
    TorusPackage trans = torus_to_nctorus(moved, cutoff, depth);

    contfrac::TailCompareOptions opts;
    opts.depth = depth;
    auto shift = contfrac::tail_equivalent(base.curvature.theta_cf,
                                           trans.curvature.theta_cf, opts);

    double factor =
        1.0 / std::abs(to_double(m.c) * tau.tau + to_double(m.d));
    double expected = base.curvature.omega * factor;
    bool omega_ok = std::abs(trans.curvature.omega - expected) <=
                    1e-6 * std::max(1.0, std::abs(expected));

    return {std::move(base.curvature), std::move(trans.curvature), shift,
            base.scale.omega, trans.scale.omega, factor, omega_ok, true};
}

CmCurvatureReport cm_curvature_check(const cm::ExactModulus& tau, double cutoff,
                                     std::size_t max_quotients) {
    if (tau.is_generic() || !cm::endomorphism_ring(tau))
        throw Error("not_cm", "modulus has a trivial endomorphism ring");

    Modulus m(tau.tau->complex_value());
    TorusPackage pkg = torus_to_nctorus(m, cutoff, max_quotients);

    std::vector<long long> vals;
    for (const auto& d : pkg.curvature.diagnostics) vals.push_back(d.value);

    CmCurvatureReport report{std::move(pkg.curvature), false, {}, 0};
    if (vals.size() >= 4) {
        std::vector<long long> half(vals.begin() + static_cast<long>(vals.size() / 2),
                                    vals.end());
        const std::size_t n = half.size();
        for (std::size_t period = 1; period <= n / 2 && !report.repetition_detected; ++period) {
            bool ok = true;
            for (std::size_t i = 0; i + period < n && ok; ++i) ok = half[i] == half[i + period];
            if (ok) {
                report.repetition_detected = true;
                report.repeating_block.assign(half.begin(),
                                              half.begin() + static_cast<long>(period));
                report.repetitions = n / period;
            }
        }
    }
    return report;
}

}  // namespace tori::correspondence
