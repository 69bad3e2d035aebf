#include "tori/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace tori::spectrum {

std::size_t LengthSpectrum::total_multiplicity() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries) n += static_cast<std::size_t>(e.multiplicity);
    return n;
}

std::vector<double> LengthSpectrum::distinct_lengths() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.length);
    return out;
}

LengthSpectrum LengthSpectrum::from_lengths(const std::vector<double>& lengths,
                                            double cutoff, Mode mode) {
    LengthSpectrum sp;
    sp.cutoff = cutoff;
    sp.mode = mode;
    std::vector<double> sorted = lengths;
    std::sort(sorted.begin(), sorted.end());
    for (double l : sorted) {
        if (!sp.entries.empty() && l == sp.entries.back().length) {
            ++sp.entries.back().multiplicity;
        } else {
            sp.entries.push_back({l, 1, {}});
        }
    }
    return sp;
}

LengthSpectrum enumerate(const lattice::Lattice& L, double cutoff, Mode mode,
                         const EnumerateOptions& opts) {
    if (!(cutoff > 0)) throw Error("invalid_argument", "cutoff must be positive");

    // Completeness bound: |m|, |n| <= cutoff * (max dual-basis row norm) + 1.
    const double covol = L.covolume();
    const double row_norm =
        std::max(std::abs(L.omega1), std::abs(L.omega2)) / covol;
    const long long box = static_cast<long long>(cutoff * row_norm + 1.0);

    struct RawEntry {
        double length;
        long long m, n;
    };
    std::vector<RawEntry> raw;
    std::size_t limit = opts.max_entries;
    if (const char* env = std::getenv("TORI_MAX_ENTRIES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) limit = static_cast<std::size_t>(v);
    }

    const double boundary = cutoff + opts.tol;
    for (long long m = 0; m <= box; ++m) {
        for (long long n = (m == 0 ? 1 : -box); n <= box; ++n) {
            if (mode == Mode::Primitive && std::gcd(std::llabs(m), std::llabs(n)) != 1)
                continue;
            double len = std::abs(static_cast<double>(m) * L.omega1 +
                                  static_cast<double>(n) * L.omega2);
            if (len > boundary) continue;
            raw.push_back({len, m, n});
            if (raw.size() > limit)
                throw Error("resource_limit", "spectrum entry limit exceeded");
        }
    }

    std::sort(raw.begin(), raw.end(), [](const RawEntry& a, const RawEntry& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.m != b.m) return a.m < b.m;
        return a.n < b.n;
    });

    LengthSpectrum sp;
    sp.cutoff = cutoff;
    sp.mode = mode;
    for (const RawEntry& e : raw) {
        if (!sp.entries.empty() && e.length - sp.entries.back().length <= opts.tol) {
            auto& grp = sp.entries.back();
            ++grp.multiplicity;
            grp.classes.emplace_back(e.m, e.n);
        } else {
            sp.entries.push_back({e.length, 1, {{e.m, e.n}}});
        }
    }
    return sp;
}

LengthSpectrum scale(const LengthSpectrum& sp, double a) {
    if (!(a > 0)) throw Error("invalid_argument", "scale factor must be positive");
    LengthSpectrum out = sp;
    out.cutoff = sp.cutoff * a;
    for (auto& e : out.entries) e.length *= a;
    return out;
}

LengthSpectrum tail(const LengthSpectrum& sp, std::size_t m) {
    if (m < 1) throw Error("invalid_argument", "tail index must be >= 1");
    std::size_t to_drop = m - 1;
    if (to_drop > sp.total_multiplicity())
        throw Error("index_out_of_range", "tail start exceeds the spectrum");

    LengthSpectrum out;
    out.cutoff = sp.cutoff;
    out.mode = sp.mode;
    for (const auto& e : sp.entries) {
        if (to_drop == 0) {
            out.entries.push_back(e);
            continue;
        }
        std::size_t mult = static_cast<std::size_t>(e.multiplicity);
        if (to_drop >= mult) {
            to_drop -= mult;
            continue;
        }
        SpectrumEntry kept = e;
        kept.multiplicity = static_cast<int>(mult - to_drop);
        if (!kept.classes.empty())
            kept.classes.erase(kept.classes.begin(),
                               kept.classes.begin() + static_cast<long>(to_drop));
        to_drop = 0;
        out.entries.push_back(std::move(kept));
    }
    return out;
}

double systole(const LengthSpectrum& sp) {
    if (sp.empty()) throw Error("empty_spectrum", "systole of an empty spectrum");
    return sp.entries.front().length;
}

bool equal(const LengthSpectrum& a, const LengthSpectrum& b, double tol) {
    if (a.mode != b.mode)
        throw Error("incompatible_spectra", "spectrum modes differ");
    if (std::abs(a.cutoff - b.cutoff) > tol * std::max(1.0, std::abs(a.cutoff)))
        throw Error("incompatible_spectra", "spectrum cutoffs differ");
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (std::abs(a.entries[i].length - b.entries[i].length) > tol) return false;
        if (a.entries[i].multiplicity != b.entries[i].multiplicity) return false;
    }
    return true;
}

AlphaMultiplicativityReport alpha_multiplicative(const LengthSpectrum& sp, double rho,
                                                 double tol) {
    if (!(rho > 1)) throw Error("invalid_argument", "rho must exceed 1");

    AlphaMultiplicativityReport report{true, false, std::nullopt};

    // Submultiset: every line l with rho*l safely below the cutoff must have a
    // line at rho*l with at least the same multiplicity.
    for (const auto& e : sp.entries) {
        double target = rho * e.length;
        if (target > sp.cutoff - tol) continue;
        bool found = false;
        for (const auto& f : sp.entries) {
            if (std::abs(f.length - target) <= tol) {
                found = f.multiplicity >= e.multiplicity;
                break;
            }
            if (f.length > target + tol) break;
        }
        if (!found) {
            report.submultiset = false;
            break;
        }
    }

    // Strict blocks: the flattened multiset must read l_1..l_N, rho l_1..rho l_N, ...
    std::vector<double> flat;
    for (const auto& e : sp.entries)
        flat.insert(flat.end(), static_cast<std::size_t>(e.multiplicity), e.length);
    if (!flat.empty()) {
        std::size_t N = 0;
        double first_scaled = rho * flat.front();
        while (N < flat.size() && flat[N] < first_scaled - tol) ++N;
        if (N > 0 && N < flat.size()) {
            bool ok = true;
            for (std::size_t i = 0; i + N < flat.size() && ok; ++i) {
                double target = rho * flat[i];
                if (target > sp.cutoff - tol) break;
                ok = std::abs(flat[i + N] - target) <= tol;
            }
            if (ok) {
                report.strict_blocks = true;
                report.block_size = N;
            }
        }
    }
    return report;
}

}  // namespace tori::spectrum
