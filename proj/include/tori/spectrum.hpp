#pragma once

#include "tori/core.hpp"
#include "tori/lattice.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tori::spectrum {

enum class Mode { Primitive, Full };

/// One spectral line: a geodesic length, how many unoriented homotopy classes
/// realize it, and those classes (m, n) with the sign normalized to m > 0 or
/// (m = 0, n > 0).
struct SpectrumEntry {
    double length;
    int multiplicity;
    std::vector<std::pair<long long, long long>> classes;
};

/// Sorted multiset of closed-geodesic lengths of a flat torus, complete up to
/// the cutoff.
struct LengthSpectrum {
    std::vector<SpectrumEntry> entries;
    double cutoff = 0;
    Mode mode = Mode::Full;

    bool empty() const noexcept { return entries.empty(); }

    // Geodesic count with multiplicity.
    std::size_t total_multiplicity() const noexcept;

    std::vector<double> distinct_lengths() const;

    // Test/synthesis helper: entries at the given lengths, multiplicity 1, no
    // class labels.
    static LengthSpectrum from_lengths(const std::vector<double>& lengths,
                                       double cutoff, Mode mode);
};

struct AlphaMultiplicativityReport {
    bool submultiset;                // scaled multiset embeds in the spectrum
    bool strict_blocks;              // literal block structure l_1..l_N, rho l_1..
    std::optional<std::size_t> block_size;  // N when strict_blocks holds
};

struct EnumerateOptions {
    double tol = 1e-9;                        // length grouping tolerance
    std::size_t max_entries = 1'000'000;      // resource guard
};

LengthSpectrum enumerate(const lattice::Lattice& L, double cutoff, Mode mode,
                         const EnumerateOptions& opts = {});

LengthSpectrum scale(const LengthSpectrum& sp, double a);

// Drops the first m-1 geodesics counted with multiplicity.
LengthSpectrum tail(const LengthSpectrum& sp, std::size_t m);

double systole(const LengthSpectrum& sp);

// (length, multiplicity) multisets agree entrywise within tol. Requires
// matching modes and cutoffs.
bool equal(const LengthSpectrum& a, const LengthSpectrum& b, double tol = 1e-9);

AlphaMultiplicativityReport alpha_multiplicative(const LengthSpectrum& sp, double rho,
                                                 double tol = 1e-9);

}  // namespace tori::spectrum
