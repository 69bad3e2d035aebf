#pragma once

#include "tori/cm.hpp"
#include "tori/contfrac.hpp"
#include "tori/core.hpp"
#include "tori/lattice.hpp"
#include "tori/nctorus.hpp"
#include "tori/spectrum.hpp"

#include <optional>
#include <vector>

namespace tori::correspondence {

using contfrac::ContinuedFraction;
using contfrac::UnimodularMatrix;
using lattice::Modulus;
using spectrum::LengthSpectrum;
using spectrum::Mode;

struct QuotientDiagnostic {
    std::size_t index;   // 1-based quotient subscript
    long long value;     // rounded, clamped >= 1
    double raw;          // pre-rounding estimate
    double residual;     // |raw - value|
    bool flagged;
};

struct PeriodicHint {
    std::size_t preperiod_len;       // position in the stream where the block starts
    std::vector<long long> period;
};

/// Projective-curvature extraction result: the quotient stream recovered from
/// successive spectrum lengths, with per-quotient rounding diagnostics. The
/// first two quotients come from the seeding rule and are the least reliable.
struct CurvatureResult {
    ContinuedFraction theta_cf;
    double theta_value;
    double omega;                    // systole of the spectrum the stream came from
    std::vector<QuotientDiagnostic> diagnostics;
    std::optional<PeriodicHint> periodic_hint;
};

struct TorusPackage {
    nctorus::NcTorus torus;
    nctorus::StateScale scale;
    CurvatureResult curvature;
};

/// Equivariance evidence for one modular-group generator. The omega relation
/// uses the automorphy factor 1/|c tau + d| (the declared realization of the
/// discrete action; the paper states no formula). Verdicts on quotient
/// streams are heuristic by construction.
struct EquivarianceReport {
    CurvatureResult base;
    CurvatureResult transformed;
    std::optional<contfrac::TailShift> tail_shift;
    double omega_base;
    double omega_transformed;
    double omega_factor_expected;    // 1/|c tau + d|
    bool omega_ok;
    bool heuristic = true;
};

struct CmCurvatureReport {
    CurvatureResult curvature;
    bool repetition_detected;        // block repetition over the last half of the stream
    std::vector<long long> repeating_block;
    std::size_t repetitions;
};

// Spectrum of Z + tau Z, rescaled so the systole is 1; the cutoff is in
// normalized units.
LengthSpectrum w_map(const Modulus& tau, double cutoff, Mode mode);

CurvatureResult curvature_extract(const LengthSpectrum& sp, std::size_t max_quotients);

TorusPackage torus_to_nctorus(const Modulus& tau, double cutoff, std::size_t max_quotients);

EquivarianceReport equivariance_check(const Modulus& tau, const UnimodularMatrix& m,
                                      double cutoff, std::size_t depth);

CmCurvatureReport cm_curvature_check(const cm::ExactModulus& tau, double cutoff,
                                     std::size_t max_quotients);

}  // namespace tori::correspondence
