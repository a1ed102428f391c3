#pragma once

#include <optional>

#include "levyfp/exponents.hpp"
#include "levyfp/levy_model.hpp"

namespace levyfp {

enum class Regime { Cramer, LargeDeviation, Boundary, Indeterminate };

/// Relative half-width of the band around psi'(gamma) treated as the
/// excluded boundary case.
inline constexpr double kBoundaryBand = 1e-8;

/// Exact-asymptotics approximation of P(tau(x) <= t) for x, t large with
/// x / t = v fixed:
///   Cramer regime          (0 < v < psi'(gamma)): C_gamma exp(-gamma x)
///   large-deviation regime (v > psi'(gamma)):     D_v t^(-1/2) exp(-psi*(v) t)
struct AsymptoticEstimate {
    Regime regime = Regime::Indeterminate;
    /// Natural log of the approximation; empty in the Indeterminate case.
    std::optional<double> log_prob;
    /// gamma * v (Cramer) or psi*(v) (large deviation), per unit time.
    double decay_rate = 0.0;
    /// C_gamma, or D_v * t^(-1/2); empty for two-sided models.
    std::optional<double> prefactor;
    /// Set when the prefactor has no closed form and log_prob is the bare
    /// exponent.
    bool exponent_only = false;
    /// Both candidate log-exponents, -gamma x and -psi*(v) t.
    double cramer_exponent = 0.0;
    double large_deviation_exponent = 0.0;
    ExponentReport report;
};

Regime classify_regime(const LevyModel& model, double x, double t);

/// 1 for spectrally negative models, |psi'(0)| / psi'(gamma) for spectrally
/// positive ones, and 1 whenever gamma = 0.
double cramer_constant(const LevyModel& model);

double ld_prefactor(const LevyModel& model, double v);

AsymptoticEstimate approx_passage_prob(const LevyModel& model, double x, double t);

const char* to_string(Regime regime);

} // namespace levyfp
