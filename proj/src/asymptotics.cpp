#include "levyfp/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levyfp/errors.hpp"

namespace levyfp {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError(std::string(name) + " must be finite and > 0");
}

Regime classify_slope(double v, double critical)
{
    if (!(critical > 0.0))
        return Regime::Indeterminate;
    if (v < critical * (1.0 - kBoundaryBand))
        return Regime::Cramer;
    if (v > critical * (1.0 + kBoundaryBand))
        return Regime::LargeDeviation;
    return Regime::Boundary;
}

double ld_prefactor_from(const LevyModel& model, const ExponentReport& r)
{
    const double gauss = 1.0 / std::sqrt(2.0 * std::numbers::pi * r.curvature);
    switch (spectral_class(model)) {
    case SpectralClass::SpectrallyNegative:
        return r.v / r.tilted_growth * gauss;
    case SpectralClass::SpectrallyPositive: {
        const double mirrored = big_phi_hat(model, r.tilted_growth);
        return (r.slope_tilt + mirrored) / (r.slope_tilt * mirrored) * gauss;
    }
    case SpectralClass::TwoSided:
        break;
    }
    throw UnsupportedModel("ld_prefactor: no closed form for two-sided models");
}

} // namespace

Regime classify_regime(const LevyModel& model, double x, double t)
{
    require_positive(x, "x");
    require_positive(t, "t");
    const auto lund = lundberg_gamma(model);
    const double critical = psi_derivatives(model, lund.value).first;
    return classify_slope(x / t, critical);
}

double cramer_constant(const LevyModel& model)
{
    const auto lund = lundberg_gamma(model);
    if (!lund.cramer_holds)
        return 1.0;
    switch (spectral_class(model)) {
    case SpectralClass::SpectrallyNegative:
        return 1.0;
    case SpectralClass::SpectrallyPositive: {
        const double at_zero = psi_derivatives(model, 0.0).first;
        const double at_gamma = psi_derivatives(model, lund.value).first;
        return std::abs(at_zero) / at_gamma;
    }
    case SpectralClass::TwoSided:
        break;
    }
    throw UnsupportedModel("cramer_constant: no closed form for two-sided models");
}

double ld_prefactor(const LevyModel& model, double v)
{
    require_positive(v, "v");
    const auto r = legendre(model, v);
    if (classify_slope(v, r.critical_slope) != Regime::LargeDeviation)
        throw RangeError("ld_prefactor: requires v > psi'(gamma)");
    return ld_prefactor_from(model, r);
}

AsymptoticEstimate approx_passage_prob(const LevyModel& model, double x, double t)
{
    require_positive(x, "x");
    require_positive(t, "t");
    const double v = x / t;

    AsymptoticEstimate est;
    est.report = legendre(model, v);
    const auto& r = est.report;
    est.cramer_exponent = -r.lundberg * x;
    est.large_deviation_exponent = -r.rate * t;
    const bool one_sided = spectral_class(model) != SpectralClass::TwoSided;

    switch (classify_slope(v, r.critical_slope)) {
    case Regime::Cramer: {
        est.regime = Regime::Cramer;
        est.decay_rate = r.lundberg * v;
        if (one_sided || !r.cramer_holds) {
            const double c = cramer_constant(model);
            est.prefactor = c;
            est.log_prob = std::log(c) + est.cramer_exponent;
        } else {
            est.exponent_only = true;
            est.log_prob = est.cramer_exponent;
        }
        break;
    }
    case Regime::LargeDeviation: {
        est.regime = Regime::LargeDeviation;
        est.decay_rate = r.rate;
        if (one_sided) {
            const double d = ld_prefactor_from(model, r);
            est.prefactor = d / std::sqrt(t);
            est.log_prob = std::log(d) - 0.5 * std::log(t) + est.large_deviation_exponent;
        } else {
            est.exponent_only = true;
            est.log_prob = est.large_deviation_exponent;
        }
        break;
    }
    case Regime::Boundary:
    case Regime::Indeterminate:
        est.regime = Regime::Indeterminate;
        est.decay_rate = r.lundberg * v;
        break;
    }
    return est;
}

const char* to_string(Regime regime)
{
    switch (regime) {
    case Regime::Cramer: return "cramer";
    case Regime::LargeDeviation: return "large_deviation";
    case Regime::Boundary: return "boundary";
    case Regime::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

} // namespace levyfp
