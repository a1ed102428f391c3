#include "levyfp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "levyfp/errors.hpp"

namespace levyfp {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxBracketSteps = 1100;
constexpr double kResidualTolerance = 1e-12;

using Scalar = std::function<double(double)>;

// Bracket a root of f(theta) = target for f increasing on [lo, limit), with
// f(lo) <= target, by stepping outward from lo. Returns the first point with
// f >= target, or nullopt if the domain is exhausted.
std::optional<double> bracket_upward(const Scalar& f, double lo, double limit, double target)
{
    if (std::isfinite(limit)) {
        const double span = limit - lo;
        for (int k = 1; k < 64; ++k) {
            const double hi = limit - span * std::ldexp(1.0, -k);
            if (!(hi > lo))
                break;
            try {
                if (f(hi) >= target)
                    return hi;
            } catch (const DomainError&) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    }
    double step = std::max(1.0, std::abs(lo));
    for (int k = 0; k < kMaxBracketSteps; ++k) {
        const double hi = lo + step;
        if (!std::isfinite(hi))
            break;
        if (f(hi) >= target)
            return hi;
        step *= 2.0;
    }
    return std::nullopt;
}

// Safeguarded Newton on [lo, hi] with f(lo) <= target <= f(hi), f increasing
// and convex. Bisection whenever the Newton step leaves the bracket.
double solve_bracketed(const Scalar& f, const Scalar& fprime, double lo, double hi, double target)
{
    const double scale = std::max(1.0, std::abs(target));
    double x = hi;
    double best = hi;
    double best_res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIterations; ++it) {
        const double res = f(x) - target;
        if (std::abs(res) < best_res) {
            best_res = std::abs(res);
            best = x;
        }
        if (std::abs(res) <= std::numeric_limits<double>::epsilon() * scale)
            return x;
        if (res > 0.0)
            hi = x;
        else
            lo = x;
        double next = x - res / fprime(x);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == x || !(next > lo && next < hi))
            break;
        x = next;
    }
    // Near a pole the attainable residual is limited by the slope.
    const double attainable =
        8.0 * std::numeric_limits<double>::epsilon() * std::abs(fprime(best)) * std::max(1.0, std::abs(best));
    if (best_res > std::max(kResidualTolerance * scale, attainable))
        throw NoRootError("root-finder did not converge");
    return best;
}

double solve_increasing(const Scalar& f, const Scalar& fprime, double lo, double limit,
                        double target, const char* what)
{
    const double f_lo = f(lo);
    if (f_lo == target)
        return lo;
    if (f_lo > target)
        throw NoRootError(std::string(what) + ": function already above target at start");
    const auto hi = bracket_upward(f, lo, limit, target);
    if (!hi)
        throw NoRootError(std::string(what) + ": no root inside the domain");
    return solve_bracketed(f, fprime, lo, *hi, target);
}

} // namespace

LundbergExponent lundberg_gamma(const LevyModel& model)
{
    const double m = psi_derivatives(model, 0.0).first;
    if (m >= 0.0)
        return {0.0, false};

    const double upper = model.domain().upper;
    auto f = [&](double th) { return psi(model, th); };
    auto fp = [&](double th) { return psi_derivatives(model, th).first; };
    auto fpp = [&](double th) { return psi_derivatives(model, th).second; };

    // psi decreases until its minimiser, then increases through zero.
    double minimiser;
    try {
        minimiser = solve_increasing(fp, fpp, 0.0, upper, 0.0, "lundberg_gamma");
    } catch (const NoRootError&) {
        throw NoRootError("lundberg_gamma: psi < 0 on the whole positive domain (Cramer condition fails)");
    }
    try {
        return {solve_increasing(f, fp, minimiser, upper, 0.0, "lundberg_gamma"), true};
    } catch (const NoRootError&) {
        throw NoRootError("lundberg_gamma: psi < 0 on the whole positive domain (Cramer condition fails)");
    }
}

double inverse_psi_prime(const LevyModel& model, double v)
{
    if (!std::isfinite(v))
        throw RangeError("inverse_psi_prime: v must be finite");
    const double at_zero = psi_derivatives(model, 0.0).first;
    if (v <= at_zero)
        throw RangeError("inverse_psi_prime: v <= psi'(0), no positive inverse");
    if (v >= psi_prime_supremum(model))
        throw RangeError("inverse_psi_prime: v >= sup psi', no inverse inside the domain");

    auto fp = [&](double th) { return psi_derivatives(model, th).first; };
    auto fpp = [&](double th) { return psi_derivatives(model, th).second; };
    try {
        return solve_increasing(fp, fpp, 0.0, model.domain().upper, v, "inverse_psi_prime");
    } catch (const NoRootError& e) {
        throw RangeError(e.what());
    }
}

ExponentReport legendre(const LevyModel& model, double v)
{
    ExponentReport r;
    r.v = v;
    const auto lund = lundberg_gamma(model);
    r.lundberg = lund.value;
    r.cramer_holds = lund.cramer_holds;
    r.critical_slope = psi_derivatives(model, lund.value).first;
    r.slope_tilt = inverse_psi_prime(model, v);
    r.tilted_growth = psi(model, r.slope_tilt);
    r.rate = v * r.slope_tilt - r.tilted_growth;
    r.curvature = psi_derivatives(model, r.slope_tilt).second;
    return r;
}

double big_phi(const LevyModel& model, double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw DomainError("big_phi: alpha must be finite and >= 0");
    // psi is increasing to the right of max(gamma, 0) where it equals 0.
    const double start = lundberg_gamma(model).value;
    if (alpha == 0.0)
        return start;
    auto f = [&](double th) { return psi(model, th); };
    auto fp = [&](double th) { return psi_derivatives(model, th).first; };
    return solve_increasing(f, fp, start, model.domain().upper, alpha, "big_phi");
}

double big_phi_hat(const LevyModel& model, double alpha)
{
    return big_phi(reflect(model), alpha);
}

double gamma_tilde(const LevyModel& model, double v)
{
    const double tilt_v = inverse_psi_prime(model, v);
    const double eta = psi(model, tilt_v);
    if (!(eta > 0.0))
        throw RangeError("gamma_tilde: requires psi(Gamma(v)) > 0, i.e. v > psi'(gamma)");
    return big_phi_hat(model, eta);
}

} // namespace levyfp
