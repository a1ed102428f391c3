#include "levyfp/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "levyfp/asymptotics.hpp"
#include "levyfp/errors.hpp"
#include "levyfp/logmath.hpp"
#include "levyfp/normal_tail.hpp"

namespace levyfp {

double LogProb::probability() const
{
    return std::exp(value);
}

LogProb bm_exact_passage(double mu, double sigma, double x, double t)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("bm_exact_passage: sigma must be > 0");
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("bm_exact_passage: t must be > 0");
    if (!std::isfinite(x) || !std::isfinite(mu))
        throw DomainError("bm_exact_passage: x and mu must be finite");
    if (x <= 0.0)
        return {0.0};
    const double scale = sigma * std::sqrt(t);
    const double direct = log_normal_tail((x - mu * t) / scale);
    const double reflected = 2.0 * mu * x / (sigma * sigma) + log_normal_tail((x + mu * t) / scale);
    return {std::min(0.0, log_add(direct, reflected))};
}

double bm_asymptotic_ratio(double mu, double sigma, double v, double t)
{
    if (!(v > -mu))
        throw RangeError("bm_asymptotic_ratio: requires v > -mu");
    const auto model = LevyModel::brownian(mu, sigma);
    const double x = v * t;
    const auto est = approx_passage_prob(model, x, t);
    if (est.regime != Regime::LargeDeviation || !est.log_prob)
        throw RangeError("bm_asymptotic_ratio: slope not in the large-deviation regime");
    return bm_exact_passage(mu, sigma, x, t).value - *est.log_prob;
}

LogProb cl_perpetual_ruin(double lambda, double beta, double c, double x)
{
    if (!(lambda > 0.0) || !(beta > 0.0) || !(c > 0.0))
        throw DomainError("cl_perpetual_ruin: lambda, beta and c must be > 0");
    if (lambda / beta >= c)
        throw DomainError("cl_perpetual_ruin: net profit condition lambda / beta < c fails");
    if (!(x >= 0.0))
        throw DomainError("cl_perpetual_ruin: x must be >= 0");
    const double rho = lambda / (c * beta);
    return {std::log(rho) - (beta - lambda / c) * x};
}

} // namespace levyfp
