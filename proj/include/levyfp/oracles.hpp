#pragma once

namespace levyfp {

/// Natural log of a probability; value <= 0.
struct LogProb {
    double value = 0.0;

    double probability() const;
};

/// Exact first-passage probability of Brownian motion with drift `mu` and
/// volatility `sigma` by the reflection formula,
///   P(tau(x) <= t) = Pbar((x - mu t) / (sigma sqrt t))
///                  + exp(2 mu x / sigma^2) Pbar((x + mu t) / (sigma sqrt t)),
/// evaluated in log-domain so that values far below exp(-700) stay exact.
LogProb bm_exact_passage(double mu, double sigma, double x, double t);

/// log P(tau(vt) <= t) minus the large-deviation approximation
/// log D_v - log(t)/2 - psi*(v) t for the same Brownian motion.
/// Requires v > -mu.
double bm_asymptotic_ratio(double mu, double sigma, double v, double t);

/// Perpetual ruin probability of the classical risk model with Exp(beta)
/// claims: (lambda / (c beta)) exp(-(beta - lambda / c) x).
LogProb cl_perpetual_ruin(double lambda, double beta, double c, double x);

} // namespace levyfp
