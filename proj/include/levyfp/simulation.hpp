#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "levyfp/levy_model.hpp"
#include "levyfp/rng.hpp"

namespace levyfp {

enum class Backend { Serial, OpenMP };

struct SimConfig {
    std::int64_t n_paths = 100000;
    std::uint64_t master_seed = 0;
    /// Maximal Brownian sub-step between jumps.
    double time_step = 0.01;
    /// Measure-change parameter c; mc_tilted defaults it to Gamma(x / t).
    std::optional<double> tilt;
    /// Brownian-bridge test for crossings between grid points.
    bool barrier_correction = true;
    Backend backend = Backend::OpenMP;
    /// OpenMP worker count; 0 leaves the choice to the runtime.
    int workers = 0;
};

/// Throws ValidationError for a malformed config and DomainError when the
/// tilt lies outside the domain of psi.
void validate(const SimConfig& config, const LevyModel& model);

struct SimResult {
    /// log of the estimate; -inf when no path crossed.
    double log_estimate = 0.0;
    /// Relative standard error of the linear-domain estimator.
    double std_err_rel = 0.0;
    std::int64_t n_paths = 0;
    std::int64_t n_hits = 0;
    std::optional<double> tilt_used;
    std::uint64_t master_seed = 0;
    /// No path crossed; the estimate carries no information.
    bool degenerate = false;

    double estimate() const;
};

struct PathOutcome {
    bool hit = false;
    std::optional<double> tau;
    std::optional<double> position_at_tau;
    /// Position when the simulation stopped: X(horizon) on a miss, X(tau)
    /// on a hit (the path is not continued past tau).
    double position_at_horizon = 0.0;
};

struct PathSettings {
    double time_step = 0.01;
    bool barrier_correction = true;
};

/// Simulates one path of `model` on [0, horizon] and reports the first
/// passage strictly above level x. Jump epochs are exact; Brownian motion
/// between jumps is sampled on sub-steps of length <= time_step. With
/// barrier_correction, a sub-step that ends below x still counts as a
/// crossing with the Brownian-bridge probability
/// exp(-2 (x - X_a)(x - X_b) / (sigma^2 dt)), and the crossing time of any
/// diffusive crossing is drawn from the exact bridge hitting-time law.
///
/// The uniform for the bridge test is drawn whether or not the correction is
/// enabled, so both settings consume identical random streams up to the
/// first crossing.
PathOutcome first_passage(const LevyModel& model, double x, double horizon,
                          const PathSettings& settings, PathRng& rng);

PathOutcome first_passage(const LevyModel& model, double x, double horizon,
                          const PathSettings& settings, std::uint64_t master_seed,
                          std::uint64_t path_index);

/// Crossing record kept per path by the kernels.
struct Crossing {
    bool hit = false;
    double tau = 0.0;
    double position = 0.0;
};

/// Reference kernel: paths 0..n-1 in index order on the calling thread.
std::vector<Crossing> simulate_paths_serial(const LevyModel& model, double x, double horizon,
                                            const PathSettings& settings, std::int64_t n_paths,
                                            std::uint64_t master_seed);

/// OpenMP kernel; output is bit-identical to the serial kernel for every
/// worker count.
std::vector<Crossing> simulate_paths_parallel(const LevyModel& model, double x, double horizon,
                                              const PathSettings& settings, std::int64_t n_paths,
                                              std::uint64_t master_seed, int workers = 0);

/// Plain frequency estimator of P(tau(x) <= t).
SimResult mc_plain(const LevyModel& model, double x, double t, const SimConfig& config);

/// Importance-sampling estimator: paths are simulated under tilt(model, c)
/// and each crossing is weighted by exp(-c X(tau) + psi(c) tau).
SimResult mc_tilted(const LevyModel& model, double x, double t, const SimConfig& config);

/// Tilt used when the caller asks for "auto": Gamma(x / t) unless x / t lies
/// in the Cramer regime, where it is 0.
double auto_tilt(const LevyModel& model, double x, double t);

struct CltReport {
    double mean_z = 0.0;
    double var_z = 0.0;
    std::int64_t n = 0;
    std::int64_t n_missed = 0;
    /// psi''(Gamma(v)) / v^3
    double omega2 = 0.0;
    double mean_tau = 0.0;
};

/// Under the measure tilted by Gamma(v), samples (tau(x) - x/v) / (omega sqrt x)
/// and returns its sample mean and variance.
CltReport clt_diagnostic(const LevyModel& model, double x, double v, const SimConfig& config);

} // namespace levyfp
