#include "levyfp/simulation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyfp/asymptotics.hpp"
#include "levyfp/errors.hpp"
#include "levyfp/exponents.hpp"
#include "levyfp/logmath.hpp"

namespace levyfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flattened view of a model for the inner loop.
struct PathSampler {
    double drift = 0.0;
    double sigma = 0.0;
    double intensity = 0.0;
    std::vector<double> cumulative;
    std::vector<double> rates;
    std::vector<double> signs;

    explicit PathSampler(const LevyModel& model)
        : drift(model.drift()), sigma(model.sigma()), intensity(model.jumps().intensity)
    {
        double acc = 0.0;
        for (const auto& comp : model.jumps().components) {
            acc += comp.weight;
            cumulative.push_back(acc);
            rates.push_back(comp.rate);
            signs.push_back(comp.sign());
        }
        if (!cumulative.empty())
            cumulative.back() = 1.0;
    }

    double sample_jump(PathRng& rng) const
    {
        std::size_t k = 0;
        if (rates.size() > 1) {
            const double u = rng.uniform();
            while (k + 1 < cumulative.size() && u > cumulative[k])
                ++k;
        }
        return signs[k] * rng.exponential(rates[k]);
    }
};

// Michael-Schucany-Haas sampler for the inverse Gaussian law IG(mean, shape).
// An infinite mean gives the Levy (one-sided stable 1/2) limit.
double inverse_gaussian(double mean, double shape, PathRng& rng)
{
    const double nu = rng.normal();
    const double y = nu * nu;
    const double u = rng.uniform();
    if (!std::isfinite(mean))
        return shape / y;
    const double w = mean * y / (2.0 * shape);
    const double root = mean / (1.0 + w + std::sqrt(w * (w + 2.0)));
    if (u * (mean + root) <= mean)
        return root;
    return mean * (mean / root);
}

// Time, measured from the start of a sub-step of length dt, at which a
// Brownian bridge from x - gap_start to x - gap_end first reaches x.
// Conditioned on crossing, the bridge hitting time maps to an inverse
// Gaussian time u of a Brownian motion with linear boundary, dt*u/(dt+u).
double bridge_crossing_offset(double gap_start, double gap_end, double dt, double sigma, PathRng& rng)
{
    const double level = gap_start / sigma;
    const double slope = std::abs(gap_end) / (sigma * dt);
    const double mean = slope > 0.0 ? level / slope : kInf;
    const double u = inverse_gaussian(mean, level * level, rng);
    return dt / (1.0 + dt / u);
}

PathOutcome hit_at(double tau, double position)
{
    return {true, tau, position, position};
}

PathOutcome simulate_path(const PathSampler& s, double x, double horizon, const PathSettings& settings,
                          PathRng& rng)
{
    if (x < 0.0 || (x == 0.0 && s.sigma > 0.0))
        return hit_at(0.0, 0.0);

    double t = 0.0;
    double pos = 0.0;
    double next_jump = s.intensity > 0.0 ? rng.exponential(s.intensity) : kInf;
    const double var_scale = s.sigma * s.sigma;

    while (true) {
        const double seg_end = std::min(next_jump, horizon);
        const double len = seg_end - t;
        if (len > 0.0) {
            if (s.sigma > 0.0) {
                const auto steps = static_cast<std::int64_t>(
                    std::max(1.0, std::ceil(len / settings.time_step)));
                const double dt = len / static_cast<double>(steps);
                const double sd = s.sigma * std::sqrt(dt);
                const double mean_step = s.drift * dt;
                for (std::int64_t k = 0; k < steps; ++k) {
                    const double next = pos + mean_step + sd * rng.normal();
                    const double u = rng.uniform();
                    const double t0 = t + static_cast<double>(k) * dt;
                    if (next > x) {
                        const double offset = settings.barrier_correction
                                                  ? bridge_crossing_offset(x - pos, x - next, dt, s.sigma, rng)
                                                  : dt;
                        return hit_at(t0 + offset, x);
                    }
                    if (settings.barrier_correction) {
                        const double p = std::exp(-2.0 * (x - pos) * (x - next) / (var_scale * dt));
                        if (u < p)
                            return hit_at(t0 + bridge_crossing_offset(x - pos, x - next, dt, s.sigma, rng), x);
                    }
                    pos = next;
                }
            } else {
                if (s.drift > 0.0 && pos + s.drift * len > x)
                    return hit_at(t + (x - pos) / s.drift, x);
                pos += s.drift * len;
            }
        }
        t = seg_end;
        if (next_jump >= horizon) {
            PathOutcome miss;
            miss.position_at_horizon = pos;
            return miss;
        }
        pos += s.sample_jump(rng);
        if (pos > x)
            return hit_at(t, pos);
        next_jump = t + rng.exponential(s.intensity);
    }
}

Crossing to_crossing(const PathOutcome& o)
{
    return o.hit ? Crossing{true, *o.tau, *o.position_at_tau} : Crossing{};
}

void check_path_args(double x, double horizon)
{
    if (!std::isfinite(x))
        throw DomainError("barrier level x must be finite");
    if (!(horizon > 0.0))
        throw DomainError("horizon must be > 0");
}

std::vector<Crossing> run_kernel(const LevyModel& model, double x, double horizon, const SimConfig& config)
{
    const PathSettings settings{config.time_step, config.barrier_correction};
    if (config.backend == Backend::Serial)
        return simulate_paths_serial(model, x, horizon, settings, config.n_paths, config.master_seed);
    return simulate_paths_parallel(model, x, horizon, settings, config.n_paths, config.master_seed,
                                   config.workers);
}

// Deterministic reduction in path-index order. log_weight(c) is the log of
// the likelihood ratio attached to a crossing.
template <class LogWeight>
SimResult reduce(const std::vector<Crossing>& paths, const SimConfig& config, LogWeight log_weight)
{
    LogSumExp first;
    LogSumExp second;
    std::int64_t hits = 0;
    for (const auto& c : paths) {
        if (!c.hit)
            continue;
        ++hits;
        const double lw = log_weight(c);
        first.push(lw);
        second.push(2.0 * lw);
    }
    SimResult r;
    r.n_paths = static_cast<std::int64_t>(paths.size());
    r.n_hits = hits;
    r.master_seed = config.master_seed;
    const double log_n = std::log(static_cast<double>(r.n_paths));
    if (hits == 0) {
        r.log_estimate = kNegInf;
        r.std_err_rel = kInf;
        r.degenerate = true;
        return r;
    }
    r.log_estimate = first.value() - log_n;
    // (second moment / squared mean - 1) / n
    const double moment_ratio = std::exp(second.value() + log_n - 2.0 * first.value());
    r.std_err_rel = std::sqrt(std::max(0.0, moment_ratio - 1.0) / static_cast<double>(r.n_paths));
    return r;
}

} // namespace

double SimResult::estimate() const
{
    return std::exp(log_estimate);
}

void validate(const SimConfig& config, const LevyModel& model)
{
    if (config.n_paths <= 0)
        throw ValidationError("n_paths must be > 0");
    if (!(config.time_step > 0.0) || !std::isfinite(config.time_step))
        throw ValidationError("time_step must be finite and > 0");
    if (config.workers < 0)
        throw ValidationError("workers must be >= 0");
    if (config.tilt)
        require_interior(model, *config.tilt);
}

PathOutcome first_passage(const LevyModel& model, double x, double horizon, const PathSettings& settings,
                          PathRng& rng)
{
    check_path_args(x, horizon);
    return simulate_path(PathSampler(model), x, horizon, settings, rng);
}

PathOutcome first_passage(const LevyModel& model, double x, double horizon, const PathSettings& settings,
                          std::uint64_t master_seed, std::uint64_t path_index)
{
    PathRng rng(master_seed, path_index);
    return first_passage(model, x, horizon, settings, rng);
}

std::vector<Crossing> simulate_paths_serial(const LevyModel& model, double x, double horizon,
                                            const PathSettings& settings, std::int64_t n_paths,
                                            std::uint64_t master_seed)
{
    check_path_args(x, horizon);
    const PathSampler sampler(model);
    std::vector<Crossing> out(static_cast<std::size_t>(n_paths));
    for (std::int64_t i = 0; i < n_paths; ++i) {
        PathRng rng(master_seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = to_crossing(simulate_path(sampler, x, horizon, settings, rng));
    }
    return out;
}

std::vector<Crossing> simulate_paths_parallel(const LevyModel& model, double x, double horizon,
                                              const PathSettings& settings, std::int64_t n_paths,
                                              std::uint64_t master_seed, int workers)
{
    check_path_args(x, horizon);
    const PathSampler sampler(model);
    std::vector<Crossing> out(static_cast<std::size_t>(n_paths));
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
    for (std::int64_t i = 0; i < n_paths; ++i) {
        PathRng rng(master_seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = to_crossing(simulate_path(sampler, x, horizon, settings, rng));
    }
    return out;
}

SimResult mc_plain(const LevyModel& model, double x, double t, const SimConfig& config)
{
    SimConfig plain = config;
    plain.tilt.reset();
    validate(plain, model);
    const auto paths = run_kernel(model, x, t, plain);
    return reduce(paths, plain, [](const Crossing&) { return 0.0; });
}

double auto_tilt(const LevyModel& model, double x, double t)
{
    if (classify_regime(model, x, t) == Regime::Cramer)
        return 0.0;
    return inverse_psi_prime(model, x / t);
}

SimResult mc_tilted(const LevyModel& model, double x, double t, const SimConfig& config)
{
    if (!(t > 0.0))
        throw DomainError("horizon must be > 0");
    SimConfig tilted_cfg = config;
    if (!tilted_cfg.tilt)
        tilted_cfg.tilt = inverse_psi_prime(model, x / t);
    validate(tilted_cfg, model);
    const double c = *tilted_cfg.tilt;
    const double growth = psi(model, c);
    const auto paths = run_kernel(tilt(model, c), x, t, tilted_cfg);
    auto r = reduce(paths, tilted_cfg,
                    [c, growth](const Crossing& p) { return -c * p.position + growth * p.tau; });
    r.tilt_used = c;
    return r;
}

CltReport clt_diagnostic(const LevyModel& model, double x, double v, const SimConfig& config)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("clt_diagnostic: x must be > 0");
    const auto report = legendre(model, v);
    if (!(v > report.critical_slope))
        throw RangeError("clt_diagnostic: requires v > psi'(gamma)");
    SimConfig cfg = config;
    cfg.tilt = report.slope_tilt;
    validate(cfg, model);

    CltReport out;
    out.omega2 = report.curvature / (v * v * v);
    const double spread = std::sqrt(out.omega2 * x);
    const double centre = x / v;
    const double horizon = centre + 50.0 * spread + 1.0;
    const auto paths = run_kernel(tilt(model, report.slope_tilt), x, horizon, cfg);

    double sum_z = 0.0;
    double sum_tau = 0.0;
    for (const auto& p : paths) {
        if (!p.hit) {
            ++out.n_missed;
            continue;
        }
        ++out.n;
        sum_z += (p.tau - centre) / spread;
        sum_tau += p.tau;
    }
    if (out.n < 2)
        throw NoRootError("clt_diagnostic: fewer than two crossings");
    out.mean_z = sum_z / static_cast<double>(out.n);
    out.mean_tau = sum_tau / static_cast<double>(out.n);
    double ss = 0.0;
    for (const auto& p : paths) {
        if (!p.hit)
            continue;
        const double d = (p.tau - centre) / spread - out.mean_z;
        ss += d * d;
    }
    out.var_z = ss / static_cast<double>(out.n - 1);
    return out;
}

} // namespace levyfp
