#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyfp/asymptotics.hpp"
#include "levyfp/errors.hpp"
#include "levyfp/exponents.hpp"
#include "levyfp/oracles.hpp"
#include "levyfp/simulation.hpp"

using namespace levyfp;

namespace {

const LevyModel kBm = LevyModel::brownian(-1.0, 1.0);
const LevyModel kCl = LevyModel::cramer_lundberg(1.0, 1.0, 2.0);
const LevyModel kMixed = LevyModel::jump_diffusion(
    -1.0, 0.7, {1.5, {{0.3, 2.0, JumpDirection::Up}, {0.7, 1.0, JumpDirection::Down}}});

// Finite-time ruin of the risk model with unit-rate claims, lambda = 1,
// premium 2, reference integration in 40-digit arithmetic.
constexpr double kClExactT15 = -24.87302;
constexpr double kClExactT30 = -47.98389;

bool same(const std::vector<Crossing>& a, const std::vector<Crossing>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].hit != b[i].hit || a[i].tau != b[i].tau || a[i].position != b[i].position)
            return false;
    return true;
}

// |log estimate - reference| within k standard errors plus a relative slack.
bool within(const SimResult& r, double reference, double k, double slack = 0.0)
{
    return std::abs(std::expm1(r.log_estimate - reference)) <= k * r.std_err_rel + slack;
}

} // namespace

TEST_CASE("paths starting at or above the level")
{
    const PathSettings s;
    const auto at_zero = first_passage(kBm, 0.0, 1.0, s, 0, 0);
    CHECK(at_zero.hit);
    CHECK(*at_zero.tau == 0.0);
    const auto below = first_passage(kBm, -1.0, 1.0, s, 0, 0);
    CHECK(below.hit);
    CHECK(*below.tau == 0.0);
    SimConfig cfg;
    cfg.n_paths = 100;
    CHECK(mc_plain(kBm, 0.0, 1.0, cfg).log_estimate == 0.0);
    CHECK_THROWS_AS(first_passage(kBm, 1.0, 0.0, s, 0, 0), DomainError);
    CHECK_THROWS_AS(first_passage(kBm, INFINITY, 1.0, s, 0, 0), DomainError);
}

TEST_CASE("path outcomes are well formed")
{
    const PathSettings s;
    int hits = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto o = first_passage(kCl, 1.0, 5.0, s, 3, i);
        if (o.hit) {
            ++hits;
            CHECK(*o.tau > 0.0);
            CHECK(*o.tau <= 5.0);
            // Without a Gaussian part the level is overshot by a claim.
            CHECK(*o.position_at_tau > 1.0);
        } else {
            CHECK_FALSE(o.tau);
            CHECK(o.position_at_horizon <= 1.0);
        }
    }
    CHECK(hits > 0);
    CHECK(hits < 500);
}

TEST_CASE("serial and parallel kernels agree bit for bit")
{
    const PathSettings s{0.01, true};
    for (const auto* m : {&kBm, &kCl, &kMixed}) {
        const auto serial = simulate_paths_serial(*m, 2.0, 3.0, s, 3000, 42);
        for (int w : {0, 1, 2, 4, 7})
            CHECK(same(serial, simulate_paths_parallel(*m, 2.0, 3.0, s, 3000, 42, w)));
    }
    SimConfig a;
    a.n_paths = 5000;
    a.master_seed = 9;
    a.backend = Backend::Serial;
    SimConfig b = a;
    b.backend = Backend::OpenMP;
    b.workers = 3;
    const auto ra = mc_tilted(kMixed, 6.0, 3.0, a);
    const auto rb = mc_tilted(kMixed, 6.0, 3.0, b);
    CHECK(ra.log_estimate == rb.log_estimate);
    CHECK(ra.std_err_rel == rb.std_err_rel);
    CHECK(ra.n_hits == rb.n_hits);
}

TEST_CASE("results depend on the seed only")
{
    SimConfig cfg;
    cfg.n_paths = 4000;
    cfg.master_seed = 5;
    const auto r1 = mc_plain(kBm, 1.0, 1.0, cfg);
    const auto r2 = mc_plain(kBm, 1.0, 1.0, cfg);
    CHECK(r1.log_estimate == r2.log_estimate);
    cfg.master_seed = 6;
    CHECK(mc_plain(kBm, 1.0, 1.0, cfg).log_estimate != r1.log_estimate);
}

TEST_CASE("bridge correction only moves crossings earlier")
{
    const PathSettings with{0.05, true};
    const PathSettings without{0.05, false};
    int gained = 0;
    for (std::uint64_t i = 0; i < 3000; ++i) {
        const auto a = first_passage(kMixed, 1.5, 2.0, with, 17, i);
        const auto b = first_passage(kMixed, 1.5, 2.0, without, 17, i);
        if (b.hit) {
            REQUIRE(a.hit);
            CHECK(*a.tau <= *b.tau);
        } else if (a.hit) {
            ++gained;
        }
    }
    CHECK(gained > 0);
}

TEST_CASE("plain estimator against the exact Brownian probability")
{
    const double ref = bm_exact_passage(-1.0, 1.0, 2.0, 1.0).value;
    SimConfig cfg;
    cfg.n_paths = 200000;
    cfg.master_seed = 1;
    const auto r = mc_plain(kBm, 2.0, 1.0, cfg);
    INFO("log estimate ", r.log_estimate, " se ", r.std_err_rel);
    CHECK(r.n_hits > 500);
    CHECK(within(r, ref, 4.0));
}

TEST_CASE("time-step convergence")
{
    const double ref = bm_exact_passage(-1.0, 1.0, 1.0, 1.0).probability();
    SimConfig cfg;
    cfg.n_paths = 40000;
    cfg.master_seed = 2;
    cfg.barrier_correction = false;
    double prev_err = INFINITY;
    for (double dt : {0.2, 0.05, 0.0125}) {
        cfg.time_step = dt;
        const double err = ref - mc_plain(kBm, 1.0, 1.0, cfg).estimate();
        // Discrete monitoring misses crossings: biased low, bias shrinks.
        CHECK(err > 0.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    // With the bridge correction a coarse grid is already unbiased.
    cfg.barrier_correction = true;
    cfg.time_step = 0.2;
    const auto r = mc_plain(kBm, 1.0, 1.0, cfg);
    CHECK(within(r, std::log(ref), 4.0));
}

TEST_CASE("tilted estimator")
{
    SUBCASE("zero tilt is the plain estimator")
    {
        SimConfig cfg;
        cfg.n_paths = 20000;
        cfg.master_seed = 4;
        cfg.tilt = 0.0;
        const auto t = mc_tilted(kBm, 1.0, 1.0, cfg);
        const auto p = mc_plain(kBm, 1.0, 1.0, cfg);
        CHECK(t.log_estimate == p.log_estimate);
        CHECK(t.std_err_rel == p.std_err_rel);
        CHECK(*t.tilt_used == 0.0);
    }
    SUBCASE("default tilt is Gamma(x / t)")
    {
        SimConfig cfg;
        cfg.n_paths = 1000;
        const auto r = mc_tilted(kCl, 90.0, 30.0, cfg);
        REQUIRE(r.tilt_used);
        CHECK(*r.tilt_used == inverse_psi_prime(kCl, 3.0));
        CHECK(auto_tilt(kCl, 90.0, 30.0) == inverse_psi_prime(kCl, 3.0));
        CHECK(auto_tilt(kCl, 10.0, 30.0) == 0.0);
    }
    SUBCASE("Brownian deep tail")
    {
        SimConfig cfg;
        cfg.n_paths = 20000;
        cfg.master_seed = 8;
        const double ref = bm_exact_passage(-1.0, 1.0, 40.0, 20.0).value;
        const auto r = mc_tilted(kBm, 40.0, 20.0, cfg);
        INFO(r.log_estimate, " vs ", ref);
        CHECK(within(r, ref, 4.0));
        CHECK(r.std_err_rel < 0.05);
    }
    SUBCASE("risk model against exact finite-time ruin")
    {
        SimConfig cfg;
        cfg.n_paths = 100000;
        cfg.master_seed = 11;
        const auto r15 = mc_tilted(kCl, 45.0, 15.0, cfg);
        INFO(r15.log_estimate, " se ", r15.std_err_rel);
        CHECK(within(r15, kClExactT15, 4.0, 1e-4));
        const auto r30 = mc_tilted(kCl, 90.0, 30.0, cfg);
        INFO(r30.log_estimate, " se ", r30.std_err_rel);
        CHECK(within(r30, kClExactT30, 4.0, 1e-4));
    }
    SUBCASE("every weight respects the martingale bound")
    {
        SimConfig cfg;
        cfg.n_paths = 5000;
        for (const auto* m : {&kBm, &kCl, &kMixed}) {
            const double x = 3.0 * psi_derivatives(*m, lundberg_gamma(*m).value).first * 5.0;
            const auto r = mc_tilted(*m, x, 5.0, cfg);
            CHECK(r.log_estimate <= -legendre(*m, x / 5.0).rate + 1e-12);
        }
    }
}

TEST_CASE("degenerate runs")
{
    SimConfig cfg;
    cfg.n_paths = 200;
    const auto r = mc_plain(kBm, 30.0, 1.0, cfg);
    CHECK(r.degenerate);
    CHECK(r.n_hits == 0);
    CHECK(std::isinf(r.log_estimate));
    CHECK(r.log_estimate < 0.0);
    CHECK(r.estimate() == 0.0);
}

TEST_CASE("central limit behaviour of the crossing time")
{
    SimConfig cfg;
    cfg.n_paths = 4000;
    cfg.master_seed = 3;
    const auto rep = clt_diagnostic(kBm, 100.0, 2.0, cfg);
    CHECK(rep.n_missed == 0);
    CHECK(rep.omega2 == doctest::Approx(1.0 / 8.0));
    CHECK(std::abs(rep.mean_z) < 4.0 / std::sqrt(4000.0) + 0.1);
    CHECK(rep.var_z == doctest::Approx(1.0).epsilon(0.15));
    CHECK(rep.mean_tau == doctest::Approx(50.0).epsilon(0.01));
    CHECK_THROWS_AS(clt_diagnostic(kBm, 100.0, 0.5, cfg), RangeError);
    CHECK_THROWS_AS(clt_diagnostic(kBm, 0.0, 2.0, cfg), DomainError);
}

TEST_CASE("configuration validation")
{
    SimConfig cfg;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(validate(cfg, kBm), ValidationError);
    cfg = {};
    cfg.time_step = 0.0;
    CHECK_THROWS_AS(validate(cfg, kBm), ValidationError);
    cfg = {};
    cfg.time_step = NAN;
    CHECK_THROWS_AS(validate(cfg, kBm), ValidationError);
    cfg = {};
    cfg.workers = -1;
    CHECK_THROWS_AS(validate(cfg, kBm), ValidationError);
    cfg = {};
    cfg.tilt = 1.5;
    CHECK_THROWS_AS(validate(cfg, kCl), DomainError);
    CHECK_THROWS_AS(mc_tilted(kCl, 3.0, 1.0, cfg), DomainError);
    cfg.tilt = 0.5;
    CHECK_NOTHROW(validate(cfg, kCl));
}
