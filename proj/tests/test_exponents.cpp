#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyfp/errors.hpp"
#include "levyfp/exponents.hpp"
#include "test_support.hpp"

using namespace levyfp;
using levyfp::testing::bisect;
using levyfp::testing::random_model;
using levyfp::testing::rel_err;

namespace {

const LevyModel kBm = LevyModel::brownian(-1.0, 1.0);
const LevyModel kCl = LevyModel::cramer_lundberg(1.0, 1.0, 2.0);

// Reference values for the risk model at v = 3, computed in 40-digit arithmetic.
constexpr double kClSlopeTilt = 0.55278640450004206072;
constexpr double kClGrowth = 0.13049516849970557497;
constexpr double kClRate = 1.5278640450004206072;
constexpr double kClCurvature = 22.360679774997896964;
constexpr double kClMirror = 0.1180339887498948482;

// sup_theta (v theta - psi(theta)) by ternary search on [lo, hi].
double conjugate_by_search(const LevyModel& m, double v, double lo, double hi)
{
    auto g = [&](double th) { return v * th - psi(m, th); };
    for (int i = 0; i < 300; ++i) {
        const double a = lo + (hi - lo) / 3.0;
        const double b = hi - (hi - lo) / 3.0;
        (g(a) < g(b) ? lo : hi) = (g(a) < g(b) ? a : b);
    }
    return g(0.5 * (lo + hi));
}

} // namespace

TEST_CASE("Lundberg exponent")
{
    const auto bm = lundberg_gamma(kBm);
    CHECK(bm.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(bm.cramer_holds);
    const auto cl = lundberg_gamma(kCl);
    CHECK(cl.value == doctest::Approx(0.5).epsilon(1e-14));

    const auto up = lundberg_gamma(LevyModel::brownian(0.5, 1.0));
    CHECK(up.value == 0.0);
    CHECK_FALSE(up.cramer_holds);
    CHECK(lundberg_gamma(LevyModel::brownian(0.0, 1.0)).value == 0.0);

    // Unit-variance Brownian motion with drift -mu has gamma = 2 mu.
    for (double mu : {0.01, 0.3, 1.7, 25.0})
        CHECK(lundberg_gamma(LevyModel::brownian(-mu, 1.0)).value == doctest::Approx(2.0 * mu).epsilon(1e-12));
}

TEST_CASE("Lundberg exponent on random models")
{
    std::mt19937_64 gen(21);
    int checked = 0;
    for (int m = 0; m < 200 && checked < 60; ++m) {
        const auto model = random_model(gen);
        if (psi_derivatives(model, 0.0).first >= 0.0)
            continue;
        ++checked;
        const auto g = lundberg_gamma(model);
        INFO(model.describe());
        REQUIRE(g.cramer_holds);
        CHECK(g.value > 0.0);
        CHECK(std::abs(psi(model, g.value)) < 1e-10);
        CHECK(psi_derivatives(model, g.value).first > 0.0);
        const double ref = bisect([&](double th) { return psi(model, th); },
                                  bisect([&](double th) { return psi_derivatives(model, th).first; }, 0.0,
                                         std::min(model.domain().upper * (1 - 1e-12), 1e6)),
                                  std::min(model.domain().upper * (1 - 1e-12), 1e6));
        CHECK(rel_err(g.value, ref) < 1e-9);
    }
    CHECK(checked >= 30);
}

TEST_CASE("slope tilt Gamma(v)")
{
    for (double v : {-0.5, 0.0, 1.0, 2.0, 10.0})
        CHECK(inverse_psi_prime(kBm, v) == doctest::Approx(v + 1.0).epsilon(1e-13));

    CHECK(inverse_psi_prime(kCl, 3.0) == doctest::Approx(kClSlopeTilt).epsilon(1e-13));
    const double ref = bisect([](double th) { return psi_derivatives(kCl, th).first - 3.0; }, 0.0, 1.0 - 1e-12);
    CHECK(inverse_psi_prime(kCl, 3.0) == doctest::Approx(ref).epsilon(1e-12));
    for (double v : {-0.99, -0.5, 0.5, 2.0, 100.0, 1e6}) {
        const double th = inverse_psi_prime(kCl, v);
        CHECK(th > 0.0);
        CHECK(th < 1.0);
        CHECK(psi_derivatives(kCl, th).first == doctest::Approx(v).epsilon(1e-10));
    }
}

TEST_CASE("slope tilt range errors")
{
    CHECK_THROWS_AS(inverse_psi_prime(kBm, -1.0), RangeError);
    CHECK_THROWS_AS(inverse_psi_prime(kBm, -2.0), RangeError);
    CHECK_THROWS_AS(inverse_psi_prime(kCl, -1.0), RangeError);
    CHECK_THROWS_AS(inverse_psi_prime(kBm, INFINITY), RangeError);
    const auto sn = LevyModel::jump_diffusion(0.3, 0.0, {1.0, {{1.0, 2.0, JumpDirection::Down}}});
    CHECK_THROWS_AS(inverse_psi_prime(sn, 0.3), RangeError);
    CHECK_THROWS_AS(inverse_psi_prime(sn, 0.5), RangeError);
    CHECK(psi_derivatives(sn, inverse_psi_prime(sn, 0.2)).first == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("Legendre transform")
{
    SUBCASE("Brownian closed form (v + 1)^2 / 2")
    {
        for (double v : {0.5, 1.0, 2.0, 7.0}) {
            const auto r = legendre(kBm, v);
            CHECK(r.rate == doctest::Approx(0.5 * (v + 1) * (v + 1)).epsilon(1e-13));
            CHECK(r.tilted_growth == doctest::Approx(0.5 * (v * v - 1)).epsilon(1e-12));
            CHECK(r.curvature == 1.0);
            CHECK(r.critical_slope == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    SUBCASE("risk model at v = 3")
    {
        const auto r = legendre(kCl, 3.0);
        CHECK(r.lundberg == doctest::Approx(0.5));
        CHECK(r.critical_slope == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(r.slope_tilt == doctest::Approx(kClSlopeTilt).epsilon(1e-13));
        CHECK(r.tilted_growth == doctest::Approx(kClGrowth).epsilon(1e-12));
        CHECK(r.rate == doctest::Approx(kClRate).epsilon(1e-13));
        CHECK(r.curvature == doctest::Approx(kClCurvature).epsilon(1e-12));
        CHECK(r.rate == doctest::Approx(conjugate_by_search(kCl, 3.0, 0.0, 1.0 - 1e-9)).epsilon(1e-4));
    }
    SUBCASE("conjugate by direct search on random models")
    {
        std::mt19937_64 gen(22);
        for (int m = 0; m < 30; ++m) {
            const auto model = random_model(gen);
            const double slope0 = psi_derivatives(model, 0.0).first;
            const double v = slope0 + 0.5;
            if (v >= psi_prime_supremum(model))
                continue;
            const double hi = std::min(50.0, model.domain().upper * (1 - 1e-9));
            INFO(model.describe(), " v=", v);
            CHECK(legendre(model, v).rate ==
                  doctest::Approx(conjugate_by_search(model, v, 0.0, hi)).epsilon(1e-6));
        }
    }
}

TEST_CASE("shape of the conjugate")
{
    for (const auto* m : {&kBm, &kCl}) {
        // Convex in v.
        for (double v = 0.5; v < 8.0; v += 0.37) {
            const double a = legendre(*m, v).rate, b = legendre(*m, v + 0.2).rate, c = legendre(*m, v + 0.4).rate;
            CHECK(b <= 0.5 * (a + c) + 1e-12);
        }
        // Derivative in v equals Gamma(v).
        for (double v : {0.7, 1.5, 3.0, 6.0}) {
            const double h = 1e-5;
            const double fd = (legendre(*m, v + h).rate - legendre(*m, v - h).rate) / (2 * h);
            CHECK(fd == doctest::Approx(inverse_psi_prime(*m, v)).epsilon(1e-5));
        }
    }
}

TEST_CASE("crossover at the critical slope")
{
    for (const auto* m : {&kBm, &kCl}) {
        const auto lund = lundberg_gamma(*m);
        const double crit = psi_derivatives(*m, lund.value).first;
        const auto r = legendre(*m, crit);
        CHECK(r.slope_tilt == doctest::Approx(lund.value).epsilon(1e-10));
        CHECK(std::abs(r.tilted_growth) < 1e-10);
        CHECK(r.rate == doctest::Approx(crit * lund.value).epsilon(1e-10));
        // eta_v changes sign across the critical slope.
        CHECK(legendre(*m, 0.9 * crit).tilted_growth < 0.0);
        CHECK(legendre(*m, 1.1 * crit).tilted_growth > 0.0);
    }
}

TEST_CASE("right inverses of psi")
{
    CHECK(big_phi(kBm, 0.0) == doctest::Approx(2.0));
    // psi(theta) = theta^2/2 - theta: largest root of = alpha is 1 + sqrt(1 + 2 alpha).
    for (double a : {0.1, 1.5, 10.0})
        CHECK(big_phi(kBm, a) == doctest::Approx(1.0 + std::sqrt(1.0 + 2.0 * a)).epsilon(1e-13));
    // psi(-theta) = theta^2/2 + theta: largest root is -1 + sqrt(1 + 2 alpha).
    for (double a : {0.1, 1.5, 10.0})
        CHECK(big_phi_hat(kBm, a) == doctest::Approx(-1.0 + std::sqrt(1.0 + 2.0 * a)).epsilon(1e-13));
    CHECK(big_phi_hat(kBm, 0.0) == 0.0);

    for (double a : {0.01, 0.5, 3.0, 100.0}) {
        const double th = big_phi(kCl, a);
        CHECK(th > 0.5);
        CHECK(th < 1.0);
        CHECK(psi(kCl, th) == doctest::Approx(a).epsilon(1e-10));
    }
    CHECK_THROWS_AS(big_phi(kCl, -0.1), DomainError);

    // Round trip on the increasing branch of random models.
    std::mt19937_64 gen(23);
    for (int m = 0; m < 40; ++m) {
        const auto model = random_model(gen);
        const double start = lundberg_gamma(model).value;
        const double hi = std::min(start + 5.0, start + 0.9 * (model.domain().upper - start));
        for (double f : {0.1, 0.5, 0.9}) {
            const double th = start + f * (hi - start);
            CHECK(std::abs(big_phi(model, psi(model, th)) - th) <= 1e-9 * std::max(1.0, th));
        }
    }
    CHECK_THROWS_AS(big_phi_hat(kCl, -0.1), DomainError);
}

TEST_CASE("mirror root Gamma-tilde")
{
    CHECK(gamma_tilde(kCl, 3.0) == doctest::Approx(kClMirror).epsilon(1e-12));
    const double ref = bisect([](double th) { return psi(kCl, -th) - kClGrowth; }, 0.0, 10.0);
    CHECK(gamma_tilde(kCl, 3.0) == doctest::Approx(ref).epsilon(1e-12));
    // Brownian: -1 + sqrt(1 + (v^2 - 1)) = v - 1.
    CHECK(gamma_tilde(kBm, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_tilde(kCl, 1.0), RangeError);
    CHECK_THROWS_AS(gamma_tilde(kBm, 0.5), RangeError);
}
