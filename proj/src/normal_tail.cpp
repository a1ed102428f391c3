#include "levyfp/normal_tail.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace levyfp {

namespace {

// Rational Chebyshev approximations of W. J. Cody (Math. Comp. 1969),
// the ERFCX branch of CALERF.
constexpr double kA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                          3209.37758913846947, .185777706184603153};
constexpr double kB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                          2844.23683343917062};
constexpr double kC[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                          298.635138197400131, 881.95222124176909,  1712.04761263407058,
                          2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
constexpr double kD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                          1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                          3439.36767414372164, 1230.33935480374942};
constexpr double kP[6] = {.305326634961232344, .360344899949804439, .125781726111229246,
                          .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                          .0605183413124413191, .00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kThresh = 0.46875;
constexpr double kXHuge = 6.71e7;

double erfcx_nonnegative(double y)
{
    if (y <= kThresh) {
        const double ysq = y * y;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        const double erf = y * (num + kA[3]) / (den + kB[3]);
        return std::exp(ysq) * (1.0 - erf);
    }
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        return (num + kC[7]) / (den + kD[7]);
    }
    if (y >= kXHuge)
        return kInvSqrtPi / y;
    const double ysq = 1.0 / (y * y);
    double num = kP[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kP[i]) * ysq;
        den = (den + kQ[i]) * ysq;
    }
    const double r = ysq * (num + kP[4]) / (den + kQ[4]);
    return (kInvSqrtPi - r) / y;
}

} // namespace

double erfcx(double x)
{
    if (x >= 0.0)
        return erfcx_nonnegative(x);
    // erfcx(-y) = 2 exp(y^2) - erfcx(y)
    const double y = -x;
    return 2.0 * std::exp(y * y) - erfcx_nonnegative(y);
}

double mills_ratio_series(double z)
{
    const double r = 1.0 / (z * z);
    return (1.0 - r * (1.0 - r * (3.0 - 15.0 * r))) / z;
}

double log_normal_tail(double z)
{
    if (std::isnan(z))
        return z;
    if (z == std::numeric_limits<double>::infinity())
        return -std::numeric_limits<double>::infinity();
    if (z < 0.0) {
        // 1 - P(N > |z|), kept away from cancellation by log1p.
        return std::log1p(-0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0));
    }
    constexpr double kLogHalf = -0.69314718055994530942;
    if (z > 1e8) {
        const double log_phi = -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
        return log_phi + std::log(mills_ratio_series(z));
    }
    // P(N > z) = erfc(z / sqrt 2) / 2 = exp(-z^2/2) erfcx(z / sqrt 2) / 2
    return kLogHalf - 0.5 * z * z + std::log(erfcx(z / std::numbers::sqrt2));
}

} // namespace levyfp
