#pragma once

namespace levyfp {

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// log P(N(0,1) > z), accurate far into the upper tail (no underflow).
double log_normal_tail(double z);

/// Four-term asymptotic series of the Mills ratio P(N > z) / phi(z),
/// 1/z * (1 - 1/z^2 + 3/z^4 - 15/z^6). Intended for z beyond ~1e8.
double mills_ratio_series(double z);

} // namespace levyfp
