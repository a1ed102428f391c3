#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyfp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) noexcept
{
    if (a == kNegInf)
        return b;
    if (b == kNegInf)
        return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

/// Streaming log-sum-exp. Order of push() calls fixes the rounding, so a
/// fixed push order gives bit-identical totals.
class LogSumExp {
public:
    void push(double log_term) noexcept
    {
        if (log_term == kNegInf)
            return;
        if (log_term <= max_) {
            scaled_ += std::exp(log_term - max_);
        } else {
            scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }

    double value() const noexcept { return max_ == kNegInf ? kNegInf : max_ + std::log(scaled_); }

private:
    double max_ = kNegInf;
    double scaled_ = 0.0;
};

} // namespace levyfp
