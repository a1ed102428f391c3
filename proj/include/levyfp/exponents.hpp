#pragma once

#include "levyfp/levy_model.hpp"

namespace levyfp {

/// Positive root of psi, or 0 when the process does not drift to -inf.
struct LundbergExponent {
    double value = 0.0;
    /// True iff psi'(0) < 0, i.e. value > 0 and exponential decay holds.
    bool cramer_holds = false;
};

/// Roots and conjugate quantities of psi attached to one slope v = x / t.
struct ExponentReport {
    double v = 0.0;
    double lundberg = 0.0;        // gamma = sup{theta : psi(theta) = 0}
    double critical_slope = 0.0;  // psi'(gamma), the regime boundary
    double slope_tilt = 0.0;      // Gamma(v): psi'(Gamma(v)) = v
    double tilted_growth = 0.0;   // eta_v = psi(Gamma(v))
    double rate = 0.0;            // psi*(v) = v Gamma(v) - psi(Gamma(v))
    double curvature = 0.0;       // psi''(Gamma(v))
    bool cramer_holds = false;
};

LundbergExponent lundberg_gamma(const LevyModel& model);

/// Right-inverse of psi' on the positive half-line. Throws RangeError when
/// v is not strictly between psi'(0) and sup psi'.
double inverse_psi_prime(const LevyModel& model, double v);

ExponentReport legendre(const LevyModel& model, double v);

/// Largest root of psi(theta) = alpha, alpha >= 0.
double big_phi(const LevyModel& model, double alpha);

/// Largest root of psi(-theta) = alpha, alpha >= 0.
double big_phi_hat(const LevyModel& model, double alpha);

/// Largest theta > 0 with psi(-theta) = psi(Gamma(v)); requires
/// psi(Gamma(v)) > 0.
double gamma_tilde(const LevyModel& model, double v);

} // namespace levyfp
