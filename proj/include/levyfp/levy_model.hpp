#pragma once

#include <limits>
#include <string>
#include <vector>

namespace levyfp {

enum class ModelKind { Brownian, CramerLundberg, JumpDiffusion };

enum class JumpDirection : int { Down = -1, Up = 1 };

enum class SpectralClass { SpectrallyNegative, SpectrallyPositive, TwoSided };

/// One exponential component of the jump-size mixture. A jump of this
/// component has size `direction * Exp(rate)`.
struct JumpComponent {
    double weight = 1.0;
    double rate = 1.0;
    JumpDirection direction = JumpDirection::Up;

    double sign() const noexcept { return static_cast<double>(static_cast<int>(direction)); }
};

/// Compound Poisson part: jumps arrive at rate `intensity` with sizes drawn
/// from a finite mixture of (signed) exponentials.
struct JumpSpec {
    double intensity = 0.0;
    std::vector<JumpComponent> components;

    bool active() const noexcept { return intensity > 0.0 && !components.empty(); }
    bool has_direction(JumpDirection d) const noexcept;
};

/// Maximal open interval on which psi is finite.
struct Theta {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double theta) const noexcept { return theta > lower && theta < upper; }
};

struct PsiDerivatives {
    double first;
    double second;
};

/// Levy process X(t) = drift*t + sigma*W(t) + (compound Poisson jumps), with
/// Laplace exponent psi(theta) = log E exp(theta X(1)).
///
/// Instances are immutable once built; every factory validates the
/// admissibility conditions (non-monotone paths, no pure compound Poisson
/// process without drift, positive rates, normalised mixture weights) and
/// throws ValidationError on violation.
class LevyModel {
public:
    static LevyModel brownian(double drift, double sigma);

    /// Claim-surplus process of the classical risk model: claims arrive at
    /// rate `lambda` with Exp(claim_rate) sizes, premium collected at rate
    /// `premium`. X(t) = sum of claims - premium * t.
    static LevyModel cramer_lundberg(double lambda, double claim_rate, double premium);

    static LevyModel jump_diffusion(double drift, double sigma, JumpSpec jumps);

    ModelKind kind() const noexcept { return kind_; }
    double drift() const noexcept { return drift_; }
    double sigma() const noexcept { return sigma_; }
    const JumpSpec& jumps() const noexcept { return jumps_; }

    // Classical risk parameters; meaningful for kind() == CramerLundberg.
    double lambda() const noexcept { return jumps_.intensity; }
    double claim_rate() const;
    double premium() const noexcept { return -drift_; }

    Theta domain() const noexcept { return domain_; }

    /// psi'(0) = E X(1).
    double mean() const noexcept;

    std::string describe() const;

private:
    LevyModel(ModelKind kind, double drift, double sigma, JumpSpec jumps);

    ModelKind kind_;
    double drift_;
    double sigma_;
    JumpSpec jumps_;
    Theta domain_;
};

/// Laplace exponent. Throws DomainError outside the open domain or within
/// 1e-9 * rate of a mixture pole.
double psi(const LevyModel& model, double theta);

PsiDerivatives psi_derivatives(const LevyModel& model, double theta);

/// Esscher transform: the returned model has exponent
/// psi(alpha + c) - psi(c).
LevyModel tilt(const LevyModel& model, double c);

SpectralClass spectral_class(const LevyModel& model);

/// The process -X, with exponent psi(-theta).
LevyModel reflect(const LevyModel& model);

/// Throws DomainError unless theta lies strictly inside the domain and away
/// from the poles.
void require_interior(const LevyModel& model, double theta);

/// Supremum of psi' over the positive half of the domain (+inf whenever a
/// Gaussian part or upward jumps are present).
double psi_prime_supremum(const LevyModel& model);

const char* to_string(ModelKind kind);
const char* to_string(SpectralClass cls);

} // namespace levyfp
