#include "levyfp/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyfp/errors.hpp"

namespace levyfp {

namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kPoleGuard = 1e-9;

void validate_jumps(const JumpSpec& jumps)
{
    if (!(jumps.intensity >= 0.0) || !std::isfinite(jumps.intensity))
        throw ValidationError("jump intensity must be finite and >= 0");
    if (jumps.intensity > 0.0 && jumps.components.empty())
        throw ValidationError("positive jump intensity requires at least one jump component");

    double total = 0.0;
    for (const auto& comp : jumps.components) {
        if (!(comp.rate > 0.0) || !std::isfinite(comp.rate))
            throw ValidationError("jump rates must be finite and > 0");
        if (!(comp.weight > 0.0 && comp.weight <= 1.0))
            throw ValidationError("jump weights must lie in (0, 1]");
        if (comp.direction != JumpDirection::Up && comp.direction != JumpDirection::Down)
            throw ValidationError("jump sign must be +1 or -1");
        total += comp.weight;
    }
    if (!jumps.components.empty() && std::abs(total - 1.0) > kWeightTolerance)
        throw ValidationError("jump weights must sum to 1");
}

Theta compute_domain(const JumpSpec& jumps)
{
    Theta dom;
    if (!jumps.active())
        return dom;
    for (const auto& comp : jumps.components) {
        if (comp.direction == JumpDirection::Up)
            dom.upper = std::min(dom.upper, comp.rate);
        else
            dom.lower = std::max(dom.lower, -comp.rate);
    }
    return dom;
}

} // namespace

bool JumpSpec::has_direction(JumpDirection d) const noexcept
{
    if (!active())
        return false;
    return std::any_of(components.begin(), components.end(),
                       [d](const JumpComponent& c) { return c.direction == d; });
}

LevyModel::LevyModel(ModelKind kind, double drift, double sigma, JumpSpec jumps)
    : kind_(kind), drift_(drift), sigma_(sigma), jumps_(std::move(jumps))
{
    if (!std::isfinite(drift_))
        throw ValidationError("drift must be finite");
    if (!(sigma_ >= 0.0) || !std::isfinite(sigma_))
        throw ValidationError("sigma must be finite and >= 0");
    validate_jumps(jumps_);
    if (!jumps_.active())
        jumps_ = JumpSpec{};

    if (sigma_ == 0.0) {
        const bool up = jumps_.has_direction(JumpDirection::Up);
        const bool down = jumps_.has_direction(JumpDirection::Down);
        if (!jumps_.active())
            throw ValidationError("monotone paths: sigma = 0 and no jumps");
        if (drift_ >= 0.0 && !down)
            throw ValidationError("monotone paths: non-decreasing (drift >= 0, no downward jumps)");
        if (drift_ <= 0.0 && !up)
            throw ValidationError("monotone paths: non-increasing (drift <= 0, no upward jumps)");
        if (drift_ == 0.0)
            throw ValidationError("pure compound Poisson process without drift is excluded");
    }
    domain_ = compute_domain(jumps_);
}

LevyModel LevyModel::brownian(double drift, double sigma)
{
    if (!(sigma > 0.0))
        throw ValidationError("monotone paths: Brownian model requires sigma > 0");
    return LevyModel(ModelKind::Brownian, drift, sigma, JumpSpec{});
}

LevyModel LevyModel::cramer_lundberg(double lambda, double claim_rate, double premium)
{
    if (!(lambda > 0.0))
        throw ValidationError("claim arrival rate lambda must be > 0");
    if (!(claim_rate > 0.0))
        throw ValidationError("claim rate must be > 0");
    if (!(premium > 0.0))
        throw ValidationError("premium rate must be > 0");
    JumpSpec jumps{lambda, {JumpComponent{1.0, claim_rate, JumpDirection::Up}}};
    return LevyModel(ModelKind::CramerLundberg, -premium, 0.0, std::move(jumps));
}

LevyModel LevyModel::jump_diffusion(double drift, double sigma, JumpSpec jumps)
{
    return LevyModel(ModelKind::JumpDiffusion, drift, sigma, std::move(jumps));
}

double LevyModel::claim_rate() const
{
    if (kind_ != ModelKind::CramerLundberg)
        throw UnsupportedModel("claim_rate is defined for the Cramer-Lundberg model only");
    return jumps_.components.front().rate;
}

double LevyModel::mean() const noexcept
{
    double m = drift_;
    for (const auto& comp : jumps_.components)
        m += jumps_.intensity * comp.weight * comp.sign() / comp.rate;
    return m;
}

std::string LevyModel::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind_) << "(drift=" << drift_ << ", sigma=" << sigma_;
    if (jumps_.active()) {
        os << ", lambda=" << jumps_.intensity << ", jumps=[";
        for (std::size_t i = 0; i < jumps_.components.size(); ++i) {
            const auto& c = jumps_.components[i];
            os << (i ? "," : "") << c.weight << ':' << c.rate << ':'
               << (c.direction == JumpDirection::Up ? "+1" : "-1");
        }
        os << ']';
    }
    os << ')';
    return os.str();
}

void require_interior(const LevyModel& model, double theta)
{
    if (!std::isfinite(theta))
        throw DomainError("theta must be finite");
    const Theta dom = model.domain();
    if (!dom.contains(theta))
        throw DomainError("theta outside the open domain of psi");
    const auto& jumps = model.jumps();
    for (const auto& comp : jumps.components) {
        const double gap = comp.rate - comp.sign() * theta;
        if (gap <= kPoleGuard * comp.rate)
            throw DomainError("theta too close to a pole of psi");
    }
}

double psi(const LevyModel& model, double theta)
{
    require_interior(model, theta);
    const double s2 = model.sigma() * model.sigma();
    double value = model.drift() * theta + 0.5 * s2 * theta * theta;
    const auto& jumps = model.jumps();
    // w * (r / (r - s theta) - 1) = w * s theta / (r - s theta): exact zero at theta = 0.
    double jump_part = 0.0;
    for (const auto& comp : jumps.components) {
        const double s = comp.sign();
        jump_part += comp.weight * s * theta / (comp.rate - s * theta);
    }
    return value + jumps.intensity * jump_part;
}

PsiDerivatives psi_derivatives(const LevyModel& model, double theta)
{
    require_interior(model, theta);
    const double s2 = model.sigma() * model.sigma();
    double d1 = model.drift() + s2 * theta;
    double d2 = s2;
    const auto& jumps = model.jumps();
    for (const auto& comp : jumps.components) {
        const double gap = comp.rate - comp.sign() * theta;
        const double k = jumps.intensity * comp.weight * comp.rate / (gap * gap);
        d1 += comp.sign() * k;
        d2 += 2.0 * k / gap;
    }
    return {d1, d2};
}

LevyModel tilt(const LevyModel& model, double c)
{
    require_interior(model, c);
    if (c == 0.0)
        return model;
    const double s2 = model.sigma() * model.sigma();
    const double drift = model.drift() + s2 * c;

    JumpSpec tilted;
    if (model.jumps().active()) {
        const auto& src = model.jumps();
        double mass = 0.0;
        std::vector<double> masses;
        masses.reserve(src.components.size());
        for (const auto& comp : src.components) {
            const double m = comp.weight * comp.rate / (comp.rate - comp.sign() * c);
            masses.push_back(m);
            mass += m;
        }
        tilted.intensity = src.intensity * mass;
        for (std::size_t i = 0; i < src.components.size(); ++i) {
            const auto& comp = src.components[i];
            tilted.components.push_back(
                {masses[i] / mass, comp.rate - comp.sign() * c, comp.direction});
        }
        // Re-normalise so that the weights sum to 1 to the last bit.
        double total = 0.0;
        for (const auto& comp : tilted.components)
            total += comp.weight;
        for (auto& comp : tilted.components)
            comp.weight /= total;
    }

    switch (model.kind()) {
    case ModelKind::Brownian:
        return LevyModel::brownian(drift, model.sigma());
    case ModelKind::CramerLundberg:
        return LevyModel::cramer_lundberg(tilted.intensity, tilted.components.front().rate,
                                          -drift);
    case ModelKind::JumpDiffusion:
        break;
    }
    return LevyModel::jump_diffusion(drift, model.sigma(), std::move(tilted));
}

SpectralClass spectral_class(const LevyModel& model)
{
    const auto& jumps = model.jumps();
    if (!jumps.has_direction(JumpDirection::Up))
        return SpectralClass::SpectrallyNegative;
    if (!jumps.has_direction(JumpDirection::Down) && model.sigma() == 0.0)
        return SpectralClass::SpectrallyPositive;
    return SpectralClass::TwoSided;
}

LevyModel reflect(const LevyModel& model)
{
    JumpSpec flipped = model.jumps();
    for (auto& comp : flipped.components)
        comp.direction = comp.direction == JumpDirection::Up ? JumpDirection::Down : JumpDirection::Up;
    if (model.kind() == ModelKind::Brownian)
        return LevyModel::brownian(-model.drift(), model.sigma());
    return LevyModel::jump_diffusion(-model.drift(), model.sigma(), std::move(flipped));
}

double psi_prime_supremum(const LevyModel& model)
{
    if (model.sigma() > 0.0 || model.jumps().has_direction(JumpDirection::Up))
        return std::numeric_limits<double>::infinity();
    // Only downward jumps: psi'(theta) -> drift as theta -> inf.
    return model.drift();
}

const char* to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Brownian: return "brownian";
    case ModelKind::CramerLundberg: return "cramer_lundberg";
    case ModelKind::JumpDiffusion: return "jump_diffusion";
    }
    return "unknown";
}

const char* to_string(SpectralClass cls)
{
    switch (cls) {
    case SpectralClass::SpectrallyNegative: return "spectrally_negative";
    case SpectralClass::SpectrallyPositive: return "spectrally_positive";
    case SpectralClass::TwoSided: return "two_sided";
    }
    return "unknown";
}

} // namespace levyfp
