#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "levyfp/levy_model.hpp"

namespace levyfp {

/// Run settings a configuration file may carry; command-line flags override
/// them.
struct RunDefaults {
    std::int64_t paths = 100000;
    std::uint64_t seed = 0;
    double step = 0.01;
    /// Empty means "auto".
    std::optional<double> tilt;
    bool bridge = true;
};

struct ParsedConfig {
    LevyModel model;
    std::string model_id;
    RunDefaults defaults;
};

/// Parses flat `key=value` configuration text ('#' starts a comment).
///
///   model.type   brownian | cramer_lundberg | jump_diffusion   (required)
///   model.id     label used in output tables (default: model.type)
///   brownian:        model.drift, model.sigma
///   cramer_lundberg: model.lambda, model.claim_rate, model.premium
///   jump_diffusion:  model.drift, model.sigma (default 0), model.lambda,
///                    model.jumps = weight:rate:sign[,weight:rate:sign...]
///   sim.paths, sim.seed, sim.step, sim.tilt (real | auto), sim.bridge
///
/// Throws ParseError (with line number) for malformed or unknown keys and
/// ValidationError when the described model is not admissible.
ParsedConfig parse_config(std::string_view text);

ParsedConfig load_config(const std::string& path);

} // namespace levyfp
