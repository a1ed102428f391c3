#include "levyfp/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "levyfp/errors.hpp"

namespace levyfp {

namespace {

struct Entry {
    std::string value;
    int line;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError(line, "invalid real value for " + std::string(key) + ": '" + std::string(text) + "'");
    return value;
}

template <class Int>
Int parse_integer(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError(line, "invalid integer value for " + std::string(key) + ": '" + std::string(text) + "'");
    return value;
}

bool parse_bool(std::string_view text, int line, std::string_view key)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "off")
        return false;
    throw ParseError(line, "invalid boolean value for " + std::string(key));
}

JumpDirection parse_sign(std::string_view text, int line)
{
    text = trim(text);
    if (text == "+1" || text == "1" || text == "+" || text == "up")
        return JumpDirection::Up;
    if (text == "-1" || text == "-" || text == "down")
        return JumpDirection::Down;
    throw ParseError(line, "jump sign must be +1 or -1, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

JumpSpec parse_jumps(std::string_view text, double intensity, int line)
{
    JumpSpec spec;
    spec.intensity = intensity;
    for (auto item : split(text, ',')) {
        const auto fields = split(trim(item), ':');
        if (fields.size() != 3)
            throw ParseError(line, "jump component must be weight:rate:sign");
        spec.components.push_back({parse_real(fields[0], line, "model.jumps"),
                                   parse_real(fields[1], line, "model.jumps"), parse_sign(fields[2], line)});
    }
    return spec;
}

const std::set<std::string, std::less<>> kCommonKeys = {
    "model.type", "model.id", "sim.paths", "sim.seed", "sim.step", "sim.tilt", "sim.bridge"};

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> kModelKeys = {
    {"brownian", {"model.drift", "model.sigma"}},
    {"cramer_lundberg", {"model.lambda", "model.claim_rate", "model.premium"}},
    {"jump_diffusion", {"model.drift", "model.sigma", "model.lambda", "model.jumps"}},
};

} // namespace

ParsedConfig parse_config(std::string_view text)
{
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ParseError(line_no, "empty key");
        bool known = kCommonKeys.contains(key);
        for (const auto& [type, keys] : kModelKeys)
            known = known || keys.contains(key);
        if (!known)
            throw ParseError(line_no, "unknown key '" + key + "'");
        if (entries.contains(key))
            throw ParseError(line_no, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{value, line_no});
    }

    const auto type_it = entries.find("model.type");
    if (type_it == entries.end())
        throw ParseError(line_no, "missing required key 'model.type'");
    const std::string type = type_it->second.value;
    const auto allowed = kModelKeys.find(type);
    if (allowed == kModelKeys.end())
        throw ParseError(type_it->second.line, "unknown model.type '" + type + "'");

    for (const auto& [key, entry] : entries) {
        if (key.starts_with("model.") && !kCommonKeys.contains(key) && !allowed->second.contains(key))
            throw ParseError(entry.line, "key '" + key + "' does not apply to model.type=" + type);
    }

    auto require = [&](const std::string& key) -> const Entry& {
        const auto it = entries.find(key);
        if (it == entries.end())
            throw ParseError(line_no, "missing required key '" + key + "' for model.type=" + type);
        return it->second;
    };
    auto real = [&](const std::string& key) {
        const auto& e = require(key);
        return parse_real(e.value, e.line, key);
    };

    auto model = [&]() {
        if (type == "brownian")
            return LevyModel::brownian(real("model.drift"), real("model.sigma"));
        if (type == "cramer_lundberg")
            return LevyModel::cramer_lundberg(real("model.lambda"), real("model.claim_rate"), real("model.premium"));
        const double sigma = entries.contains("model.sigma") ? real("model.sigma") : 0.0;
        const auto& jumps = require("model.jumps");
        return LevyModel::jump_diffusion(real("model.drift"), sigma,
                                         parse_jumps(jumps.value, real("model.lambda"), jumps.line));
    }();

    ParsedConfig out{std::move(model), type, {}};
    if (auto it = entries.find("model.id"); it != entries.end()) {
        if (it->second.value.empty() || it->second.value.find_first_of(",\"") != std::string::npos)
            throw ParseError(it->second.line, "model.id must be non-empty and contain no ',' or '\"'");
        out.model_id = it->second.value;
    }
    if (auto it = entries.find("sim.paths"); it != entries.end()) {
        out.defaults.paths = parse_integer<std::int64_t>(it->second.value, it->second.line, "sim.paths");
        if (out.defaults.paths <= 0)
            throw ParseError(it->second.line, "sim.paths must be > 0");
    }
    if (auto it = entries.find("sim.seed"); it != entries.end())
        out.defaults.seed = parse_integer<std::uint64_t>(it->second.value, it->second.line, "sim.seed");
    if (auto it = entries.find("sim.step"); it != entries.end()) {
        out.defaults.step = parse_real(it->second.value, it->second.line, "sim.step");
        if (!(out.defaults.step > 0.0))
            throw ParseError(it->second.line, "sim.step must be > 0");
    }
    if (auto it = entries.find("sim.tilt"); it != entries.end() && it->second.value != "auto")
        out.defaults.tilt = parse_real(it->second.value, it->second.line, "sim.tilt");
    if (auto it = entries.find("sim.bridge"); it != entries.end())
        out.defaults.bridge = parse_bool(it->second.value, it->second.line, "sim.bridge");
    return out;
}

ParsedConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace levyfp
