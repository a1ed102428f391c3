#include "levyfp/run_table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace levyfp {

namespace {

std::string csv_field(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string{};
}

std::string json_number(double v)
{
    return std::isfinite(v) ? format_real(v) : std::string("null");
}

std::string json_field(const std::optional<double>& v)
{
    return v ? json_number(*v) : std::string("null");
}

template <class Int>
std::string int_field(const std::optional<Int>& v, bool json)
{
    return v ? std::to_string(*v) : std::string(json ? "null" : "");
}

std::string json_string(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

double read_real(const std::string& s)
{
    if (s == "inf")
        return INFINITY;
    if (s == "-inf")
        return -INFINITY;
    if (s == "nan")
        return NAN;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("invalid numeric field '" + s + "'");
    return v;
}

std::optional<double> read_optional(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    return read_real(s);
}

template <class Int>
std::optional<Int> read_optional_int(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("invalid integer field '" + s + "'");
    return v;
}

} // namespace

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_header(std::ostream& os, TableFormat format)
{
    if (format != TableFormat::Csv)
        return;
    for (std::size_t i = 0; i < kRunTableColumns.size(); ++i)
        os << (i ? "," : "") << kRunTableColumns[i];
    os << '\n';
}

void write_row(std::ostream& os, const RunRow& row, TableFormat format)
{
    if (format == TableFormat::Csv) {
        os << row.model_id << ',' << format_real(row.x) << ',' << format_real(row.t) << ','
           << format_real(row.v) << ',' << row.regime << ',' << format_real(row.gamma) << ','
           << format_real(row.Gamma_v) << ',' << format_real(row.psi_star) << ','
           << csv_field(row.log_asymptotic) << ',' << csv_field(row.log_mc) << ','
           << csv_field(row.mc_se_rel) << ',' << csv_field(row.log_oracle) << ','
           << int_field(row.n_paths, false) << ',' << int_field(row.seed, false) << '\n';
        return;
    }
    os << '{' << "\"model_id\":" << json_string(row.model_id) << ",\"x\":" << json_number(row.x)
       << ",\"t\":" << json_number(row.t) << ",\"v\":" << json_number(row.v)
       << ",\"regime\":" << json_string(row.regime) << ",\"gamma\":" << json_number(row.gamma)
       << ",\"Gamma_v\":" << json_number(row.Gamma_v) << ",\"psi_star\":" << json_number(row.psi_star)
       << ",\"log_asymptotic\":" << json_field(row.log_asymptotic)
       << ",\"log_mc\":" << json_field(row.log_mc) << ",\"mc_se_rel\":" << json_field(row.mc_se_rel)
       << ",\"log_oracle\":" << json_field(row.log_oracle)
       << ",\"n_paths\":" << int_field(row.n_paths, true) << ",\"seed\":" << int_field(row.seed, true)
       << "}\n";
}

std::vector<RunRow> read_csv_table(std::istream& is)
{
    std::vector<RunRow> rows;
    std::string line;
    if (!std::getline(is, line))
        return rows;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            f.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos)
                break;
            start = pos + 1;
        }
        if (f.size() != kRunTableColumns.size())
            throw std::invalid_argument("row has " + std::to_string(f.size()) + " fields");
        RunRow r;
        r.model_id = f[0];
        r.x = read_real(f[1]);
        r.t = read_real(f[2]);
        r.v = read_real(f[3]);
        r.regime = f[4];
        r.gamma = read_real(f[5]);
        r.Gamma_v = read_real(f[6]);
        r.psi_star = read_real(f[7]);
        r.log_asymptotic = read_optional(f[8]);
        r.log_mc = read_optional(f[9]);
        r.mc_se_rel = read_optional(f[10]);
        r.log_oracle = read_optional(f[11]);
        r.n_paths = read_optional_int<std::int64_t>(f[12]);
        r.seed = read_optional_int<std::uint64_t>(f[13]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace levyfp
