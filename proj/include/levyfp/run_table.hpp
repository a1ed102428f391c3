#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levyfp {

enum class TableFormat { Csv, JsonLines };

/// One comparison row: asymptotic approximation, Monte Carlo estimate and
/// (when available) an exact oracle, all as natural logs.
struct RunRow {
    std::string model_id;
    double x = 0.0;
    double t = 0.0;
    double v = 0.0;
    std::string regime;
    double gamma = 0.0;
    double Gamma_v = 0.0;
    double psi_star = 0.0;
    std::optional<double> log_asymptotic;
    std::optional<double> log_mc;
    std::optional<double> mc_se_rel;
    std::optional<double> log_oracle;
    std::optional<std::int64_t> n_paths;
    std::optional<std::uint64_t> seed;

    bool operator==(const RunRow&) const = default;
};

inline constexpr std::array<std::string_view, 14> kRunTableColumns = {
    "model_id", "x",      "t",          "v",          "regime", "gamma",   "Gamma_v",
    "psi_star", "log_asymptotic", "log_mc", "mc_se_rel", "log_oracle", "n_paths", "seed"};

/// 17 significant digits; "inf", "-inf" and "nan" spell out non-finite
/// values.
std::string format_real(double value);

void write_header(std::ostream& os, TableFormat format);
void write_row(std::ostream& os, const RunRow& row, TableFormat format);

/// Reads a CSV table produced by write_header + write_row.
std::vector<RunRow> read_csv_table(std::istream& is);

} // namespace levyfp
