#include "levyfp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "levyfp/asymptotics.hpp"
#include "levyfp/config.hpp"
#include "levyfp/errors.hpp"
#include "levyfp/oracles.hpp"
#include "levyfp/run_table.hpp"
#include "levyfp/simulation.hpp"

namespace levyfp::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string config;
    double x = 0.0;
    double t = 0.0;
    double v = 0.0;
    std::string t_grid;
    std::int64_t paths = 0;
    std::uint64_t seed = 0;
    std::string tilt = "auto";
    double step = 0.0;
    std::string format = "csv";
    std::string out;
    int workers = 0;

    CLI::Option* x_opt = nullptr;
    CLI::Option* t_opt = nullptr;
    CLI::Option* v_opt = nullptr;
    CLI::Option* paths_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* tilt_opt = nullptr;
    CLI::Option* step_opt = nullptr;
};

void add_common(CLI::App& sub, Options& o, bool grid)
{
    sub.add_option("--config", o.config, "model configuration file")->required();
    o.x_opt = sub.add_option("--x", o.x, "barrier level");
    if (grid)
        sub.add_option("--t", o.t_grid, "time grid T1:T2:N")->required();
    else
        o.t_opt = sub.add_option("--t", o.t, "time horizon");
    o.v_opt = sub.add_option("--v", o.v, "slope x/t");
    o.paths_opt = sub.add_option("--paths", o.paths, "Monte Carlo paths (default 100000)");
    o.seed_opt = sub.add_option("--seed", o.seed, "master seed (default 0)");
    o.tilt_opt = sub.add_option("--tilt", o.tilt, "measure-change parameter or 'auto'");
    o.step_opt = sub.add_option("--step", o.step, "Brownian sub-step (default 0.01)");
    sub.add_option("--format", o.format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    sub.add_option("--out", o.out, "output file (default stdout)");
    sub.add_option("--workers", o.workers, "OpenMP workers (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
}

struct Point {
    double x;
    double t;
};

Point resolve_point(const Options& o)
{
    const bool hx = o.x_opt->count() > 0;
    const bool ht = o.t_opt && o.t_opt->count() > 0;
    const bool hv = o.v_opt->count() > 0;
    Point p{};
    if (hx && ht) {
        p = {o.x, o.t};
        if (hv && std::abs(o.x / o.t - o.v) > 1e-12 * std::abs(o.v))
            throw UsageError("--v disagrees with --x / --t");
    } else if (hx && hv) {
        p = {o.x, o.x / o.v};
    } else if (ht && hv) {
        p = {o.v * o.t, o.t};
    } else {
        throw UsageError("two of --x, --t, --v are required");
    }
    if (!(p.x > 0.0) || !(p.t > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.t))
        throw UsageError("x and t must be finite and > 0");
    return p;
}

SimConfig sim_config(const Options& o, const RunDefaults& d)
{
    SimConfig cfg;
    cfg.n_paths = o.paths_opt->count() ? o.paths : d.paths;
    cfg.master_seed = o.seed_opt->count() ? o.seed : d.seed;
    cfg.time_step = o.step_opt->count() ? o.step : d.step;
    cfg.barrier_correction = d.bridge;
    cfg.workers = o.workers;
    if (cfg.n_paths <= 0)
        throw UsageError("--paths must be > 0");
    if (!(cfg.time_step > 0.0))
        throw UsageError("--step must be > 0");
    return cfg;
}

// Explicit --tilt wins over sim.tilt from the config; both default to auto.
double resolve_tilt(const Options& o, const ParsedConfig& cfg, double x, double t)
{
    if (o.tilt_opt->count() && o.tilt != "auto") {
        double c = 0.0;
        try {
            std::size_t used = 0;
            c = std::stod(o.tilt, &used);
            if (used != o.tilt.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("--tilt must be a real number or 'auto'");
        }
        return c;
    }
    if (!o.tilt_opt->count() && cfg.defaults.tilt)
        return *cfg.defaults.tilt;
    return auto_tilt(cfg.model, x, t);
}

const char* regime_label(Regime r)
{
    return r == Regime::Indeterminate || r == Regime::Boundary ? "boundary" : to_string(r);
}

RunRow asymptotic_row(const ParsedConfig& cfg, double x, double t)
{
    const auto est = approx_passage_prob(cfg.model, x, t);
    RunRow row;
    row.model_id = cfg.model_id;
    row.x = x;
    row.t = t;
    row.v = x / t;
    row.regime = regime_label(est.regime);
    row.gamma = est.report.lundberg;
    row.Gamma_v = est.report.slope_tilt;
    row.psi_star = est.report.rate;
    row.log_asymptotic = est.log_prob;
    return row;
}

void add_mc(RunRow& row, const Options& o, const ParsedConfig& cfg)
{
    const auto sc = sim_config(o, cfg.defaults);
    const double c = resolve_tilt(o, cfg, row.x, row.t);
    SimResult r;
    if (c == 0.0) {
        r = mc_plain(cfg.model, row.x, row.t, sc);
    } else {
        SimConfig tilted = sc;
        tilted.tilt = c;
        r = mc_tilted(cfg.model, row.x, row.t, tilted);
    }
    row.log_mc = r.log_estimate;
    row.mc_se_rel = r.std_err_rel;
    row.n_paths = r.n_paths;
    row.seed = r.master_seed;
}

void add_oracle(RunRow& row, const ParsedConfig& cfg)
{
    if (cfg.model.kind() == ModelKind::Brownian)
        row.log_oracle = bm_exact_passage(cfg.model.drift(), cfg.model.sigma(), row.x, row.t).value;
}

std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() != 3)
        throw UsageError("--t grid must be T1:T2:N");
    double lo = 0.0, hi = 0.0;
    long n = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--t grid must be T1:T2:N");
    }
    if (n < 1 || !(lo > 0.0) || !(hi >= lo))
        throw UsageError("--t grid needs 0 < T1 <= T2 and N >= 1");
    std::vector<double> grid;
    for (long i = 0; i < n; ++i)
        grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return grid;
}

TableFormat table_format(const Options& o)
{
    return o.format == "json-lines" ? TableFormat::JsonLines : TableFormat::Csv;
}

void emit_rows(std::ostream& os, const std::vector<RunRow>& rows, TableFormat fmt)
{
    write_header(os, fmt);
    for (const auto& r : rows)
        write_row(os, r, fmt);
}

void emit_clt(std::ostream& os, const std::string& id, double x, double v, const CltReport& r,
              std::uint64_t seed, TableFormat fmt)
{
    if (fmt == TableFormat::Csv) {
        os << "model_id,x,v,omega2,mean_z,var_z,mean_tau,n,n_missed,seed\n"
           << id << ',' << format_real(x) << ',' << format_real(v) << ',' << format_real(r.omega2) << ','
           << format_real(r.mean_z) << ',' << format_real(r.var_z) << ',' << format_real(r.mean_tau) << ','
           << r.n << ',' << r.n_missed << ',' << seed << '\n';
        return;
    }
    os << "{\"model_id\":\"" << id << "\",\"x\":" << format_real(x) << ",\"v\":" << format_real(v)
       << ",\"omega2\":" << format_real(r.omega2) << ",\"mean_z\":" << format_real(r.mean_z)
       << ",\"var_z\":" << format_real(r.var_z) << ",\"mean_tau\":" << format_real(r.mean_tau)
       << ",\"n\":" << r.n << ",\"n_missed\":" << r.n_missed << ",\"seed\":" << seed << "}\n";
}

void execute(const std::string& command, const Options& o, std::ostream& os)
{
    const auto cfg = load_config(o.config);
    const auto fmt = table_format(o);

    if (command == "clt") {
        if (!o.x_opt->count() || !o.v_opt->count())
            throw UsageError("clt needs --x and --v");
        const auto sc = sim_config(o, cfg.defaults);
        emit_clt(os, cfg.model_id, o.x, o.v, clt_diagnostic(cfg.model, o.x, o.v, sc), sc.master_seed, fmt);
        return;
    }
    if (command == "sweep") {
        if (!o.v_opt->count() || !(o.v > 0.0))
            throw UsageError("sweep needs --v > 0");
        std::vector<RunRow> rows;
        for (double t : parse_grid(o.t_grid)) {
            auto row = asymptotic_row(cfg, o.v * t, t);
            add_oracle(row, cfg);
            rows.push_back(std::move(row));
        }
        emit_rows(os, rows, fmt);
        return;
    }

    const auto p = resolve_point(o);
    auto row = asymptotic_row(cfg, p.x, p.t);
    if (command == "simulate") {
        row.log_asymptotic.reset();
        add_mc(row, o, cfg);
    } else if (command == "compare") {
        add_mc(row, o, cfg);
        add_oracle(row, cfg);
    }
    emit_rows(os, {row}, fmt);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"First-passage asymptotics and rare-event simulation for Levy processes", "levyfp"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "asymptotic approximation only"},
        {"simulate", "Monte Carlo estimate only"},
        {"compare", "asymptotic, Monte Carlo and (Brownian) exact oracle in one row"},
        {"clt", "standardised first-passage time under the optimal tilt"},
        {"sweep", "asymptotic and oracle rows over a time grid with x = v t"},
    };
    std::vector<Options> options(commands.size());
    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto* sub = app.add_subcommand(commands[i].first, commands[i].second);
        add_common(*sub, options[i], commands[i].first == "sweep");
    }

    std::vector<const char*> argv{"levyfp"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    std::size_t index = 0;
    for (; index < commands.size(); ++index)
        if (app.got_subcommand(commands[index].first))
            break;
    const std::string& command = commands[index].first;
    const Options& opts = options[index];

    try {
        std::ostringstream buffer;
        execute(command, opts, buffer);
        if (opts.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(opts.out, std::ios::binary);
            if (!file)
                throw UsageError("cannot open output file '" + opts.out + "'");
            file << buffer.str();
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << command << ": parse_config: " << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "error: " << command << ": validation: " << e.what() << '\n';
        return kExitInput;
    } catch (const UsageError& e) {
        err << "error: " << command << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const NoRootError& e) {
        err << "error: " << command << ": root finding: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const RangeError& e) {
        err << "error: " << command << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "error: " << command << ": domain: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const UnsupportedModel& e) {
        err << "error: " << command << ": " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace levyfp::cli
