// tailrisk command line: tick ingestion, tail fitting, and risk reporting.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailrisk/evt.hpp"
#include "tailrisk/ingest.hpp"
#include "tailrisk/io.hpp"
#include "tailrisk/risk.hpp"
#include "tailrisk/series.hpp"
#include "tailrisk/stats.hpp"
#include "tailrisk/synthetic.hpp"
#include "tailrisk/version.hpp"

namespace fs = std::filesystem;
using namespace tailrisk;

namespace {

struct CommonOpts {
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::string format = "csv";
    std::int64_t interval_s = 20;
    std::int64_t agg_s = 300;
};

struct AnalysisOpts {
    std::vector<std::string> tails = {"common", "lower", "upper"};
    std::vector<std::string> probs = {"2/n", "1/n", "0.5/n"};
    std::vector<int> horizons = {12, 48, 96};
    double notional_limit = 2'000'000.0;
    double notional_market = 3'000'000.0;
    int max_lag = 100;
};

struct SimulateOpts {
    std::string family = "pareto";
    double shape = 3.0;
    std::int64_t n = 5000;
    std::uint64_t seed = 1;
    std::string label = "limit";
    std::string emit = "returns";
    std::string signs = "random";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input) {
    auto* input = cmd->add_option("--input", opts.inputs,
                                  "input file(s): a tick CSV or tagged return-series CSVs")
                      ->envname("TAILRISK_INPUT");
    if (needs_input) input->required();
    cmd->add_option("--out-dir", opts.out_dir, "output directory")
        ->capture_default_str()
        ->envname("TAILRISK_OUT_DIR");
    cmd->add_option("--format", opts.format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str()
        ->envname("TAILRISK_FORMAT");
    cmd->add_option("--interval-s", opts.interval_s, "sampling interval in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("TAILRISK_INTERVAL_S");
    cmd->add_option("--agg-s", opts.agg_s, "presentation interval in seconds (multiple of --interval-s)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("TAILRISK_AGG_S");
    cmd->set_config("--config", "", "key=value config file; the effective config is echoed to run_config.txt");
}

void add_analysis(CLI::App* cmd, AnalysisOpts& opts) {
    cmd->add_option("--tails", opts.tails, "tails to fit: common, lower, upper")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--probs", opts.probs, "probabilities: '<c>/n' (multiple of 1/n) or absolute")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--horizons", opts.horizons, "multi-period horizons in base intervals")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--notional-limit", opts.notional_limit, "limit-order position notional")
        ->capture_default_str()
        ->envname("TAILRISK_NOTIONAL_LIMIT");
    cmd->add_option("--notional-market", opts.notional_market, "market-order position notional")
        ->capture_default_str()
        ->envname("TAILRISK_NOTIONAL_MARKET");
    cmd->add_option("--max-lag", opts.max_lag, "autocorrelation lags for the summary block")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

fs::path ensure_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    return dir;
}

void check_input_exists(const std::string& path) {
    if (!fs::exists(path)) {
        throw std::runtime_error("input path does not exist: " + path);
    }
}

// Effective configuration and tool version, for replay and provenance.
void write_provenance(const fs::path& dir, CLI::App* cmd, const std::vector<std::string>& inputs) {
    const std::string echo = cmd->config_to_str(true, false);
    write_text_file(dir / "run_config.txt", echo);

    nlohmann::ordered_json meta;
    meta["tool"] = "tailrisk";
    meta["version"] = kVersion;
    meta["command"] = cmd->get_name();
    meta["inputs"] = inputs;
    meta["config"] = echo;
    write_text_file(dir / "run_meta.json", meta.dump(2) + "\n");
}

struct SeriesPair {
    ReturnSeries limit;
    ReturnSeries market;
};

ReturnSeries pipeline_returns(const std::vector<TickEvent>& events, OrderKind kind,
                              std::int64_t interval_s, std::int64_t agg_s) {
    const QuoteSeries quotes = build_midquotes(events, interval_s, kind);
    return log_returns(resample(quotes, agg_s / interval_s));
}

std::int64_t resample_factor(std::int64_t interval_s, std::int64_t agg_s) {
    if (agg_s % interval_s != 0) {
        throw std::runtime_error("--agg-s must be a positive multiple of --interval-s");
    }
    return agg_s / interval_s;
}

SeriesPair load_series(const CommonOpts& opts) {
    for (const auto& in : opts.inputs) check_input_exists(in);
    resample_factor(opts.interval_s, opts.agg_s);

    if (opts.inputs.size() == 1 && peek_header(opts.inputs[0]) == kTickHeader) {
        std::ifstream in(opts.inputs[0]);
        const ParseResult parsed = parse_ticks(in);
        SeriesPair pair;
        pair.limit = pipeline_returns(parsed.events, OrderKind::limit, opts.interval_s, opts.agg_s);
        pair.market = pipeline_returns(parsed.events, OrderKind::market, opts.interval_s, opts.agg_s);
        return pair;
    }

    SeriesPair pair;
    bool have_limit = false, have_market = false;
    for (const auto& in : opts.inputs) {
        if (peek_header(in) == kTickHeader) {
            throw std::runtime_error("mix of tick and return-series inputs not supported");
        }
        const ReturnSeries r = read_return_series(in);
        if (r.source == OrderKind::limit && !have_limit) {
            pair.limit = r;
            have_limit = true;
        } else if (r.source == OrderKind::market && !have_market) {
            pair.market = r;
            have_market = true;
        } else {
            throw std::runtime_error("return series in " + in + " has duplicate or untagged source '" +
                                     to_string(r.source) + "'");
        }
    }
    if (!have_limit || !have_market) {
        throw std::runtime_error("need one tick file or a limit-tagged and a market-tagged return series");
    }
    return pair;
}

std::vector<TailSide> parse_tails(const std::vector<std::string>& names) {
    std::vector<TailSide> sides;
    for (const auto& name : names) sides.push_back(tail_side_from_string(name));
    if (sides.empty()) throw std::runtime_error("--tails must name at least one tail");
    return sides;
}

RiskConfig make_risk_config(const AnalysisOpts& opts) {
    RiskConfig config;
    config.probs.clear();
    for (const auto& p : opts.probs) config.probs.push_back(prob_spec_from_string(p));
    config.horizons = opts.horizons;
    for (const int k : config.horizons) {
        if (k < 1) throw std::runtime_error("horizons must be >= 1");
    }
    config.notional_limit = opts.notional_limit;
    config.notional_market = opts.notional_market;
    return config;
}

void emit(const fs::path& dir, const std::string& stem, const std::string& csv,
          const nlohmann::ordered_json& json, const std::string& format) {
    if (format == "json") {
        write_text_file(dir / (stem + ".json"), json.dump(2) + "\n");
    } else {
        write_text_file(dir / (stem + ".csv"), csv);
    }
}

int run_ingest(const CommonOpts& opts, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);
    check_input_exists(opts.inputs.at(0));
    const std::int64_t factor = resample_factor(opts.interval_s, opts.agg_s);

    std::ifstream in(opts.inputs[0]);
    const ParseResult parsed = parse_ticks(in);
    std::cerr << "parsed " << parsed.events.size() << " events (" << parsed.stats.rows_malformed
              << " malformed, " << parsed.stats.rows_out_of_order << " out of order)\n";

    for (const OrderKind kind : {OrderKind::limit, OrderKind::market}) {
        const std::string tag = to_string(kind);
        const QuoteSeries quotes = build_midquotes(parsed.events, opts.interval_s, kind);
        write_quote_series(quotes, dir / ("quotes_" + tag + ".csv"));
        const ReturnSeries returns = log_returns(resample(quotes, factor));
        write_return_series(returns, dir / ("returns_" + tag + ".csv"));
    }
    write_provenance(dir, cmd, opts.inputs);
    return 0;
}

int run_summary(const CommonOpts& opts, const AnalysisOpts& analysis, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);
    const SeriesPair pair = load_series(opts);
    const SummaryReport report = build_summary_report(pair.limit, pair.market, analysis.max_lag);
    emit(dir, "summary_stats", summary_to_csv(report), summary_to_json(report), opts.format);
    write_provenance(dir, cmd, opts.inputs);
    return 0;
}

int run_tail(const CommonOpts& opts, const AnalysisOpts& analysis, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);
    const SeriesPair pair = load_series(opts);
    const TailIndexReport report = fit_tails(pair.limit, pair.market, parse_tails(analysis.tails));
    emit(dir, "tail_estimates", tail_report_to_csv(report), tail_report_to_json(report), opts.format);
    write_provenance(dir, cmd, opts.inputs);
    return 0;
}

int run_quantile(const CommonOpts& opts, const AnalysisOpts& analysis, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);
    const SeriesPair pair = load_series(opts);
    const TailIndexReport fits = fit_tails(pair.limit, pair.market, parse_tails(analysis.tails));
    const RiskReport report = build_risk_report(fits, make_risk_config(analysis));
    emit(dir, "risk_levels", risk_report_to_csv(report), risk_report_to_json(report), opts.format);
    emit(dir, "money_at_risk", money_to_csv(report), money_to_json(report), opts.format);
    write_provenance(dir, cmd, opts.inputs);
    return 0;
}

int run_report(const CommonOpts& opts, const AnalysisOpts& analysis, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);
    const SeriesPair pair = load_series(opts);

    const SummaryReport summary = build_summary_report(pair.limit, pair.market, analysis.max_lag);
    emit(dir, "summary_stats", summary_to_csv(summary), summary_to_json(summary), opts.format);

    const TailIndexReport fits = fit_tails(pair.limit, pair.market, parse_tails(analysis.tails));
    emit(dir, "tail_estimates", tail_report_to_csv(fits), tail_report_to_json(fits), opts.format);

    const RiskReport risk = build_risk_report(fits, make_risk_config(analysis));
    emit(dir, "risk_levels", risk_report_to_csv(risk), risk_report_to_json(risk), opts.format);
    emit(dir, "money_at_risk", money_to_csv(risk), money_to_json(risk), opts.format);

    write_provenance(dir, cmd, opts.inputs);
    return 0;
}

// Synthetic tick stream: a heavy-tailed mid-price walk quoted by alternating
// limit orders, with market trades against the prevailing quotes.
std::string synth_ticks(std::uint64_t seed, std::int64_t n_events) {
    Rng rng(seed);
    std::ostringstream csv;
    csv << kTickHeader << '\n';

    double mid = 1.7500;
    std::int64_t centis = parse_timestamp("2024-03-04T00:00:00.00").centis;
    for (std::int64_t i = 0; i < n_events; ++i) {
        centis += 400 + static_cast<std::int64_t>(rng.uniform01() * 1600.0);  // 4-20 s gaps
        mid *= std::exp(6.0e-5 * rng.student_t(2.5));
        const double half_spread = mid * 1.0e-4 * (1.0 + 0.3 * std::abs(rng.normal()));
        const double bid = mid - half_spread;
        const double ask = mid + half_spread;

        TickEvent e;
        e.ts = Timestamp{centis};
        const double u = rng.uniform01();
        if (u < 0.35) {
            e.kind = OrderKind::limit;
            e.side = Side::buy;
            e.price = bid;
        } else if (u < 0.70) {
            e.kind = OrderKind::limit;
            e.side = Side::sell;
            e.price = ask;
        } else if (u < 0.85) {
            e.kind = OrderKind::market;
            e.side = Side::buy;
            e.price = ask;
        } else {
            e.kind = OrderKind::market;
            e.side = Side::sell;
            e.price = bid;
        }
        e.qty_available = 1.0 + std::floor(rng.uniform01() * 10.0);
        const bool is_limit = e.kind == OrderKind::limit;
        e.filled = is_limit ? rng.uniform01() < (1.0 / 3.0) : true;
        e.qty_traded = e.filled ? e.qty_available : 0.0;

        csv << format_timestamp(e.ts) << ',' << (is_limit ? 'L' : 'M') << ','
            << (e.side == Side::buy ? 'B' : 'S') << ',' << format_double(e.price) << ','
            << format_double(e.qty_available) << ',' << format_double(e.qty_traded) << ','
            << (e.filled ? '1' : '0') << '\n';
    }
    return csv.str();
}

int run_simulate(const CommonOpts& opts, const SimulateOpts& sim, CLI::App* cmd) {
    const fs::path dir = ensure_out_dir(opts.out_dir);

    if (sim.emit == "ticks") {
        write_text_file(dir / "ticks.csv", synth_ticks(sim.seed, sim.n));
        write_provenance(dir, cmd, {});
        return 0;
    }

    GeneratorSpec spec;
    spec.family = family_from_string(sim.family);
    spec.shape = sim.shape;
    spec.n = sim.n;
    spec.seed = sim.seed;
    Eigen::ArrayXd values = generate(spec);

    if (sim.signs == "random") {
        // Independent sign stream so the magnitude stream stays the generator's.
        Rng signs(derive_seed(sim.seed, 0x5154));
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            if (signs.uniform01() < 0.5) values(i) = -values(i);
        }
    } else if (sim.signs != "none") {
        throw std::runtime_error("--signs must be 'random' or 'none'");
    }

    ReturnSeries r;
    r.interval_s = opts.agg_s;
    r.source = order_kind_from_string(sim.label);
    if (r.source == OrderKind::all) throw std::runtime_error("--label must be 'limit' or 'market'");
    r.values = values;
    write_return_series(r, dir / ("returns_" + sim.label + ".csv"));
    write_provenance(dir, cmd, {});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tail-risk estimation for high-frequency order returns"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts ingest_opts, summary_opts, tail_opts, quantile_opts, report_opts, simulate_opts;
    AnalysisOpts summary_analysis, tail_analysis, quantile_analysis, report_analysis;
    SimulateOpts sim;

    auto* cmd_ingest = app.add_subcommand("ingest", "tick file -> quote and return series");
    add_common(cmd_ingest, ingest_opts, true);

    auto* cmd_summary = app.add_subcommand("summary", "summary statistics block");
    add_common(cmd_summary, summary_opts, true);
    add_analysis(cmd_summary, summary_analysis);

    auto* cmd_tail = app.add_subcommand("tail", "tail index estimates and tests");
    add_common(cmd_tail, tail_opts, true);
    add_analysis(cmd_tail, tail_analysis);

    auto* cmd_quantile = app.add_subcommand("quantile", "extreme risk levels and money at risk");
    add_common(cmd_quantile, quantile_opts, true);
    add_analysis(cmd_quantile, quantile_analysis);

    auto* cmd_report = app.add_subcommand("report", "all report blocks");
    add_common(cmd_report, report_opts, true);
    add_analysis(cmd_report, report_analysis);

    auto* cmd_simulate = app.add_subcommand("simulate", "seeded synthetic tick or return files");
    add_common(cmd_simulate, simulate_opts, false);
    cmd_simulate->add_option("--family", sim.family, "pareto, student_t, normal, deterministic_pareto_grid")
        ->capture_default_str();
    cmd_simulate->add_option("--shape", sim.shape, "tail index alpha or degrees of freedom")
        ->capture_default_str();
    cmd_simulate->add_option("--n", sim.n, "sample or event count")->check(CLI::PositiveNumber)->capture_default_str();
    cmd_simulate->add_option("--seed", sim.seed, "generator seed")->capture_default_str()->envname("TAILRISK_SEED");
    cmd_simulate->add_option("--label", sim.label, "source tag: limit or market")->capture_default_str();
    cmd_simulate->add_option("--emit", sim.emit, "returns or ticks")
        ->check(CLI::IsMember({"returns", "ticks"}))
        ->capture_default_str();
    cmd_simulate->add_option("--signs", sim.signs, "random sign flips: random or none")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_ingest->parsed()) return run_ingest(ingest_opts, cmd_ingest);
        if (cmd_summary->parsed()) return run_summary(summary_opts, summary_analysis, cmd_summary);
        if (cmd_tail->parsed()) return run_tail(tail_opts, tail_analysis, cmd_tail);
        if (cmd_quantile->parsed()) return run_quantile(quantile_opts, quantile_analysis, cmd_quantile);
        if (cmd_report->parsed()) return run_report(report_opts, report_analysis, cmd_report);
        if (cmd_simulate->parsed()) return run_simulate(simulate_opts, sim, cmd_simulate);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
