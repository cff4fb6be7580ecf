#include "tailrisk/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace tailrisk {

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("bad numeric field: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

nlohmann::ordered_json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return nlohmann::ordered_json::parse(in);
}

nlohmann::ordered_json quantile_row(const RiskRow& row) {
    nlohmann::ordered_json j;
    j["tail"] = to_string(row.side);
    j["series"] = to_string(row.source);
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_quote_series(const QuoteSeries& q, const std::filesystem::path& csv_path) {
    std::ostringstream csv;
    csv << "timestamp,bid,ask,mid\n";
    const std::int64_t step = q.interval_s * kCentisPerSecond;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        csv << format_timestamp(Timestamp{q.start.centis + i * step}) << ','
            << format_double(q.bids(i)) << ',' << format_double(q.asks(i)) << ','
            << format_double(q.mids(i)) << '\n';
    }
    write_text_file(csv_path, csv.str());

    nlohmann::ordered_json meta;
    meta["schema"] = "quote_series";
    meta["start"] = format_timestamp(q.start);
    meta["interval_s"] = q.interval_s;
    meta["source"] = to_string(q.source);
    meta["n"] = q.size();
    meta["crossed_quotes"] = q.crossed_quotes;
    meta["one_sided_fills"] = q.one_sided_fills;
    meta["empty_intervals"] = q.empty_intervals;
    meta["head_dropped"] = q.head_dropped;
    write_text_file(sidecar_path(csv_path), meta.dump(2) + "\n");
}

QuoteSeries read_quote_series(const std::filesystem::path& csv_path) {
    const auto meta = read_json_file(sidecar_path(csv_path));
    if (meta.at("schema") != "quote_series") {
        throw std::runtime_error("not a quote series: " + csv_path.string());
    }

    QuoteSeries q;
    q.start = parse_timestamp(meta.at("start").get<std::string>());
    q.interval_s = meta.at("interval_s").get<std::int64_t>();
    q.source = order_kind_from_string(meta.at("source").get<std::string>());
    q.crossed_quotes = meta.at("crossed_quotes").get<std::int64_t>();
    q.one_sided_fills = meta.at("one_sided_fills").get<std::int64_t>();
    q.empty_intervals = meta.at("empty_intervals").get<std::int64_t>();
    q.head_dropped = meta.at("head_dropped").get<std::int64_t>();

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path.string());
    std::string line;
    if (!std::getline(in, line) || line != "timestamp,bid,ask,mid") {
        throw std::runtime_error("bad quote series header in " + csv_path.string());
    }
    std::vector<double> bids, asks, mids;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) throw std::runtime_error("bad quote row: '" + line + "'");
        bids.push_back(parse_double(fields[1]));
        asks.push_back(parse_double(fields[2]));
        mids.push_back(parse_double(fields[3]));
    }
    const Eigen::Index n = static_cast<Eigen::Index>(bids.size());
    if (n != meta.at("n").get<Eigen::Index>()) {
        throw std::runtime_error("quote series length mismatch in " + csv_path.string());
    }
    q.bids = Eigen::Map<const Eigen::ArrayXd>(bids.data(), n);
    q.asks = Eigen::Map<const Eigen::ArrayXd>(asks.data(), n);
    q.mids = Eigen::Map<const Eigen::ArrayXd>(mids.data(), n);
    return q;
}

void write_return_series(const ReturnSeries& r, const std::filesystem::path& csv_path) {
    std::ostringstream csv;
    csv << "log_return\n";
    for (Eigen::Index i = 0; i < r.n(); ++i) csv << format_double(r.values(i)) << '\n';
    write_text_file(csv_path, csv.str());

    nlohmann::ordered_json meta;
    meta["schema"] = "return_series";
    meta["interval_s"] = r.interval_s;
    meta["source"] = to_string(r.source);
    meta["n"] = r.n();
    write_text_file(sidecar_path(csv_path), meta.dump(2) + "\n");
}

ReturnSeries read_return_series(const std::filesystem::path& csv_path) {
    const auto meta = read_json_file(sidecar_path(csv_path));
    if (meta.at("schema") != "return_series") {
        throw std::runtime_error("not a return series: " + csv_path.string());
    }

    ReturnSeries r;
    r.interval_s = meta.at("interval_s").get<std::int64_t>();
    r.source = order_kind_from_string(meta.at("source").get<std::string>());

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path.string());
    std::string line;
    if (!std::getline(in, line) || line != "log_return") {
        throw std::runtime_error("bad return series header in " + csv_path.string());
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(parse_double(line));
    }
    const Eigen::Index n = static_cast<Eigen::Index>(values.size());
    if (n != meta.at("n").get<Eigen::Index>()) {
        throw std::runtime_error("return series length mismatch in " + csv_path.string());
    }
    r.values = Eigen::Map<const Eigen::ArrayXd>(values.data(), n);
    return r;
}

std::string peek_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::string summary_to_csv(const SummaryReport& report) {
    const SummaryStats* cols[4] = {&report.limit_returns, &report.market_returns,
                                   &report.limit_volatility, &report.market_volatility};
    std::ostringstream csv;
    csv << "statistic,limit_returns,market_returns,limit_volatility,market_volatility\n";
    const auto row = [&](const char* name, auto pick) {
        csv << name;
        for (const SummaryStats* s : cols) csv << ',' << format_double(pick(*s));
        csv << '\n';
    };
    row("mean_pct", [](const SummaryStats& s) { return s.mean * 100.0; });
    row("std_dev_pct", [](const SummaryStats& s) { return s.std_dev * 100.0; });
    row("skewness", [](const SummaryStats& s) { return s.skewness; });
    row("kurtosis", [](const SummaryStats& s) { return s.kurtosis; });
    row("acf_significant", [](const SummaryStats& s) { return static_cast<double>(s.acf_significant_count); });
    row("ks_statistic", [](const SummaryStats& s) { return s.ks_statistic; });
    return csv.str();
}

nlohmann::ordered_json summary_to_json(const SummaryReport& report) {
    const auto stats_json = [](const SummaryStats& s) {
        nlohmann::ordered_json j;
        j["mean_pct"] = s.mean * 100.0;
        j["std_dev_pct"] = s.std_dev * 100.0;
        j["skewness"] = s.skewness;
        j["kurtosis"] = s.kurtosis;
        j["acf_significant"] = s.acf_significant_count;
        j["ks_statistic"] = s.ks_statistic;
        j["n"] = s.n;
        j["max_lag"] = s.max_lag;
        return j;
    };
    nlohmann::ordered_json j;
    j["limit_returns"] = stats_json(report.limit_returns);
    j["market_returns"] = stats_json(report.market_returns);
    j["limit_volatility"] = stats_json(report.limit_volatility);
    j["market_volatility"] = stats_json(report.market_volatility);
    return j;
}

std::string tail_report_to_csv(const TailIndexReport& report) {
    std::ostringstream csv;
    csv << "tail,series,alpha,se,t0,t2,t4,stability\n";
    for (const TailIndexEntry& entry : report.entries) {
        for (const bool is_limit : {true, false}) {
            const TailFit& fit = is_limit ? entry.limit_fit : entry.market_fit;
            csv << to_string(entry.side) << ',' << (is_limit ? "limit" : "market") << ','
                << format_double(fit.estimate.alpha) << ',' << format_double(fit.estimate.se_alpha)
                << ',' << format_double(fit.t0) << ',' << format_double(fit.t2) << ','
                << format_double(fit.t4) << ',' << format_double(entry.stability_z) << '\n';
        }
    }
    return csv.str();
}

nlohmann::ordered_json tail_report_to_json(const TailIndexReport& report) {
    const auto fit_json = [](const TailFit& fit) {
        nlohmann::ordered_json j;
        j["alpha"] = fit.estimate.alpha;
        j["gamma"] = fit.estimate.gamma;
        j["se_alpha"] = fit.estimate.se_alpha;
        j["se_gamma"] = fit.estimate.se_gamma;
        j["m"] = fit.estimate.m;
        j["threshold"] = fit.estimate.r_m;
        j["scale_a"] = fit.estimate.scale_a;
        j["t0"] = fit.t0;
        j["t2"] = fit.t2;
        j["t4"] = fit.t4;
        return j;
    };
    nlohmann::ordered_json j;
    j["limit_n"] = report.limit_n;
    j["market_n"] = report.market_n;
    j["tails"] = nlohmann::ordered_json::array();
    for (const TailIndexEntry& entry : report.entries) {
        nlohmann::ordered_json e;
        e["tail"] = to_string(entry.side);
        e["limit"] = fit_json(entry.limit_fit);
        e["market"] = fit_json(entry.market_fit);
        e["stability_z"] = entry.stability_z;
        j["tails"].push_back(e);
    }
    return j;
}

std::string risk_report_to_csv(const RiskReport& report) {
    std::ostringstream csv;
    csv << "tail,series";
    for (const ProbSpec& spec : report.config.probs) csv << ',' << spec.label();
    for (const int k : report.config.horizons) csv << ",k" << k;
    csv << '\n';
    for (const RiskRow& row : report.rows) {
        csv << to_string(row.side) << ',' << to_string(row.source);
        for (const QuantileEstimate& q : row.single) csv << ',' << format_double(q.r_p * 100.0);
        for (const QuantileEstimate& q : row.multi) csv << ',' << format_double(q.r_p * 100.0);
        csv << '\n';
    }
    return csv.str();
}

nlohmann::ordered_json risk_report_to_json(const RiskReport& report) {
    nlohmann::ordered_json j;
    j["units"] = "percent";
    j["rows"] = nlohmann::ordered_json::array();
    for (const RiskRow& row : report.rows) {
        nlohmann::ordered_json r = quantile_row(row);
        nlohmann::ordered_json single;
        for (std::size_t i = 0; i < row.single.size(); ++i) {
            single[report.config.probs[i].label()] = row.single[i].r_p * 100.0;
        }
        nlohmann::ordered_json multi;
        for (std::size_t i = 0; i < row.multi.size(); ++i) {
            multi["k" + std::to_string(report.config.horizons[i])] = row.multi[i].r_p * 100.0;
        }
        r["single_period_pct"] = single;
        r["multi_period_pct"] = multi;
        j["rows"].push_back(r);
    }
    return j;
}

std::string money_to_csv(const RiskReport& report) {
    std::ostringstream csv;
    csv << "tail,series,notional,p,risk_pct,money_at_risk\n";
    for (const MoneyAtRisk& m : report.money) {
        csv << to_string(m.side) << ',' << to_string(m.source) << ',' << format_double(m.notional)
            << ',' << format_double(m.p) << ',' << format_double(m.r_p * 100.0) << ','
            << format_double(m.value) << '\n';
    }
    return csv.str();
}

nlohmann::ordered_json money_to_json(const RiskReport& report) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const MoneyAtRisk& m : report.money) {
        nlohmann::ordered_json e;
        e["tail"] = to_string(m.side);
        e["series"] = to_string(m.source);
        e["notional"] = m.notional;
        e["p"] = m.p;
        e["risk_pct"] = m.r_p * 100.0;
        e["money_at_risk"] = m.value;
        j.push_back(e);
    }
    return j;
}

}  // namespace tailrisk
