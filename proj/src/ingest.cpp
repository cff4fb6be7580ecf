#include "tailrisk/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>

namespace tailrisk {

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool parse_double_field(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

// One row -> event; returns nullopt on any malformed field or invariant violation.
std::optional<TickEvent> parse_row(const std::string& line, char delim) {
    const auto fields = split_fields(line, delim);
    if (fields.size() != 7) return std::nullopt;

    TickEvent e;
    try {
        e.ts = parse_timestamp(fields[0]);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }

    if (fields[1] == "L") e.kind = OrderKind::limit;
    else if (fields[1] == "M") e.kind = OrderKind::market;
    else return std::nullopt;

    if (fields[2] == "B") e.side = Side::buy;
    else if (fields[2] == "S") e.side = Side::sell;
    else return std::nullopt;

    if (!parse_double_field(fields[3], e.price) || e.price <= 0.0) return std::nullopt;
    if (!parse_double_field(fields[4], e.qty_available) || e.qty_available < 0.0) return std::nullopt;
    if (!parse_double_field(fields[5], e.qty_traded) || e.qty_traded < 0.0) return std::nullopt;
    if (e.kind == OrderKind::limit && e.qty_traded > e.qty_available) return std::nullopt;

    if (fields[6] == "0") e.filled = false;
    else if (fields[6] == "1") e.filled = true;
    else return std::nullopt;

    return e;
}

std::int64_t ceil_to_multiple(std::int64_t value, std::int64_t step) {
    return (value + step - 1) / step * step;  // value >= 0
}

}  // namespace

ParseResult parse_ticks(std::istream& source, const FormatConfig& format) {
    if (!source) throw std::runtime_error("unreadable tick source");

    ParseResult result;
    std::string line;

    if (format.has_header) {
        if (!std::getline(source, line)) throw std::runtime_error("unreadable tick source: no header row");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != kTickHeader) {
            throw std::runtime_error("unexpected tick header: '" + line + "'");
        }
    }

    while (std::getline(source, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++result.stats.rows_total;

        const auto event = parse_row(line, format.delimiter);
        if (!event) {
            ++result.stats.rows_malformed;
            continue;
        }
        if (!result.events.empty() && event->ts < result.events.back().ts) {
            ++result.stats.rows_out_of_order;
            continue;
        }
        result.events.push_back(*event);
    }
    if (source.bad()) throw std::runtime_error("unreadable tick source: read failure");

    if (result.stats.rows_total > 0) {
        const double fraction = static_cast<double>(result.stats.rows_malformed) /
                                static_cast<double>(result.stats.rows_total);
        if (fraction > format.max_malformed_fraction) {
            throw std::runtime_error("malformed rows exceed threshold: " +
                                     std::to_string(result.stats.rows_malformed) + " of " +
                                     std::to_string(result.stats.rows_total));
        }
    }
    return result;
}

QuoteSeries build_midquotes(std::span<const TickEvent> events, std::int64_t interval_s,
                            OrderKind filter) {
    if (interval_s <= 0) throw std::invalid_argument("interval must be positive");

    // Quote-update view of the stream: which side of the book does an event refresh?
    const auto side_updated = [filter](const TickEvent& e) -> std::optional<int> {
        if (filter != OrderKind::all && e.kind != filter) return std::nullopt;
        const bool is_bid = (e.kind == OrderKind::limit) == (e.side == Side::buy);
        return is_bid ? 0 : 1;  // 0 = bid, 1 = ask
    };

    std::size_t first = 0;
    while (first < events.size() && !side_updated(events[first])) ++first;
    std::size_t last = events.size();
    while (last > first && !side_updated(events[last - 1])) --last;
    if (first == last) throw std::runtime_error("empty series: no quotable events");

    const std::int64_t step = interval_s * kCentisPerSecond;
    const std::int64_t t_first = ceil_to_multiple(events[first].ts.centis, step);
    const std::int64_t t_last = ceil_to_multiple(events[last - 1].ts.centis, step);

    QuoteSeries out;
    out.interval_s = interval_s;
    out.source = filter;

    std::vector<double> bids, asks;
    double bid = 0.0, ask = 0.0;
    bool bid_seen = false, ask_seen = false;
    bool started = false;
    std::size_t idx = first;

    for (std::int64_t t = t_first; t <= t_last; t += step) {
        bool updated[2] = {false, false};
        while (idx < last && events[idx].ts.centis <= t) {
            if (const auto side = side_updated(events[idx])) {
                (*side == 0 ? bid : ask) = events[idx].price;
                (*side == 0 ? bid_seen : ask_seen) = true;
                updated[*side] = true;
            }
            ++idx;
        }
        if (!bid_seen || !ask_seen) {
            ++out.head_dropped;
            continue;
        }
        if (!started) {
            started = true;
            out.start = Timestamp{t};
        }
        if (updated[0] != updated[1]) ++out.one_sided_fills;
        if (!updated[0] && !updated[1]) ++out.empty_intervals;
        if (bid > ask) ++out.crossed_quotes;
        bids.push_back(bid);
        asks.push_back(ask);
    }

    if (bids.empty()) throw std::runtime_error("empty series: no interval with both sides quoted");

    const Eigen::Index n = static_cast<Eigen::Index>(bids.size());
    out.bids = Eigen::Map<const Eigen::ArrayXd>(bids.data(), n);
    out.asks = Eigen::Map<const Eigen::ArrayXd>(asks.data(), n);
    out.mids = (out.bids + out.asks) / 2.0;
    return out;
}

QuoteSeries resample(const QuoteSeries& q, Eigen::Index factor) {
    if (factor < 1) throw std::invalid_argument("resample factor must be >= 1");
    if (factor > q.size()) throw std::invalid_argument("resample factor exceeds series length");

    const Eigen::Index n_out = q.size() / factor;
    QuoteSeries out = q;
    out.interval_s = q.interval_s * factor;
    out.start = Timestamp{q.start.centis + (factor - 1) * q.interval_s * kCentisPerSecond};
    out.bids.resize(n_out);
    out.asks.resize(n_out);
    out.mids.resize(n_out);
    for (Eigen::Index j = 0; j < n_out; ++j) {
        const Eigen::Index i = (j + 1) * factor - 1;  // end-of-block observation
        out.bids(j) = q.bids(i);
        out.asks(j) = q.asks(i);
        out.mids(j) = q.mids(i);
    }
    return out;
}

ReturnSeries log_returns(const QuoteSeries& q) {
    if (q.size() < 2) throw std::invalid_argument("need at least two mid quotes");
    if (!(q.mids > 0.0).all() || !q.mids.isFinite().all()) {
        throw std::domain_error("non-positive mid quote");
    }

    const Eigen::Index n = q.size();
    Eigen::ArrayXd logs(n);
    for (Eigen::Index i = 0; i < n; ++i) logs(i) = std::log(q.mids(i));

    ReturnSeries out;
    out.interval_s = q.interval_s;
    out.source = q.source;
    out.values = logs.tail(n - 1) - logs.head(n - 1);
    return out;
}

}  // namespace tailrisk
