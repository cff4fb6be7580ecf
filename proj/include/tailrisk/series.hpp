#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace tailrisk {

inline constexpr std::int64_t kCentisPerSecond = 100;

// Wall-clock instant with centisecond resolution, counted from the Unix epoch.
struct Timestamp {
    std::int64_t centis = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// Parses "YYYY-MM-DDThh:mm:ss.cc"; throws std::invalid_argument on malformed input.
Timestamp parse_timestamp(const std::string& text);
std::string format_timestamp(Timestamp ts);

enum class OrderKind { limit, market, all };
enum class Side { buy, sell };

const char* to_string(OrderKind k);
const char* to_string(Side s);
OrderKind order_kind_from_string(const std::string& s);

// One raw market event. Prices are quote currency per unit of base currency,
// quantities in millions of base currency.
struct TickEvent {
    Timestamp ts;
    OrderKind kind = OrderKind::limit;  // limit or market, never all
    Side side = Side::buy;
    double price = 0.0;
    double qty_available = 0.0;
    double qty_traded = 0.0;
    bool filled = false;
};

// Best bid / best ask / mid prices sampled on a regular calendar-time grid.
struct QuoteSeries {
    Timestamp start;                  // time of the first sampled endpoint
    std::int64_t interval_s = 0;
    Eigen::ArrayXd bids;
    Eigen::ArrayXd asks;
    Eigen::ArrayXd mids;              // (bid + ask) / 2, always
    OrderKind source = OrderKind::all;

    // data-quality counters accumulated during construction
    std::int64_t crossed_quotes = 0;   // endpoints where bid > ask
    std::int64_t one_sided_fills = 0;  // endpoints where exactly one side carried forward
    std::int64_t empty_intervals = 0;  // endpoints where both sides carried forward
    std::int64_t head_dropped = 0;     // endpoints dropped before both sides were seen

    Eigen::Index size() const { return mids.size(); }
};

// Log returns at a fixed interval, tagged by the order kind they came from.
struct ReturnSeries {
    std::int64_t interval_s = 0;
    Eigen::ArrayXd values;
    OrderKind source = OrderKind::all;

    Eigen::Index n() const { return values.size(); }
};

}  // namespace tailrisk
