#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tailrisk/series.hpp"

namespace tailrisk {

// Expected header of a tick file; parse_ticks rejects anything else.
inline constexpr const char* kTickHeader =
    "timestamp,kind,side,price,qty_available,qty_traded,filled";

struct FormatConfig {
    char delimiter = ',';
    bool has_header = true;
    double max_malformed_fraction = 0.10;  // hard error above this share of data rows
};

struct ParseStats {
    std::int64_t rows_total = 0;       // data rows seen (header excluded)
    std::int64_t rows_malformed = 0;   // unparseable or invariant-violating rows
    std::int64_t rows_out_of_order = 0;
};

struct ParseResult {
    std::vector<TickEvent> events;
    ParseStats stats;
};

// Reads delimited tick rows (timestamp,kind,side,price,qty_available,qty_traded,filled).
// Malformed rows are skipped and counted; above max_malformed_fraction the whole
// parse fails. Rows whose timestamp steps backwards are dropped and counted separately.
ParseResult parse_ticks(std::istream& source, const FormatConfig& format = {});

// Samples the last observed best bid and best ask at each calendar-aligned interval
// endpoint, carrying quotes forward over quiet intervals. Endpoints before both
// sides have been observed are dropped. Event-to-side mapping: limit buy -> bid,
// limit sell -> ask, market buy -> ask (trade at the offer), market sell -> bid.
QuoteSeries build_midquotes(std::span<const TickEvent> events, std::int64_t interval_s,
                            OrderKind filter);

// Keeps every factor-th observation (end of block); interval scales by factor.
QuoteSeries resample(const QuoteSeries& q, Eigen::Index factor);

// values_i = ln(mid_{i+1}) - ln(mid_i)
ReturnSeries log_returns(const QuoteSeries& q);

}  // namespace tailrisk
