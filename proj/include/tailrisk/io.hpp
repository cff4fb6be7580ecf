#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tailrisk/evt.hpp"
#include "tailrisk/risk.hpp"
#include "tailrisk/series.hpp"
#include "tailrisk/stats.hpp"

namespace tailrisk {

// Shortest decimal that round-trips the exact double, so emitted files are
// byte-stable and re-readable without loss.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// Series persist as a CSV next to a "<stem>.meta.json" sidecar carrying the
// metadata the CSV cannot (start, interval, source tag, quality counters).
void write_quote_series(const QuoteSeries& q, const std::filesystem::path& csv_path);
QuoteSeries read_quote_series(const std::filesystem::path& csv_path);

void write_return_series(const ReturnSeries& r, const std::filesystem::path& csv_path);
ReturnSeries read_return_series(const std::filesystem::path& csv_path);

// First header line of a delimited file, used to sniff what kind of input a
// path holds.
std::string peek_header(const std::filesystem::path& path);

// Report blocks. Percent-scaled columns carry a _pct suffix; everything else is
// in natural units.
std::string summary_to_csv(const SummaryReport& report);
nlohmann::ordered_json summary_to_json(const SummaryReport& report);

std::string tail_report_to_csv(const TailIndexReport& report);
nlohmann::ordered_json tail_report_to_json(const TailIndexReport& report);

std::string risk_report_to_csv(const RiskReport& report);
nlohmann::ordered_json risk_report_to_json(const RiskReport& report);

std::string money_to_csv(const RiskReport& report);
nlohmann::ordered_json money_to_json(const RiskReport& report);

}  // namespace tailrisk
