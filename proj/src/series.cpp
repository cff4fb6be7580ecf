#include "tailrisk/series.hpp"

#include <cstdio>
#include <stdexcept>

namespace tailrisk {

namespace {

// Civil date <-> day count, Gregorian calendar (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

}  // namespace

Timestamp parse_timestamp(const std::string& text) {
    int y, mo, d, h, mi, s, cc;
    char tail;
    const int got = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%2d%c",
                                &y, &mo, &d, &h, &mi, &s, &cc, &tail);
    if (got != 7) throw std::invalid_argument("bad timestamp: '" + text + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) ||
        h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59 || cc < 0 || cc > 99) {
        throw std::invalid_argument("timestamp field out of range: '" + text + "'");
    }
    const std::int64_t days = days_from_civil(y, mo, d);
    const std::int64_t secs = days * 86400 + h * 3600 + mi * 60 + s;
    return Timestamp{secs * kCentisPerSecond + cc};
}

std::string format_timestamp(Timestamp ts) {
    std::int64_t secs = ts.centis / kCentisPerSecond;
    int cc = static_cast<int>(ts.centis % kCentisPerSecond);
    if (cc < 0) {
        cc += static_cast<int>(kCentisPerSecond);
        secs -= 1;
    }
    std::int64_t days = secs / 86400;
    std::int64_t sod = secs % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    int y, mo, d;
    civil_from_days(days, y, mo, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%02d",
                  y, mo, d, static_cast<int>(sod / 3600),
                  static_cast<int>(sod % 3600 / 60), static_cast<int>(sod % 60), cc);
    return buf;
}

const char* to_string(OrderKind k) {
    switch (k) {
        case OrderKind::limit: return "limit";
        case OrderKind::market: return "market";
        case OrderKind::all: return "all";
    }
    return "?";
}

const char* to_string(Side s) { return s == Side::buy ? "buy" : "sell"; }

OrderKind order_kind_from_string(const std::string& s) {
    if (s == "limit") return OrderKind::limit;
    if (s == "market") return OrderKind::market;
    if (s == "all") return OrderKind::all;
    throw std::invalid_argument("unknown order kind: '" + s + "'");
}

}  // namespace tailrisk
