#include "tailrisk/risk.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tailrisk {

QuantileEstimate tail_quantile(const TailEstimate& e, double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("probability must lie in (0, 1)");
    if (e.m < 2.0 || e.r_m <= 0.0 || e.alpha <= 0.0 || e.n < 1) {
        throw std::invalid_argument("invalid tail estimate");
    }

    const double n = static_cast<double>(e.n);
    QuantileEstimate q;
    q.p = p;
    q.side = e.side;
    q.horizon_k = 1;
    q.r_p = e.r_m * std::pow(e.m / (n * p), 1.0 / e.alpha);
    q.in_sample = p >= 1.0 / n;
    q.below_threshold = p >= e.m / n;
    return q;
}

QuantileEstimate scale_quantile(const QuantileEstimate& q, int k, double alpha) {
    if (k < 1) throw std::invalid_argument("horizon k must be >= 1");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");

    QuantileEstimate out = q;
    out.r_p = q.r_p * std::pow(static_cast<double>(k), 1.0 / alpha);
    out.horizon_k = q.horizon_k * k;
    return out;
}

double dollars_at_risk(const QuantileEstimate& q, double notional) {
    if (notional <= 0.0) throw std::invalid_argument("notional must be positive");
    return notional * q.r_p;
}

double ProbSpec::resolve(Eigen::Index n) const {
    if (!relative) return coef;
    if (n < 1) throw std::invalid_argument("relative probability needs a sample size");
    return coef / static_cast<double>(n);
}

std::string ProbSpec::label() const {
    char buf[48];
    if (relative) {
        if (coef == 0.5) return "p_half_n";
        if (coef == static_cast<long long>(coef)) {
            std::snprintf(buf, sizeof(buf), "p_%lldn", static_cast<long long>(coef));
        } else {
            std::snprintf(buf, sizeof(buf), "p_%gn", coef);
        }
    } else {
        std::snprintf(buf, sizeof(buf), "p_%g", coef);
    }
    return buf;
}

ProbSpec prob_spec_from_string(const std::string& text) {
    ProbSpec spec;
    std::string num = text;
    const auto slash = text.find("/n");
    if (slash != std::string::npos) {
        if (slash + 2 != text.size()) throw std::invalid_argument("bad probability: '" + text + "'");
        spec.relative = true;
        num = text.substr(0, slash);
    } else {
        spec.relative = false;
    }
    std::size_t used = 0;
    try {
        spec.coef = std::stod(num, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad probability: '" + text + "'");
    }
    if (used != num.size() || spec.coef <= 0.0) {
        throw std::invalid_argument("bad probability: '" + text + "'");
    }
    if (!spec.relative && spec.coef >= 1.0) {
        throw std::invalid_argument("absolute probability must lie in (0, 1): '" + text + "'");
    }
    return spec;
}

RiskReport build_risk_report(const TailIndexReport& fits, const RiskConfig& config) {
    if (config.probs.empty()) throw std::invalid_argument("no probabilities configured");

    RiskReport report;
    report.config = config;

    for (const TailIndexEntry& entry : fits.entries) {
        for (const bool is_limit : {true, false}) {
            const TailEstimate& est =
                is_limit ? entry.limit_fit.estimate : entry.market_fit.estimate;

            RiskRow row;
            row.side = entry.side;
            row.source = is_limit ? OrderKind::limit : OrderKind::market;
            for (const ProbSpec& spec : config.probs) {
                row.single.push_back(tail_quantile(est, spec.resolve(est.n)));
            }
            const QuantileEstimate base = tail_quantile(est, 1.0 / static_cast<double>(est.n));
            for (const int k : config.horizons) {
                row.multi.push_back(scale_quantile(base, k, est.alpha));
            }

            MoneyAtRisk money;
            money.side = entry.side;
            money.source = row.source;
            money.notional = is_limit ? config.notional_limit : config.notional_market;
            money.p = row.single.front().p;
            money.r_p = row.single.front().r_p;
            money.value = dollars_at_risk(row.single.front(), money.notional);

            report.rows.push_back(std::move(row));
            report.money.push_back(money);
        }
    }
    return report;
}

}  // namespace tailrisk
