#pragma once

#include <string>
#include <vector>

#include "tailrisk/evt.hpp"

namespace tailrisk {

struct QuantileEstimate {
    double p = 0.0;
    double r_p = 0.0;  // return magnitude as a fraction (0.01 = 1%)
    TailSide side = TailSide::common;
    int horizon_k = 1;             // number of base intervals
    bool in_sample = false;        // p >= 1/n
    bool below_threshold = false;  // p >= m/n: quantile sits at or inside the fitted threshold
};

// r_p = r_m * (m / (n p))^(1/alpha); for bias-corrected estimates m and r_m are
// the interpolated values carried by the estimate.
QuantileEstimate tail_quantile(const TailEstimate& e, double p);

// k-period quantile via the alpha-root scaling law: r_p * k^(1/alpha). No refit.
QuantileEstimate scale_quantile(const QuantileEstimate& q, int k, double alpha);

// notional * r_p, with r_p as a fraction
double dollars_at_risk(const QuantileEstimate& q, double notional);

// Probability expressed either absolutely or as a multiple of 1/n.
struct ProbSpec {
    double coef = 1.0;
    bool relative = true;  // true: p = coef/n, resolved per series

    double resolve(Eigen::Index n) const;
    std::string label() const;  // "p_2n", "p_1n", "p_half_n", "p_0.25n", "p_0.001"
};

ProbSpec prob_spec_from_string(const std::string& text);  // "2/n", "0.5/n", "0.001"

struct RiskConfig {
    std::vector<ProbSpec> probs = {{2.0, true}, {1.0, true}, {0.5, true}};
    std::vector<int> horizons = {12, 48, 96};
    double notional_limit = 2'000'000.0;
    double notional_market = 3'000'000.0;
};

struct RiskRow {
    TailSide side = TailSide::common;
    OrderKind source = OrderKind::limit;
    std::vector<QuantileEstimate> single;  // one per configured probability
    std::vector<QuantileEstimate> multi;   // the p = 1/n quantile scaled to each horizon
};

struct MoneyAtRisk {
    TailSide side = TailSide::common;
    OrderKind source = OrderKind::limit;
    double notional = 0.0;
    double p = 0.0;
    double r_p = 0.0;
    double value = 0.0;
};

struct RiskReport {
    std::vector<RiskRow> rows;
    std::vector<MoneyAtRisk> money;  // at the first configured probability
    RiskConfig config;
};

RiskReport build_risk_report(const TailIndexReport& fits, const RiskConfig& config = {});

}  // namespace tailrisk
