#include "tailrisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tailrisk {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

Eigen::ArrayXd autocorrelations(const Eigen::Ref<const Eigen::ArrayXd>& values, int max_lag) {
    const Eigen::Index n = values.size();
    if (max_lag < 1 || max_lag >= n) throw std::invalid_argument("max_lag out of range");

    if (values.minCoeff() == values.maxCoeff()) {
        throw std::domain_error("constant series: autocorrelation undefined");
    }
    const Eigen::ArrayXd d = values - values.mean();
    const double denom = (d * d).sum();

    Eigen::ArrayXd acf(max_lag);
    for (int k = 1; k <= max_lag; ++k) {
        acf(k - 1) = (d.head(n - k) * d.tail(n - k)).sum() / denom;
    }
    return acf;
}

double ks_normal_statistic(const Eigen::Ref<const Eigen::ArrayXd>& values, double mean,
                           double std_dev) {
    if (std_dev <= 0.0) throw std::invalid_argument("std_dev must be positive");
    const Eigen::Index n = values.size();
    if (n < 1) throw std::invalid_argument("empty sample");

    std::vector<double> sorted(values.data(), values.data() + n);
    std::sort(sorted.begin(), sorted.end());

    double d = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double f = normal_cdf((sorted[static_cast<std::size_t>(i)] - mean) / std_dev);
        const double lo = static_cast<double>(i) / static_cast<double>(n);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max({d, std::abs(hi - f), std::abs(f - lo)});
    }
    return d;
}

SummaryStats summarize(const Eigen::Ref<const Eigen::ArrayXd>& values, int max_lag) {
    const Eigen::Index n = values.size();
    if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
    if (n < max_lag + 2) throw std::invalid_argument("series too short for requested max_lag");

    if (values.minCoeff() == values.maxCoeff()) {
        throw std::domain_error("constant series: skewness/kurtosis undefined");
    }

    SummaryStats s;
    s.n = n;
    s.max_lag = max_lag;
    s.mean = values.mean();

    const Eigen::ArrayXd d = values - s.mean;
    const double ss = (d * d).sum();

    const double nd = static_cast<double>(n);
    const double m2 = ss / nd;
    const double m3 = d.pow(3).sum() / nd;
    const double m4 = d.pow(4).sum() / nd;
    s.std_dev = std::sqrt(ss / (nd - 1.0));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);

    const Eigen::ArrayXd acf = autocorrelations(values, max_lag);
    const double band = 1.96 / std::sqrt(nd);
    s.acf_significant_count = (acf.abs() > band).count();

    s.ks_statistic = ks_normal_statistic(values, s.mean, s.std_dev);
    return s;
}

SummaryReport build_summary_report(const ReturnSeries& limit, const ReturnSeries& market,
                                   int max_lag) {
    SummaryReport report;
    report.limit_returns = summarize(limit.values, max_lag);
    report.market_returns = summarize(market.values, max_lag);
    report.limit_volatility = summarize(limit.values.abs(), max_lag);
    report.market_volatility = summarize(market.values.abs(), max_lag);
    return report;
}

}  // namespace tailrisk
