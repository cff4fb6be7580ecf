#pragma once

#include <Eigen/Dense>

#include "tailrisk/series.hpp"

namespace tailrisk {

struct SummaryStats {
    double mean = 0.0;
    double std_dev = 0.0;    // n-1 denominator
    double skewness = 0.0;   // m3 / m2^(3/2), central moments with 1/n
    double kurtosis = 0.0;   // m4 / m2^2, so a normal scores 3
    Eigen::Index acf_significant_count = 0;  // |acf| > 1.96/sqrt(n) over lags 1..max_lag
    double ks_statistic = 0.0;  // one-sample KS against N(mean, std_dev)
    Eigen::Index n = 0;
    int max_lag = 0;
};

double normal_cdf(double z);

// Sample autocorrelations at lags 1..max_lag, normalised by the lag-0 sum of squares.
Eigen::ArrayXd autocorrelations(const Eigen::Ref<const Eigen::ArrayXd>& values, int max_lag);

// sup-distance between the empirical CDF and a normal CDF with the given moments
double ks_normal_statistic(const Eigen::Ref<const Eigen::ArrayXd>& values, double mean,
                           double std_dev);

// Requires n >= max_lag + 2 and a non-constant series.
SummaryStats summarize(const Eigen::Ref<const Eigen::ArrayXd>& values, int max_lag = 100);

// Summary grid over both order kinds; volatility columns use absolute returns.
struct SummaryReport {
    SummaryStats limit_returns;
    SummaryStats market_returns;
    SummaryStats limit_volatility;
    SummaryStats market_volatility;
};

SummaryReport build_summary_report(const ReturnSeries& limit, const ReturnSeries& market,
                                   int max_lag = 100);

}  // namespace tailrisk
