#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tailrisk/series.hpp"

namespace tailrisk {

enum class TailSide { upper, lower, common };

const char* to_string(TailSide side);
TailSide tail_side_from_string(const std::string& s);

// Positive exceedances of one tail, sorted descending. upper = positive returns,
// lower = magnitudes of negative returns, common = magnitudes of all nonzero returns.
struct TailSample {
    TailSide side = TailSide::common;
    Eigen::ArrayXd exceedances;
    Eigen::Index n_source = 0;  // length of the originating return series
    Eigen::Index zeros_excluded = 0;

    Eigen::Index size() const { return exceedances.size(); }
};

// A fitted tail. gamma is the inverse tail index the Hill estimator returns;
// alpha = 1/gamma counts the finite moments. m is the threshold count, kept
// real-valued because the bias-corrected fit reports an interpolated count.
struct TailEstimate {
    TailSide side = TailSide::common;
    double m = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;     // 1 / gamma
    double se_gamma = 0.0;  // gamma / sqrt(m)
    double se_alpha = 0.0;  // alpha / sqrt(m)
    double r_m = 0.0;       // threshold value: the (m+1)-th largest exceedance
    Eigen::Index n = 0;     // source series length
    double scale_a = 0.0;   // (m/n) * r_m^alpha, the implied tail scale constant
};

// gamma(m) over a range of threshold counts, with the matching threshold values.
struct HillSpectrum {
    TailSide side = TailSide::common;
    Eigen::Index n_source = 0;
    Eigen::VectorXi m;         // strictly increasing
    Eigen::ArrayXd gamma;      // raw Hill estimate at each m
    Eigen::ArrayXd threshold;  // (m+1)-th largest exceedance at each m

    Eigen::Index size() const { return m.size(); }
};

// Extracts one tail; throws std::domain_error when the requested tail is empty.
TailSample tail_sample(const ReturnSeries& r, TailSide side);

struct TailSplit {
    TailSample upper;
    TailSample lower;
    TailSample common;
};

TailSplit split_tails(const ReturnSeries& r);

// gamma = (1/m) * sum_{i=1..m} [ln r_(i) - ln r_(m+1)] over descending order
// statistics r_(1) >= r_(2) >= ...; requires 2 <= m < sample size.
TailEstimate hill_estimate(const TailSample& t, Eigen::Index m);

// Hill estimates for every m in [m_min, m_max], computed incrementally.
// m_max = 0 selects the default, floor(size/2).
HillSpectrum hill_spectrum(const TailSample& t, Eigen::Index m_min = 2, Eigen::Index m_max = 0);

// Straight-line fit gamma(m) = b0 + b1*m with weight sqrt(m) on each observation;
// returns (b0, b1).
std::pair<double, double> wls_line_fit(const HillSpectrum& s);

// Small-sample bias correction: the weighted-least-squares intercept is the
// corrected gamma; the reported threshold count is the (interpolated) m at which
// the raw spectrum crosses it, and the threshold value is interpolated to match.
TailEstimate huisman_wls(const HillSpectrum& s);

// t-statistic for alpha against c (0: tail existence, 2: finite variance,
// 4: finite fourth moment); one-sided critical value 1.64.
double moment_test(const TailEstimate& e, double c);
double moment_test(double alpha, double c, double se_alpha);  // externally supplied se

// Koedijk-Kool style cross-series test on the alpha scale:
// z = (a1 - a2) / sqrt(se1^2 + se2^2); two-sided critical value 1.96.
double stability_test(const TailEstimate& e1, const TailEstimate& e2);

struct TailFit {
    TailEstimate estimate;
    double t0 = 0.0;
    double t2 = 0.0;
    double t4 = 0.0;
};

struct TailIndexEntry {
    TailSide side = TailSide::common;
    TailFit limit_fit;
    TailFit market_fit;
    double stability_z = 0.0;
};

struct TailIndexReport {
    std::vector<TailIndexEntry> entries;
    Eigen::Index limit_n = 0;
    Eigen::Index market_n = 0;
};

// Bias-corrected fit of every requested tail for both series, with moment tests
// and the per-tail cross-series stability statistic.
TailIndexReport fit_tails(const ReturnSeries& limit, const ReturnSeries& market,
                          const std::vector<TailSide>& sides = {TailSide::common, TailSide::lower,
                                                                TailSide::upper});

}  // namespace tailrisk
