#include "tailrisk/evt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tailrisk {

namespace {

// Log order statistics, descending; shared by the single estimate and the
// spectrum so both produce identical partial sums.
Eigen::ArrayXd log_exceedances(const TailSample& t) {
    const Eigen::Index n = t.size();
    Eigen::ArrayXd logs(n);
    for (Eigen::Index i = 0; i < n; ++i) logs(i) = std::log(t.exceedances(i));
    return logs;
}

double hill_gamma(const Eigen::ArrayXd& logs, Eigen::Index m) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) sum += logs(i);
    return sum / static_cast<double>(m) - logs(m);
}

TailEstimate make_estimate(TailSide side, double m, double gamma, double r_m, Eigen::Index n) {
    TailEstimate e;
    e.side = side;
    e.m = m;
    e.gamma = gamma;
    e.alpha = 1.0 / gamma;
    e.se_gamma = gamma / std::sqrt(m);
    e.se_alpha = e.alpha / std::sqrt(m);
    e.r_m = r_m;
    e.n = n;
    e.scale_a = n > 0 ? m / static_cast<double>(n) * std::pow(r_m, e.alpha) : 0.0;
    return e;
}

}  // namespace

const char* to_string(TailSide side) {
    switch (side) {
        case TailSide::upper: return "upper";
        case TailSide::lower: return "lower";
        case TailSide::common: return "common";
    }
    return "?";
}

TailSide tail_side_from_string(const std::string& s) {
    if (s == "upper") return TailSide::upper;
    if (s == "lower") return TailSide::lower;
    if (s == "common") return TailSide::common;
    throw std::invalid_argument("unknown tail side: '" + s + "'");
}

TailSample tail_sample(const ReturnSeries& r, TailSide side) {
    std::vector<double> ex;
    ex.reserve(static_cast<std::size_t>(r.n()));
    Eigen::Index zeros = 0;
    for (Eigen::Index i = 0; i < r.n(); ++i) {
        const double v = r.values(i);
        if (v == 0.0) {
            ++zeros;
            continue;
        }
        switch (side) {
            case TailSide::upper:
                if (v > 0.0) ex.push_back(v);
                break;
            case TailSide::lower:
                if (v < 0.0) ex.push_back(-v);
                break;
            case TailSide::common:
                ex.push_back(std::abs(v));
                break;
        }
    }
    if (ex.empty()) {
        throw std::domain_error(std::string("empty tail: no ") + to_string(side) + " exceedances");
    }
    std::sort(ex.begin(), ex.end(), std::greater<>());

    TailSample t;
    t.side = side;
    t.n_source = r.n();
    t.zeros_excluded = zeros;
    t.exceedances = Eigen::Map<const Eigen::ArrayXd>(ex.data(), static_cast<Eigen::Index>(ex.size()));
    return t;
}

TailSplit split_tails(const ReturnSeries& r) {
    return TailSplit{tail_sample(r, TailSide::upper), tail_sample(r, TailSide::lower),
                     tail_sample(r, TailSide::common)};
}

TailEstimate hill_estimate(const TailSample& t, Eigen::Index m) {
    if (m < 2 || m >= t.size()) throw std::invalid_argument("threshold count m out of range");

    const Eigen::ArrayXd logs = log_exceedances(t);
    const double gamma = hill_gamma(logs, m);
    if (gamma <= 0.0) throw std::domain_error("degenerate tail: top order statistics identical");
    return make_estimate(t.side, static_cast<double>(m), gamma, t.exceedances(m), t.n_source);
}

HillSpectrum hill_spectrum(const TailSample& t, Eigen::Index m_min, Eigen::Index m_max) {
    if (m_max == 0) m_max = t.size() / 2;
    if (m_min < 2) throw std::invalid_argument("m_min must be >= 2");
    if (m_max >= t.size()) throw std::invalid_argument("m_max must be below the sample size");
    if (m_max < m_min) throw std::invalid_argument("empty spectrum range");

    const Eigen::ArrayXd logs = log_exceedances(t);

    HillSpectrum s;
    s.side = t.side;
    s.n_source = t.n_source;
    const Eigen::Index count = m_max - m_min + 1;
    s.m.resize(count);
    s.gamma.resize(count);
    s.threshold.resize(count);

    double partial = 0.0;
    for (Eigen::Index i = 0; i < m_min; ++i) partial += logs(i);
    for (Eigen::Index m = m_min; m <= m_max; ++m) {
        const Eigen::Index j = m - m_min;
        const double gamma = partial / static_cast<double>(m) - logs(m);
        if (gamma <= 0.0) throw std::domain_error("degenerate tail in spectrum at m=" + std::to_string(m));
        s.m(j) = static_cast<int>(m);
        s.gamma(j) = gamma;
        s.threshold(j) = t.exceedances(m);
        partial += logs(m);
    }
    return s;
}

std::pair<double, double> wls_line_fit(const HillSpectrum& s) {
    const Eigen::Index n = s.size();
    if (n < 3) throw std::invalid_argument("spectrum needs at least 3 points");
    if (s.m.minCoeff() == s.m.maxCoeff()) throw std::invalid_argument("singular design: all m equal");

    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = std::sqrt(static_cast<double>(s.m(i)));
        design(i, 0) = w;
        design(i, 1) = w * s.m(i);
        target(i) = w * s.gamma(i);
    }
    const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(target);
    return {beta(0), beta(1)};
}

TailEstimate huisman_wls(const HillSpectrum& s) {
    if (s.n_source < 1) throw std::invalid_argument("spectrum lacks source sample size");
    const auto [b0, b1] = wls_line_fit(s);
    if (b0 <= 0.0) throw std::domain_error("non-heavy-tailed fit: corrected gamma <= 0");

    // Effective threshold count: first crossing of the raw spectrum through b0,
    // linearly interpolated; nearest spectrum point when no crossing exists.
    const Eigen::Index n = s.size();
    double m_eff = 0.0, r_eff = 0.0;
    bool found = false;
    for (Eigen::Index i = 0; i + 1 < n && !found; ++i) {
        const double lo = s.gamma(i) - b0;
        const double hi = s.gamma(i + 1) - b0;
        if (lo == 0.0) {
            m_eff = s.m(i);
            r_eff = s.threshold(i);
            found = true;
        } else if (lo * hi < 0.0) {
            const double frac = lo / (lo - hi);
            m_eff = s.m(i) + frac * (s.m(i + 1) - s.m(i));
            r_eff = s.threshold(i) + frac * (s.threshold(i + 1) - s.threshold(i));
            found = true;
        }
    }
    if (!found && s.gamma(n - 1) == b0) {
        m_eff = s.m(n - 1);
        r_eff = s.threshold(n - 1);
        found = true;
    }
    if (!found) {
        Eigen::Index best = 0;
        (s.gamma - b0).abs().minCoeff(&best);
        m_eff = s.m(best);
        r_eff = s.threshold(best);
    }

    return make_estimate(s.side, m_eff, b0, r_eff, s.n_source);
}

double moment_test(const TailEstimate& e, double c) { return moment_test(e.alpha, c, e.se_alpha); }

double moment_test(double alpha, double c, double se_alpha) {
    if (se_alpha <= 0.0) throw std::invalid_argument("standard error must be positive");
    return (alpha - c) / se_alpha;
}

double stability_test(const TailEstimate& e1, const TailEstimate& e2) {
    const double var = e1.se_alpha * e1.se_alpha + e2.se_alpha * e2.se_alpha;
    if (var <= 0.0) throw std::invalid_argument("standard errors must be positive");
    return (e1.alpha - e2.alpha) / std::sqrt(var);
}

TailIndexReport fit_tails(const ReturnSeries& limit, const ReturnSeries& market,
                          const std::vector<TailSide>& sides) {
    if (sides.empty()) throw std::invalid_argument("no tail sides requested");

    TailIndexReport report;
    report.limit_n = limit.n();
    report.market_n = market.n();
    for (const TailSide side : sides) {
        TailIndexEntry entry;
        entry.side = side;
        for (const bool is_limit : {true, false}) {
            const ReturnSeries& r = is_limit ? limit : market;
            TailFit fit;
            fit.estimate = huisman_wls(hill_spectrum(tail_sample(r, side)));
            fit.t0 = moment_test(fit.estimate, 0.0);
            fit.t2 = moment_test(fit.estimate, 2.0);
            fit.t4 = moment_test(fit.estimate, 4.0);
            (is_limit ? entry.limit_fit : entry.market_fit) = fit;
        }
        entry.stability_z = stability_test(entry.limit_fit.estimate, entry.market_fit.estimate);
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace tailrisk
