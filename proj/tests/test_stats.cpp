#include <doctest.h>

#include <cmath>

#include "tailrisk/stats.hpp"
#include "tailrisk/synthetic.hpp"

using namespace tailrisk;

TEST_CASE("summarize: three-point hand oracle") {
    Eigen::ArrayXd x(3);
    x << 0.01, -0.01, 0.02;
    const SummaryStats s = summarize(x, 1);

    // worked by hand before the implementation existed
    CHECK(s.mean == doctest::Approx(0.006666666666666667).epsilon(1e-14));
    CHECK(s.std_dev == doctest::Approx(0.015275252316519466).epsilon(1e-14));
    CHECK(s.skewness == doctest::Approx(-0.3818017741606064).epsilon(1e-12));
    CHECK(s.kurtosis == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(s.ks_statistic == doctest::Approx(0.253036993385311).epsilon(1e-12));
    CHECK(s.acf_significant_count == 0);  // acf(1) = -0.595, band 1.96/sqrt(3) = 1.13
    CHECK(s.n == 3);
}

TEST_CASE("autocorrelations: hand value and white-noise count") {
    Eigen::ArrayXd x(3);
    x << 0.01, -0.01, 0.02;
    const Eigen::ArrayXd acf = autocorrelations(x, 1);
    CHECK(acf(0) == doctest::Approx(-0.5952380952380952).epsilon(1e-12));

    GeneratorSpec spec;
    spec.family = GeneratorSpec::Family::normal;
    spec.n = 10000;
    spec.seed = 2024;
    const SummaryStats s = summarize(gen_normal(spec), 100);
    CHECK(s.acf_significant_count <= 10);  // 5 expected under the 5% band
    CHECK(s.kurtosis == doctest::Approx(3.0).epsilon(0.1));
    CHECK(std::abs(s.skewness) < 0.1);
}

TEST_CASE("acf count stays below 15 of 100 lags for iid noise across seeds") {
    int ok = 0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        GeneratorSpec spec;
        spec.family = GeneratorSpec::Family::normal;
        spec.n = 10000;
        spec.seed = derive_seed(77, rep);
        if (summarize(gen_normal(spec), 100).acf_significant_count <= 15) ++ok;
    }
    CHECK(ok >= 19);
}

TEST_CASE("ks statistic shrinks with sample size on normal data") {
    GeneratorSpec small;
    small.family = GeneratorSpec::Family::normal;
    small.n = 500;
    small.seed = 11;
    GeneratorSpec big = small;
    big.n = 20000;

    const double d_small = summarize(gen_normal(small), 100).ks_statistic;
    const double d_big = summarize(gen_normal(big), 100).ks_statistic;
    CHECK(d_small > d_big);
    CHECK(d_big < 0.02);
}

TEST_CASE("summarize: errors") {
    Eigen::ArrayXd flat = Eigen::ArrayXd::Constant(200, 0.01);
    CHECK_THROWS_AS(summarize(flat, 100), std::domain_error);

    Eigen::ArrayXd shorty(50);
    shorty.setRandom();
    CHECK_THROWS_AS(summarize(shorty, 100), std::invalid_argument);  // n < max_lag + 2
    CHECK_THROWS_AS(summarize(shorty, 0), std::invalid_argument);
    CHECK_THROWS_AS(ks_normal_statistic(shorty, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("property: skewness/kurtosis invariant under positive affine maps") {
    Rng rng(31);
    GeneratorSpec spec;
    spec.family = GeneratorSpec::Family::student_t;
    spec.shape = 5.0;
    spec.n = 400;

    for (int rep = 0; rep < 100; ++rep) {
        spec.seed = derive_seed(314, static_cast<std::uint64_t>(rep));
        const Eigen::ArrayXd x = gen_student_t(spec);
        const double a = 0.1 + 5.0 * rng.uniform01();
        const double b = 4.0 * (rng.uniform01() - 0.5);

        const SummaryStats base = summarize(x, 10);
        const SummaryStats moved = summarize(a * x + b, 10);
        CHECK(moved.skewness == doctest::Approx(base.skewness).epsilon(1e-9));
        CHECK(moved.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-9));

        const SummaryStats flipped = summarize(-a * x + b, 10);
        CHECK(flipped.skewness == doctest::Approx(-base.skewness).epsilon(1e-9));
        CHECK(flipped.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-9));
    }
}

TEST_CASE("build_summary_report: volatility columns use absolute returns") {
    GeneratorSpec spec;
    spec.family = GeneratorSpec::Family::student_t;
    spec.shape = 4.0;
    spec.n = 1000;
    spec.seed = 5;

    ReturnSeries lim;
    lim.interval_s = 300;
    lim.source = OrderKind::limit;
    lim.values = gen_student_t(spec);
    ReturnSeries mkt = lim;
    mkt.source = OrderKind::market;
    spec.seed = 6;
    mkt.values = gen_student_t(spec);

    const SummaryReport report = build_summary_report(lim, mkt, 100);
    CHECK(report.limit_volatility.mean == doctest::Approx(lim.values.abs().mean()).epsilon(1e-12));
    CHECK(report.market_volatility.mean == doctest::Approx(mkt.values.abs().mean()).epsilon(1e-12));
    CHECK(report.limit_returns.n == 1000);
    CHECK(report.limit_volatility.skewness > 0.0);  // magnitudes are right-skewed
}
