#include "tailrisk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tailrisk {

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

double Rng::student_t(double dof) {
    if (dof <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    double u, v, w;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        w = u * u + v * v;
    } while (w > 1.0 || w == 0.0);
    return u * std::sqrt(dof * (std::pow(w, -2.0 / dof) - 1.0) / w);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication) {
    std::uint64_t z = base_seed + (replication + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const char* to_string(GeneratorSpec::Family f) {
    switch (f) {
        case GeneratorSpec::Family::pareto: return "pareto";
        case GeneratorSpec::Family::student_t: return "student_t";
        case GeneratorSpec::Family::normal: return "normal";
        case GeneratorSpec::Family::deterministic_pareto_grid: return "deterministic_pareto_grid";
    }
    return "?";
}

GeneratorSpec::Family family_from_string(const std::string& s) {
    if (s == "pareto") return GeneratorSpec::Family::pareto;
    if (s == "student_t") return GeneratorSpec::Family::student_t;
    if (s == "normal") return GeneratorSpec::Family::normal;
    if (s == "deterministic_pareto_grid") return GeneratorSpec::Family::deterministic_pareto_grid;
    throw std::invalid_argument("unknown generator family: '" + s + "'");
}

double pareto_from_uniform(double u, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    if (u < 0.0 || u >= 1.0) throw std::invalid_argument("u must lie in [0, 1)");
    return std::pow(1.0 - u, -1.0 / alpha);
}

Eigen::ArrayXd gen_pareto(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    Rng rng(spec.seed);
    Eigen::ArrayXd out(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) out(i) = pareto_from_uniform(rng.uniform01(), spec.shape);
    return out;
}

Eigen::ArrayXd gen_student_t(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    Rng rng(spec.seed);
    Eigen::ArrayXd out(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) out(i) = rng.student_t(spec.shape);
    return out;
}

Eigen::ArrayXd gen_normal(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    Rng rng(spec.seed);
    Eigen::ArrayXd out(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) out(i) = rng.normal();
    return out;
}

Eigen::ArrayXd deterministic_pareto_grid(double alpha, Eigen::Index n) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    if (n < 4) throw std::invalid_argument("grid needs n >= 4");
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 1; i <= n; ++i) {
        out(i - 1) = std::pow(static_cast<double>(i) / static_cast<double>(n + 1), -1.0 / alpha);
    }
    return out;
}

Eigen::ArrayXd generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case GeneratorSpec::Family::pareto: return gen_pareto(spec);
        case GeneratorSpec::Family::student_t: return gen_student_t(spec);
        case GeneratorSpec::Family::normal: return gen_normal(spec);
        case GeneratorSpec::Family::deterministic_pareto_grid:
            return deterministic_pareto_grid(spec.shape, spec.n);
    }
    throw std::invalid_argument("unknown generator family");
}

double oracle_empirical_quantile(const Eigen::Ref<const Eigen::ArrayXd>& sample, double p) {
    const Eigen::Index n = sample.size();
    if (n < 1) throw std::invalid_argument("empty sample");
    if (p >= 1.0) throw std::invalid_argument("p must be below 1");
    if (p < 1.0 / static_cast<double>(n)) {
        throw std::invalid_argument("p below 1/n: no empirical counterpart");
    }
    std::vector<double> sorted(sample.data(), sample.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const auto rank = static_cast<Eigen::Index>(std::ceil(static_cast<double>(n) * p));
    return sorted[static_cast<std::size_t>(rank - 1)];
}

}  // namespace tailrisk
