#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace tailrisk {

// Seeded random stream built on std::mt19937_64 with explicit transforms, so a
// given seed reproduces the same values everywhere the same libm is used.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1) with 53-bit resolution: (x >> 11) * 2^-53
    double uniform01();

    // Box-Muller: z = sqrt(-2 ln(1-u1)) * {cos, sin}(2 pi u2); pairs cached
    double normal();

    // Bailey's polar method, exact for any dof > 0:
    // draw (u, v) uniform on the unit disc, w = u^2 + v^2, then
    // t = u * sqrt(dof * (w^(-2/dof) - 1) / w)
    double student_t(double dof);

 private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Per-replication seed: splitmix64 output at stream position `replication`,
// i.e. mix(base_seed + (replication + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication);

struct GeneratorSpec {
    enum class Family { pareto, student_t, normal, deterministic_pareto_grid };

    Family family = Family::pareto;
    double shape = 3.0;  // Pareto alpha or Student-t dof; ignored for normal
    Eigen::Index n = 0;
    std::uint64_t seed = 0;
};

const char* to_string(GeneratorSpec::Family f);
GeneratorSpec::Family family_from_string(const std::string& s);

// Inverse transform (1-u)^(-1/alpha); support [1, inf), u in [0, 1)
double pareto_from_uniform(double u, double alpha);

Eigen::ArrayXd gen_pareto(const GeneratorSpec& spec);
Eigen::ArrayXd gen_student_t(const GeneratorSpec& spec);
Eigen::ArrayXd gen_normal(const GeneratorSpec& spec);

// Exact population quantiles r_i = (i/(n+1))^(-1/alpha), i = 1..n; no randomness.
Eigen::ArrayXd deterministic_pareto_grid(double alpha, Eigen::Index n);

Eigen::ArrayXd generate(const GeneratorSpec& spec);

// The ceil(n*p)-th largest sample value by full sort. Brute force on purpose:
// an estimator-free check for fitted quantiles. Requires p >= 1/n.
double oracle_empirical_quantile(const Eigen::Ref<const Eigen::ArrayXd>& sample, double p);

}  // namespace tailrisk
