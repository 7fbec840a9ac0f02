#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ginivar {

/// Deterministic random source. All variate transforms are implemented here
/// (inverse-CDF normal, Marsaglia-Tsang gamma) so a seed pins the entire
/// stream; implementation-defined std::distributions are avoided on purpose.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on (0,1), never exactly 0 or 1.
    double uniform01();

    /// Standard normal via the inverse CDF (one engine step per draw).
    double normal();

    Eigen::VectorXd normal_vector(int n);

    /// Gamma(shape, 1) for shape > 0.
    double gamma(double shape);

    double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

private:
    std::mt19937_64 engine_;
};

} // namespace ginivar
