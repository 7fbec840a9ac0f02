#include "ginivar/rng.hpp"

#include <cmath>

#include "ginivar/errors.hpp"
#include "ginivar/normal.hpp"

namespace ginivar {

double Rng::uniform01() {
    // 53-bit mantissa; offset by half an ulp so 0 and 1 are unreachable.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    return std_normal_quantile(uniform01());
}

Eigen::VectorXd Rng::normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
}

// Marsaglia-Tsang squeeze; shapes below 1 are boosted via Gamma(a+1) * U^{1/a}.
double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw ValidationError("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        double u = uniform01();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform01();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace ginivar
