#pragma once

#include <span>

#include "ginivar/quantile_grid.hpp"

namespace ginivar {

/// Per-period GLS estimate of (mu, sigma) from ln x ~ N(mu 1 + sigma u, (sigma^2/n) W).
struct StaticFit {
    double mu = 0.0;
    double sigma = 0.0;
    double se_mu = 0.0;
    double se_sigma = 0.0;
};

/// Closed-form GLS of ln(endpoints) on (1, u) with weight W^{-1}. Requires
/// k >= 2; throws NumericalError if the implied sigma is not positive.
StaticFit static_gls_fit(std::span<const double> endpoints, const QuantileGrid& grid, long long n);

} // namespace ginivar
