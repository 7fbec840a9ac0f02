#pragma once

#include <span>

namespace ginivar {

/// Gini coefficient of a lognormal with log-scale sigma: 2*Phi(sigma/sqrt(2)) - 1.
double gini_from_sigma(double sigma);

/// Inverse of gini_from_sigma on [0,1).
double sigma_from_gini(double g);

/// Lorenz curve of a lognormal at population share p: Phi(Phi^{-1}(p) - sigma).
double lognormal_lorenz(double sigma, double p);

/// Trapezoidal Gini from grouped data. `cum_pop_shares` are cumulative
/// population shares (strictly increasing, last element 1); `class_means`
/// are the per-class income means (positive, nondecreasing). Reproduces the
/// descriptive grouped estimator, which understates the continuous Gini.
double grouped_gini(std::span<const double> cum_pop_shares,
                    std::span<const double> class_means);

} // namespace ginivar
