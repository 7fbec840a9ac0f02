#pragma once

namespace ginivar {

/// Standard normal density.
double std_normal_pdf(double z);

/// Standard normal CDF, accurate to ~1e-15 absolute (erfc based).
double std_normal_cdf(double z);

/// Inverse standard normal CDF for p in (0,1). Rational approximation
/// refined with a Halley step; relative error below 1e-12.
double std_normal_quantile(double p);

} // namespace ginivar
