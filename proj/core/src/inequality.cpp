#include "ginivar/inequality.hpp"

#include <cmath>
#include <string>

#include "ginivar/errors.hpp"
#include "ginivar/normal.hpp"

namespace ginivar {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

double gini_from_sigma(double sigma) {
    if (!(sigma >= 0.0)) throw ValidationError("gini_from_sigma: sigma must be >= 0");
    return 2.0 * std_normal_cdf(sigma / kSqrt2) - 1.0;
}

double sigma_from_gini(double g) {
    if (!(g >= 0.0 && g < 1.0))
        throw ValidationError("sigma_from_gini: g must lie in [0,1)");
    if (g == 0.0) return 0.0;
    return kSqrt2 * std_normal_quantile(0.5 * (1.0 + g));
}

double lognormal_lorenz(double sigma, double p) {
    if (!(sigma >= 0.0)) throw ValidationError("lognormal_lorenz: sigma must be >= 0");
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("lognormal_lorenz: p must lie strictly in (0,1)");
    return std_normal_cdf(std_normal_quantile(p) - sigma);
}

double grouped_gini(std::span<const double> cum_pop_shares,
                    std::span<const double> class_means) {
    const std::size_t g = cum_pop_shares.size();
    if (g == 0 || class_means.size() != g)
        throw ValidationError("grouped_gini: shares and means must be nonempty and equal length");
    double prev_share = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        if (!(cum_pop_shares[i] > prev_share))
            throw ValidationError("grouped_gini: population shares must be strictly increasing");
        prev_share = cum_pop_shares[i];
        if (!(class_means[i] > 0.0))
            throw ValidationError("grouped_gini: class means must be strictly positive");
        if (i > 0 && class_means[i] < class_means[i - 1])
            throw ValidationError("grouped_gini: class means must be nondecreasing (invalid grouping)");
    }
    if (std::abs(cum_pop_shares[g - 1] - 1.0) > 1e-9)
        throw ValidationError("grouped_gini: cumulative population shares must end at 1");

    // Cumulative income shares, then the trapezoid rule against the diagonal.
    double total = 0.0;
    prev_share = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        total += (cum_pop_shares[i] - prev_share) * class_means[i];
        prev_share = cum_pop_shares[i];
    }
    double gini = 1.0;
    double prev_p = 0.0, prev_l = 0.0, cum_income = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        cum_income += (cum_pop_shares[i] - prev_p) * class_means[i];
        double l = cum_income / total;
        gini -= (cum_pop_shares[i] - prev_p) * (l + prev_l);
        prev_p = cum_pop_shares[i];
        prev_l = l;
    }
    return gini;
}

} // namespace ginivar
