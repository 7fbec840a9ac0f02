#include "ginivar/quantile_grid.hpp"

#include <string>

#include "ginivar/errors.hpp"
#include "ginivar/normal.hpp"

namespace ginivar {

void QuantileGrid::validate() const {
    if (probs.empty()) throw ValidationError("QuantileGrid: at least one probability required");
    double prev = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] > prev && probs[i] < 1.0))
            throw ValidationError("QuantileGrid: probabilities must satisfy 0 < p_1 < ... < p_k < 1 (violated at index " +
                                  std::to_string(i) + ")");
        prev = probs[i];
    }
}

QuantileGrid QuantileGrid::from_probs(std::vector<double> probs) {
    QuantileGrid g{std::move(probs)};
    g.validate();
    return g;
}

Eigen::VectorXd QuantileGrid::normal_scores() const {
    Eigen::VectorXd u(count());
    for (int i = 0; i < count(); ++i) u[i] = std_normal_quantile(probs[i]);
    return u;
}

OrderStatCov order_stat_covariance(const QuantileGrid& grid) {
    grid.validate();
    const int k = grid.count();
    constexpr double p_min = 1e-6;
    for (int i = 0; i < k; ++i) {
        if (grid.probs[i] < p_min || grid.probs[i] > 1.0 - p_min)
            throw ValidationError("order_stat_covariance: grid probability at index " + std::to_string(i) +
                                  " (" + std::to_string(grid.probs[i]) + ") is too extreme; W would be ill conditioned");
    }

    Eigen::VectorXd dens(k);
    for (int i = 0; i < k; ++i) dens[i] = std_normal_pdf(std_normal_quantile(grid.probs[i]));

    Eigen::MatrixXd w(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            double v = grid.probs[i] * (1.0 - grid.probs[j]) / (dens[i] * dens[j]);
            w(i, j) = v;
            w(j, i) = v;
        }
    }

    Eigen::LLT<Eigen::MatrixXd> llt(w);
    if (llt.info() != Eigen::Success)
        throw NumericalError("order_stat_covariance: W is not positive definite for this grid");
    return OrderStatCov{std::move(w), grid};
}

} // namespace ginivar
