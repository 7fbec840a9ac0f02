#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ginivar {

/// Cumulative probabilities p_1 < ... < p_k at which order statistics are
/// observed. k = 1 is allowed for diagnostic use; model estimation requires
/// k >= 2 (enforced by the fitters, not here).
struct QuantileGrid {
    std::vector<double> probs;

    int count() const { return static_cast<int>(probs.size()); }

    /// Validates ordering and range, returns the grid.
    static QuantileGrid from_probs(std::vector<double> probs);

    /// u_i = Phi^{-1}(p_i).
    Eigen::VectorXd normal_scores() const;

    void validate() const;
};

/// Asymptotic covariance of sqrt(n) * (ln x - mu - sigma u) for selected
/// order statistics: w_ij = p_i (1 - p_j) / (phi(u_i) phi(u_j)), i <= j.
struct OrderStatCov {
    Eigen::MatrixXd w;
    QuantileGrid grid;
};

/// Builds W from the grid. Probabilities outside [1e-6, 1-1e-6] are rejected
/// (the normal density at the score underflows and W becomes ill conditioned).
OrderStatCov order_stat_covariance(const QuantileGrid& grid);

} // namespace ginivar
