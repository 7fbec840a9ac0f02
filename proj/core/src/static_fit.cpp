#include "ginivar/static_fit.hpp"

#include <cmath>

#include "ginivar/errors.hpp"

namespace ginivar {

StaticFit static_gls_fit(std::span<const double> endpoints, const QuantileGrid& grid, long long n) {
    const int k = grid.count();
    if (k < 2) throw ValidationError("static_gls_fit: underdetermined, need at least 2 brackets");
    if (static_cast<int>(endpoints.size()) != k)
        throw ValidationError("static_gls_fit: endpoints/grid size mismatch");
    if (n < 1) throw ValidationError("static_gls_fit: n must be positive");

    Eigen::VectorXd lnx(k);
    for (int i = 0; i < k; ++i) {
        if (!(endpoints[i] > 0.0)) throw ValidationError("static_gls_fit: endpoints must be positive");
        lnx[i] = std::log(endpoints[i]);
    }
    Eigen::VectorXd u = grid.normal_scores();
    OrderStatCov cov = order_stat_covariance(grid);
    Eigen::LLT<Eigen::MatrixXd> llt(cov.w);
    if (llt.info() != Eigen::Success) throw NumericalError("static_gls_fit: W not positive definite");

    Eigen::MatrixXd design(k, 2);
    design.col(0).setOnes();
    design.col(1) = u;
    Eigen::MatrixXd wi_design = llt.solve(design);
    Eigen::Matrix2d gram = design.transpose() * wi_design;
    Eigen::Vector2d rhs = wi_design.transpose() * lnx;
    Eigen::Vector2d theta = gram.ldlt().solve(rhs);

    StaticFit fit;
    fit.mu = theta[0];
    fit.sigma = theta[1];
    if (!(fit.sigma > 0.0))
        throw NumericalError("static_gls_fit: implied sigma is not positive (sigma_hat = " +
                             std::to_string(fit.sigma) + ")");
    // Asymptotic covariance sigma^2 (X'W^-1 X)^-1 / n.
    Eigen::Matrix2d gram_inv = gram.inverse();
    const double scale = fit.sigma * fit.sigma / static_cast<double>(n);
    fit.se_mu = std::sqrt(scale * gram_inv(0, 0));
    fit.se_sigma = std::sqrt(scale * gram_inv(1, 1));
    return fit;
}

} // namespace ginivar
