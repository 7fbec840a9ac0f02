#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ginivar/macro.hpp"
#include "ginivar/quantile_grid.hpp"

namespace ginivar {

/// Generating process for synthetic datasets: a stationary VAR whose first
/// state is h_t, plus grouped observations of n incomes drawn from
/// LN(mu_bar, exp(h_t)) each period.
struct SyntheticTruth {
    Eigen::VectorXd alpha;
    Eigen::MatrixXd b_mat;
    Eigen::MatrixXd sigma_mat;
    QuantileGrid grid;
    long long n = 10000;
    int T = 60;
    std::uint64_t seed = 1;
    double mu_bar = 0.0;
    /// When false the recorded endpoints are the exact population quantiles
    /// exp(mu + sigma_t u_i) instead of sampled order statistics.
    bool measurement_noise = true;
    std::vector<std::string> variable_names; // m names; default gini, y2, ...

    int m() const { return static_cast<int>(alpha.size()); }
    void validate() const;

    static SyntheticTruth load(const std::filesystem::path& path); // JSON
    std::string to_json() const;
};

struct SyntheticData {
    Dataset dataset;
    Eigen::VectorXd mu_path; // T, generating mu_t
    Eigen::VectorXd h_path;  // T, generating h_t
};

/// Simulates y_t = alpha + B y_{t-1} + eta_t from y_0 = 0, sets
/// sigma_t = exp(h_t/2) with h_t the first state, and records the order
/// statistics at ranks ceil(n p_i) as bracket endpoints with cumulative
/// counts n p_i.
SyntheticData generate_synthetic_dataset(const SyntheticTruth& truth);

} // namespace ginivar
