#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ginivar {

/// Retained MCMC draws. beta rows pack vec((alpha, B)') equation by
/// equation: block j holds (alpha_j, B_{j,1..m}). sigma rows are the m x m
/// covariance flattened row-major.
struct PosteriorDraws {
    Eigen::MatrixXd mu;    // D x T
    Eigen::MatrixXd h;     // D x T
    Eigen::MatrixXd beta;  // D x m(m+1)
    Eigen::MatrixXd sigma; // D x m*m

    struct Meta {
        std::string kind;        // "joint" or "twostep"
        std::uint64_t seed = 0;
        long burn_in = 0;
        long retained = 0;
        long thin = 1;
        int m = 0;
        int T = 0;
        std::vector<std::string> variables;
        double accept_mean = 0.0, accept_min = 0.0, accept_max = 0.0;
        long truncation_stalls = 0;
    } meta;

    int draws() const { return static_cast<int>(beta.rows()); }

    Eigen::VectorXd alpha_at(int d) const;
    Eigen::MatrixXd b_at(int d) const;
    Eigen::MatrixXd sigma_at(int d) const;

    void validate() const;
};

/// Packs (alpha, B) into the beta layout above.
Eigen::VectorXd pack_beta(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& b);
void unpack_beta(const Eigen::VectorXd& beta, int m, Eigen::VectorXd& alpha, Eigen::MatrixXd& b);

/// Directory layout: mu.csv, h.csv, beta.csv, sigma.csv (headerless numeric
/// matrices, one draw per row) plus meta.json.
void save_posterior_draws(const PosteriorDraws& draws, const std::filesystem::path& dir);
PosteriorDraws load_posterior_draws(const std::filesystem::path& dir);

} // namespace ginivar
