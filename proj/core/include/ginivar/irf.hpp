#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ginivar/draws.hpp"

namespace ginivar {

/// Shock definition: +`scale` units of the policy instrument at impact,
/// responses over `horizon` quarters, pointwise posterior quantiles.
struct IrfSpec {
    std::string shock_variable;
    int horizon = 28;
    double scale = 1.0;
    std::vector<double> quantiles = {0.16, 0.5, 0.84};

    void validate() const;
};

struct StationarityResult {
    bool stationary;
    double spectral_radius;
};

/// Lag-1 stationarity: spectral radius of B below 1.
StationarityResult is_stationary(const Eigen::MatrixXd& b);

/// Lower-triangular A with Sigma = A A'. Throws NumericalError when Sigma is
/// not symmetric positive definite.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& sigma);

/// Structural impact column of `a` for the shock at `shock_index`, rescaled
/// so the instrument moves exactly `scale` at impact.
Eigen::VectorXd impulse_vector(const Eigen::MatrixXd& a, int shock_index, double scale);

/// Responses B^s * delta for s = 0..horizon; row s holds all m variables.
Eigen::MatrixXd irf_path(const Eigen::MatrixXd& b, const Eigen::VectorXd& delta, int horizon);

/// Single-draw IRF under Cholesky identification. Requires a stationary B.
Eigen::MatrixXd compute_irf(const Eigen::MatrixXd& b, const Eigen::MatrixXd& sigma,
                            const IrfSpec& spec, const std::vector<std::string>& ordering);

/// Channel shut-down: zero the full rows of B and of the Cholesky factor A
/// at the given indices; everything else is untouched.
void shutdown_channel(Eigen::MatrixXd& b, Eigen::MatrixXd& a, const std::vector<int>& off);

/// Resolves names to indices within `ordering`.
std::vector<int> resolve_variables(const std::vector<std::string>& names,
                                   const std::vector<std::string>& ordering);

/// Pointwise posterior quantiles of per-draw structural responses.
struct IrfBands {
    std::vector<std::string> variables;
    std::vector<double> quantiles;
    /// bands[q] is (horizon+1) x m: quantile q of the response of each
    /// variable at each horizon.
    std::vector<Eigen::MatrixXd> bands;
    IrfSpec spec;
    std::vector<std::string> shutdown;
    long skipped_draws = 0;
};

IrfBands posterior_irf_bands(const PosteriorDraws& draws, const IrfSpec& spec,
                             const std::vector<std::string>& shutdown = {}, int threads = 0);

void write_irf_bands_csv(const std::filesystem::path& path, const IrfBands& bands);

/// Static line chart of the bands, one panel per variable (median plus the
/// outer quantiles). Purely a convenience view of the CSV numbers.
void write_irf_bands_svg(const std::filesystem::path& path, const IrfBands& bands);

/// Paired per-draw responses of one variable at one horizon from two draw
/// sets (paired by draw index), for the 45-degree-line comparison.
struct ImpactScatter {
    std::vector<double> response_a;
    std::vector<double> response_b;
    double below_diagonal_share = 0.0; // fraction with response_b < response_a
};

ImpactScatter impact_scatter(const PosteriorDraws& draws_a, const PosteriorDraws& draws_b,
                             const IrfSpec& spec, const std::string& variable, int horizon = 1);

void write_scatter_csv(const std::filesystem::path& path, const ImpactScatter& scatter);

/// Deterministic empirical quantile (linear interpolation between order
/// statistics).
double empirical_quantile(std::vector<double> values, double q);

} // namespace ginivar
