#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ginivar/draws.hpp"
#include "ginivar/macro.hpp"
#include "ginivar/priors.hpp"
#include "ginivar/rng.hpp"
#include "ginivar/static_fit.hpp"

namespace ginivar {

/// Full state of one MCMC chain. The VAR state matrix y (row 0 = h) and the
/// unpacked (alpha, B, Sigma^-1) caches are kept in sync by the sampler.
struct ChainState {
    Eigen::VectorXd mu;           // T
    Eigen::VectorXd h;            // T
    Eigen::VectorXd beta;         // m(m+1), packs vec((alpha, B)')
    Eigen::MatrixXd sigma_mat;    // m x m
    Eigen::VectorXd mh_log_scale; // T, log proposal sd per period

    // caches derived from the above
    Eigen::VectorXd alpha;
    Eigen::MatrixXd b_mat;
    Eigen::MatrixXd sigma_inv;
    Eigen::MatrixXd y; // m x T
};

/// Gibbs/Metropolis sampler for the joint grouped-income + VAR model, and
/// the two-step variant that freezes the inequality state at its per-period
/// GLS estimate.
class JointSampler {
public:
    JointSampler(const Dataset& data, Priors priors, SamplerConfig config);

    int T() const { return T_; }
    int m() const { return m_; }

    /// GLS-based start: mu_t, h_t = 2 ln sigma_hat_t from the static fit,
    /// beta = 0, Sigma = 0.1 I.
    ChainState initial_state() const;

    struct MuPosterior {
        double mean;
        double sd;
    };
    /// Closed-form full conditional of mu_t given h_t.
    MuPosterior mu_posterior(int t, double h) const;
    void sample_mu(int t, ChainState& state, Rng& rng) const;

    /// Log full conditional of h_t (up to a constant); the candidate h enters
    /// both the mean term exp(h/2)u and the error scale.
    double h_log_target(int t, double h, const ChainState& state) const;

    struct HStep {
        bool accepted;
        double accept_prob;
    };
    /// One random-walk MH update of h_t.
    HStep sample_h(int t, ChainState& state, Rng& rng) const;

    struct BetaPosterior {
        Eigen::VectorXd mean;                 // beta_hat
        Eigen::LLT<Eigen::MatrixXd> prec_llt; // Cholesky of Omega_hat^{-1}
    };
    /// Posterior of beta given Sigma and the assembled state matrix.
    BetaPosterior beta_posterior(const ChainState& state) const;

    /// Draws beta from N(beta_hat, Omega_hat) truncated to the stationary
    /// region by rejection. Returns true when the retry cap was exhausted and
    /// the previous beta was kept.
    bool sample_beta(ChainState& state, Rng& rng) const;

    void sample_sigma(ChainState& state, Rng& rng) const;

    /// Unnormalized joint log posterior at the current state.
    double joint_log_posterior(const ChainState& state) const;

    /// Rebuilds alpha/b_mat/sigma_inv/y from (mu, h, beta, sigma_mat).
    void refresh_caches(ChainState& state) const;

    PosteriorDraws run(std::uint64_t seed) const;

    /// Two-step plug-in run: h_t fixed at 2 ln sigma_hat_t, Gibbs over
    /// (beta, Sigma) only.
    PosteriorDraws run_twostep(std::uint64_t seed) const;

    const std::vector<StaticFit>& static_fits() const { return fits_; }

private:
    PosteriorDraws run_impl(std::uint64_t seed, bool joint) const;

    struct PeriodStats {
        // a'W^-1 b for a,b in {1, u, ln x}, plus the survey size.
        double s11, s1u, s1x, suu, sxu, sxx;
        double n;
    };

    Dataset data_;
    Priors priors_;
    SamplerConfig config_;
    int T_, m_;
    std::vector<PeriodStats> stats_;
    std::vector<StaticFit> fits_;
    Eigen::MatrixXd macro_rows_; // (m-1) x T block of y
    Eigen::MatrixXd omega0_inv_;
    Eigen::VectorXd omega0_inv_beta0_;
};

PosteriorDraws run_joint_mcmc(const Dataset& data, const Priors& priors,
                              const SamplerConfig& config, std::uint64_t seed);
PosteriorDraws run_twostep(const Dataset& data, const Priors& priors,
                           const SamplerConfig& config, std::uint64_t seed);

} // namespace ginivar
