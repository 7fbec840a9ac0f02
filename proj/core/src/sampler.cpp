#include "ginivar/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ginivar/errors.hpp"
#include "ginivar/irf.hpp"

namespace ginivar {

JointSampler::JointSampler(const Dataset& data, Priors priors, SamplerConfig config)
    : data_(data), priors_(std::move(priors)), config_(config) {
    data_.validate();
    config_.validate();
    T_ = data_.T();
    m_ = data_.m();
    priors_.validate(m_);

    macro_rows_ = data_.macro.values.transpose(); // (m-1) x T

    // Per-period W_t from the realized grid; only the six quadratic-form
    // scalars are needed afterwards.
    stats_.resize(T_);
    fits_.resize(T_);
    std::string fit_failures;
    for (int t = 0; t < T_; ++t) {
        QuantileGrid grid = data_.income.grid(t);
        OrderStatCov cov = [&] {
            try {
                return order_stat_covariance(grid);
            } catch (const std::exception& e) {
                throw NumericalError("sampler: W factorization failed in period " +
                                     data_.income.dates[t].str() + ": " + e.what());
            }
        }();
        Eigen::LLT<Eigen::MatrixXd> llt(cov.w);
        if (llt.info() != Eigen::Success)
            throw NumericalError("sampler: Cholesky of W failed in period " + data_.income.dates[t].str());
        const int k = grid.count();
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
        Eigen::VectorXd u = grid.normal_scores();
        Eigen::VectorXd lnx(k);
        for (int i = 0; i < k; ++i) lnx[i] = std::log(data_.income.endpoints[t][i]);
        Eigen::VectorXd wi_ones = llt.solve(ones);
        Eigen::VectorXd wi_u = llt.solve(u);
        PeriodStats& ps = stats_[t];
        ps.s11 = ones.dot(wi_ones);
        ps.s1u = u.dot(wi_ones);
        ps.s1x = lnx.dot(wi_ones);
        ps.suu = u.dot(wi_u);
        ps.sxu = lnx.dot(wi_u);
        ps.sxx = lnx.dot(llt.solve(lnx));
        ps.n = static_cast<double>(data_.income.totals[t]);

        try {
            fits_[t] = static_gls_fit(data_.income.endpoints[t], grid, data_.income.totals[t]);
        } catch (const std::exception& e) {
            fit_failures += (fit_failures.empty() ? "" : "; ") + data_.income.dates[t].str() + ": " + e.what();
        }
    }
    if (!fit_failures.empty())
        throw NumericalError("sampler: static GLS fit failed in period(s): " + fit_failures);

    Eigen::LLT<Eigen::MatrixXd> omega_llt(priors_.omega0);
    if (omega_llt.info() != Eigen::Success)
        throw NumericalError("sampler: prior omega0 is not positive definite");
    omega0_inv_ = omega_llt.solve(Eigen::MatrixXd::Identity(priors_.omega0.rows(), priors_.omega0.cols()));
    omega0_inv_beta0_ = omega0_inv_ * priors_.beta0;
}

void JointSampler::refresh_caches(ChainState& state) const {
    unpack_beta(state.beta, m_, state.alpha, state.b_mat);
    Eigen::LLT<Eigen::MatrixXd> llt(state.sigma_mat);
    if (llt.info() != Eigen::Success)
        throw NumericalError("sampler: Sigma is not positive definite");
    state.sigma_inv = llt.solve(Eigen::MatrixXd::Identity(m_, m_));
    state.y.resize(m_, T_);
    state.y.row(0) = state.h.transpose();
    state.y.bottomRows(m_ - 1) = macro_rows_;
}

ChainState JointSampler::initial_state() const {
    ChainState s;
    s.mu.resize(T_);
    s.h.resize(T_);
    for (int t = 0; t < T_; ++t) {
        s.mu[t] = fits_[t].mu;
        s.h[t] = 2.0 * std::log(fits_[t].sigma);
    }
    s.beta = Eigen::VectorXd::Zero(m_ * (m_ + 1));
    s.sigma_mat = 0.1 * Eigen::MatrixXd::Identity(m_, m_);
    s.mh_log_scale = Eigen::VectorXd::Constant(T_, std::log(config_.mh_initial_scale));
    refresh_caches(s);
    return s;
}

JointSampler::MuPosterior JointSampler::mu_posterior(int t, double h) const {
    const PeriodStats& ps = stats_[t];
    const double inv_eh = std::exp(-h);
    const double seh = std::exp(0.5 * h);
    const double prec = inv_eh * ps.n * ps.s11 + 1.0 / priors_.tau0_sq;
    const double var = 1.0 / prec;
    const double mean = var * (inv_eh * ps.n * (ps.s1x - seh * ps.s1u) + priors_.mu0 / priors_.tau0_sq);
    return {mean, std::sqrt(var)};
}

void JointSampler::sample_mu(int t, ChainState& state, Rng& rng) const {
    MuPosterior post = mu_posterior(t, state.h[t]);
    state.mu[t] = post.mean + post.sd * rng.normal();
}

double JointSampler::h_log_target(int t, double h, const ChainState& state) const {
    const PeriodStats& ps = stats_[t];
    const double mu = state.mu[t];
    const double seh = std::exp(0.5 * h);
    // v'W^-1 v with v = ln x - mu 1 - exp(h/2) u, expanded in the cached scalars.
    const double q = ps.sxx + mu * mu * ps.s11 + seh * seh * ps.suu - 2.0 * mu * ps.s1x -
                     2.0 * seh * ps.sxu + 2.0 * mu * seh * ps.s1u;
    double logp = -0.5 * h - 0.5 * ps.n * q * std::exp(-h);

    Eigen::VectorXd yt = state.y.col(t);
    yt[0] = h;
    Eigen::VectorXd e = yt - state.alpha;
    if (t > 0) e.noalias() -= state.b_mat * state.y.col(t - 1);
    logp -= 0.5 * e.dot(state.sigma_inv * e);
    if (t + 1 < T_) {
        Eigen::VectorXd e2 = state.y.col(t + 1) - state.alpha;
        e2.noalias() -= state.b_mat * yt;
        logp -= 0.5 * e2.dot(state.sigma_inv * e2);
    }
    return logp;
}

JointSampler::HStep JointSampler::sample_h(int t, ChainState& state, Rng& rng) const {
    const double cur = state.h[t];
    const double cand = cur + std::exp(state.mh_log_scale[t]) * rng.normal();
    const double log_ratio = h_log_target(t, cand, state) - h_log_target(t, cur, state);
    const double accept_prob = std::isfinite(log_ratio) ? std::min(1.0, std::exp(log_ratio))
                                                        : (log_ratio > 0.0 ? 1.0 : 0.0);
    const bool accepted = std::log(rng.uniform01()) <= log_ratio;
    if (accepted) {
        state.h[t] = cand;
        state.y(0, t) = cand;
    }
    return {accepted, accept_prob};
}

JointSampler::BetaPosterior JointSampler::beta_posterior(const ChainState& state) const {
    // Design row r_t = (1, y_{t-1}'), with y_0 = 0.
    Eigen::MatrixXd design(T_, m_ + 1);
    design.col(0).setOnes();
    design.block(0, 1, 1, m_).setZero();
    for (int t = 1; t < T_; ++t) design.block(t, 1, 1, m_) = state.y.col(t - 1).transpose();

    Eigen::MatrixXd gram = design.transpose() * design; // (m+1) x (m+1)
    Eigen::MatrixXd c = state.sigma_inv * state.y;      // m x T

    Eigen::MatrixXd prec = omega0_inv_;
    Eigen::VectorXd rhs = omega0_inv_beta0_;
    for (int j = 0; j < m_; ++j) {
        for (int l = 0; l < m_; ++l)
            prec.block(j * (m_ + 1), l * (m_ + 1), m_ + 1, m_ + 1) += state.sigma_inv(j, l) * gram;
        rhs.segment(j * (m_ + 1), m_ + 1) += design.transpose() * c.row(j).transpose();
    }

    BetaPosterior post;
    post.prec_llt.compute(prec);
    if (post.prec_llt.info() != Eigen::Success)
        throw NumericalError("sample_beta: posterior precision is not positive definite");
    post.mean = post.prec_llt.solve(rhs);
    return post;
}

bool JointSampler::sample_beta(ChainState& state, Rng& rng) const {
    const int dim = m_ * (m_ + 1);
    BetaPosterior post = beta_posterior(state);

    // Rejection onto the stationary region; keep the previous draw when the
    // cap is exhausted.
    for (int attempt = 0; attempt < config_.stationarity_retry_cap; ++attempt) {
        Eigen::VectorXd z = rng.normal_vector(dim);
        Eigen::VectorXd cand = post.mean + post.prec_llt.matrixU().solve(z);
        Eigen::VectorXd alpha_cand;
        Eigen::MatrixXd b_cand;
        unpack_beta(cand, m_, alpha_cand, b_cand);
        if (is_stationary(b_cand).stationary) {
            state.beta = std::move(cand);
            state.alpha = std::move(alpha_cand);
            state.b_mat = std::move(b_cand);
            return false;
        }
    }
    return true;
}

void JointSampler::sample_sigma(ChainState& state, Rng& rng) const {
    // Residuals E = (e_1, ..., e_T), e_t = y_t - alpha - B y_{t-1}.
    Eigen::MatrixXd resid = state.y;
    resid.colwise() -= state.alpha;
    resid.block(0, 1, m_, T_ - 1).noalias() -= state.b_mat * state.y.leftCols(T_ - 1);

    Eigen::MatrixXd sigma_hat = resid * resid.transpose() + priors_.sigma0;
    const double nu_hat = static_cast<double>(T_) + priors_.nu0;

    Eigen::LLT<Eigen::MatrixXd> llt(sigma_hat);
    if (llt.info() != Eigen::Success)
        throw NumericalError("sample_sigma: Sigma_hat is not positive definite");
    Eigen::MatrixXd l = llt.matrixL();

    // Bartlett factor of a Wishart(nu_hat, I) draw.
    Eigen::MatrixXd bart = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
        bart(i, i) = std::sqrt(rng.chi_squared(nu_hat - i));
        for (int j = 0; j < i; ++j) bart(i, j) = rng.normal();
    }
    // Sigma = L (A A')^{-1} L' via two triangular solves.
    Eigen::MatrixXd tmp = bart.triangularView<Eigen::Lower>().solve(l.transpose());
    Eigen::MatrixXd inner = bart.transpose().triangularView<Eigen::Upper>().solve(tmp);
    Eigen::MatrixXd sigma = l * inner;
    state.sigma_mat = 0.5 * (sigma + sigma.transpose());

    Eigen::LLT<Eigen::MatrixXd> sllt(state.sigma_mat);
    if (sllt.info() != Eigen::Success)
        throw NumericalError("sample_sigma: sampled Sigma is not positive definite");
    state.sigma_inv = sllt.solve(Eigen::MatrixXd::Identity(m_, m_));
}

double JointSampler::joint_log_posterior(const ChainState& state) const {
    double logp = 0.0;
    for (int t = 0; t < T_; ++t) {
        const PeriodStats& ps = stats_[t];
        const double mu = state.mu[t];
        const double seh = std::exp(0.5 * state.h[t]);
        const double q = ps.sxx + mu * mu * ps.s11 + seh * seh * ps.suu - 2.0 * mu * ps.s1x -
                         2.0 * seh * ps.sxu + 2.0 * mu * seh * ps.s1u;
        logp += -0.5 * state.h[t] - 0.5 * ps.n * q * std::exp(-state.h[t]);
        logp -= 0.5 * (mu - priors_.mu0) * (mu - priors_.mu0) / priors_.tau0_sq;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(state.sigma_mat);
    if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (int i = 0; i < m_; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    for (int t = 0; t < T_; ++t) {
        Eigen::VectorXd e = state.y.col(t) - state.alpha;
        if (t > 0) e.noalias() -= state.b_mat * state.y.col(t - 1);
        logp -= 0.5 * logdet + 0.5 * e.dot(state.sigma_inv * e);
    }
    Eigen::VectorXd bdev = state.beta - priors_.beta0;
    logp -= 0.5 * bdev.dot(omega0_inv_ * bdev);
    logp -= 0.5 * (priors_.nu0 + m_ + 1) * logdet + 0.5 * (state.sigma_inv * priors_.sigma0).trace();
    return logp;
}

PosteriorDraws JointSampler::run_impl(std::uint64_t seed, bool joint) const {
    Rng rng(seed);
    ChainState state = initial_state();

    const long total_iters = config_.burn_in + config_.retained * config_.thin;
    const int D = static_cast<int>(config_.retained);

    PosteriorDraws out;
    out.mu.resize(D, T_);
    out.h.resize(D, T_);
    out.beta.resize(D, m_ * (m_ + 1));
    out.sigma.resize(D, m_ * m_);

    Eigen::VectorXd accepted = Eigen::VectorXd::Zero(T_);
    long post_burn_scans = 0;
    long stalls = 0;
    int stored = 0;

    for (long iter = 1; iter <= total_iters; ++iter) {
        const bool adapting = iter <= config_.burn_in;

        if (joint) {
            for (int t = 0; t < T_; ++t) sample_mu(t, state, rng);
            for (int t = 0; t < T_; ++t) {
                HStep step = sample_h(t, state, rng);
                if (adapting) {
                    state.mh_log_scale[t] += (step.accept_prob - config_.mh_target_accept) /
                                             std::pow(static_cast<double>(iter), config_.rm_decay);
                } else {
                    accepted[t] += step.accepted ? 1.0 : 0.0;
                }
            }
            if (!adapting) ++post_burn_scans;
        }

        if (sample_beta(state, rng)) ++stalls;
        sample_sigma(state, rng);

        if (!std::isfinite(joint_log_posterior(state)))
            throw NumericalError("sampler: joint log posterior became non-finite at iteration " +
                                 std::to_string(iter));

        if (!adapting && (iter - config_.burn_in) % config_.thin == 0 && stored < D) {
            out.mu.row(stored) = state.mu.transpose();
            out.h.row(stored) = state.h.transpose();
            out.beta.row(stored) = state.beta.transpose();
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < m_; ++j) out.sigma(stored, i * m_ + j) = state.sigma_mat(i, j);
            ++stored;
        }
    }

    out.meta.kind = joint ? "joint" : "twostep";
    out.meta.seed = seed;
    out.meta.burn_in = config_.burn_in;
    out.meta.retained = config_.retained;
    out.meta.thin = config_.thin;
    out.meta.m = m_;
    out.meta.T = T_;
    out.meta.variables = data_.variables();
    out.meta.truncation_stalls = stalls;
    if (joint && post_burn_scans > 0) {
        Eigen::VectorXd rates = accepted / static_cast<double>(post_burn_scans);
        out.meta.accept_mean = rates.mean();
        out.meta.accept_min = rates.minCoeff();
        out.meta.accept_max = rates.maxCoeff();
    }
    return out;
}

PosteriorDraws JointSampler::run(std::uint64_t seed) const { return run_impl(seed, true); }
PosteriorDraws JointSampler::run_twostep(std::uint64_t seed) const { return run_impl(seed, false); }

PosteriorDraws run_joint_mcmc(const Dataset& data, const Priors& priors,
                              const SamplerConfig& config, std::uint64_t seed) {
    return JointSampler(data, priors, config).run(seed);
}

PosteriorDraws run_twostep(const Dataset& data, const Priors& priors,
                           const SamplerConfig& config, std::uint64_t seed) {
    return JointSampler(data, priors, config).run_twostep(seed);
}

} // namespace ginivar
