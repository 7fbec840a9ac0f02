#pragma once

#include <Eigen/Dense>

#include "ginivar/errors.hpp"

namespace ginivar {

/// Prior hyperparameters: mu_t ~ N(mu0, tau0_sq), beta ~ N(beta0, omega0),
/// Sigma ~ IW(nu0, sigma0).
struct Priors {
    double mu0 = 0.0;
    double tau0_sq = 100.0;
    Eigen::VectorXd beta0;  // m(m+1)
    Eigen::MatrixXd omega0; // m(m+1) x m(m+1)
    double nu0 = 0.0;
    Eigen::MatrixXd sigma0; // m x m

    /// Diffuse defaults: beta0 = 0, omega0 = 100 I, nu0 = m + 1, sigma0 = 0.01 I.
    static Priors defaults(int m) {
        const int dim = m * (m + 1);
        Priors p;
        p.beta0 = Eigen::VectorXd::Zero(dim);
        p.omega0 = 100.0 * Eigen::MatrixXd::Identity(dim, dim);
        p.nu0 = m + 1;
        p.sigma0 = 0.01 * Eigen::MatrixXd::Identity(m, m);
        return p;
    }

    void validate(int m) const {
        const int dim = m * (m + 1);
        if (!(tau0_sq > 0.0)) throw ValidationError("Priors: tau0_sq must be positive");
        if (beta0.size() != dim) throw ValidationError("Priors: beta0 has wrong dimension");
        if (omega0.rows() != dim || omega0.cols() != dim)
            throw ValidationError("Priors: omega0 has wrong dimension");
        if (sigma0.rows() != m || sigma0.cols() != m)
            throw ValidationError("Priors: sigma0 has wrong dimension");
        if (!(nu0 > m - 1)) throw ValidationError("Priors: nu0 must exceed m-1");
    }
};

struct SamplerConfig {
    long burn_in = 10000;
    long retained = 10000;
    long thin = 1;
    int stationarity_retry_cap = 1000;
    double mh_target_accept = 0.35;
    double mh_initial_scale = 0.1;
    double rm_decay = 0.6; // Robbins-Monro step 1/iter^rm_decay during burn-in

    void validate() const {
        if (burn_in < 1) throw ValidationError("SamplerConfig: burn_in must be >= 1");
        if (retained < 1) throw ValidationError("SamplerConfig: retained must be >= 1");
        if (thin < 1) throw ValidationError("SamplerConfig: thin must be >= 1");
        if (stationarity_retry_cap < 1)
            throw ValidationError("SamplerConfig: stationarity_retry_cap must be >= 1");
        if (!(mh_target_accept > 0.0 && mh_target_accept < 1.0))
            throw ValidationError("SamplerConfig: mh_target_accept must lie in (0,1)");
        if (!(mh_initial_scale > 0.0)) throw ValidationError("SamplerConfig: mh_initial_scale must be positive");
    }
};

} // namespace ginivar
