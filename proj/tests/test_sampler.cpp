#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ginivar/errors.hpp"
#include "ginivar/irf.hpp"
#include "ginivar/rng.hpp"
#include "ginivar/sampler.hpp"
#include "ginivar/static_fit.hpp"
#include "ginivar/synthetic.hpp"
#include "oracles.hpp"

using namespace ginivar;

namespace {

SyntheticTruth small_truth(int T, std::uint64_t seed, long long n = 10000) {
    SyntheticTruth t;
    t.alpha = Eigen::Vector3d(-0.35, 0.5, 0.2);
    t.b_mat.resize(3, 3);
    t.b_mat << 0.6, 0.05, 0.0,
               0.1, 0.5, 0.1,
               0.0, 0.1, 0.4;
    t.sigma_mat.resize(3, 3);
    t.sigma_mat << 0.0016, 0.0002, 0.0,
                   0.0002, 0.0030, 0.0004,
                   0.0,    0.0004, 0.0025;
    t.grid = QuantileGrid::from_probs({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    t.n = n;
    t.T = T;
    t.seed = seed;
    t.mu_bar = 1.0;
    return t;
}

// Single-period dataset with a 3-bracket grid, built by hand.
Dataset tiny_dataset(double mu_true, double h_true, double y2) {
    GroupedIncomeSeries income;
    income.dates = {Period::parse("2005Q1")};
    QuantileGrid grid = QuantileGrid::from_probs({0.25, 0.5, 0.75});
    Eigen::VectorXd u = grid.normal_scores();
    const double sigma = std::exp(0.5 * h_true);
    std::vector<double> x(3);
    // noisy-ish endpoints around the exact quantiles
    x[0] = std::exp(mu_true + sigma * u[0] + 0.01);
    x[1] = std::exp(mu_true + sigma * u[1] - 0.005);
    x[2] = std::exp(mu_true + sigma * u[2] + 0.004);
    income.endpoints = {x};
    income.cum_counts = {{25, 50, 75}};
    income.totals = {100};

    MacroPanel panel;
    panel.dates = income.dates;
    panel.names = {"y2"};
    panel.values.resize(1, 1);
    panel.values(0, 0) = y2;
    return Dataset{std::move(income), std::move(panel)};
}

} // namespace

TEST_CASE("Rng is seed-deterministic with sane normal moments") {
    Rng a(2024), b(2024);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());

    Rng r(7);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = r.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.03);

    // gamma mean/variance spot check (shape 3.7: mean = var = 3.7)
    double gs = 0.0, gs2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = r.gamma(3.7);
        gs += g;
        gs2 += g * g;
    }
    double gm = gs / n;
    CHECK(std::abs(gm - 3.7) < 0.05);
    CHECK(std::abs(gs2 / n - gm * gm - 3.7) < 0.2);
    CHECK_THROWS_AS(r.gamma(0.0), ValidationError);
}

TEST_CASE("mu step: noise-free data returns mu* for any h") {
    // ln x = mu* + exp(h/2) u exactly, so the GLS residual is zero and the
    // diffuse-prior posterior mean is mu* regardless of the h used.
    const double mu_star = 0.8;
    for (double h : {-1.5, 0.0, 0.7}) {
        GroupedIncomeSeries income;
        income.dates = {Period::parse("2005Q1")};
        QuantileGrid grid = QuantileGrid::from_probs({0.2, 0.4, 0.6, 0.8});
        Eigen::VectorXd u = grid.normal_scores();
        std::vector<double> x(4);
        for (int i = 0; i < 4; ++i) x[i] = std::exp(mu_star + std::exp(0.5 * h) * u[i]);
        income.endpoints = {x};
        income.cum_counts = {{2000, 4000, 6000, 8000}};
        income.totals = {10000};
        MacroPanel panel;
        panel.dates = income.dates;
        panel.names = {"y2"};
        panel.values = Eigen::MatrixXd::Zero(1, 1);
        Dataset data{income, panel};

        Priors priors = Priors::defaults(2);
        priors.tau0_sq = 1e12; // diffuse limit
        JointSampler sampler(data, priors, SamplerConfig{});
        auto post = sampler.mu_posterior(0, h);
        CHECK(std::abs(post.mean - mu_star) < 1e-9);
        CHECK(post.sd > 0.0);
    }
}

TEST_CASE("mu step matches the grid-integration oracle on a 3-bracket fixture") {
    const double h = -0.4;
    Dataset data = tiny_dataset(1.2, h, 0.0);
    Priors priors = Priors::defaults(2);
    priors.mu0 = 0.3;
    priors.tau0_sq = 4.0;
    JointSampler sampler(data, priors, SamplerConfig{});
    auto post = sampler.mu_posterior(0, h);

    // independent density: prior x exp(-n v'W^-1 v / (2 e^h)) on a mu grid
    auto w = oracle::order_stat_w(data.income.grid(0).probs);
    std::vector<long double> u(3), lnx(3);
    for (int i = 0; i < 3; ++i) {
        u[i] = oracle::normal_quantile(data.income.grid(0).probs[i]);
        lnx[i] = std::log(static_cast<long double>(data.income.endpoints[0][i]));
    }
    const long double n = 100.0L;
    auto log_density = [&](double mu) {
        std::vector<long double> v(3);
        for (int i = 0; i < 3; ++i)
            v[i] = lnx[i] - static_cast<long double>(mu) - std::exp(0.5L * static_cast<long double>(h)) * u[i];
        long double q = oracle::quad_form_winv(w, v);
        long double prior = -0.5L * (mu - priors.mu0) * (mu - priors.mu0) / priors.tau0_sq;
        return static_cast<double>(-0.5L * n * q * std::exp(-static_cast<long double>(h)) + prior);
    };
    auto dist = oracle::grid_distribution(log_density, post.mean - 8.0 * post.sd,
                                          post.mean + 8.0 * post.sd, 16001);
    CHECK(std::abs(dist.mean() - post.mean) < 1e-6);
}

TEST_CASE("h kernel accepts a proposal equal to the current point") {
    Dataset data = tiny_dataset(1.0, -0.5, 0.1);
    JointSampler sampler(data, Priors::defaults(2), SamplerConfig{});
    ChainState state = sampler.initial_state();
    state.mh_log_scale[0] = -std::numeric_limits<double>::infinity(); // zero step
    Rng rng(5);
    auto step = sampler.sample_h(0, state, rng);
    CHECK(step.accepted);
    CHECK(step.accept_prob == 1.0);
}

TEST_CASE("frozen h kernel preserves the single-period target (invariance smoke test)") {
    const double h_true = -0.6;
    Dataset data = tiny_dataset(1.1, h_true, 0.25);
    Priors priors = Priors::defaults(2);
    JointSampler sampler(data, priors, SamplerConfig{});
    ChainState state = sampler.initial_state();
    state.mu[0] = 1.1;
    state.beta = pack_beta(Eigen::Vector2d(0.0, 0.1), (Eigen::Matrix2d() << 0.5, 0.0, 0.1, 0.3).finished());
    state.sigma_mat = (Eigen::Matrix2d() << 0.3, 0.05, 0.05, 0.2).finished();
    sampler.refresh_caches(state);

    // independent grid build of the same target
    auto w = oracle::order_stat_w(data.income.grid(0).probs);
    std::vector<long double> u(3), lnx(3);
    for (int i = 0; i < 3; ++i) {
        u[i] = oracle::normal_quantile(data.income.grid(0).probs[i]);
        lnx[i] = std::log(static_cast<long double>(data.income.endpoints[0][i]));
    }
    const long double n = 100.0L;
    const double mu = state.mu[0];
    Eigen::Matrix2d sigma_inv = state.sigma_mat.inverse();
    auto log_target = [&](double h) {
        std::vector<long double> v(3);
        for (int i = 0; i < 3; ++i)
            v[i] = lnx[i] - static_cast<long double>(mu) - std::exp(0.5L * static_cast<long double>(h)) * u[i];
        long double q = oracle::quad_form_winv(w, v);
        double logp = static_cast<double>(-0.5L * static_cast<long double>(h) -
                                          0.5L * n * q * std::exp(-static_cast<long double>(h)));
        Eigen::Vector2d e(h - state.alpha[0], data.macro.values(0, 0) - state.alpha[1]);
        logp -= 0.5 * e.dot(sigma_inv * e);
        return logp;
    };
    auto dist = oracle::grid_distribution(log_target, -4.0, 2.0, 12001);

    // exact draws from the target, one frozen kernel step each
    state.mh_log_scale[0] = std::log(0.4);
    Rng rng(99);
    const int n_samples = 50000;
    std::vector<double> stepped(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double h0 = dist.quantile(rng.uniform01());
        state.h[0] = h0;
        state.y(0, 0) = h0;
        sampler.sample_h(0, state, rng);
        stepped[i] = state.h[0];
    }
    double ks = oracle::ks_distance(stepped, dist);
    CHECK(ks < 0.02);
}

TEST_CASE("beta step recovers an exactly consistent VAR with a diffuse prior") {
    const int T = 40, m = 2;
    Eigen::Vector2d alpha_true(0.3, -0.2);
    Eigen::Matrix2d b_true;
    b_true << 0.5, 0.2, 0.1, 0.4;

    SyntheticTruth truth = small_truth(T, 17);
    truth.alpha = Eigen::Vector2d(0.0, 0.0);
    truth.b_mat = Eigen::Matrix2d::Identity() * 0.5;
    truth.sigma_mat = Eigen::Matrix2d::Identity() * 0.01;
    auto synth = generate_synthetic_dataset(truth);

    Priors priors = Priors::defaults(m);
    priors.omega0 = 1e10 * Eigen::MatrixXd::Identity(m * (m + 1), m * (m + 1));
    JointSampler sampler(synth.dataset, priors, SamplerConfig{});
    ChainState state = sampler.initial_state();

    // overwrite the state matrix with a noiseless path from (alpha*, B*)
    Eigen::MatrixXd y(m, T);
    Eigen::Vector2d prev(0.0, 0.0);
    for (int t = 0; t < T; ++t) {
        y.col(t) = alpha_true + b_true * prev;
        prev = y.col(t);
    }
    state.y = y;
    state.h = y.row(0).transpose();
    state.sigma_mat = Eigen::Matrix2d::Identity() * 0.5;
    state.sigma_inv = state.sigma_mat.inverse();

    auto post = sampler.beta_posterior(state);
    Eigen::VectorXd expected = pack_beta(alpha_true, b_true);
    CHECK((post.mean - expected).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("beta step rejects explosive candidates and stalls at the cap") {
    const int T = 120, m = 2;
    SyntheticTruth truth = small_truth(T, 23);
    truth.alpha = Eigen::Vector2d(0.0, 0.0);
    truth.b_mat = Eigen::Matrix2d::Identity() * 0.5;
    truth.sigma_mat = Eigen::Matrix2d::Identity() * 0.01;
    auto synth = generate_synthetic_dataset(truth);

    SamplerConfig config;
    config.stationarity_retry_cap = 50;
    JointSampler sampler(synth.dataset, Priors::defaults(m), config);
    ChainState state = sampler.initial_state();

    // explosive deterministic path: every posterior candidate is non-stationary
    Eigen::MatrixXd y(m, T);
    Eigen::Vector2d prev(0.05, -0.03);
    Eigen::Matrix2d b_explosive;
    b_explosive << 1.08, 0.0, 0.0, 1.05;
    for (int t = 0; t < T; ++t) {
        y.col(t) = b_explosive * prev;
        prev = y.col(t);
    }
    state.y = y;
    state.h = y.row(0).transpose();
    state.sigma_mat = Eigen::Matrix2d::Identity() * 1e-6;
    state.sigma_inv = state.sigma_mat.inverse();

    Eigen::VectorXd before = state.beta;
    Rng rng(31);
    bool stalled = sampler.sample_beta(state, rng);
    CHECK(stalled);
    CHECK((state.beta.array() == before.array()).all()); // previous draw kept
}

TEST_CASE("sigma step: zero residuals reproduce the inverse-Wishart mean") {
    const int T = 10, m = 2;
    SyntheticTruth truth = small_truth(T, 29);
    truth.alpha = Eigen::Vector2d(0.1, -0.1);
    truth.b_mat = Eigen::Matrix2d::Identity() * 0.4;
    truth.sigma_mat = Eigen::Matrix2d::Identity() * 0.02;
    auto synth = generate_synthetic_dataset(truth);

    const double c = 0.05;
    Priors priors = Priors::defaults(m);
    priors.sigma0 = c * Eigen::MatrixXd::Identity(m, m);
    JointSampler sampler(synth.dataset, priors, SamplerConfig{});
    ChainState state = sampler.initial_state();

    // zero residuals: y_t = alpha + B y_{t-1} exactly
    Eigen::Vector2d alpha(0.2, 0.1);
    Eigen::Matrix2d b;
    b << 0.5, 0.1, 0.0, 0.6;
    state.beta = pack_beta(alpha, b);
    state.alpha = alpha;
    state.b_mat = b;
    Eigen::MatrixXd y(m, T);
    Eigen::Vector2d prev(0.0, 0.0);
    for (int t = 0; t < T; ++t) {
        y.col(t) = alpha + b * prev;
        prev = y.col(t);
    }
    state.y = y;
    state.h = y.row(0).transpose();

    const double nu_hat = T + priors.nu0; // = 13
    const double expected = c / (nu_hat - m - 1);
    Rng rng(41);
    Eigen::Matrix2d mean_sigma = Eigen::Matrix2d::Zero();
    const int draws = 20000;
    for (int d = 0; d < draws; ++d) {
        sampler.sample_sigma(state, rng);
        mean_sigma += state.sigma_mat;
        Eigen::LLT<Eigen::MatrixXd> llt(state.sigma_mat);
        REQUIRE(llt.info() == Eigen::Success); // every draw SPD
    }
    mean_sigma /= draws;
    CHECK(std::abs(mean_sigma(0, 0) - expected) < 0.05 * expected);
    CHECK(std::abs(mean_sigma(1, 1) - expected) < 0.05 * expected);
    CHECK(std::abs(mean_sigma(0, 1)) < 0.05 * expected);
}

TEST_CASE("sigma step posterior mean tracks the generating covariance on long data") {
    const int T = 2000, m = 2;
    Eigen::Matrix2d sigma_true;
    sigma_true << 0.5, 0.15, 0.15, 0.3;

    SyntheticTruth truth = small_truth(T, 43);
    truth.alpha = Eigen::Vector2d(0.0, 0.0);
    truth.b_mat = Eigen::Matrix2d::Identity() * 0.3;
    truth.sigma_mat = Eigen::Matrix2d::Identity() * 0.01;
    auto synth = generate_synthetic_dataset(truth);
    JointSampler sampler(synth.dataset, Priors::defaults(m), SamplerConfig{});
    ChainState state = sampler.initial_state();

    // residuals are iid N(0, sigma_true): alpha = 0, B = 0, y = errors
    state.beta = Eigen::VectorXd::Zero(m * (m + 1));
    state.alpha = Eigen::VectorXd::Zero(m);
    state.b_mat = Eigen::MatrixXd::Zero(m, m);
    Rng path_rng(77);
    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(sigma_true).matrixL();
    Eigen::MatrixXd y(m, T);
    for (int t = 0; t < T; ++t) y.col(t) = chol * path_rng.normal_vector(m);
    state.y = y;
    state.h = y.row(0).transpose();
    state.sigma_mat = Eigen::Matrix2d::Identity();

    Rng rng(111);
    Eigen::Matrix2d mean_sigma = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d mean_sq = Eigen::Matrix2d::Zero();
    const int draws = 4000;
    for (int d = 0; d < draws; ++d) {
        sampler.sample_sigma(state, rng);
        mean_sigma += state.sigma_mat;
        mean_sq += state.sigma_mat.cwiseProduct(state.sigma_mat);
    }
    mean_sigma /= draws;
    mean_sq /= draws;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double sd = std::sqrt(std::max(mean_sq(i, j) - mean_sigma(i, j) * mean_sigma(i, j), 1e-12));
            CHECK(std::abs(mean_sigma(i, j) - sigma_true(i, j)) < 2.0 * std::max(sd, 0.02 * std::abs(sigma_true(i, j)) + 1e-3));
        }
}

TEST_CASE("joint run is bit-identical under the same seed and keeps stable draws") {
    SyntheticTruth truth = small_truth(20, 51);
    auto synth = generate_synthetic_dataset(truth);
    SamplerConfig config;
    config.burn_in = 150;
    config.retained = 120;
    JointSampler sampler(synth.dataset, Priors::defaults(3), config);

    PosteriorDraws a = sampler.run(12345);
    PosteriorDraws b = sampler.run(12345);
    CHECK((a.mu.array() == b.mu.array()).all());
    CHECK((a.h.array() == b.h.array()).all());
    CHECK((a.beta.array() == b.beta.array()).all());
    CHECK((a.sigma.array() == b.sigma.array()).all());
    CHECK_NOTHROW(a.validate()); // includes the all-draws stationarity sweep

    PosteriorDraws c = sampler.run(54321);
    CHECK(!(a.beta.array() == c.beta.array()).all());
    CHECK(std::isfinite(sampler.joint_log_posterior(sampler.initial_state())));
}

TEST_CASE("joint run acceptance rates settle in the tuned band") {
    SyntheticTruth truth = small_truth(30, 61);
    auto synth = generate_synthetic_dataset(truth);
    SamplerConfig config;
    config.burn_in = 2000;
    config.retained = 2000;
    JointSampler sampler(synth.dataset, Priors::defaults(3), config);
    PosteriorDraws draws = sampler.run(777);
    CHECK(draws.meta.accept_mean >= 0.25);
    CHECK(draws.meta.accept_mean <= 0.50);
    CHECK(draws.meta.accept_min > 0.10);
    CHECK(draws.meta.accept_max < 0.70);
}

TEST_CASE("joint run tracks the latent volatility path on a synthetic fixture") {
    SyntheticTruth truth = small_truth(40, 71);
    auto synth = generate_synthetic_dataset(truth);
    SamplerConfig config;
    config.burn_in = 1500;
    config.retained = 1500;
    JointSampler sampler(synth.dataset, Priors::defaults(3), config);
    PosteriorDraws draws = sampler.run(2718);

    double mae = 0.0;
    for (int t = 0; t < truth.T; ++t) {
        std::vector<double> col(draws.h.col(t).data(), draws.h.col(t).data() + draws.draws());
        double med_h = empirical_quantile(col, 0.5);
        mae += std::abs(std::exp(0.5 * med_h) - std::exp(0.5 * synth.h_path[t]));
    }
    mae /= truth.T;
    CHECK(mae < 0.08);
}

TEST_CASE("static_gls_fit is exact on noise-free data and location equivariant") {
    QuantileGrid grid = QuantileGrid::from_probs({0.2, 0.35, 0.5, 0.65, 0.8});
    Eigen::VectorXd u = grid.normal_scores();
    std::vector<double> x(5);
    for (int i = 0; i < 5; ++i) x[i] = std::exp(1.0 + 0.8 * u[i]);
    auto fit = static_gls_fit(x, grid, 10000);
    CHECK(std::abs(fit.mu - 1.0) < 1e-10);
    CHECK(std::abs(fit.sigma - 0.8) < 1e-10);
    CHECK(fit.se_mu > 0.0);
    CHECK(fit.se_sigma > 0.0);

    const double c = 3.7;
    std::vector<double> scaled(5);
    for (int i = 0; i < 5; ++i) scaled[i] = c * x[i];
    auto fit2 = static_gls_fit(scaled, grid, 10000);
    CHECK(std::abs(fit2.mu - (fit.mu + std::log(c))) < 1e-12);
    CHECK(std::abs(fit2.sigma - fit.sigma) < 1e-12);

    std::vector<double> one{2.0};
    CHECK_THROWS_AS(static_gls_fit(one, QuantileGrid::from_probs({0.5}), 100), ValidationError);
}

TEST_CASE("static_gls_fit sampling distribution matches the asymptotics") {
    const long long n = 10000;
    const double sigma_true = 0.6, mu_true = 0.5;
    QuantileGrid grid = QuantileGrid::from_probs({0.1, 0.25, 0.5, 0.75, 0.9});
    const int reps = 2000;

    Rng rng(1601);
    std::vector<double> z(static_cast<std::size_t>(n));
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> x(grid.count());
    for (int r = 0; r < reps; ++r) {
        for (auto& v : z) v = rng.normal();
        std::sort(z.begin(), z.end());
        for (int i = 0; i < grid.count(); ++i) {
            auto rank = static_cast<std::size_t>(std::llround(grid.probs[i] * n));
            x[i] = std::exp(mu_true + sigma_true * z[rank - 1]);
        }
        auto fit = static_gls_fit(x, grid, n);
        sum += fit.sigma;
        sum2 += fit.sigma * fit.sigma;
    }
    double mean = sum / reps;
    double var = sum2 / reps - mean * mean;
    CHECK(std::abs(mean - sigma_true) < 0.005);

    // asymptotic variance from the long-double oracle: sigma^2 (X'W^-1X)^-1_{22} / n
    auto w = oracle::order_stat_w(grid.probs);
    std::vector<long double> ones(grid.count(), 1.0L), u(grid.count());
    for (int i = 0; i < grid.count(); ++i) u[i] = oracle::normal_quantile(grid.probs[i]);
    long double s11 = oracle::quad_form_winv(w, ones);
    long double suu = oracle::quad_form_winv(w, u);
    std::vector<long double> upl(ones);
    for (int i = 0; i < grid.count(); ++i) upl[i] += u[i];
    long double s1u = 0.5L * (oracle::quad_form_winv(w, upl) - s11 - suu);
    long double det = s11 * suu - s1u * s1u;
    double var_asym = static_cast<double>(sigma_true * sigma_true * s11 / det) / static_cast<double>(n);
    CHECK(std::abs(var - var_asym) < 0.15 * var_asym);
}

TEST_CASE("two-step run fixes the state path at the deterministic GLS estimate") {
    SyntheticTruth truth = small_truth(25, 81);
    auto synth = generate_synthetic_dataset(truth);
    SamplerConfig config;
    config.burn_in = 200;
    config.retained = 150;
    JointSampler sampler(synth.dataset, Priors::defaults(3), config);

    PosteriorDraws a = sampler.run_twostep(99);
    PosteriorDraws b = sampler.run_twostep(99);
    CHECK((a.h.array() == b.h.array()).all());
    CHECK((a.beta.array() == b.beta.array()).all());
    CHECK(a.meta.kind == "twostep");

    // first-state series equals 2 ln sigma_hat from the static fit, every draw
    for (int t = 0; t < truth.T; ++t) {
        auto fit = static_gls_fit(synth.dataset.income.endpoints[t], synth.dataset.income.grid(t),
                                  synth.dataset.income.totals[t]);
        for (int d = 0; d < a.draws(); d += 37)
            CHECK(a.h(d, t) == doctest::Approx(2.0 * std::log(fit.sigma)).epsilon(1e-12));
    }
    CHECK_NOTHROW(a.validate());
}

TEST_CASE("joint posterior mean of B stays near truth on a long series") {
    SyntheticTruth truth = small_truth(2000, 91);
    truth.alpha = Eigen::Vector2d(-0.2, 0.3);
    truth.b_mat = (Eigen::Matrix2d() << 0.55, 0.1, 0.08, 0.45).finished();
    truth.sigma_mat = (Eigen::Matrix2d() << 0.004, 0.0005, 0.0005, 0.003).finished();
    auto synth = generate_synthetic_dataset(truth);

    SamplerConfig config;
    config.burn_in = 800;
    config.retained = 800;
    JointSampler sampler(synth.dataset, Priors::defaults(2), config);
    PosteriorDraws draws = sampler.run(333);

    Eigen::MatrixXd mean_b = Eigen::MatrixXd::Zero(2, 2);
    for (int d = 0; d < draws.draws(); ++d) mean_b += draws.b_at(d);
    mean_b /= draws.draws();
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(2, 2);
    for (int d = 0; d < draws.draws(); ++d) {
        Eigen::MatrixXd dev = draws.b_at(d) - mean_b;
        sq += dev.cwiseProduct(dev);
    }
    Eigen::MatrixXd sd = (sq / draws.draws()).cwiseSqrt();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(mean_b(i, j) - truth.b_mat(i, j)) < 2.0 * sd(i, j));
}
