#include <benchmark/benchmark.h>

#include <cmath>

#include "ginivar/irf.hpp"
#include "ginivar/rng.hpp"
#include "ginivar/sampler.hpp"
#include "ginivar/synthetic.hpp"

using namespace ginivar;

namespace {

// Survey-sized problem: m = 8 variables, T = 60 quarters, 17 brackets.
SyntheticData survey_sized_fixture() {
    const int m = 8;
    SyntheticTruth truth;
    truth.alpha = Eigen::VectorXd::Zero(m);
    truth.alpha[0] = -0.3;
    truth.b_mat = 0.4 * Eigen::MatrixXd::Identity(m, m);
    for (int i = 1; i < m; ++i) truth.b_mat(i, i - 1) = 0.1;
    truth.sigma_mat = 0.01 * Eigen::MatrixXd::Identity(m, m);
    std::vector<double> probs(17);
    for (int i = 0; i < 17; ++i) probs[i] = 0.05 + 0.055 * i;
    // keep n * p integral
    for (auto& p : probs) p = std::round(p * 10000.0) / 10000.0;
    truth.grid = QuantileGrid::from_probs(probs);
    truth.n = 10000;
    truth.T = 60;
    truth.seed = 7;
    return generate_synthetic_dataset(truth);
}

void BM_GibbsSweep(benchmark::State& state) {
    auto fixture = survey_sized_fixture();
    JointSampler sampler(fixture.dataset, Priors::defaults(8), SamplerConfig{});
    ChainState chain = sampler.initial_state();
    Rng rng(1);
    for (auto _ : state) {
        for (int t = 0; t < sampler.T(); ++t) sampler.sample_mu(t, chain, rng);
        for (int t = 0; t < sampler.T(); ++t) sampler.sample_h(t, chain, rng);
        sampler.sample_beta(chain, rng);
        sampler.sample_sigma(chain, rng);
    }
}
BENCHMARK(BM_GibbsSweep);

void BM_PosteriorIrfBands(benchmark::State& state) {
    auto fixture = survey_sized_fixture();
    SamplerConfig config;
    config.burn_in = 200;
    config.retained = 1000;
    JointSampler sampler(fixture.dataset, Priors::defaults(8), config);
    PosteriorDraws draws = sampler.run(3);
    IrfSpec spec;
    spec.shock_variable = draws.meta.variables[4];
    for (auto _ : state) benchmark::DoNotOptimize(posterior_irf_bands(draws, spec, {}, 1));
}
BENCHMARK(BM_PosteriorIrfBands);

} // namespace
