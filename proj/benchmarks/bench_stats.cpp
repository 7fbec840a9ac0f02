#include <benchmark/benchmark.h>

#include <cmath>

#include "ginivar/inequality.hpp"
#include "ginivar/normal.hpp"
#include "ginivar/quantile_grid.hpp"
#include "ginivar/static_fit.hpp"

using namespace ginivar;

namespace {

QuantileGrid survey_grid() {
    std::vector<double> probs(17);
    for (int i = 0; i < 17; ++i) probs[i] = 0.04 + 0.055 * i;
    return QuantileGrid::from_probs(probs);
}

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(std_normal_quantile(p));
        p += 1e-4;
        if (p >= 1.0) p = 1e-4;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_GiniFromSigma(benchmark::State& state) {
    double s = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gini_from_sigma(s));
        s = s < 3.0 ? s + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_GiniFromSigma);

void BM_OrderStatCovariance(benchmark::State& state) {
    QuantileGrid grid = survey_grid();
    for (auto _ : state) benchmark::DoNotOptimize(order_stat_covariance(grid));
}
BENCHMARK(BM_OrderStatCovariance);

void BM_StaticGlsFit(benchmark::State& state) {
    QuantileGrid grid = survey_grid();
    Eigen::VectorXd u = grid.normal_scores();
    std::vector<double> x(17);
    for (int i = 0; i < 17; ++i) x[i] = std::exp(1.2 + 0.7 * u[i]);
    for (auto _ : state) benchmark::DoNotOptimize(static_gls_fit(x, grid, 10000));
}
BENCHMARK(BM_StaticGlsFit);

} // namespace
