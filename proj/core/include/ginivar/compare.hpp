#pragma once

#include <cstdint>
#include <filesystem>

#include "ginivar/irf.hpp"
#include "ginivar/priors.hpp"
#include "ginivar/sampler.hpp"

namespace ginivar {

/// Joint-vs-two-step comparison on one dataset: both samplers are run with
/// seeds derived from `seed`, and the bundle carries the inequality-state
/// bands, the paired impact scatter and per-horizon band widths.
struct ComparisonBundle {
    std::uint64_t seed = 0;
    IrfBands joint_bands;
    IrfBands twostep_bands;
    ImpactScatter scatter;                // inequality state, one quarter out
    std::vector<double> joint_width;      // per horizon, upper - lower quantile
    std::vector<double> twostep_width;
    PosteriorDraws joint_draws;
    PosteriorDraws twostep_draws;
};

ComparisonBundle compare_joint_twostep(const Dataset& data, const Priors& priors,
                                       const SamplerConfig& config, const IrfSpec& spec,
                                       std::uint64_t seed, int threads = 0);

/// Writes irf_joint.csv, irf_twostep.csv, scatter.csv, band_widths.csv and
/// report.json under out_dir.
void write_comparison_bundle(const std::filesystem::path& out_dir, const ComparisonBundle& bundle);

} // namespace ginivar
