// ginivar command line: grouped-income inequality state + VAR estimation,
// impulse responses, channel shut-downs and the two-step comparison.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ginivar/compare.hpp"
#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"
#include "ginivar/fetch.hpp"
#include "ginivar/irf.hpp"
#include "ginivar/lorenz_sim.hpp"
#include "ginivar/sampler.hpp"
#include "ginivar/synthetic.hpp"
#include "ginivar/version.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ginivar;
using cli::OutputLock;
using cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    int threads_override = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
    auto* opt = cmd->add_option("--config", flags.config_path, "Run configuration JSON");
    if (config_required) opt->required();
    cmd->add_option("--out", flags.out_override, "Output directory (overrides config)");
    cmd->add_option("--seed", flags.seed_override, "RNG seed (overrides config)")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--threads", flags.threads_override, "Worker threads (0 = all cores)");
}

RunConfig resolve_config(const CommonFlags& flags) {
    RunConfig config;
    if (!flags.config_path.empty()) config = RunConfig::load(flags.config_path);
    if (!flags.out_override.empty()) config.out = fs::absolute(flags.out_override);
    if (flags.seed_set) config.seed = flags.seed_override;
    if (flags.threads_override >= 0) config.threads = flags.threads_override;
    if (config.out.empty()) throw ValidationError("no output directory: set 'out' in the config or pass --out");
    return config;
}

void print_run_summary(const PosteriorDraws& draws) {
    std::printf("%s run: %d retained draws (burn-in %ld, thin %ld), m = %d, T = %d\n",
                draws.meta.kind.c_str(), draws.draws(), draws.meta.burn_in, draws.meta.thin,
                draws.meta.m, draws.meta.T);
    if (draws.meta.kind == "joint")
        std::printf("  h-step acceptance: mean %.3f (min %.3f, max %.3f)\n", draws.meta.accept_mean,
                    draws.meta.accept_min, draws.meta.accept_max);
    std::printf("  stationarity truncation stalls: %ld\n", draws.meta.truncation_stalls);
}

int cmd_fit(const CommonFlags& flags, bool joint) {
    RunConfig config = resolve_config(flags);
    const std::uint64_t seed = config.require_seed();
    Dataset data = config.load_dataset();
    Priors priors = config.resolve_priors(data.m());

    OutputLock lock(config.out);
    JointSampler sampler(data, priors, config.sampler);
    PosteriorDraws draws = joint ? sampler.run(seed) : sampler.run_twostep(seed);
    save_posterior_draws(draws, config.out / "draws");
    cli::write_manifest(config.out, joint ? "fit-joint" : "fit-twostep", seed, config);
    print_run_summary(draws);
    std::printf("draws written to %s\n", (config.out / "draws").string().c_str());
    return kExitOk;
}

int cmd_irf(const CommonFlags& flags, const std::string& draws_dir,
            const std::vector<std::string>& shutdown_flag, bool svg) {
    RunConfig config = resolve_config(flags);
    PosteriorDraws draws = load_posterior_draws(draws_dir);
    IrfSpec spec = config.irf_spec();

    std::vector<std::string> shutdown = shutdown_flag.empty() ? config.shutdown : shutdown_flag;
    resolve_variables(shutdown, draws.meta.variables); // unknown names fail before any work
    for (const auto& name : shutdown)
        if (name == spec.shock_variable)
            throw ValidationError("cannot shut down the shock instrument '" + name +
                                  "': its impact normalization would be undefined");

    OutputLock lock(config.out);
    IrfBands bands = posterior_irf_bands(draws, spec, shutdown, config.threads);
    write_irf_bands_csv(config.out / "irf.csv", bands);
    if (svg) write_irf_bands_svg(config.out / "irf.svg", bands);

    std::string shutdown_list;
    for (const auto& s : shutdown) shutdown_list += (shutdown_list.empty() ? "" : ";") + s;
    cli::write_manifest(config.out, "irf", draws.meta.seed, config,
                        {{"draws_dir", fs::absolute(draws_dir).string()},
                         {"shutdown", shutdown_list},
                         {"skipped_draws", std::to_string(bands.skipped_draws)}});
    std::printf("irf bands written to %s (skipped %ld non-stationary draws)\n",
                (config.out / "irf.csv").string().c_str(), bands.skipped_draws);
    return kExitOk;
}

int cmd_compare(const CommonFlags& flags) {
    RunConfig config = resolve_config(flags);
    const std::uint64_t seed = config.require_seed();
    Dataset data = config.load_dataset();
    Priors priors = config.resolve_priors(data.m());
    IrfSpec spec = config.irf_spec();

    OutputLock lock(config.out);
    ComparisonBundle bundle =
        compare_joint_twostep(data, priors, config.sampler, spec, seed, config.threads);
    write_comparison_bundle(config.out, bundle);
    cli::write_manifest(config.out, "compare", seed, config);
    std::printf("comparison written to %s (below-diagonal share %.3f)\n",
                config.out.string().c_str(), bundle.scatter.below_diagonal_share);
    return kExitOk;
}

int cmd_simulate_lorenz(const CommonFlags& flags, double mu, double sigma, long long n_obs,
                        int groups) {
    RunConfig config = resolve_config(flags);
    const std::uint64_t seed = config.require_seed();
    OutputLock lock(config.out);
    LorenzComparison report = simulate_lorenz_comparison(mu, sigma, n_obs, groups, seed);
    write_lorenz_report(config.out, report);
    cli::write_manifest(config.out, "simulate-lorenz", seed, config,
                        {{"mu", fmt_double(mu)},
                         {"sigma", fmt_double(sigma)},
                         {"n_obs", std::to_string(n_obs)},
                         {"n_groups", std::to_string(groups)}});
    std::printf("true Gini %.5f, grouped Gini %.5f, gap %.5f\n", report.true_gini,
                report.grouped_gini_value, report.gap);
    return kExitOk;
}

int cmd_gen_synthetic(const CommonFlags& flags, const std::string& truth_path) {
    RunConfig config = resolve_config(flags);
    SyntheticTruth truth = SyntheticTruth::load(truth_path);
    if (flags.seed_set) truth.seed = flags.seed_override;

    OutputLock lock(config.out);
    SyntheticData synth = generate_synthetic_dataset(truth);

    GroupedCsvSchema schema;
    schema.columns = GroupedCsvSchema::Columns::endpoints;
    schema.cum_counts = synth.dataset.income.cum_counts[0];
    write_grouped_csv(config.out / "income.csv", synth.dataset.income, schema);
    atomic_write_file(config.out / "income.schema.json", schema.to_json());

    std::vector<std::string> macro_header{"date"};
    for (const auto& n : synth.dataset.macro.names) macro_header.push_back(n);
    std::vector<std::vector<std::string>> macro_rows;
    for (int t = 0; t < synth.dataset.T(); ++t) {
        std::vector<std::string> row{synth.dataset.macro.dates[t].str()};
        for (Eigen::Index c = 0; c < synth.dataset.macro.values.cols(); ++c)
            row.push_back(fmt_double(synth.dataset.macro.values(t, c)));
        macro_rows.push_back(std::move(row));
    }
    write_csv(config.out / "macro.csv", macro_header, macro_rows);

    std::vector<std::vector<std::string>> latent_rows;
    for (int t = 0; t < synth.dataset.T(); ++t)
        latent_rows.push_back({synth.dataset.macro.dates[t].str(), fmt_double(synth.mu_path[t]),
                               fmt_double(synth.h_path[t]),
                               fmt_double(std::exp(0.5 * synth.h_path[t]))});
    write_csv(config.out / "latents.csv", {"date", "mu", "h", "sigma"}, latent_rows);

    atomic_write_file(config.out / "truth.json", truth.to_json());

    // ready-to-run configuration for fit-joint / fit-twostep / compare
    json run_cfg;
    run_cfg["income_csv"] = "income.csv";
    run_cfg["income_schema"] = "income.schema.json";
    run_cfg["macro_csv"] = "macro.csv";
    std::vector<std::string> ordering = synth.dataset.variables();
    run_cfg["ordering"] = ordering;
    run_cfg["shock_variable"] = ordering.back();
    json tf;
    for (const auto& n : synth.dataset.macro.names) tf[n] = "level";
    run_cfg["transforms"] = tf;
    run_cfg["seed"] = truth.seed;
    run_cfg["irf"] = {{"horizon", config.horizon}, {"scale", config.scale}, {"quantiles", config.quantiles}};
    atomic_write_file(config.out / "run_config.json", run_cfg.dump(2) + "\n");

    cli::write_manifest(config.out, "gen-synthetic", truth.seed, config,
                        {{"truth", fs::absolute(truth_path).string()}});
    std::printf("synthetic dataset (T = %d, m = %d, n = %lld) written to %s\n", truth.T, truth.m(),
                truth.n, config.out.string().c_str());
    return kExitOk;
}

int cmd_fetch(const CommonFlags& flags, const std::vector<std::string>& sources,
              const std::string& base_url) {
    RunConfig config = resolve_config(flags);
    OutputLock lock(config.out);
    const fs::path cache_dir = config.out / "cache";
    for (const auto& id : sources) {
        FetchResult result = fetch_remote_series(id, cache_dir, base_url);
        std::printf("%s: %zu observations (%s)\n", id.c_str(), result.series.values.size(),
                    result.from_cache ? "cache" : "network");
    }
    cli::write_manifest(config.out, "fetch", 0, config, {{"base_url", base_url}});
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ginivar: joint estimation of grouped-income inequality and macro dynamics"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonFlags fit_flags, twostep_flags, irf_flags, compare_flags, lorenz_flags, synth_flags,
        fetch_flags;

    auto* fit = app.add_subcommand("fit-joint", "Run the joint MCMC and store posterior draws");
    add_common(fit, fit_flags);

    auto* twostep = app.add_subcommand("fit-twostep", "Run the two-step plug-in sampler");
    add_common(twostep, twostep_flags);

    auto* irf = app.add_subcommand("irf", "Impulse-response bands from stored draws");
    add_common(irf, irf_flags);
    std::string draws_dir;
    std::vector<std::string> shutdown;
    bool svg = false;
    irf->add_option("--draws", draws_dir, "Directory written by fit-joint/fit-twostep")->required();
    irf->add_option("--shutdown", shutdown, "Variables whose B and A rows are zeroed");
    irf->add_flag("--svg", svg, "Also write a static line chart of the bands");

    auto* compare = app.add_subcommand("compare", "Joint versus two-step comparison bundle");
    add_common(compare, compare_flags);

    auto* lorenz = app.add_subcommand("simulate-lorenz", "Grouped-vs-true Lorenz curve study");
    add_common(lorenz, lorenz_flags, /*config_required=*/false);
    double mu = 0.0, sigma = 1.0;
    long long n_obs = 100000;
    int groups = 5;
    lorenz->add_option("--mu", mu, "Log-scale location");
    lorenz->add_option("--sigma", sigma, "Log-scale dispersion");
    lorenz->add_option("--n-obs", n_obs, "Number of simulated incomes");
    lorenz->add_option("--groups", groups, "Number of equal-count groups");

    auto* synth = app.add_subcommand("gen-synthetic", "Simulate a dataset from a truth JSON");
    add_common(synth, synth_flags, /*config_required=*/false);
    std::string truth_path;
    synth->add_option("--truth", truth_path, "SyntheticTruth JSON")->required();

    auto* fetch = app.add_subcommand("fetch", "Fetch and cache remote two-column CSV series");
    add_common(fetch, fetch_flags, /*config_required=*/false);
    std::vector<std::string> sources;
    std::string base_url = "https://fred.stlouisfed.org/graph/fredgraph.csv?id=";
    fetch->add_option("--source", sources, "Series identifiers")->required();
    fetch->add_option("--base-url", base_url, "URL prefix the id is appended to");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_flags, true);
        if (twostep->parsed()) return cmd_fit(twostep_flags, false);
        if (irf->parsed()) return cmd_irf(irf_flags, draws_dir, shutdown, svg);
        if (compare->parsed()) return cmd_compare(compare_flags);
        if (lorenz->parsed()) return cmd_simulate_lorenz(lorenz_flags, mu, sigma, n_obs, groups);
        if (synth->parsed()) return cmd_gen_synthetic(synth_flags, truth_path);
        if (fetch->parsed()) return cmd_fetch(fetch_flags, sources, base_url);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error (validation): %s\n", e.what());
        return kExitValidation;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error (io): %s\n", e.what());
        return kExitIo;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error (numerical): %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitValidation;
}
