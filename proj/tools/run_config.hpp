#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ginivar/irf.hpp"
#include "ginivar/macro.hpp"
#include "ginivar/priors.hpp"

namespace ginivar::cli {

/// Declarative run configuration, one JSON document per run. Flags override
/// individual fields; relative paths resolve against the config file's
/// directory.
struct RunConfig {
    std::filesystem::path income_csv;
    std::filesystem::path income_schema;
    std::filesystem::path macro_csv;

    std::string instrument = "ssr";        // ssr | 2ygby | spread
    std::vector<std::string> ordering;     // optional explicit override, state first
    std::string shock_variable;            // optional; defaults to the instrument's shock
    std::map<std::string, std::string> transforms;

    struct PriorsOverride {
        std::optional<double> mu0, tau0_sq, omega0_scale, nu0, sigma0_scale;
    } priors;

    SamplerConfig sampler;

    int horizon = 28;
    double scale = 1.0;
    std::vector<double> quantiles{0.16, 0.5, 0.84};
    std::vector<std::string> shutdown;

    std::optional<std::uint64_t> seed;
    std::filesystem::path out;
    int threads = 0;

    static RunConfig load(const std::filesystem::path& path);

    /// Canonical JSON serialization (sorted keys); hashed into manifests.
    std::string canonical() const;

    /// Identification ordering and shock resolved from instrument/ordering.
    InstrumentConfig resolve_instrument() const;
    IrfSpec irf_spec() const;

    /// Loads and assembles the dataset named by the config.
    Dataset load_dataset() const;

    /// Priors defaults for dimension m with the configured overrides applied.
    Priors resolve_priors(int m) const;

    /// Seed must be explicit: either in the file or via --seed.
    std::uint64_t require_seed() const;
};

/// FNV-1a 64-bit, hex string; stable across platforms and reruns.
std::string fnv1a_hex(const std::string& data);

/// Exclusive .lock file under the output directory, removed on destruction.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& out_dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path lock_path_;
};

/// Writes manifest.json (command, version, seed, config hash and the full
/// canonical config) under out_dir.
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    std::uint64_t seed, const RunConfig& config,
                    const std::map<std::string, std::string>& extra = {});

} // namespace ginivar::cli
