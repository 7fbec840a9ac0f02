#include "run_config.hpp"

#include <cerrno>
#include <fcntl.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"
#include "ginivar/grouped_income.hpp"
#include "ginivar/version.hpp"

namespace ginivar::cli {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig RunConfig::load(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("config " + path.string() + ": invalid JSON: " + e.what());
    }
    RunConfig c;
    const fs::path base = path.parent_path();
    auto resolve = [&base](const std::string& p) {
        fs::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };
    if (j.contains("income_csv")) c.income_csv = resolve(j["income_csv"].get<std::string>());
    if (j.contains("income_schema")) c.income_schema = resolve(j["income_schema"].get<std::string>());
    if (j.contains("macro_csv")) c.macro_csv = resolve(j["macro_csv"].get<std::string>());
    c.instrument = j.value("instrument", std::string("ssr"));
    if (j.contains("ordering")) c.ordering = j["ordering"].get<std::vector<std::string>>();
    c.shock_variable = j.value("shock_variable", std::string());
    if (j.contains("transforms"))
        c.transforms = j["transforms"].get<std::map<std::string, std::string>>();

    if (j.contains("priors")) {
        const json& p = j["priors"];
        auto opt = [&p](const char* key) -> std::optional<double> {
            if (p.contains(key) && !p[key].is_null()) return p[key].get<double>();
            return std::nullopt;
        };
        c.priors.mu0 = opt("mu0");
        c.priors.tau0_sq = opt("tau0_sq");
        c.priors.omega0_scale = opt("omega0_scale");
        c.priors.nu0 = opt("nu0");
        c.priors.sigma0_scale = opt("sigma0_scale");
    }
    if (j.contains("sampler")) {
        const json& s = j["sampler"];
        c.sampler.burn_in = s.value("burn_in", c.sampler.burn_in);
        c.sampler.retained = s.value("retained", c.sampler.retained);
        c.sampler.thin = s.value("thin", c.sampler.thin);
        c.sampler.stationarity_retry_cap = s.value("stationarity_retry_cap", c.sampler.stationarity_retry_cap);
        c.sampler.mh_target_accept = s.value("mh_target_accept", c.sampler.mh_target_accept);
        c.sampler.mh_initial_scale = s.value("mh_initial_scale", c.sampler.mh_initial_scale);
    }
    if (j.contains("irf")) {
        const json& i = j["irf"];
        c.horizon = i.value("horizon", c.horizon);
        c.scale = i.value("scale", c.scale);
        if (i.contains("quantiles")) c.quantiles = i["quantiles"].get<std::vector<double>>();
        if (i.contains("shutdown")) c.shutdown = i["shutdown"].get<std::vector<std::string>>();
    }
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = resolve(j["out"].get<std::string>());
    c.threads = j.value("threads", 0);
    return c;
}

std::string RunConfig::canonical() const {
    json j;
    j["income_csv"] = income_csv.string();
    j["income_schema"] = income_schema.string();
    j["macro_csv"] = macro_csv.string();
    j["instrument"] = instrument;
    j["ordering"] = ordering;
    j["shock_variable"] = shock_variable;
    j["transforms"] = transforms;
    json p;
    auto put = [&p](const char* key, const std::optional<double>& v) {
        if (v) p[key] = *v;
    };
    put("mu0", priors.mu0);
    put("tau0_sq", priors.tau0_sq);
    put("omega0_scale", priors.omega0_scale);
    put("nu0", priors.nu0);
    put("sigma0_scale", priors.sigma0_scale);
    j["priors"] = p;
    j["sampler"] = {{"burn_in", sampler.burn_in},
                    {"retained", sampler.retained},
                    {"thin", sampler.thin},
                    {"stationarity_retry_cap", sampler.stationarity_retry_cap},
                    {"mh_target_accept", sampler.mh_target_accept},
                    {"mh_initial_scale", sampler.mh_initial_scale}};
    j["irf"] = {{"horizon", horizon}, {"scale", scale}, {"quantiles", quantiles}, {"shutdown", shutdown}};
    if (seed) j["seed"] = *seed;
    j["threads"] = threads;
    return j.dump();
}

InstrumentConfig RunConfig::resolve_instrument() const {
    InstrumentConfig cfg;
    if (!ordering.empty()) {
        cfg.ordering = ordering;
        cfg.shock = shock_variable;
        if (cfg.shock.empty())
            throw ValidationError("config: explicit 'ordering' requires 'shock_variable'");
    } else {
        cfg = instrument_config(instrument);
        if (!shock_variable.empty()) cfg.shock = shock_variable;
    }
    return cfg;
}

IrfSpec RunConfig::irf_spec() const {
    IrfSpec spec;
    spec.shock_variable = resolve_instrument().shock;
    spec.horizon = horizon;
    spec.scale = scale;
    spec.quantiles = quantiles;
    spec.validate();
    return spec;
}

Dataset RunConfig::load_dataset() const {
    for (const auto& [label, p] :
         {std::pair<const char*, const fs::path*>{"income_csv", &income_csv},
          {"income_schema", &income_schema},
          {"macro_csv", &macro_csv}}) {
        if (p->empty()) throw ValidationError(std::string("config: missing required path '") + label + "'");
        if (!fs::exists(*p))
            throw ValidationError(std::string("config: ") + label + " does not exist: " + p->string());
    }
    auto schema = GroupedCsvSchema::load(income_schema);
    auto income = load_grouped_csv(income_csv, schema);
    auto raw = load_macro_csv(macro_csv);
    std::map<std::string, Transform> tf;
    for (const auto& [name, value] : transforms) tf[name] = parse_transform(value);
    auto cfg = resolve_instrument();
    // variables without a declared transform default to level units
    for (std::size_t i = 1; i < cfg.ordering.size(); ++i)
        if (!tf.count(cfg.ordering[i])) tf[cfg.ordering[i]] = Transform::level;
    return assemble_dataset(income, raw, tf, cfg.ordering);
}

Priors RunConfig::resolve_priors(int m) const {
    Priors p = Priors::defaults(m);
    if (priors.mu0) p.mu0 = *priors.mu0;
    if (priors.tau0_sq) p.tau0_sq = *priors.tau0_sq;
    if (priors.omega0_scale)
        p.omega0 = *priors.omega0_scale * Eigen::MatrixXd::Identity(m * (m + 1), m * (m + 1));
    if (priors.nu0) p.nu0 = *priors.nu0;
    if (priors.sigma0_scale) p.sigma0 = *priors.sigma0_scale * Eigen::MatrixXd::Identity(m, m);
    p.validate(m);
    return p;
}

std::uint64_t RunConfig::require_seed() const {
    if (!seed)
        throw ValidationError("no seed: set 'seed' in the config or pass --seed (runs must be reproducible)");
    return *seed;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

OutputLock::OutputLock(const fs::path& out_dir) {
    fs::create_directories(out_dir);
    lock_path_ = out_dir / ".lock";
    int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw ValidationError("output directory is in use by another run (found " +
                                  lock_path_.string() + ")");
        throw IoError("cannot create lock file " + lock_path_.string());
    }
    ::close(fd);
}

OutputLock::~OutputLock() {
    std::error_code ec;
    fs::remove(lock_path_, ec);
}

void write_manifest(const fs::path& out_dir, const std::string& command, std::uint64_t seed,
                    const RunConfig& config, const std::map<std::string, std::string>& extra) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = seed;
    const std::string canon = config.canonical();
    j["config_hash"] = fnv1a_hex(canon);
    j["config"] = json::parse(canon);
    for (const auto& [k, v] : extra) j[k] = v;
    atomic_write_file(out_dir / "manifest.json", j.dump(2) + "\n");
}

} // namespace ginivar::cli
