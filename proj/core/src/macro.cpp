#include "ginivar/macro.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"

namespace ginivar {

namespace fs = std::filesystem;
using nlohmann::json;

RawSeries expand_biannual(const RawSeries& sparse, Period first_q, Period last_q) {
    if (sparse.dates.empty()) throw ValidationError("expand_biannual: no observations");
    if (sparse.dates.size() != sparse.values.size())
        throw ValidationError("expand_biannual: dates/values length mismatch");
    if (first_q.freq != Freq::quarterly || last_q.freq != Freq::quarterly)
        throw ValidationError("expand_biannual: target range must be quarterly");

    std::vector<Period> obs_q;
    for (std::size_t i = 0; i < sparse.dates.size(); ++i) {
        Period q = sparse.dates[i].quarter();
        if (i > 0 && !period_less(obs_q.back(), q) && obs_q.back() != q)
            throw ValidationError("expand_biannual: observation dates must be sorted");
        obs_q.push_back(q);
    }
    if (period_less(first_q, obs_q.front()))
        throw ValidationError("expand_biannual: quarter " + first_q.str() +
                              " precedes the first observation (" + obs_q.front().str() + ")");

    RawSeries out;
    std::size_t i = 0;
    for (Period q = first_q;; q = q.next()) {
        while (i + 1 < obs_q.size() && !period_less(q, obs_q[i + 1])) ++i;
        out.dates.push_back(q);
        out.values.push_back(sparse.values[i]);
        if (q == last_q) break;
    }
    return out;
}

Transform parse_transform(const std::string& name) {
    if (name == "level") return Transform::level;
    if (name == "log100") return Transform::log100;
    throw ValidationError("transform must be 'level' or 'log100', got '" + name + "'");
}

std::map<std::string, Transform> load_transform_spec(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("transform spec " + path.string() + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ValidationError("transform spec must be a JSON object");
    std::map<std::string, Transform> spec;
    for (auto it = j.begin(); it != j.end(); ++it)
        spec[it.key()] = parse_transform(it.value().get<std::string>());
    return spec;
}

std::vector<std::string> Dataset::variables() const {
    std::vector<std::string> names{state_name};
    names.insert(names.end(), macro.names.begin(), macro.names.end());
    return names;
}

void Dataset::validate() const {
    income.validate();
    if (macro.dates != income.dates)
        throw ValidationError("Dataset: macro and income date indices differ");
    if (macro.values.rows() != income.T() ||
        macro.values.cols() != static_cast<Eigen::Index>(macro.names.size()))
        throw ValidationError("Dataset: macro panel dimensions inconsistent");
    if (macro.names.empty()) throw ValidationError("Dataset: no macro variables");
    if (!macro.values.allFinite()) throw ValidationError("Dataset: macro panel contains non-finite values");
    if (income.k() < 2)
        throw ValidationError("Dataset: at least two income brackets are required for estimation");
    for (int t = 0; t < T(); ++t) income.grid(t); // throws if a period's grid is invalid
}

std::map<std::string, RawSeries> load_macro_csv(const fs::path& path) {
    CsvTable table = read_csv(path);
    const std::string origin = path.filename().string();
    if (table.header.empty() || table.header.front() != "date")
        throw ValidationError(origin + ": first column must be 'date'");
    std::map<std::string, RawSeries> out;
    std::vector<Period> dates;
    for (const auto& row : table.rows) dates.push_back(Period::parse(row.front()));
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        RawSeries s;
        s.dates = dates;
        for (const auto& row : table.rows)
            s.values.push_back(parse_double(row[c], origin + " column " + table.header[c]));
        out[table.header[c]] = std::move(s);
    }
    return out;
}

Dataset assemble_dataset(const GroupedIncomeSeries& income,
                         const std::map<std::string, RawSeries>& raw,
                         const std::map<std::string, Transform>& transforms,
                         const std::vector<std::string>& ordering) {
    income.validate();
    if (ordering.size() < 2) throw ValidationError("assemble_dataset: ordering must name the state and at least one macro variable");

    MacroPanel panel;
    panel.dates = income.dates;
    const int T = income.T();
    // ordering[0] is the inequality state supplied by the income block.
    panel.names.assign(ordering.begin() + 1, ordering.end());
    panel.values.resize(T, static_cast<Eigen::Index>(panel.names.size()));

    for (std::size_t c = 0; c < panel.names.size(); ++c) {
        const std::string& name = panel.names[c];
        auto it = raw.find(name);
        if (it == raw.end()) throw ValidationError("assemble_dataset: unknown variable '" + name + "'");
        auto tf = transforms.find(name);
        if (tf == transforms.end())
            throw ValidationError("assemble_dataset: no transform declared for '" + name + "'");
        const RawSeries& s = it->second;
        if (s.dates != income.dates)
            throw ValidationError("assemble_dataset: series '" + name + "' is not aligned with the income quarters");
        for (int t = 0; t < T; ++t) {
            double v = s.values[t];
            if (tf->second == Transform::log100) v = 100.0 * std::log(v);
            if (!std::isfinite(v))
                throw ValidationError("assemble_dataset: non-finite value for '" + name + "' in " +
                                      income.dates[t].str() + " after transform");
            panel.values(t, static_cast<Eigen::Index>(c)) = v;
        }
    }

    Dataset ds{income, std::move(panel), ordering.front()};
    ds.validate();
    return ds;
}

InstrumentConfig instrument_config(const std::string& key) {
    if (key == "ssr")
        return {{"gini", "rgdp", "p", "unempl", "ssr", "ltir", "reer", "eq"}, "ssr"};
    if (key == "2ygby")
        return {{"gini", "rgdp", "p", "unempl", "2ygby", "ltir", "reer", "eq"}, "2ygby"};
    // Term-spread configuration: short rates take the policy slot and the
    // spread replaces long rates; the shock is to the spread.
    if (key == "spread")
        return {{"gini", "rgdp", "p", "unempl", "stir", "spread", "reer", "eq"}, "spread"};
    throw ValidationError("unknown policy instrument '" + key + "' (expected ssr, 2ygby or spread)");
}

} // namespace ginivar
