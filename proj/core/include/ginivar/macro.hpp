#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ginivar/grouped_income.hpp"
#include "ginivar/period.hpp"

namespace ginivar {

/// A named time series before transformation; dates need not be contiguous.
struct RawSeries {
    std::vector<Period> dates;
    std::vector<double> values;
};

/// Forward-fills sparse observations (e.g. biannual releases) onto the
/// quarterly index [first_q, last_q]. Monthly observation dates are mapped to
/// their containing quarter. A quarter before the first observation is an error.
RawSeries expand_biannual(const RawSeries& sparse, Period first_q, Period last_q);

enum class Transform { level, log100 };

Transform parse_transform(const std::string& name);
std::map<std::string, Transform> load_transform_spec(const std::filesystem::path& path);

/// Transformed macro block in identification order; the inequality state
/// h_t is prepended by the model, so this holds m-1 columns.
struct MacroPanel {
    std::vector<Period> dates;
    std::vector<std::string> names;
    Eigen::MatrixXd values; // T x (m-1)
};

/// The model-ready pairing of grouped income data and the macro panel.
struct Dataset {
    GroupedIncomeSeries income;
    MacroPanel macro;
    std::string state_name = "gini"; // label of the latent inequality state

    int T() const { return income.T(); }
    int m() const { return static_cast<int>(macro.names.size()) + 1; }
    /// All variable names in identification order, inequality state first.
    std::vector<std::string> variables() const;

    void validate() const;
};

/// Reads a quarterly macro CSV with header date,<name1>,... into one series
/// per column.
std::map<std::string, RawSeries> load_macro_csv(const std::filesystem::path& path);

/// Applies the per-variable transforms and assembles the macro columns in
/// the requested identification order, date-aligned with the income series.
Dataset assemble_dataset(const GroupedIncomeSeries& income,
                         const std::map<std::string, RawSeries>& raw,
                         const std::map<std::string, Transform>& transforms,
                         const std::vector<std::string>& ordering);

/// Identification ordering and shock variable for each policy-instrument
/// configuration ("ssr", "2ygby" or "spread"). The first name is the
/// inequality state carried by the model itself.
struct InstrumentConfig {
    std::vector<std::string> ordering; // m names, "gini" first
    std::string shock;
};
InstrumentConfig instrument_config(const std::string& key);

} // namespace ginivar
