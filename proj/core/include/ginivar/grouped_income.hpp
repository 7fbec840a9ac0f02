#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ginivar/period.hpp"
#include "ginivar/quantile_grid.hpp"

namespace ginivar {

/// Declares how a grouped-income CSV is laid out. Two layouts exist:
///  - counts layout (survey shape): the b-columns carry per-period household
///    counts (cumulative or per bracket) and the schema carries the fixed
///    bracket endpoints;
///  - endpoints layout (synthetic shape): the b-columns carry per-period
///    bracket endpoint values and the schema carries the fixed cumulative
///    counts.
struct GroupedCsvSchema {
    enum class Columns { counts, endpoints };
    Columns columns = Columns::counts;
    bool cumulative = true;               // counts layout only
    std::vector<double> endpoints;        // counts layout only
    std::vector<long long> cum_counts;    // endpoints layout only
    std::string total_column = "total";

    static GroupedCsvSchema load(const std::filesystem::path& path);
    std::string to_json() const;
};

/// Per-period selected order statistics of the income distribution:
/// bracket upper endpoints x_{i,t} with cumulative household counts n_{i,t}
/// out of n_t. The final open bracket has no endpoint, so n_{k,t} < n_t.
struct GroupedIncomeSeries {
    std::vector<Period> dates;                      // length T, contiguous
    std::vector<std::vector<double>> endpoints;     // T x k
    std::vector<std::vector<long long>> cum_counts; // T x k
    std::vector<long long> totals;                  // length T

    int T() const { return static_cast<int>(dates.size()); }
    int k() const { return dates.empty() ? 0 : static_cast<int>(endpoints[0].size()); }

    /// p_{i,t} = n_{i,t} / n_t for period t.
    QuantileGrid grid(int t) const;

    /// True when every period shares one endpoint vector (survey layout).
    bool constant_endpoints() const;

    void validate() const;
};

GroupedIncomeSeries load_grouped_csv(const std::filesystem::path& path,
                                     const GroupedCsvSchema& schema);

void write_grouped_csv(const std::filesystem::path& csv_path, const GroupedIncomeSeries& series,
                       const GroupedCsvSchema& schema);

/// Sums per-bracket counts over the three months of each quarter, then
/// rescales so each quarterly total equals `target_total`. The rescaled
/// cumulative counts are rounded to the nearest integer and repaired to stay
/// strictly increasing, so relative frequencies move by at most ~1/target_total.
GroupedIncomeSeries aggregate_monthly_to_quarterly(const GroupedIncomeSeries& monthly,
                                                   long long target_total = 10000);

} // namespace ginivar
