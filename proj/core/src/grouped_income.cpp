#include "ginivar/grouped_income.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"

namespace ginivar {

namespace fs = std::filesystem;
using nlohmann::json;

GroupedCsvSchema GroupedCsvSchema::load(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("schema " + path.string() + ": invalid JSON: " + e.what());
    }
    GroupedCsvSchema s;
    std::string columns = j.value("columns", "counts");
    if (columns == "counts") {
        s.columns = Columns::counts;
        std::string mode = j.value("counts", "cumulative");
        if (mode == "cumulative")
            s.cumulative = true;
        else if (mode == "per_bracket")
            s.cumulative = false;
        else
            throw ValidationError("schema: 'counts' must be 'cumulative' or 'per_bracket'");
        if (!j.contains("endpoints") || !j["endpoints"].is_array() || j["endpoints"].empty())
            throw ValidationError("schema: counts layout requires a nonempty 'endpoints' array");
        s.endpoints = j["endpoints"].get<std::vector<double>>();
    } else if (columns == "endpoints") {
        s.columns = Columns::endpoints;
        if (!j.contains("cum_counts") || !j["cum_counts"].is_array() || j["cum_counts"].empty())
            throw ValidationError("schema: endpoints layout requires a nonempty 'cum_counts' array");
        s.cum_counts = j["cum_counts"].get<std::vector<long long>>();
    } else {
        throw ValidationError("schema: 'columns' must be 'counts' or 'endpoints'");
    }
    s.total_column = j.value("total_column", "total");
    return s;
}

std::string GroupedCsvSchema::to_json() const {
    json j;
    if (columns == Columns::counts) {
        j["columns"] = "counts";
        j["counts"] = cumulative ? "cumulative" : "per_bracket";
        j["endpoints"] = endpoints;
    } else {
        j["columns"] = "endpoints";
        j["cum_counts"] = cum_counts;
    }
    j["total_column"] = total_column;
    return j.dump(2) + "\n";
}

QuantileGrid GroupedIncomeSeries::grid(int t) const {
    const auto& counts = cum_counts.at(t);
    std::vector<double> probs(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        probs[i] = static_cast<double>(counts[i]) / static_cast<double>(totals.at(t));
    return QuantileGrid::from_probs(std::move(probs));
}

bool GroupedIncomeSeries::constant_endpoints() const {
    for (int t = 1; t < T(); ++t)
        if (endpoints[t] != endpoints[0]) return false;
    return true;
}

void GroupedIncomeSeries::validate() const {
    if (dates.empty()) throw ValidationError("GroupedIncomeSeries: no periods");
    const std::size_t kk = endpoints.at(0).size();
    if (kk == 0) throw ValidationError("GroupedIncomeSeries: no brackets");
    if (endpoints.size() != dates.size() || cum_counts.size() != dates.size() ||
        totals.size() != dates.size())
        throw ValidationError("GroupedIncomeSeries: ragged fields");
    for (int t = 0; t < T(); ++t) {
        const std::string at = " in period " + dates[t].str();
        if (endpoints[t].size() != kk || cum_counts[t].size() != kk)
            throw ValidationError("GroupedIncomeSeries: bracket count changes" + at);
        double prev_x = 0.0;
        for (double x : endpoints[t]) {
            if (!(x > prev_x))
                throw ValidationError("GroupedIncomeSeries: endpoints must be strictly increasing and positive" + at);
            prev_x = x;
        }
        long long prev_n = 0;
        for (long long n : cum_counts[t]) {
            if (!(n > prev_n))
                throw ValidationError("GroupedIncomeSeries: cumulative counts must be strictly increasing" + at);
            prev_n = n;
        }
        if (!(cum_counts[t].back() < totals[t]))
            throw ValidationError("GroupedIncomeSeries: top cumulative count must stay below the total (open bracket empty)" + at);
        if (t > 0 && dates[t] != dates[t - 1].next())
            throw ValidationError("GroupedIncomeSeries: gap in dates between " + dates[t - 1].str() +
                                  " and " + dates[t].str());
    }
}

GroupedIncomeSeries load_grouped_csv(const fs::path& path, const GroupedCsvSchema& schema) {
    CsvTable table = read_csv(path);
    const std::string origin = path.filename().string();
    if (table.header.size() < 3)
        throw ValidationError(origin + ": expected header date,b1,...,bk," + schema.total_column);
    if (table.header.front() != "date")
        throw ValidationError(origin + ": first column must be 'date'");
    if (table.header.back() != schema.total_column)
        throw ValidationError(origin + ": last column must be '" + schema.total_column + "'");
    const std::size_t kk = table.header.size() - 2;
    if (schema.columns == GroupedCsvSchema::Columns::counts && schema.endpoints.size() != kk)
        throw ValidationError(origin + ": schema declares " + std::to_string(schema.endpoints.size()) +
                              " endpoints but the file has " + std::to_string(kk) + " bracket columns");
    if (schema.columns == GroupedCsvSchema::Columns::endpoints && schema.cum_counts.size() != kk)
        throw ValidationError(origin + ": schema declares " + std::to_string(schema.cum_counts.size()) +
                              " cumulative counts but the file has " + std::to_string(kk) + " bracket columns");

    GroupedIncomeSeries series;
    for (const auto& row : table.rows) {
        Period date = Period::parse(row.front());
        const std::string at = origin + " period " + date.str();
        long long total = parse_count(row.back(), at);
        std::vector<long long> cum(kk);
        std::vector<double> x(kk);
        if (schema.columns == GroupedCsvSchema::Columns::counts) {
            long long running = 0;
            for (std::size_t i = 0; i < kk; ++i) {
                long long c = parse_count(row[i + 1], at);
                running = schema.cumulative ? c : running + c;
                cum[i] = running;
            }
            x = schema.endpoints;
        } else {
            for (std::size_t i = 0; i < kk; ++i) x[i] = parse_double(row[i + 1], at);
            cum = schema.cum_counts;
        }
        series.dates.push_back(date);
        series.endpoints.push_back(std::move(x));
        series.cum_counts.push_back(std::move(cum));
        series.totals.push_back(total);
    }
    series.validate();
    return series;
}

void write_grouped_csv(const fs::path& csv_path, const GroupedIncomeSeries& series,
                       const GroupedCsvSchema& schema) {
    series.validate();
    std::vector<std::string> header{"date"};
    const int kk = series.k();
    for (int i = 1; i <= kk; ++i) header.push_back("b" + std::to_string(i));
    header.push_back(schema.total_column);

    std::vector<std::vector<std::string>> rows;
    for (int t = 0; t < series.T(); ++t) {
        std::vector<std::string> row{series.dates[t].str()};
        if (schema.columns == GroupedCsvSchema::Columns::counts) {
            long long prev = 0;
            for (int i = 0; i < kk; ++i) {
                long long c = series.cum_counts[t][i];
                row.push_back(std::to_string(schema.cumulative ? c : c - prev));
                prev = c;
            }
        } else {
            for (int i = 0; i < kk; ++i) row.push_back(fmt_double(series.endpoints[t][i]));
        }
        row.push_back(std::to_string(series.totals[t]));
        rows.push_back(std::move(row));
    }
    write_csv(csv_path, header, rows);
}

namespace {

// Round real-valued cumulative targets to integers, keeping them strictly
// increasing and strictly below the total.
std::vector<long long> round_cumulative(const std::vector<double>& target, long long total,
                                        const std::string& at) {
    const std::size_t kk = target.size();
    std::vector<long long> out(kk);
    for (std::size_t i = 0; i < kk; ++i) out[i] = std::llround(target[i]);
    for (std::size_t i = 0; i < kk; ++i) {
        long long lo = (i == 0 ? 0 : out[i - 1]) + 1;
        if (out[i] < lo) out[i] = lo;
    }
    long long hi = total - 1;
    for (std::size_t i = kk; i-- > 0;) {
        if (out[i] > hi) out[i] = hi;
        hi = out[i] - 1;
    }
    if (out[0] < 1)
        throw ValidationError("aggregate_monthly_to_quarterly: cannot rescale counts" + at);
    return out;
}

} // namespace

GroupedIncomeSeries aggregate_monthly_to_quarterly(const GroupedIncomeSeries& monthly,
                                                   long long target_total) {
    monthly.validate();
    if (target_total < 2) throw ValidationError("aggregate_monthly_to_quarterly: target total too small");
    for (const Period& d : monthly.dates)
        if (d.freq != Freq::monthly)
            throw ValidationError("aggregate_monthly_to_quarterly: input must be monthly");
    if (!monthly.constant_endpoints())
        throw ValidationError("aggregate_monthly_to_quarterly: bracket endpoints must not change across months");

    // Complete quarters only; complain about the stragglers by name.
    std::vector<std::string> dropped;
    for (int t = 0; t < monthly.T(); ++t) {
        int pos = monthly.dates[t].month_in_quarter();
        bool complete = (t - (pos - 1) >= 0) && (t - (pos - 1) + 2 < monthly.T());
        if (!complete) dropped.push_back(monthly.dates[t].str());
    }
    if (!dropped.empty()) {
        std::string list;
        for (const auto& d : dropped) list += (list.empty() ? "" : ", ") + d;
        throw ValidationError("aggregate_monthly_to_quarterly: incomplete quarter, months dropped: " + list);
    }

    const int kk = monthly.k();
    GroupedIncomeSeries quarterly;
    for (int t = 0; t + 2 < monthly.T(); t += 3) {
        Period q = monthly.dates[t].quarter();
        long long month_sum = 0;
        std::vector<double> cum_target(kk, 0.0);
        for (int j = 0; j < 3; ++j) {
            month_sum += monthly.totals[t + j];
            for (int i = 0; i < kk; ++i)
                cum_target[i] += static_cast<double>(monthly.cum_counts[t + j][i]);
        }
        double scale = static_cast<double>(target_total) / static_cast<double>(month_sum);
        for (int i = 0; i < kk; ++i) cum_target[i] *= scale;

        quarterly.dates.push_back(q);
        quarterly.endpoints.push_back(monthly.endpoints[t]);
        quarterly.cum_counts.push_back(round_cumulative(cum_target, target_total, " in quarter " + q.str()));
        quarterly.totals.push_back(target_total);
    }
    quarterly.validate();
    return quarterly;
}

} // namespace ginivar
