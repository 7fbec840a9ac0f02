#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"
#include "ginivar/grouped_income.hpp"
#include "ginivar/macro.hpp"

using namespace ginivar;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ginivar_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// The survey bracket structure: 17 upper endpoints, open top bracket.
const std::vector<double> kFiesEndpoints = {200,  250,  300, 350, 400, 450, 500, 550, 600,
                                            650,  700,  750, 800, 900, 1000, 1250, 1500};

GroupedCsvSchema fies_schema(bool cumulative = true) {
    GroupedCsvSchema s;
    s.columns = GroupedCsvSchema::Columns::counts;
    s.cumulative = cumulative;
    s.endpoints = kFiesEndpoints;
    return s;
}

// Plausible cumulative counts out of 10,000 for the 17 brackets.
std::vector<long long> plausible_cum(std::mt19937_64& gen) {
    std::vector<long long> cum(17);
    long long base = 300;
    long long run = 0;
    for (int i = 0; i < 17; ++i) {
        run += base + static_cast<long long>(gen() % 400);
        cum[i] = run;
    }
    // squeeze into (0, 10000) keeping strict monotonicity
    for (int i = 0; i < 17; ++i) cum[i] = 1 + cum[i] * 9700 / (run + 1);
    for (int i = 1; i < 17; ++i)
        if (cum[i] <= cum[i - 1]) cum[i] = cum[i - 1] + 1;
    return cum;
}

fs::path write_fies_fixture(const fs::path& dir, int quarters, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<std::string>> rows;
    Period d{Freq::quarterly, 2002, 1};
    for (int t = 0; t < quarters; ++t) {
        auto cum = plausible_cum(gen);
        std::vector<std::string> row{d.str()};
        for (long long c : cum) row.push_back(std::to_string(c));
        row.push_back("10000");
        rows.push_back(std::move(row));
        d = d.next();
    }
    std::vector<std::string> header{"date"};
    for (int i = 1; i <= 17; ++i) header.push_back("b" + std::to_string(i));
    header.push_back("total");
    fs::path path = dir / "income.csv";
    write_csv(path, header, rows);
    return path;
}

} // namespace

TEST_CASE("Period parsing and arithmetic") {
    Period q = Period::parse("2002Q1");
    CHECK(q.freq == Freq::quarterly);
    CHECK(q.year == 2002);
    CHECK(q.index == 1);
    CHECK(q.str() == "2002Q1");
    CHECK(q.next().str() == "2002Q2");
    CHECK(Period::parse("2003Q4").next().str() == "2004Q1");

    Period m = Period::parse("2002-12");
    CHECK(m.freq == Freq::monthly);
    CHECK(m.next().str() == "2003-01");
    CHECK(m.quarter().str() == "2002Q4");
    CHECK(Period::parse("2002-01-15").str() == "2002-01");

    CHECK_THROWS_AS(Period::parse("2002Q5"), ValidationError);
    CHECK_THROWS_AS(Period::parse("garbage"), ValidationError);
    CHECK_THROWS_AS(Period::parse("2002-13"), ValidationError);
}

TEST_CASE("load_grouped_csv accepts the survey-shaped fixture") {
    TempDir tmp;
    fs::path path = write_fies_fixture(tmp.path, 60, 42);
    auto series = load_grouped_csv(path, fies_schema());
    CHECK(series.k() == 17);
    CHECK(series.T() == 60);
    CHECK(series.dates.front().str() == "2002Q1");
    CHECK(series.dates.back().str() == "2016Q4");
    CHECK(series.constant_endpoints());
    CHECK(series.endpoints[0] == kFiesEndpoints);
    auto grid = series.grid(0);
    CHECK(grid.count() == 17);
    CHECK(grid.probs.front() > 0.0);
    CHECK(grid.probs.back() < 1.0);
}

TEST_CASE("per-bracket frequencies are coerced to cumulative form") {
    TempDir tmp;
    fs::path path = tmp.path / "freq.csv";
    write_csv(path, {"date", "b1", "b2", "total"},
              {{"2002Q1", "4000", "3000", "10000"}});
    GroupedCsvSchema s;
    s.cumulative = false;
    s.endpoints = {100.0, 200.0};
    auto series = load_grouped_csv(path, s);
    CHECK(series.cum_counts[0] == std::vector<long long>{4000, 7000});

    // frequencies exhausting the total leave the open bracket empty: p_k = 1
    write_csv(path, {"date", "b1", "b2", "total"},
              {{"2002Q1", "5000", "5000", "10000"}});
    CHECK_THROWS_AS(load_grouped_csv(path, s), ValidationError);
}

TEST_CASE("load_grouped_csv flags bad rows with their period") {
    TempDir tmp;
    GroupedCsvSchema s;
    s.endpoints = {100.0, 200.0};

    fs::path path = tmp.path / "bad.csv";
    write_csv(path, {"date", "b1", "b2", "total"},
              {{"2002Q1", "4000", "3999", "10000"}});
    CHECK_THROWS_WITH_AS(load_grouped_csv(path, s), doctest::Contains("2002Q1"), ValidationError);

    write_csv(path, {"date", "b1", "b2", "total"},
              {{"2002Q1", "4000", "5000", "10000"}, {"2002Q3", "4000", "5000", "10000"}});
    CHECK_THROWS_WITH_AS(load_grouped_csv(path, s), doctest::Contains("gap"), ValidationError);

    CHECK_THROWS_AS(load_grouped_csv(tmp.path / "missing.csv", s), IoError);
}

TEST_CASE("endpoints-layout schema round trips through CSV") {
    TempDir tmp;
    GroupedIncomeSeries series;
    series.dates = {Period::parse("2002Q1"), Period::parse("2002Q2")};
    series.endpoints = {{1.5, 2.5, 3.5}, {1.6, 2.4, 3.9}};
    series.cum_counts = {{2500, 5000, 7500}, {2500, 5000, 7500}};
    series.totals = {10000, 10000};
    series.validate();

    GroupedCsvSchema s;
    s.columns = GroupedCsvSchema::Columns::endpoints;
    s.cum_counts = {2500, 5000, 7500};
    fs::path path = tmp.path / "synthetic.csv";
    write_grouped_csv(path, series, s);
    auto loaded = load_grouped_csv(path, s);
    CHECK(loaded.endpoints == series.endpoints);
    CHECK(loaded.cum_counts == series.cum_counts);
    CHECK_FALSE(loaded.constant_endpoints());
}

TEST_CASE("schema JSON round trip") {
    TempDir tmp;
    GroupedCsvSchema s;
    s.columns = GroupedCsvSchema::Columns::counts;
    s.cumulative = false;
    s.endpoints = {10.0, 20.0};
    fs::path path = tmp.path / "schema.json";
    atomic_write_file(path, s.to_json());
    auto back = GroupedCsvSchema::load(path);
    CHECK(back.columns == GroupedCsvSchema::Columns::counts);
    CHECK_FALSE(back.cumulative);
    CHECK(back.endpoints == s.endpoints);
}

namespace {

GroupedIncomeSeries monthly_series(const std::vector<std::vector<long long>>& freq_by_month,
                                   const std::vector<long long>& totals,
                                   const std::string& first = "2002-01") {
    GroupedIncomeSeries m;
    Period d = Period::parse(first);
    for (std::size_t t = 0; t < freq_by_month.size(); ++t) {
        std::vector<long long> cum;
        long long run = 0;
        for (long long f : freq_by_month[t]) {
            run += f;
            cum.push_back(run);
        }
        m.dates.push_back(d);
        m.endpoints.push_back({100.0, 200.0, 300.0});
        m.cum_counts.push_back(cum);
        m.totals.push_back(totals[t]);
        d = d.next();
    }
    return m;
}

} // namespace

TEST_CASE("aggregate_monthly_to_quarterly is idempotent on identical months") {
    auto m = monthly_series({{2000, 3000, 4000}, {2000, 3000, 4000}, {2000, 3000, 4000}},
                            {10000, 10000, 10000});
    auto q = aggregate_monthly_to_quarterly(m);
    CHECK(q.T() == 1);
    CHECK(q.dates[0].str() == "2002Q1");
    CHECK(q.totals[0] == 10000);
    CHECK(q.cum_counts[0] == m.cum_counts[0]);
}

TEST_CASE("aggregate_monthly_to_quarterly rescales heterogeneous totals to n") {
    auto m = monthly_series({{1800, 2700, 3600}, {2000, 3000, 4000}, {2200, 3300, 4400}},
                            {9000, 10000, 11000});
    auto q = aggregate_monthly_to_quarterly(m);
    CHECK(q.totals[0] == 10000);
    CHECK(q.cum_counts[0].back() < 10000);
}

TEST_CASE("aggregate_monthly_to_quarterly rejects incomplete quarters naming months") {
    auto m = monthly_series({{2000, 3000, 4000}, {2000, 3000, 4000}}, {10000, 10000});
    CHECK_THROWS_WITH_AS(aggregate_monthly_to_quarterly(m), doctest::Contains("2002-01"),
                         ValidationError);

    auto mid = monthly_series({{2000, 3000, 4000}}, {10000}, "2002-02");
    CHECK_THROWS_AS(aggregate_monthly_to_quarterly(mid), ValidationError);
}

TEST_CASE("aggregation preserves monotonicity and relative frequencies on random triples") {
    std::mt19937_64 gen(313);
    const long long n = 10000;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<std::vector<long long>> months;
        for (int j = 0; j < 3; ++j) {
            // random per-bracket frequencies with equal monthly totals n
            std::vector<long long> f(4);
            long long rest = n;
            for (int i = 0; i < 3; ++i) {
                f[i] = 1 + static_cast<long long>(gen() % (rest / 4));
                rest -= f[i];
            }
            f[3] = rest; // open top bracket stays nonempty
            months.push_back({f[0], f[1], f[2]});
        }
        GroupedIncomeSeries m;
        Period d = Period::parse("2010-01");
        for (int j = 0; j < 3; ++j) {
            std::vector<long long> cum{months[j][0], months[j][0] + months[j][1],
                                       months[j][0] + months[j][1] + months[j][2]};
            m.dates.push_back(d);
            m.endpoints.push_back({1.0, 2.0, 3.0});
            m.cum_counts.push_back(cum);
            m.totals.push_back(n);
            d = d.next();
        }
        auto q = aggregate_monthly_to_quarterly(m, n);
        q.validate(); // monotone, below total
        for (int i = 0; i < 3; ++i) {
            double mean_p = 0.0;
            for (int j = 0; j < 3; ++j)
                mean_p += static_cast<double>(m.cum_counts[j][i]) / static_cast<double>(n) / 3.0;
            double p_q = static_cast<double>(q.cum_counts[0][i]) / static_cast<double>(n);
            CHECK(std::abs(p_q - mean_p) <= 1.5 / static_cast<double>(n));
        }
    }
}

TEST_CASE("expand_biannual forward fills the quarterly index") {
    RawSeries sparse;
    sparse.dates = {Period::parse("2002Q1"), Period::parse("2002Q3")};
    sparse.values = {1.0, 2.0};
    auto filled = expand_biannual(sparse, Period::parse("2002Q1"), Period::parse("2002Q4"));
    REQUIRE(filled.values.size() == 4);
    CHECK(filled.values[0] == 1.0);
    CHECK(filled.values[1] == 1.0); // Q2 reuses Q1
    CHECK(filled.values[2] == 2.0);
    CHECK(filled.values[3] == 2.0); // Q4 reuses Q3

    // round trip at the original dates
    CHECK(filled.values[0] == sparse.values[0]);
    CHECK(filled.values[2] == sparse.values[1]);

    // constant input stays constant
    RawSeries c;
    c.dates = sparse.dates;
    c.values = {7.0, 7.0};
    auto cf = expand_biannual(c, Period::parse("2002Q1"), Period::parse("2003Q4"));
    for (double v : cf.values) CHECK(v == 7.0);

    CHECK_THROWS_WITH_AS(expand_biannual(sparse, Period::parse("2001Q4"), Period::parse("2002Q4")),
                         doctest::Contains("precedes"), ValidationError);
}

namespace {

std::map<std::string, RawSeries> quarterly_macro(const std::vector<Period>& dates,
                                                 const std::vector<std::string>& names,
                                                 std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::map<std::string, RawSeries> out;
    for (const auto& name : names) {
        RawSeries s;
        s.dates = dates;
        for (std::size_t t = 0; t < dates.size(); ++t)
            s.values.push_back(1.0 + static_cast<double>(gen() % 1000) / 250.0);
        out[name] = s;
    }
    return out;
}

} // namespace

TEST_CASE("assemble_dataset orders and transforms the macro block") {
    TempDir tmp;
    fs::path income_path = write_fies_fixture(tmp.path, 8, 5);
    auto income = load_grouped_csv(income_path, fies_schema());

    auto cfg = instrument_config("ssr");
    std::vector<std::string> macro_names(cfg.ordering.begin() + 1, cfg.ordering.end());
    auto raw = quarterly_macro(income.dates, macro_names, 99);

    std::map<std::string, Transform> transforms;
    for (const auto& n : macro_names) transforms[n] = Transform::level;
    transforms["rgdp"] = Transform::log100;
    transforms["reer"] = Transform::log100;
    transforms["eq"] = Transform::log100;

    auto ds = assemble_dataset(income, raw, transforms, cfg.ordering);
    CHECK(ds.m() == 8);
    CHECK(ds.macro.names == macro_names);
    CHECK(ds.variables().front() == "gini");
    // log100 applied
    CHECK(ds.macro.values(0, 0) ==
          doctest::Approx(100.0 * std::log(raw["rgdp"].values[0])).epsilon(1e-12));
    // level columns unchanged
    CHECK(ds.macro.values(0, 2) == raw["unempl"].values[0]);

    // column order follows the ordering regardless of the map's key order
    auto ds2 = assemble_dataset(income, raw, transforms,
                                {"gini", "eq", "reer", "ltir", "ssr", "unempl", "p", "rgdp"});
    CHECK(ds2.macro.names.front() == "eq");
    CHECK(ds2.macro.values(0, 0) ==
          doctest::Approx(100.0 * std::log(raw["eq"].values[0])).epsilon(1e-12));
}

TEST_CASE("assemble_dataset is deterministic and validates inputs") {
    TempDir tmp;
    fs::path income_path = write_fies_fixture(tmp.path, 6, 15);
    auto income = load_grouped_csv(income_path, fies_schema());
    auto raw = quarterly_macro(income.dates, {"a", "b"}, 3);
    std::map<std::string, Transform> transforms{{"a", Transform::level}, {"b", Transform::level}};

    auto d1 = assemble_dataset(income, raw, transforms, {"gini", "a", "b"});
    auto d2 = assemble_dataset(income, raw, transforms, {"gini", "a", "b"});
    CHECK((d1.macro.values.array() == d2.macro.values.array()).all());

    // the state label follows the ordering's first entry
    auto named = assemble_dataset(income, raw, transforms, {"inequality", "a", "b"});
    CHECK(named.variables() == std::vector<std::string>{"inequality", "a", "b"});

    CHECK_THROWS_WITH_AS(assemble_dataset(income, raw, transforms, {"gini", "a", "zzz"}),
                         doctest::Contains("zzz"), ValidationError);

    std::map<std::string, Transform> missing{{"a", Transform::level}};
    CHECK_THROWS_AS(assemble_dataset(income, raw, missing, {"gini", "a", "b"}), ValidationError);

    // NaN after transform: log of a negative level
    auto raw_bad = raw;
    raw_bad["a"].values[0] = -1.0;
    std::map<std::string, Transform> log_tf{{"a", Transform::log100}, {"b", Transform::level}};
    CHECK_THROWS_AS(assemble_dataset(income, raw_bad, log_tf, {"gini", "a", "b"}), ValidationError);
}

TEST_CASE("instrument configurations match the identification orderings") {
    auto ssr = instrument_config("ssr");
    CHECK(ssr.ordering == std::vector<std::string>{"gini", "rgdp", "p", "unempl", "ssr", "ltir", "reer", "eq"});
    CHECK(ssr.shock == "ssr");
    auto spread = instrument_config("spread");
    CHECK(spread.ordering ==
          std::vector<std::string>{"gini", "rgdp", "p", "unempl", "stir", "spread", "reer", "eq"});
    CHECK(spread.shock == "spread");
    CHECK(instrument_config("2ygby").shock == "2ygby");
    CHECK_THROWS_AS(instrument_config("nope"), ValidationError);
}

TEST_CASE("load_transform_spec parses the JSON map") {
    TempDir tmp;
    fs::path path = tmp.path / "transforms.json";
    atomic_write_file(path, R"({"rgdp": "log100", "unempl": "level"})");
    auto spec = load_transform_spec(path);
    CHECK(spec.at("rgdp") == Transform::log100);
    CHECK(spec.at("unempl") == Transform::level);

    atomic_write_file(path, R"({"rgdp": "square"})");
    CHECK_THROWS_AS(load_transform_spec(path), ValidationError);
    atomic_write_file(path, "[1,2,3]");
    CHECK_THROWS_AS(load_transform_spec(path), ValidationError);
    CHECK_THROWS_AS(parse_transform("nope"), ValidationError);
}

TEST_CASE("load_macro_csv splits columns into named series") {
    TempDir tmp;
    fs::path path = tmp.path / "macro.csv";
    write_csv(path, {"date", "rgdp", "unempl"},
              {{"2002Q1", "1.5", "4.0"}, {"2002Q2", "1.6", "4.1"}});
    auto series = load_macro_csv(path);
    REQUIRE(series.count("rgdp") == 1);
    CHECK(series["rgdp"].values == std::vector<double>{1.5, 1.6});
    CHECK(series["unempl"].dates[1].str() == "2002Q2");
}
