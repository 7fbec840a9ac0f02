#include "ginivar/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"
#include "ginivar/irf.hpp"
#include "ginivar/rng.hpp"

namespace ginivar {

using nlohmann::json;

void SyntheticTruth::validate() const {
    const int mm = m();
    if (mm < 2) throw ValidationError("SyntheticTruth: need at least 2 variables (state + macro)");
    if (b_mat.rows() != mm || b_mat.cols() != mm || sigma_mat.rows() != mm || sigma_mat.cols() != mm)
        throw ValidationError("SyntheticTruth: dimension mismatch");
    auto st = is_stationary(b_mat);
    if (!st.stationary)
        throw ValidationError("SyntheticTruth: b_mat is not stationary (radius " +
                              std::to_string(st.spectral_radius) + ")");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma_mat);
    if (llt.info() != Eigen::Success)
        throw ValidationError("SyntheticTruth: sigma_mat is not positive definite");
    grid.validate();
    if (grid.count() < 2) throw ValidationError("SyntheticTruth: grid needs at least 2 probabilities");
    if (n < 2) throw ValidationError("SyntheticTruth: n too small");
    if (T < 2) throw ValidationError("SyntheticTruth: T too small");
    for (double p : grid.probs) {
        double np = p * static_cast<double>(n);
        if (std::abs(np - std::llround(np)) > 1e-9)
            throw ValidationError("SyntheticTruth: n * p_i must be an integer count (p = " +
                                  std::to_string(p) + ")");
    }
    if (!variable_names.empty() && static_cast<int>(variable_names.size()) != mm)
        throw ValidationError("SyntheticTruth: variable_names must have m entries");
}

SyntheticTruth SyntheticTruth::load(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("truth " + path.string() + ": invalid JSON: " + e.what());
    }
    SyntheticTruth t;
    auto alpha = j.at("alpha").get<std::vector<double>>();
    const int m = static_cast<int>(alpha.size());
    t.alpha = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    auto read_matrix = [&](const char* key) {
        auto rows = j.at(key).get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd mat(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<Eigen::Index>(rows[r].size()) != mat.cols())
                throw ValidationError(std::string("truth: ragged matrix '") + key + "'");
            for (std::size_t c = 0; c < rows[r].size(); ++c) mat(r, c) = rows[r][c];
        }
        return mat;
    };
    t.b_mat = read_matrix("b");
    t.sigma_mat = read_matrix("sigma");
    t.grid = QuantileGrid::from_probs(j.at("probs").get<std::vector<double>>());
    t.n = j.value("n", 10000LL);
    t.T = j.value("T", 60);
    t.seed = j.value("seed", std::uint64_t{1});
    t.mu_bar = j.value("mu_bar", 0.0);
    t.measurement_noise = j.value("measurement_noise", true);
    if (j.contains("variable_names"))
        t.variable_names = j["variable_names"].get<std::vector<std::string>>();
    t.validate();
    return t;
}

std::string SyntheticTruth::to_json() const {
    json j;
    j["alpha"] = std::vector<double>(alpha.data(), alpha.data() + alpha.size());
    auto matrix_to_json = [](const Eigen::MatrixXd& mat) {
        std::vector<std::vector<double>> rows;
        for (Eigen::Index r = 0; r < mat.rows(); ++r) {
            std::vector<double> row;
            for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["b"] = matrix_to_json(b_mat);
    j["sigma"] = matrix_to_json(sigma_mat);
    j["probs"] = grid.probs;
    j["n"] = n;
    j["T"] = T;
    j["seed"] = seed;
    j["mu_bar"] = mu_bar;
    j["measurement_noise"] = measurement_noise;
    if (!variable_names.empty()) j["variable_names"] = variable_names;
    return j.dump(2) + "\n";
}

SyntheticData generate_synthetic_dataset(const SyntheticTruth& truth) {
    truth.validate();
    const int m = truth.m();
    const int T = truth.T;
    const int k = truth.grid.count();
    Rng rng(truth.seed);

    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(truth.sigma_mat).matrixL();
    Eigen::MatrixXd y(m, T);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(m); // y_0 = 0
    for (int t = 0; t < T; ++t) {
        y.col(t) = truth.alpha + truth.b_mat * prev + chol * rng.normal_vector(m);
        prev = y.col(t);
    }

    Eigen::VectorXd u = truth.grid.normal_scores();
    GroupedIncomeSeries income;
    Period date{Freq::quarterly, 2000, 1};
    std::vector<long long> cum(k);
    for (int i = 0; i < k; ++i) cum[i] = std::llround(truth.grid.probs[i] * static_cast<double>(truth.n));

    std::vector<double> z(static_cast<std::size_t>(truth.n));
    for (int t = 0; t < T; ++t) {
        const double sigma_t = std::exp(0.5 * y(0, t));
        std::vector<double> x(k);
        if (truth.measurement_noise) {
            for (auto& v : z) v = rng.normal();
            std::sort(z.begin(), z.end());
            for (int i = 0; i < k; ++i) {
                // rank ceil(n p_i), 1-based
                auto rank = static_cast<std::size_t>(std::llround(truth.grid.probs[i] * static_cast<double>(truth.n)));
                x[i] = std::exp(truth.mu_bar + sigma_t * z[rank - 1]);
            }
        } else {
            for (int i = 0; i < k; ++i) x[i] = std::exp(truth.mu_bar + sigma_t * u[i]);
        }
        income.dates.push_back(date);
        income.endpoints.push_back(std::move(x));
        income.cum_counts.push_back(cum);
        income.totals.push_back(truth.n);
        date = date.next();
    }

    MacroPanel panel;
    panel.dates = income.dates;
    if (truth.variable_names.empty()) {
        for (int j = 1; j < m; ++j) panel.names.push_back("y" + std::to_string(j + 1));
    } else {
        panel.names.assign(truth.variable_names.begin() + 1, truth.variable_names.end());
    }
    panel.values = y.bottomRows(m - 1).transpose();

    std::string state_name = truth.variable_names.empty() ? "gini" : truth.variable_names.front();
    SyntheticData out{Dataset{std::move(income), std::move(panel), std::move(state_name)},
                      Eigen::VectorXd::Constant(T, truth.mu_bar), y.row(0).transpose()};
    out.dataset.validate();
    return out;
}

} // namespace ginivar
