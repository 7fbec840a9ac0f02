#include "ginivar/draws.hpp"

#include <nlohmann/json.hpp>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"
#include "ginivar/irf.hpp"

namespace ginivar {

namespace fs = std::filesystem;
using nlohmann::json;

Eigen::VectorXd pack_beta(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& b) {
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd beta(m * (m + 1));
    for (int j = 0; j < m; ++j) {
        beta[j * (m + 1)] = alpha[j];
        beta.segment(j * (m + 1) + 1, m) = b.row(j).transpose();
    }
    return beta;
}

void unpack_beta(const Eigen::VectorXd& beta, int m, Eigen::VectorXd& alpha, Eigen::MatrixXd& b) {
    if (beta.size() != m * (m + 1)) throw ValidationError("unpack_beta: dimension mismatch");
    alpha.resize(m);
    b.resize(m, m);
    for (int j = 0; j < m; ++j) {
        alpha[j] = beta[j * (m + 1)];
        b.row(j) = beta.segment(j * (m + 1) + 1, m).transpose();
    }
}

Eigen::VectorXd PosteriorDraws::alpha_at(int d) const {
    Eigen::VectorXd alpha;
    Eigen::MatrixXd b;
    unpack_beta(beta.row(d).transpose(), meta.m, alpha, b);
    return alpha;
}

Eigen::MatrixXd PosteriorDraws::b_at(int d) const {
    Eigen::VectorXd alpha;
    Eigen::MatrixXd b;
    unpack_beta(beta.row(d).transpose(), meta.m, alpha, b);
    return b;
}

Eigen::MatrixXd PosteriorDraws::sigma_at(int d) const {
    const int m = meta.m;
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s(i, j) = sigma(d, i * m + j);
    return s;
}

void PosteriorDraws::validate() const {
    const int D = draws();
    const int m = meta.m;
    const int T = meta.T;
    if (D <= 0) throw ValidationError("PosteriorDraws: empty");
    if (mu.rows() != D || h.rows() != D || sigma.rows() != D)
        throw ValidationError("PosteriorDraws: draw counts differ across blocks");
    if (mu.cols() != T || h.cols() != T) throw ValidationError("PosteriorDraws: T mismatch");
    if (beta.cols() != m * (m + 1) || sigma.cols() != m * m)
        throw ValidationError("PosteriorDraws: m mismatch");
    if (static_cast<int>(meta.variables.size()) != m)
        throw ValidationError("PosteriorDraws: variable names must match m");
    for (int d = 0; d < D; ++d) {
        auto st = is_stationary(b_at(d));
        if (!st.stationary)
            throw ValidationError("PosteriorDraws: draw " + std::to_string(d) +
                                  " violates the stationarity truncation (radius " +
                                  std::to_string(st.spectral_radius) + ")");
    }
}

namespace {

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& mat) {
    std::string out;
    out.reserve(static_cast<std::size_t>(mat.size()) * 20);
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            if (c) out.push_back(',');
            out += fmt_double(mat(r, c));
        }
        out.push_back('\n');
    }
    atomic_write_file(path, out);
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path, Eigen::Index cols) {
    std::string text = read_file(path);
    std::vector<double> values;
    values.reserve(text.size() / 10);
    Eigen::Index rows = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        if (eol > pos) {
            Eigen::Index row_cols = 0;
            std::size_t p = pos;
            while (p < eol) {
                std::size_t comma = text.find(',', p);
                if (comma == std::string::npos || comma > eol) comma = eol;
                values.push_back(parse_double(text.substr(p, comma - p), path.string()));
                ++row_cols;
                p = comma + 1;
            }
            if (row_cols != cols)
                throw ValidationError(path.string() + ": expected " + std::to_string(cols) +
                                      " columns, row " + std::to_string(rows) + " has " +
                                      std::to_string(row_cols));
            ++rows;
        }
        pos = eol + 1;
    }
    Eigen::MatrixXd mat(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = values[static_cast<std::size_t>(r * cols + c)];
    return mat;
}

} // namespace

void save_posterior_draws(const PosteriorDraws& draws, const fs::path& dir) {
    fs::create_directories(dir);
    write_matrix_csv(dir / "mu.csv", draws.mu);
    write_matrix_csv(dir / "h.csv", draws.h);
    write_matrix_csv(dir / "beta.csv", draws.beta);
    write_matrix_csv(dir / "sigma.csv", draws.sigma);

    json meta;
    meta["schema"] = "ginivar-draws-v1";
    meta["kind"] = draws.meta.kind;
    meta["seed"] = draws.meta.seed;
    meta["burn_in"] = draws.meta.burn_in;
    meta["retained"] = draws.meta.retained;
    meta["thin"] = draws.meta.thin;
    meta["m"] = draws.meta.m;
    meta["T"] = draws.meta.T;
    meta["variables"] = draws.meta.variables;
    meta["accept_mean"] = draws.meta.accept_mean;
    meta["accept_min"] = draws.meta.accept_min;
    meta["accept_max"] = draws.meta.accept_max;
    meta["truncation_stalls"] = draws.meta.truncation_stalls;
    atomic_write_file(dir / "meta.json", meta.dump(2) + "\n");
}

PosteriorDraws load_posterior_draws(const fs::path& dir) {
    json meta;
    try {
        meta = json::parse(read_file(dir / "meta.json"));
    } catch (const json::exception& e) {
        throw ValidationError("draws meta.json: invalid JSON: " + std::string(e.what()));
    }
    PosteriorDraws d;
    d.meta.kind = meta.value("kind", "joint");
    d.meta.seed = meta.value("seed", std::uint64_t{0});
    d.meta.burn_in = meta.value("burn_in", 0L);
    d.meta.retained = meta.value("retained", 0L);
    d.meta.thin = meta.value("thin", 1L);
    d.meta.m = meta.at("m").get<int>();
    d.meta.T = meta.at("T").get<int>();
    d.meta.variables = meta.at("variables").get<std::vector<std::string>>();
    d.meta.accept_mean = meta.value("accept_mean", 0.0);
    d.meta.accept_min = meta.value("accept_min", 0.0);
    d.meta.accept_max = meta.value("accept_max", 0.0);
    d.meta.truncation_stalls = meta.value("truncation_stalls", 0L);

    const int m = d.meta.m;
    d.mu = read_matrix_csv(dir / "mu.csv", d.meta.T);
    d.h = read_matrix_csv(dir / "h.csv", d.meta.T);
    d.beta = read_matrix_csv(dir / "beta.csv", m * (m + 1));
    d.sigma = read_matrix_csv(dir / "sigma.csv", m * m);
    if (d.mu.rows() != d.beta.rows() || d.h.rows() != d.beta.rows() || d.sigma.rows() != d.beta.rows())
        throw ValidationError("draws directory: inconsistent draw counts across files");
    return d;
}

} // namespace ginivar
