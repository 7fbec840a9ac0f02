#include "ginivar/irf.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"

namespace ginivar {

void IrfSpec::validate() const {
    if (shock_variable.empty()) throw ValidationError("IrfSpec: shock_variable must be set");
    if (horizon < 1) throw ValidationError("IrfSpec: horizon must be >= 1");
    if (!(scale != 0.0) || !std::isfinite(scale)) throw ValidationError("IrfSpec: scale must be finite and nonzero");
    if (quantiles.empty()) throw ValidationError("IrfSpec: at least one quantile required");
    double prev = 0.0;
    for (double q : quantiles) {
        if (!(q > prev && q < 1.0))
            throw ValidationError("IrfSpec: quantiles must be strictly increasing within (0,1)");
        prev = q;
    }
}

StationarityResult is_stationary(const Eigen::MatrixXd& b) {
    if (b.rows() != b.cols()) throw ValidationError("is_stationary: matrix must be square");
    Eigen::EigenSolver<Eigen::MatrixXd> es(b, /*computeEigenvectors=*/false);
    double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    return {radius < 1.0, radius};
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols()) throw NumericalError("cholesky_lower: matrix must be square");
    if (!sigma.isApprox(sigma.transpose(), 1e-10))
        throw NumericalError("cholesky_lower: matrix is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NumericalError("cholesky_lower: matrix is not positive definite");
    return llt.matrixL();
}

Eigen::VectorXd impulse_vector(const Eigen::MatrixXd& a, int shock_index, double scale) {
    if (shock_index < 0 || shock_index >= a.cols())
        throw ValidationError("impulse_vector: shock index out of range");
    Eigen::VectorXd delta = a.col(shock_index);
    const double impact = delta[shock_index];
    if (!(std::abs(impact) > 0.0) || !std::isfinite(impact))
        throw NumericalError("impulse_vector: instrument has zero impact response, cannot normalize");
    delta *= scale / impact;
    delta[shock_index] = scale; // exact by construction
    return delta;
}

Eigen::MatrixXd irf_path(const Eigen::MatrixXd& b, const Eigen::VectorXd& delta, int horizon) {
    const int m = static_cast<int>(delta.size());
    Eigen::MatrixXd path(horizon + 1, m);
    Eigen::VectorXd r = delta;
    path.row(0) = r.transpose();
    for (int s = 1; s <= horizon; ++s) {
        r = b * r;
        path.row(s) = r.transpose();
    }
    return path;
}

std::vector<int> resolve_variables(const std::vector<std::string>& names,
                                   const std::vector<std::string>& ordering) {
    std::vector<int> idx;
    for (const auto& name : names) {
        auto it = std::find(ordering.begin(), ordering.end(), name);
        if (it == ordering.end())
            throw ValidationError("unknown variable name '" + name + "'");
        idx.push_back(static_cast<int>(it - ordering.begin()));
    }
    return idx;
}

Eigen::MatrixXd compute_irf(const Eigen::MatrixXd& b, const Eigen::MatrixXd& sigma,
                            const IrfSpec& spec, const std::vector<std::string>& ordering) {
    spec.validate();
    auto st = is_stationary(b);
    if (!st.stationary)
        throw NumericalError("compute_irf: B is not stationary (radius " +
                             std::to_string(st.spectral_radius) + ")");
    int j = resolve_variables({spec.shock_variable}, ordering)[0];
    Eigen::MatrixXd a = cholesky_lower(sigma);
    return irf_path(b, impulse_vector(a, j, spec.scale), spec.horizon);
}

void shutdown_channel(Eigen::MatrixXd& b, Eigen::MatrixXd& a, const std::vector<int>& off) {
    for (int idx : off) {
        if (idx < 0 || idx >= b.rows())
            throw ValidationError("shutdown_channel: index out of range");
        b.row(idx).setZero();
        a.row(idx).setZero();
    }
}

double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ValidationError("empirical_quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

namespace {

// Per-draw response cube for one draw set; rows of `out` are filled at
// disjoint indices so the loop can be split across threads.
void fill_responses(const PosteriorDraws& draws, const IrfSpec& spec, int shock_index,
                    const std::vector<int>& off, std::vector<Eigen::MatrixXd>& out,
                    std::vector<char>& skipped, int threads) {
    const int D = draws.draws();
    auto worker = [&](int lo, int hi) {
        for (int d = lo; d < hi; ++d) {
            Eigen::MatrixXd b = draws.b_at(d);
            if (!is_stationary(b).stationary) {
                skipped[d] = 1;
                continue;
            }
            Eigen::MatrixXd a = cholesky_lower(draws.sigma_at(d));
            shutdown_channel(b, a, off);
            out[d] = irf_path(b, impulse_vector(a, shock_index, spec.scale), spec.horizon);
        }
    };
    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, D));
    if (n_threads == 1) {
        worker(0, D);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (D + n_threads - 1) / n_threads;
    for (int i = 0; i < n_threads; ++i) {
        int lo = i * chunk;
        int hi = std::min(D, lo + chunk);
        if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
}

} // namespace

IrfBands posterior_irf_bands(const PosteriorDraws& draws, const IrfSpec& spec,
                             const std::vector<std::string>& shutdown, int threads) {
    spec.validate();
    if (draws.draws() == 0) throw ValidationError("posterior_irf_bands: no draws");
    const auto& ordering = draws.meta.variables;
    const int shock_index = resolve_variables({spec.shock_variable}, ordering)[0];
    const std::vector<int> off = resolve_variables(shutdown, ordering);

    const int D = draws.draws();
    std::vector<Eigen::MatrixXd> responses(D);
    std::vector<char> skipped(D, 0);
    fill_responses(draws, spec, shock_index, off, responses, skipped, threads);

    std::vector<int> kept;
    for (int d = 0; d < D; ++d)
        if (!skipped[d]) kept.push_back(d);
    if (kept.empty()) throw NumericalError("posterior_irf_bands: every draw was non-stationary");

    IrfBands out;
    out.variables = ordering;
    out.quantiles = spec.quantiles;
    out.spec = spec;
    out.shutdown = shutdown;
    out.skipped_draws = D - static_cast<long>(kept.size());

    const int m = draws.meta.m;
    out.bands.assign(spec.quantiles.size(), Eigen::MatrixXd(spec.horizon + 1, m));
    std::vector<double> cell(kept.size());
    for (int s = 0; s <= spec.horizon; ++s) {
        for (int v = 0; v < m; ++v) {
            for (std::size_t i = 0; i < kept.size(); ++i) cell[i] = responses[kept[i]](s, v);
            for (std::size_t q = 0; q < spec.quantiles.size(); ++q)
                out.bands[q](s, v) = empirical_quantile(cell, spec.quantiles[q]);
        }
    }
    return out;
}

void write_irf_bands_csv(const std::filesystem::path& path, const IrfBands& bands) {
    std::string shutdown_tag;
    for (const auto& name : bands.shutdown)
        shutdown_tag += (shutdown_tag.empty() ? "" : ";") + name;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t v = 0; v < bands.variables.size(); ++v)
        for (int s = 0; s <= bands.spec.horizon; ++s)
            for (std::size_t q = 0; q < bands.quantiles.size(); ++q)
                rows.push_back({bands.variables[v], std::to_string(s), fmt_double(bands.quantiles[q]),
                                fmt_double(bands.bands[q](s, static_cast<int>(v))), shutdown_tag});
    write_csv(path, {"variable", "horizon", "quantile", "value", "shutdown"}, rows);
}

void write_irf_bands_svg(const std::filesystem::path& path, const IrfBands& bands) {
    const int m = static_cast<int>(bands.variables.size());
    const int horizon = bands.spec.horizon;
    const int cols = m >= 4 ? 3 : m;
    const int rows = (m + cols - 1) / cols;
    const double panel_w = 300.0, panel_h = 180.0, margin = 42.0, pad = 14.0;
    const double width = cols * (panel_w + margin) + margin;
    const double height = rows * (panel_h + margin) + margin;

    char buf[256];
    std::string svg;
    auto addf = [&](const char* format, auto... args) {
        std::snprintf(buf, sizeof buf, format, args...);
        svg += buf;
    };
    addf("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
         "font-family=\"sans-serif\" font-size=\"11\">\n",
         width, height);

    for (int v = 0; v < m; ++v) {
        const double x0 = margin + (v % cols) * (panel_w + margin);
        const double y0 = margin + (v / cols) * (panel_h + margin);
        double lo = 0.0, hi = 0.0;
        for (const auto& band : bands.bands) {
            lo = std::min(lo, band.col(v).minCoeff());
            hi = std::max(hi, band.col(v).maxCoeff());
        }
        if (hi - lo < 1e-12) hi = lo + 1e-12;
        const double span = hi - lo;
        auto px = [&](int s) { return x0 + pad + (panel_w - 2 * pad) * s / horizon; };
        auto py = [&](double val) { return y0 + pad + (panel_h - 2 * pad) * (hi - val) / span; };

        addf("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.0f\" height=\"%.0f\" fill=\"white\" "
             "stroke=\"#888\"/>\n",
             x0, y0, panel_w, panel_h);
        addf("<text x=\"%.1f\" y=\"%.1f\">%s</text>\n", x0, y0 - 6.0,
             bands.variables[v].c_str());
        addf("<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" stroke=\"#bbb\"/>\n",
             px(0), py(0.0), px(horizon), py(0.0));
        addf("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n", x0 - 4.0,
             py(hi) + 4.0, hi);
        addf("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n", x0 - 4.0,
             py(lo) + 4.0, lo);

        for (std::size_t q = 0; q < bands.bands.size(); ++q) {
            const bool is_median = q == bands.bands.size() / 2;
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += is_median ? "#1f4e9c\" stroke-width=\"1.8" : "#9cb4d8\" stroke-width=\"1";
            svg += "\" points=\"";
            for (int s = 0; s <= horizon; ++s) {
                addf("%.2f,%.2f ", px(s), py(bands.bands[q](s, v)));
            }
            svg += "\"/>\n";
        }
    }
    svg += "</svg>\n";
    atomic_write_file(path, svg);
}

ImpactScatter impact_scatter(const PosteriorDraws& draws_a, const PosteriorDraws& draws_b,
                             const IrfSpec& spec, const std::string& variable, int horizon) {
    spec.validate();
    if (draws_a.draws() != draws_b.draws())
        throw ValidationError("impact_scatter: draw counts differ, cannot pair by index");
    if (horizon < 0 || horizon > spec.horizon)
        throw ValidationError("impact_scatter: horizon outside the spec range");

    const int var_a = resolve_variables({variable}, draws_a.meta.variables)[0];
    const int var_b = resolve_variables({variable}, draws_b.meta.variables)[0];
    const int shock_a = resolve_variables({spec.shock_variable}, draws_a.meta.variables)[0];
    const int shock_b = resolve_variables({spec.shock_variable}, draws_b.meta.variables)[0];

    auto response_at = [&](const PosteriorDraws& draws, int d, int shock, int var) {
        Eigen::MatrixXd b = draws.b_at(d);
        auto st = is_stationary(b);
        if (!st.stationary)
            throw ValidationError("impact_scatter: non-stationary draw " + std::to_string(d));
        Eigen::VectorXd delta = impulse_vector(cholesky_lower(draws.sigma_at(d)), shock, spec.scale);
        for (int s = 0; s < horizon; ++s) delta = b * delta;
        return delta[var];
    };

    ImpactScatter out;
    const int D = draws_a.draws();
    out.response_a.resize(D);
    out.response_b.resize(D);
    long below = 0;
    for (int d = 0; d < D; ++d) {
        out.response_a[d] = response_at(draws_a, d, shock_a, var_a);
        out.response_b[d] = response_at(draws_b, d, shock_b, var_b);
        if (out.response_b[d] < out.response_a[d]) ++below;
    }
    out.below_diagonal_share = static_cast<double>(below) / static_cast<double>(D);
    return out;
}

void write_scatter_csv(const std::filesystem::path& path, const ImpactScatter& scatter) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t d = 0; d < scatter.response_a.size(); ++d)
        rows.push_back({std::to_string(d), fmt_double(scatter.response_a[d]),
                        fmt_double(scatter.response_b[d])});
    write_csv(path, {"draw", "response_a", "response_b"}, rows);
}

} // namespace ginivar
