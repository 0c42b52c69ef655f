#include "meanlab/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "meanlab/eval.hpp"

namespace meanlab {

namespace {

double relative_gap(double x, double y) {
    return std::abs(x - y) / std::max(x, y);
}

// cross-section pairs (e^u, 1) with |u| log-uniform in [1e-6, 30],
// plus `count` seeded random pairs with log-uniform coordinates
std::vector<std::pair<double, double>> sample_pairs(int count, unsigned long long seed) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(2 * static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double frac = count == 1 ? 1.0 : double(i) / (count - 1);
        double au = 1e-6 * std::pow(30.0 / 1e-6, frac);
        pairs.emplace_back(std::exp(-au), 1.0);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_coord(-30.0, 30.0);
    for (int i = 0; i < count; ++i) {
        double x = std::exp(log_coord(rng));
        double y = std::exp(log_coord(rng));
        while (x == y) y = std::exp(log_coord(rng));
        pairs.emplace_back(x, y);
    }
    return pairs;
}

}  // namespace

IterationResult gauss_iterate(const MeanExpr& M, const MeanExpr& N,
                              double x, double y, double tol, int max_iter) {
    if (!(std::isfinite(x) && std::isfinite(y)) || x <= 0.0 || y <= 0.0)
        throw std::domain_error("Gauss iteration needs positive finite starting values");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    double gap = relative_gap(x, y);
    int it = 0;
    do {
        if (it >= max_iter) throw NonConvergence(x, y, gap, it, false);
        double mx = eval(M, x, y);
        double nx = eval(N, x, y);
        x = mx;
        y = nx;
        ++it;
        gap = relative_gap(x, y);
    } while (gap > tol);
    return {0.5 * x + 0.5 * y, it, gap};
}

double gauss_iterate_log(const MeanExpr& M, const MeanExpr& N, double u,
                         double tol, int max_iter) {
    if (!std::isfinite(u) || u > 0.0)
        throw std::domain_error("log-domain Gauss iteration needs u <= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    double a = u, b = 0.0;
    double gap = std::abs(a - b);
    int it = 0;
    // the stop scale mirrors the natural domain's relative gap: near the
    // fixed point |a - b| cannot shrink below one ulp of the values
    auto converged = [&] { return gap <= tol * std::max({1.0, std::abs(a), std::abs(b)}); };
    do {
        if (it >= max_iter) throw NonConvergence(a, b, gap, it, true);
        double top = std::max(a, b);
        double d = std::min(a, b) - top;
        // homogeneity: log M(e^a, e^b) = top + log M(e^d, 1)
        double ma = top + eval_log(M, d);
        double mb = top + eval_log(N, d);
        a = ma;
        b = mb;
        ++it;
        gap = std::abs(a - b);
    } while (!converged());
    return 0.5 * (a + b);
}

ContractionReport contraction_check(const MeanExpr& M, const MeanExpr& N,
                                    int samples, unsigned long long seed) {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    ContractionReport report;
    for (auto [x, y] : sample_pairs(samples, seed)) {
        double ratio = std::abs(eval(M, x, y) - eval(N, x, y)) / std::abs(x - y);
        ++report.sample_count;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_x = x;
            report.worst_y = y;
        }
    }
    return report;
}

double invariance_residual(const MeanExpr& K, const MeanExpr& M, const MeanExpr& N,
                           int samples, unsigned long long seed) {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    double worst = 0.0;
    for (auto [x, y] : sample_pairs(samples, seed)) {
        double kxy = eval(K, x, y);
        double kmn = eval(K, eval(M, x, y), eval(N, x, y));
        worst = std::max(worst, std::abs(kmn - kxy) / kxy);
    }
    return worst;
}

double ratio_bound(const MeanExpr& M, const MeanExpr& N, const GridSpec& grid) {
    grid.validate();
    double sup = 0.0;
    for (double u : grid.sample_points())
        sup = std::max(sup, std::exp(eval_log(M, u) - eval_log(N, u)));
    return sup;
}

}  // namespace meanlab
