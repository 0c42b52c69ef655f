#include "meanlab/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meanlab {

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit fit_line(const std::vector<WindowExtreme>& pts, std::size_t from) {
    std::size_t n = pts.size() - from;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = from; i < pts.size(); ++i) {
        sx += 1.0 / pts[i].u;
        sy += pts[i].phi;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = from; i < pts.size(); ++i) {
        double dx = 1.0 / pts[i].u - mx;
        sxx += dx * dx;
        sxy += dx * (pts[i].phi - my);
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = from; i < pts.size(); ++i) {
        double r = pts[i].phi - (fit.intercept + fit.slope / pts[i].u);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

struct WindowAcc {
    bool any = false;
    WindowExtreme min, max;
};

// windows are log-uniform in the magnitude of the coordinate
int window_index(double au, double au_lo, double au_hi, int windows) {
    double frac = std::log(au / au_lo) / std::log(au_hi / au_lo);
    int idx = static_cast<int>(frac * windows);
    return std::clamp(idx, 0, windows - 1);
}

// shared by estimate_orders (coord = u < 0) and order_at_infinity (coord = u > 0);
// extremes are paired with the abscissa where they were attained, and the
// 1/u fit runs over the asymptotic half of the windows
OrderEstimate estimate_from_samples(const std::vector<PhiSample>& samples,
                                    double au_lo, double au_hi, int windows) {
    std::vector<WindowAcc> acc(static_cast<std::size_t>(windows));
    for (const auto& s : samples) {
        auto& w = acc[static_cast<std::size_t>(
            window_index(std::abs(s.u), au_lo, au_hi, windows))];
        if (!w.any) {
            w.any = true;
            w.min = w.max = {s.u, s.phi};
        } else {
            if (s.phi < w.min.phi) w.min = {s.u, s.phi};
            if (s.phi > w.max.phi) w.max = {s.u, s.phi};
        }
    }

    OrderEstimate est;
    for (const auto& w : acc) {
        if (!w.any) continue;
        est.window_minima.push_back(w.min);
        est.window_maxima.push_back(w.max);
    }
    std::size_t n = est.window_minima.size();
    if (n < 2)
        throw std::runtime_error("insufficient samples: need data in at least 2 windows");
    std::size_t fit_count = std::max<std::size_t>(2, n - n / 2);
    std::size_t from = n - fit_count;

    LineFit lo_fit = fit_line(est.window_minima, from);
    LineFit up_fit = fit_line(est.window_maxima, from);
    est.raw_lower = lo_fit.intercept;
    est.raw_upper = up_fit.intercept;
    est.fit_residual_lower = lo_fit.rms;
    est.fit_residual_upper = up_fit.rms;

    est.lower = std::clamp(est.raw_lower, 0.0, 1.0);
    est.upper = std::clamp(est.raw_upper, 0.0, 1.0);
    est.clamped_lower = est.lower != est.raw_lower;
    est.clamped_upper = est.upper != est.raw_upper;
    if (est.lower > est.upper) {
        std::swap(est.lower, est.upper);
        est.reordered = true;
    }
    return est;
}

}  // namespace

std::vector<PhiSample> sample_phi(const MeanExpr& expr, const GridSpec& grid) {
    grid.validate();
    std::vector<PhiSample> out;
    for (double u : grid.sample_points()) {
        double logm = eval_log(expr, u);
        out.push_back({u, logm == 0.0 ? 0.0 : logm / u});
    }
    for (const auto& pt : probe_points(expr, grid.probes, grid.u_end)) {
        if (pt.u > grid.u_start || pt.u < grid.u_end) continue;
        out.push_back({pt.u, pt.logm == 0.0 ? 0.0 : pt.logm / pt.u});
    }
    std::sort(out.begin(), out.end(),
              [](const PhiSample& a, const PhiSample& b) { return a.u > b.u; });
    return out;
}

OrderEstimate estimate_orders(const MeanExpr& expr, const GridSpec& grid) {
    auto samples = sample_phi(expr, grid);
    return estimate_from_samples(samples, -grid.u_start, -grid.u_end, grid.windows);
}

OrderEstimate order_at_infinity(const MeanExpr& expr, const GridSpec& grid) {
    grid.validate();
    std::vector<PhiSample> samples;
    for (double u : grid.sample_points()) {
        double v = -u;  // positive side
        samples.push_back({v, eval_log(expr, v) / v});
    }
    for (const auto& pt : probe_points(expr, grid.probes, grid.u_end)) {
        if (pt.u > grid.u_start || pt.u < grid.u_end) continue;
        double v = -pt.u;
        samples.push_back({v, (v + pt.logm) / v});
    }
    std::sort(samples.begin(), samples.end(),
              [](const PhiSample& a, const PhiSample& b) { return a.u < b.u; });
    return estimate_from_samples(samples, -grid.u_start, -grid.u_end, grid.windows);
}

PowerGrowthReport classify_power_growth(const MeanExpr& expr, const GridSpec& grid,
                                        double gpg_tol, double const_tol) {
    auto est = estimate_orders(expr, grid);
    PowerGrowthReport report;
    report.gpg_gap = est.gap();
    report.is_gpg = report.gpg_gap <= gpg_tol;
    if (!report.is_gpg) return report;
    report.order = est.midpoint();

    // tail log-constants c(u) = logm(u) - order*u over the deepest window
    double au_lo = -grid.u_start, au_hi = -grid.u_end;
    double cut = au_lo * std::pow(au_hi / au_lo, double(grid.windows - 1) / grid.windows);
    std::vector<double> tail;
    for (double u : grid.sample_points())
        if (-u >= cut) tail.push_back(eval_log(expr, u) - *report.order * u);
    if (tail.empty()) return report;

    auto [mn, mx] = std::minmax_element(tail.begin(), tail.end());
    report.constant_spread = *mx - *mn;
    report.is_pg = report.constant_spread <= const_tol;
    if (report.is_pg) {
        std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
        report.constant = std::exp(tail[tail.size() / 2]);
    }
    return report;
}

double gini_order(double p, double q) {
    double lo = std::min(p, q), hi = std::max(p, q);
    if (lo >= 0.0 && hi > 0.0) return 0.0;
    if (lo < 0.0 && hi <= 0.0) return 1.0;
    if (lo == 0.0 && hi == 0.0) return 0.5;
    return -lo / (hi - lo);
}

std::optional<double> known_order(const MeanExpr& expr) {
    return std::visit(
        [](const auto& node) -> std::optional<double> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, GiniNode>) {
                return gini_order(node.p, node.q);
            } else if constexpr (std::is_same_v<T, LogNode>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, MinNode>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, MaxNode>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, InvariantNode>) {
                auto a = known_order(*node.lhs);
                auto b = known_order(*node.rhs);
                if (!a || !b) return std::nullopt;
                double hi = std::max(*a, *b), lo = std::min(*a, *b);
                if (hi == 1.0 && lo == 0.0) return std::nullopt;  // excluded pair
                return lo / (1.0 - hi + lo);
            } else {
                return std::nullopt;  // envelopes and general compositions
            }
        },
        expr.node());
}

MonotonicityReport monotonicity_check(const MeanExpr& M, const MeanExpr& N, double c,
                                      const GridSpec& grid, double fit_tol) {
    if (!(c > 0.0)) throw std::invalid_argument("comparison constant must be positive");
    grid.validate();
    MonotonicityReport report;
    double lc = std::log(c);
    double worst = -std::numeric_limits<double>::infinity();
    // homogeneity reduces M <= c N to the cross-section (e^u, 1); the margin
    // is normalized by the logm scale so deep-grid rounding noise (ulps of
    // |u|) does not masquerade as a violation
    for (double u : grid.sample_points()) {
        double a = eval_log(M, u);
        double b = lc + eval_log(N, u);
        double margin = (a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        if (margin > worst) {
            worst = margin;
            report.premise_worst_u = u;
        }
    }
    report.premise_margin = worst;
    report.premise_holds = worst <= 1e-12;
    report.estimate_m = estimate_orders(M, grid);
    report.estimate_n = estimate_orders(N, grid);
    if (report.premise_holds) {
        report.conclusion_checked = true;
        report.lower_ok = report.estimate_m.lower >= report.estimate_n.lower - fit_tol;
        report.upper_ok = report.estimate_m.upper >= report.estimate_n.upper - fit_tol;
    }
    return report;
}

}  // namespace meanlab
