#include "meanlab/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "meanlab/parse.hpp"

namespace meanlab {

double invariant_order_formula(double ord_m, double ord_n) {
    if (!(0.0 <= ord_n && ord_n <= ord_m && ord_m <= 1.0))
        throw std::invalid_argument("invariant order formula needs 0 <= ord_n <= ord_m <= 1");
    if (ord_m == 1.0 && ord_n == 0.0)
        throw std::invalid_argument("order pair (1, 0) is excluded");
    return ord_n / (1.0 - ord_m + ord_n);
}

std::pair<double, double> composed_order_bounds(const OrderTuple& t) {
    return {(t.lo_m - t.uo_n) * t.lo_k + t.lo_n,
            (t.uo_m - t.lo_n) * t.uo_k + t.uo_n};
}

InvariantOrderBounds invariant_order_bounds(double lo_m, double uo_m,
                                            double lo_n, double uo_n) {
    InvariantOrderBounds bounds;
    double d1 = 1.0 + uo_n - lo_m;
    bounds.lower = d1 > 0.0 ? lo_n / d1 : 0.0;  // fall back to the trivial bound
    if (!(lo_n == 0.0 && uo_m == 1.0)) {
        bounds.upper = uo_n / (1.0 + lo_n - uo_m);
    }
    return bounds;
}

double pales_m(double p, double q) {
    double lo = std::min(p, q), hi = std::max(p, q);
    if (lo >= 0.0) return lo;
    if (hi <= 0.0) return hi;
    return 0.0;
}

double pales_mu(double p, double q) {
    if (p == q) return p > 0.0 ? 1.0 : (p < 0.0 ? -1.0 : 0.0);
    return (std::abs(p) - std::abs(q)) / (p - q);
}

bool pales_leq(double p, double q, double r, double s) {
    return p + q <= r + s && pales_m(p, q) <= pales_m(r, s) &&
           pales_mu(p, q) <= pales_mu(r, s);
}

bool dl_leq(double p, double q, double r, double s) {
    return std::min(p, q) <= std::min(r, s) && std::max(p, q) <= std::max(r, s);
}

double witkowski_condition(double c_m, double c_n, double ord_k) {
    if (!(c_m > 0.0 && c_n > 0.0))
        throw std::invalid_argument("growth constants must be positive");
    return std::pow(c_m, ord_k) * std::pow(c_n, 1.0 - ord_k);
}

VerificationReport verify_invariance_order(const MeanExpr& M, const MeanExpr& N,
                                           const GridSpec& grid, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    constexpr double gpg_tol = 0.05;

    VerificationReport rep;
    rep.tol = tol;
    rep.grid = grid;
    rep.expr_m = format_mean(M);
    rep.expr_n = format_mean(N);
    MeanExpr K = invariant(M, N);
    rep.expr_k = format_mean(K);

    // estimate K first: a non-contracting pair fails here with NonConvergence
    rep.estimate_k = estimate_orders(K, grid.capped_for(K));
    GridSpec gm = grid.capped_for(M), gn = grid.capped_for(N);
    rep.estimate_m = estimate_orders(M, gm);
    rep.estimate_n = estimate_orders(N, gn);
    rep.growth_m = classify_power_growth(M, gm, gpg_tol);
    rep.growth_n = classify_power_growth(N, gn, gpg_tol);
    rep.contraction = contraction_check(M, N, 256);

    // orient so the first operand carries the larger order
    bool m_high = rep.estimate_m.midpoint() >= rep.estimate_n.midpoint();
    const OrderEstimate& est_hi = m_high ? rep.estimate_m : rep.estimate_n;
    const OrderEstimate& est_lo = m_high ? rep.estimate_n : rep.estimate_m;
    rep.ratio_sup = ratio_bound(m_high ? M : N, m_high ? N : M,
                                grid.capped_for(K));

    if (rep.growth_m.is_pg && rep.growth_n.is_pg) {
        const auto& g_hi = m_high ? rep.growth_m : rep.growth_n;
        const auto& g_lo = m_high ? rep.growth_n : rep.growth_m;
        rep.witkowski_value =
            witkowski_condition(*g_hi.constant, *g_lo.constant, rep.estimate_k.midpoint());
    }

    if (rep.growth_m.is_gpg && rep.growth_n.is_gpg) {
        // closed-form operand orders sharpen the prediction when available
        auto km = known_order(M), kn = known_order(N);
        double om = km ? *km : *rep.growth_m.order;
        double on = kn ? *kn : *rep.growth_n.order;
        double a = std::max(om, on), b = std::min(om, on);
        if (a >= 1.0 - 1e-9 && b <= 1e-9) {
            rep.mode = VerifyMode::ExcludedPair;
            rep.pass = false;
            rep.margin = 0.0;
            return rep;
        }
        rep.mode = VerifyMode::Law;
        double predicted = invariant_order_formula(a, b);
        rep.predicted = predicted;
        double err = std::abs(rep.estimate_k.midpoint() - predicted);
        bool k_gpg = rep.estimate_k.gap() <= gpg_tol;
        rep.pass = err <= tol && k_gpg;
        rep.margin = tol - err;
        return rep;
    }

    rep.mode = VerifyMode::Bounds;
    auto bounds = invariant_order_bounds(est_hi.lower, est_hi.upper,
                                         est_lo.lower, est_lo.upper);
    rep.lower_bound = bounds.lower;
    rep.upper_bound = bounds.upper;
    double lo_slack = rep.estimate_k.lower - (bounds.lower - tol);
    double uo_slack = bounds.upper
                          ? (*bounds.upper + tol) - rep.estimate_k.upper
                          : std::numeric_limits<double>::infinity();
    rep.pass = lo_slack >= 0.0 && uo_slack >= 0.0;
    rep.margin = std::min(lo_slack, uo_slack);
    return rep;
}

}  // namespace meanlab
