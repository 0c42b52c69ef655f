#pragma once

#include <optional>
#include <string>

#include "meanlab/expr.hpp"
#include "meanlab/gauss.hpp"
#include "meanlab/grid.hpp"
#include "meanlab/order.hpp"

namespace meanlab {

/// Lower/upper orders of the three means entering a composition K(M, N).
struct OrderTuple {
    double lo_m = 0.0, uo_m = 0.0;
    double lo_n = 0.0, uo_n = 0.0;
    double lo_k = 0.0, uo_k = 0.0;
};

/// Order of the (M,N)-invariant mean for generalized-power-growth operands:
/// ord_n / (1 - ord_m + ord_n), requiring 0 <= ord_n <= ord_m <= 1 and
/// excluding (ord_m, ord_n) = (1, 0). Throws std::invalid_argument otherwise.
double invariant_order_formula(double ord_m, double ord_n);

/// Two-sided bounds for the orders of the composition K_{M,N}:
///   lo(K_{M,N}) >= (lo_m - uo_n) lo_k + lo_n
///   uo(K_{M,N}) <= (uo_m - lo_n) uo_k + uo_n
std::pair<double, double> composed_order_bounds(const OrderTuple& t);

/// Bounds for the orders of the (M,N)-invariant mean itself.
/// The upper bound is absent in the exceptional case lo_n = 0, uo_m = 1.
struct InvariantOrderBounds {
    double lower = 0.0;
    std::optional<double> upper;
};

InvariantOrderBounds invariant_order_bounds(double lo_m, double uo_m,
                                            double lo_n, double uo_n);

/// Pales comparability invariants for Gini parameters.
/// m = min(p,q) if both >= 0, 0 if pq < 0, max(p,q) if both <= 0
/// (the median of {p, 0, q}); mu = (|p|-|q|)/(p-q), sign(p) at p = q.
double pales_m(double p, double q);
double pales_mu(double p, double q);

/// Full characterization of G_{p,q} <= G_{r,s} pointwise:
/// p+q <= r+s, m(p,q) <= m(r,s), mu(p,q) <= mu(r,s).
bool pales_leq(double p, double q, double r, double s);

/// Daroczy-Losonczi sufficient condition: componentwise dominance of the
/// sorted parameter pairs. Implies pales_leq.
bool dl_leq(double p, double q, double r, double s);

/// Witkowski's constant test value C_M^ord_k * C_N^(1-ord_k); the first
/// disjunct of his hypothesis asks whether this differs from 1.
double witkowski_condition(double c_m, double c_n, double ord_k);

enum class VerifyMode { Law, Bounds, ExcludedPair };

/// Outcome of checking the invariance-order law (or, for operands that do
/// not classify as generalized power growth, the order bounds) against
/// numerical estimates.
struct VerificationReport {
    std::string expr_m, expr_n, expr_k;
    OrderEstimate estimate_m, estimate_n, estimate_k;
    PowerGrowthReport growth_m, growth_n;
    VerifyMode mode = VerifyMode::Law;
    std::optional<double> predicted;    // Law mode
    std::optional<double> lower_bound;  // Bounds mode
    std::optional<double> upper_bound;  // Bounds mode; absent in the exceptional case
    bool pass = false;
    double margin = 0.0;  // slack left at the deciding inequality (negative = fail)
    double tol = 0.0;
    GridSpec grid;
    ContractionReport contraction;
    double ratio_sup = 0.0;
    std::optional<double> witkowski_value;  // only when both operands are PG
};

/// Build K = invariant(M, N), estimate all three orders, and check the
/// prediction: the equality law when both operands classify GPG (operands
/// ordered internally so ord_m >= ord_n), else the two-sided bounds.
/// Closed-form operand orders are used for the prediction when available.
/// Non-convergence of the iteration propagates; the excluded pair (1,0)
/// yields mode = ExcludedPair with pass = false.
VerificationReport verify_invariance_order(const MeanExpr& M, const MeanExpr& N,
                                           const GridSpec& grid, double tol = 0.02);

}  // namespace meanlab
