#pragma once

#include <optional>
#include <vector>

#include "meanlab/eval.hpp"
#include "meanlab/expr.hpp"
#include "meanlab/grid.hpp"

namespace meanlab {

/// One sample of the finite-scale exponent phi(u) = log M(e^u,1) / u.
/// The lower/upper orders of M are liminf/limsup of phi as u -> -inf,
/// and phi always lies in [0, 1].
struct PhiSample {
    double u = 0.0;
    double phi = 0.0;
};

struct WindowExtreme {
    double u = 0.0;    // abscissa where the extreme was attained
    double phi = 0.0;
};

/// Estimated lower/upper orders with fit diagnostics.
///
/// Per-window extremes of phi are fitted against 1/u over the asymptotic
/// half of the windows (model phi_ext ~ alpha + c/u, exact when
/// M(x,1) = C x^alpha); the intercepts are the estimates, clamped to [0,1].
struct OrderEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double fit_residual_lower = 0.0;
    double fit_residual_upper = 0.0;
    std::vector<WindowExtreme> window_minima;
    std::vector<WindowExtreme> window_maxima;
    double raw_lower = 0.0;   // intercepts before clamping
    double raw_upper = 0.0;
    bool clamped_lower = false;
    bool clamped_upper = false;
    bool reordered = false;   // fits crossed; values swapped to keep lower <= upper

    double midpoint() const { return 0.5 * (lower + upper); }
    double gap() const { return upper - lower; }
};

/// Power-growth classification at the configured tolerances.
/// is_pg implies is_gpg; constant is present iff is_pg.
struct PowerGrowthReport {
    bool is_gpg = false;
    std::optional<double> order;
    bool is_pg = false;
    std::optional<double> constant;
    double gpg_gap = 0.0;
    double constant_spread = 0.0;  // spread of log M(e^u,1) - order*u over the last window
};

/// Premise-checked order monotonicity: M <= c N forces
/// lower(M) >= lower(N) and upper(M) >= upper(N).
struct MonotonicityReport {
    bool premise_holds = false;
    // max over samples of logm_M - (log c + logm_N), normalized by the logm
    // scale; <= 0 (up to rounding) when the premise holds
    double premise_margin = 0.0;
    double premise_worst_u = 0.0;
    OrderEstimate estimate_m;
    OrderEstimate estimate_n;
    bool conclusion_checked = false;  // only when the premise holds
    bool lower_ok = false;
    bool upper_ok = false;
};

/// Grid phi samples merged with phase-exact probe points.
/// Sorted by descending u (shallow to deep).
std::vector<PhiSample> sample_phi(const MeanExpr& expr, const GridSpec& grid);

/// Estimate lower/upper orders from windowed extremes of phi.
OrderEstimate estimate_orders(const MeanExpr& expr, const GridSpec& grid);

/// Growth exponent window of M(y,1) as y -> infinity, estimated from
/// psi(u) = logm(u)/u on the positive side. The pointwise identity
/// psi(u) = 1 - phi(-u) makes this (1 - upper, 1 - lower) of
/// estimate_orders up to float noise, but it is computed independently.
OrderEstimate order_at_infinity(const MeanExpr& expr, const GridSpec& grid);

/// Classify generalized power growth (upper - lower <= gpg_tol) and power
/// growth (additionally, the tail log-constant spread is <= const_tol).
PowerGrowthReport classify_power_growth(const MeanExpr& expr, const GridSpec& grid,
                                        double gpg_tol = 0.05, double const_tol = 0.01);

/// Closed-form order of the Gini mean G_{p,q}:
/// 0 when min >= 0 < max; 1 when min < 0 >= max; 1/2 at p = q = 0;
/// otherwise -min(p,q)/|p - q|.
double gini_order(double p, double q);

/// Closed-form order where one exists; never a guess.
/// Gini via gini_order, log -> 0, min -> 1, max -> 0, and
/// invariant(M,N) -> b/(1 - a + b) for known operand orders a >= b,
/// except the excluded pair (a,b) = (1,0). Envelopes and general
/// compositions have no closed form.
std::optional<double> known_order(const MeanExpr& expr);

/// Check M <= c N on the grid cross-section; when it holds, compare the
/// estimated orders of both sides within fit_tol.
MonotonicityReport monotonicity_check(const MeanExpr& M, const MeanExpr& N, double c,
                                      const GridSpec& grid, double fit_tol = 0.02);

}  // namespace meanlab
