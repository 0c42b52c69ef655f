#pragma once

#include <vector>

#include "meanlab/expr.hpp"

namespace meanlab {

/// Sampling plan for the cross-section u -> log M(e^u, 1).
///
/// Points are log-uniform in |u| between |u_start| and |u_end|; the order
/// estimator partitions them into `windows` contiguous blocks by |u| and
/// merges `probes` phase-exact points per oscillation extreme.
struct GridSpec {
    double u_start = -1.0;
    double u_end = -1e4;
    int points = 4096;
    int windows = 8;
    int probes = 64;

    /// Throws std::invalid_argument unless
    /// u_end < u_start < 0, windows >= 2, points >= 2*windows, probes >= 0.
    void validate() const;

    /// The u samples, descending from u_start to u_end.
    std::vector<double> sample_points() const;

    /// Default grid for an expression: u_end = -1e4, capped at -650
    /// when the expression contains an envelope.
    static GridSpec defaults_for(const MeanExpr& expr);

    /// Copy of this grid with u_end capped for the given expression.
    GridSpec capped_for(const MeanExpr& expr) const;
};

}  // namespace meanlab
