#pragma once

#include <stdexcept>
#include <string>

#include "meanlab/expr.hpp"
#include "meanlab/grid.hpp"

namespace meanlab {

inline constexpr double kGaussTol = 1e-14;
inline constexpr int kGaussMaxIter = 200;

/// Outcome of a convergent Gauss iteration.
struct IterationResult {
    double value = 0.0;     // midpoint of the final pair
    int iterations = 0;
    double final_gap = 0.0; // relative gap |x - y| / max(x, y) at termination
};

/// Gauss iteration failed to contract within max_iter steps.
/// Carries the last pair (natural or log coordinates, see log_domain).
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(double last_x, double last_y, double gap, int iterations,
                   bool log_domain)
        : std::runtime_error("Gauss iteration did not converge after " +
                             std::to_string(iterations) + " iterations"),
          last_x_(last_x), last_y_(last_y), gap_(gap),
          iterations_(iterations), log_domain_(log_domain) {}

    double last_x() const { return last_x_; }
    double last_y() const { return last_y_; }
    double gap() const { return gap_; }
    int iterations() const { return iterations_; }
    bool log_domain() const { return log_domain_; }

private:
    double last_x_, last_y_, gap_;
    int iterations_;
    bool log_domain_;
};

/// Sampled estimate of the contraction ratio sup |M - N| / |x - y|.
/// A report, not a proof: < 1 on every sample is evidence, not certainty.
struct ContractionReport {
    double max_ratio = 0.0;
    double worst_x = 0.0;
    double worst_y = 0.0;
    int sample_count = 0;
};

/// Iterate (x, y) <- (M(x,y), N(x,y)) until the relative gap drops to tol.
/// Returns the midpoint of the final pair; throws NonConvergence otherwise.
IterationResult gauss_iterate(const MeanExpr& M, const MeanExpr& N,
                              double x, double y,
                              double tol = kGaussTol, int max_iter = kGaussMaxIter);

/// Same iteration carried entirely in log coordinates: returns
/// log K(e^u, 1) for the (M, N)-invariant mean K, for u <= 0. Required
/// for depths where e^u underflows; agrees with the natural iteration
/// to ~1e-10 on u in [-30, 0]. Terminates when the log-pair gap
/// |u_x - u_y| drops to tol * max(1, |u_x|, |u_y|); the magnitude factor
/// keeps the target above the double resolution of deep iterates.
double gauss_iterate_log(const MeanExpr& M, const MeanExpr& N, double u,
                         double tol = kGaussTol, int max_iter = kGaussMaxIter);

/// Sample the contraction ratio over log-spaced cross-section pairs
/// (e^u, 1) plus seeded random pairs.
ContractionReport contraction_check(const MeanExpr& M, const MeanExpr& N,
                                    int samples, unsigned long long seed = 0);

/// Max over sampled (x, y) of |K(M(x,y), N(x,y)) - K(x,y)| / K(x,y).
double invariance_residual(const MeanExpr& K, const MeanExpr& M, const MeanExpr& N,
                           int samples, unsigned long long seed = 0);

/// Sampled sup of M(e^u,1) / N(e^u,1) over the grid. Diagnostic for the
/// bounded-ratio hypothesis of the order bounds; grows with grid depth
/// when the ratio is unbounded.
double ratio_bound(const MeanExpr& M, const MeanExpr& N, const GridSpec& grid);

}  // namespace meanlab
