#pragma once

#include <vector>

#include "meanlab/expr.hpp"

namespace meanlab {

/// One sample of the cross-section in log coordinates:
/// u = log x and logm = log M(e^u, 1). For u <= 0, u <= logm <= 0.
struct LogPoint {
    double u = 0.0;
    double logm = 0.0;
};

/// Deepest log-abscissa at which envelope phases 1/t are still representable.
/// Below this, exp(-u) overflows the sine argument entirely and evaluation
/// is rejected; phase-exact probe_points remain valid at any depth.
inline constexpr double kEnvelopeLogFloor = -650.0;

/// Evaluate M(x, y) for positive finite x, y.
/// The result is clamped into [min(x,y), max(x,y)], arguments are
/// canonically ordered first (so symmetry holds exactly), and x == y
/// returns x for every node. Invariant nodes run the Gauss iteration
/// with default tolerance; non-convergence propagates.
double eval(const MeanExpr& expr, double x, double y);

/// Evaluate log M(e^u, 1) without forming e^u.
///
/// Stable rewrites keep absolute error ~1e-15 down to u = -1e4 and beyond:
/// Gini p != q uses (s(pu) - s(qu))/(p - q) with s(t) = max(t,0) + log1p(e^-|t|),
/// Gini p == q uses u * sigmoid(pu), the logarithmic mean uses
/// log(-expm1(u)) - log(-u), and envelopes factor out the exact dominant
/// power of e^u. For u > 0 the homogeneity identity
/// logm(u) = u + logm(-u) applies. Envelope nodes reject u < -650.
double eval_log(const MeanExpr& expr, double u);

/// Phase-exact sample points for oscillatory built-ins.
///
/// Instead of choosing an abscissa and evaluating the sine there, these
/// points choose the sine phase (an exact extreme) and substitute its value
/// analytically, so the extreme is hit even where 1/t exceeds 2^53:
///   E1: 1/t = pi/2 + 2 pi k  gives log e1 = u  (sin = +1),
///       1/t = 3 pi/2 + 2 pi k gives log e1 = 0 (sin = -1);
///   E2: t = 1/(4k+3) gives log e2 = u (sin = -1 kills the sqrt term),
///       t = 1/(4k+1) gives log e2 = u/2 (sin = +1).
/// `count` points per extreme family, log-uniform in |u| down to u_floor.
/// Non-oscillatory expressions (everything except bare env(e1)/env(e2))
/// return an empty sequence.
std::vector<LogPoint> probe_points(const MeanExpr& expr, int count, double u_floor);

}  // namespace meanlab
