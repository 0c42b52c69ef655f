#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace meanlab {

/// Which analytic envelope a Envelope node denotes, or a tabulated one.
enum class EnvelopeKind { E1, E2, UserTable };

/// Envelope function e : (0,1) -> (0,1] with t <= e(t) <= 1.
///
/// E1:  e(t) = t^(1/2 + (1/2) sin(1/t))          (oscillates over all exponents)
/// E2:  e(t) = (1/2)(sqrt(t) - t)(1 + sin(pi/(2t))) + t
/// UserTable: finite (t, e(t)) samples, interpolated log-linearly in log t
///            and clamped back into [t, 1].
struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::E1;
    std::vector<std::pair<double, double>> table;  // UserTable only, sorted by t
};

bool operator==(const EnvelopeSpec& a, const EnvelopeSpec& b);

class MeanExpr;
using ExprPtr = std::shared_ptr<const MeanExpr>;

/// Gini mean G_{p,q}. Parameters are unordered: G_{p,q} == G_{q,p}.
/// Power means are the q = 0 slice; p = q = 0 is the geometric mean.
struct GiniNode {
    double p = 0.0;
    double q = 0.0;
};

struct LogNode {};  // logarithmic mean (x - y) / (log x - log y)
struct MinNode {};
struct MaxNode {};

struct EnvelopeNode {
    EnvelopeSpec spec;
};

/// Pointwise composition outer(lhs(x,y), rhs(x,y)).
struct ComposeNode {
    ExprPtr outer, lhs, rhs;
};

/// The unique mean invariant under the pair (lhs, rhs), realized as the
/// common limit of the Gauss iteration (x,y) <- (lhs(x,y), rhs(x,y)).
struct InvariantNode {
    ExprPtr lhs, rhs;
};

/// Immutable expression tree over homogeneous symmetric bivariate means.
/// Every node denotes a function on positive pairs that is symmetric,
/// positively homogeneous, and sandwiched between min and max.
class MeanExpr {
public:
    using Node = std::variant<GiniNode, LogNode, MinNode, MaxNode,
                              EnvelopeNode, ComposeNode, InvariantNode>;

    explicit MeanExpr(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

private:
    Node node_;
};

/// Structural equality (Gini parameters compared as written, not as functions).
bool operator==(const MeanExpr& a, const MeanExpr& b);
inline bool operator!=(const MeanExpr& a, const MeanExpr& b) { return !(a == b); }

MeanExpr gini(double p, double q);
MeanExpr power_mean(double p);  // gini(p, 0)
MeanExpr arithmetic_mean();     // gini(1, 0)
MeanExpr geometric_mean();      // gini(0, 0)
MeanExpr harmonic_mean();       // gini(0, -1)
MeanExpr rms_mean();            // gini(2, 0)
MeanExpr log_mean();
MeanExpr min_mean();
MeanExpr max_mean();
MeanExpr envelope(EnvelopeKind kind);

/// Tabulated envelope mean. Samples need t in (0,1) and t <= e(t) <= 1;
/// they are sorted by t. Throws std::invalid_argument otherwise.
MeanExpr envelope_table(std::vector<std::pair<double, double>> samples);

MeanExpr compose(MeanExpr outer, MeanExpr lhs, MeanExpr rhs);
MeanExpr invariant(MeanExpr lhs, MeanExpr rhs);

bool contains_envelope(const MeanExpr& expr);
bool contains_invariant(const MeanExpr& expr);

}  // namespace meanlab
