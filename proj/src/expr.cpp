#include "meanlab/expr.hpp"

#include <algorithm>
#include <cmath>

namespace meanlab {

bool operator==(const EnvelopeSpec& a, const EnvelopeSpec& b) {
    return a.kind == b.kind && a.table == b.table;
}

namespace {

bool node_equal(const GiniNode& a, const GiniNode& b) { return a.p == b.p && a.q == b.q; }
bool node_equal(const LogNode&, const LogNode&) { return true; }
bool node_equal(const MinNode&, const MinNode&) { return true; }
bool node_equal(const MaxNode&, const MaxNode&) { return true; }
bool node_equal(const EnvelopeNode& a, const EnvelopeNode& b) { return a.spec == b.spec; }
bool node_equal(const ComposeNode& a, const ComposeNode& b) {
    return *a.outer == *b.outer && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}
bool node_equal(const InvariantNode& a, const InvariantNode& b) {
    return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}

}  // namespace

bool operator==(const MeanExpr& a, const MeanExpr& b) {
    return std::visit(
        [](const auto& x, const auto& y) -> bool {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>,
                                         std::decay_t<decltype(y)>>) {
                return node_equal(x, y);
            } else {
                return false;
            }
        },
        a.node(), b.node());
}

MeanExpr gini(double p, double q) { return MeanExpr(GiniNode{p, q}); }
MeanExpr power_mean(double p) { return gini(p, 0.0); }
MeanExpr arithmetic_mean() { return gini(1.0, 0.0); }
MeanExpr geometric_mean() { return gini(0.0, 0.0); }
MeanExpr harmonic_mean() { return gini(0.0, -1.0); }
MeanExpr rms_mean() { return gini(2.0, 0.0); }
MeanExpr log_mean() { return MeanExpr(LogNode{}); }
MeanExpr min_mean() { return MeanExpr(MinNode{}); }
MeanExpr max_mean() { return MeanExpr(MaxNode{}); }

MeanExpr envelope(EnvelopeKind kind) {
    if (kind == EnvelopeKind::UserTable)
        throw std::invalid_argument("user-table envelope needs samples; use envelope_table");
    return MeanExpr(EnvelopeNode{EnvelopeSpec{kind, {}}});
}

MeanExpr envelope_table(std::vector<std::pair<double, double>> samples) {
    if (samples.empty())
        throw std::invalid_argument("envelope table needs at least one sample");
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto [t, e] = samples[i];
        if (!(std::isfinite(t) && std::isfinite(e)) || t <= 0.0 || t >= 1.0)
            throw std::invalid_argument("envelope abscissa must lie in (0,1)");
        if (e < t || e > 1.0)
            throw std::invalid_argument("envelope value must satisfy t <= e(t) <= 1");
        if (i > 0 && samples[i - 1].first == t)
            throw std::invalid_argument("duplicate envelope abscissa");
    }
    return MeanExpr(EnvelopeNode{EnvelopeSpec{EnvelopeKind::UserTable, std::move(samples)}});
}

MeanExpr compose(MeanExpr outer, MeanExpr lhs, MeanExpr rhs) {
    return MeanExpr(ComposeNode{std::make_shared<const MeanExpr>(std::move(outer)),
                                std::make_shared<const MeanExpr>(std::move(lhs)),
                                std::make_shared<const MeanExpr>(std::move(rhs))});
}

MeanExpr invariant(MeanExpr lhs, MeanExpr rhs) {
    return MeanExpr(InvariantNode{std::make_shared<const MeanExpr>(std::move(lhs)),
                                  std::make_shared<const MeanExpr>(std::move(rhs))});
}

bool contains_envelope(const MeanExpr& expr) {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, EnvelopeNode>) {
                return true;
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                return contains_envelope(*node.outer) || contains_envelope(*node.lhs) ||
                       contains_envelope(*node.rhs);
            } else if constexpr (std::is_same_v<T, InvariantNode>) {
                return contains_envelope(*node.lhs) || contains_envelope(*node.rhs);
            } else {
                return false;
            }
        },
        expr.node());
}

bool contains_invariant(const MeanExpr& expr) {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, InvariantNode>) {
                return true;
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                return contains_invariant(*node.outer) || contains_invariant(*node.lhs) ||
                       contains_invariant(*node.rhs);
            } else {
                return false;
            }
        },
        expr.node());
}

}  // namespace meanlab
