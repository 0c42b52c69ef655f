#include "meanlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "meanlab/gauss.hpp"

namespace meanlab {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

// s(t) = log(1 + e^t), exact linear tail for |t| past the underflow of e^-|t|
double softplus(double t) {
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

// log-linear interpolation of log e(t) at u = log t, clamped into [u, 0];
// outside the table range the outermost segment extrapolates
double table_log_value(const EnvelopeSpec& spec, double u) {
    const auto& tab = spec.table;
    double v;
    if (tab.size() == 1) {
        v = std::log(tab.front().second);
    } else {
        std::size_t seg = 1;  // table sorted ascending in t, so ascending in log t
        while (seg + 1 < tab.size() && u > std::log(tab[seg].first)) ++seg;
        double x0 = std::log(tab[seg - 1].first), x1 = std::log(tab[seg].first);
        double y0 = std::log(tab[seg - 1].second), y1 = std::log(tab[seg].second);
        v = y0 + (y1 - y0) * (u - x0) / (x1 - x0);
    }
    return std::min(0.0, std::max(u, v));
}

double envelope_log(const EnvelopeSpec& spec, double u) {
    // u < 0 here; u = 0 short-circuits earlier
    if (u < kEnvelopeLogFloor)
        throw std::domain_error("envelope phase 1/t not representable below u = -650; "
                                "use phase-exact probes instead");
    // phases are formed as 1/t with t = e^u, the same expression the natural
    // path uses, so the two paths sample the identical (pseudo-random) sine
    switch (spec.kind) {
        case EnvelopeKind::E1: {
            double t = std::exp(u);
            return u * (0.5 + 0.5 * std::sin(1.0 / t));
        }
        case EnvelopeKind::E2: {
            double t = std::exp(u);
            double s = std::sin(0.5 * std::numbers::pi / t);
            // e2 = sqrt(t) * [ (1/2)(1 - sqrt(t))(1 + sin) + sqrt(t) ]: the
            // dominant power u/2 is carried exactly outside the bracket
            double bracket = 0.5 * (-std::expm1(0.5 * u)) * (1.0 + s) + std::exp(0.5 * u);
            return 0.5 * u + std::log(bracket);
        }
        default:
            return table_log_value(spec, u);
    }
}

double envelope_natural(const EnvelopeSpec& spec, double t) {
    if (t == 1.0) return 1.0;
    switch (spec.kind) {
        case EnvelopeKind::E1: {
            double inv = 1.0 / t;
            if (!std::isfinite(inv))
                throw std::domain_error("envelope phase 1/t not representable");
            return std::pow(t, 0.5 + 0.5 * std::sin(inv));
        }
        case EnvelopeKind::E2: {
            double phase = 0.5 * std::numbers::pi / t;
            if (!std::isfinite(phase))
                throw std::domain_error("envelope phase 1/t not representable");
            return 0.5 * (std::sqrt(t) - t) * (1.0 + std::sin(phase)) + t;
        }
        default:
            return std::exp(table_log_value(spec, std::log(t)));
    }
}

// lo <= hi, both positive finite
double gini_natural(double p, double q, double lo, double hi) {
    if (lo == hi) return hi;
    if (p == q) {
        if (p == 0.0) return std::sqrt(lo) * std::sqrt(hi);
        double llo = std::log(lo), lhi = std::log(hi);
        double w = sigmoid(p * (llo - lhi));  // weight of the smaller argument
        return std::exp(w * llo + (1.0 - w) * lhi);
    }
    double r = lo / hi;
    double lr = std::log(r);
    if (std::max(std::abs(p * lr), std::abs(q * lr)) < 600.0) {
        double num = 1.0 + std::pow(r, p);
        double den = 1.0 + std::pow(r, q);
        return hi * std::pow(num / den, 1.0 / (p - q));
    }
    // r^p or r^q would overflow; same formula through softplus
    return hi * std::exp((softplus(p * lr) - softplus(q * lr)) / (p - q));
}

double log_mean_natural(double lo, double hi) {
    if (lo == hi) return hi;
    double d = hi - lo;
    double den = (hi / lo < 2.0) ? std::log1p(d / lo) : (std::log(hi) - std::log(lo));
    return d / den;
}

double eval_impl(const MeanExpr& expr, double lo, double hi);

double eval_node(const MeanExpr& expr, double lo, double hi) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, GiniNode>) {
                return gini_natural(node.p, node.q, lo, hi);
            } else if constexpr (std::is_same_v<T, LogNode>) {
                return log_mean_natural(lo, hi);
            } else if constexpr (std::is_same_v<T, MinNode>) {
                return lo;
            } else if constexpr (std::is_same_v<T, MaxNode>) {
                return hi;
            } else if constexpr (std::is_same_v<T, EnvelopeNode>) {
                return hi * envelope_natural(node.spec, lo / hi);
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                double a = eval_impl(*node.lhs, lo, hi);
                double b = eval_impl(*node.rhs, lo, hi);
                return eval_impl(*node.outer, std::min(a, b), std::max(a, b));
            } else {
                return gauss_iterate(*node.lhs, *node.rhs, lo, hi).value;
            }
        },
        expr.node());
}

double eval_impl(const MeanExpr& expr, double lo, double hi) {
    // clamping enforces the mean property against final-ulp wobble
    return std::min(hi, std::max(lo, eval_node(expr, lo, hi)));
}

double eval_log_impl(const MeanExpr& expr, double u);

double eval_log_node(const MeanExpr& expr, double u) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, GiniNode>) {
                double p = node.p, q = node.q;
                if (p == q) return u * sigmoid(p * u);
                return (softplus(p * u) - softplus(q * u)) / (p - q);
            } else if constexpr (std::is_same_v<T, LogNode>) {
                return std::log(-std::expm1(u)) - std::log(-u);
            } else if constexpr (std::is_same_v<T, MinNode>) {
                return u;
            } else if constexpr (std::is_same_v<T, MaxNode>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, EnvelopeNode>) {
                return envelope_log(node.spec, u);
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                double a = eval_log_impl(*node.lhs, u);
                double b = eval_log_impl(*node.rhs, u);
                if (a == b) return a;
                double top = std::max(a, b);
                return top + eval_log_impl(*node.outer, std::min(a, b) - top);
            } else {
                return gauss_iterate_log(*node.lhs, *node.rhs, u);
            }
        },
        expr.node());
}

double eval_log_impl(const MeanExpr& expr, double u) {
    if (u == 0.0) return 0.0;
    if (u > 0.0) return u + eval_log_impl(expr, -u);
    // the mean property in log coordinates: u <= logm <= 0
    return std::min(0.0, std::max(u, eval_log_node(expr, u)));
}

}  // namespace

double eval(const MeanExpr& expr, double x, double y) {
    if (!(std::isfinite(x) && std::isfinite(y)) || x <= 0.0 || y <= 0.0)
        throw std::domain_error("mean arguments must be positive and finite");
    return eval_impl(expr, std::min(x, y), std::max(x, y));
}

double eval_log(const MeanExpr& expr, double u) {
    if (!std::isfinite(u))
        throw std::domain_error("log abscissa must be finite");
    return eval_log_impl(expr, u);
}

namespace {

struct ProbeFamily {
    double offset;     // phase at k = 0
    double period;     // phase step per k
    double slope;      // logm = slope * u at this extreme
    double min_phase;  // phases must exceed this (keeps t < 1)
};

void emit_family(const ProbeFamily& fam, int count, double u_floor,
                 std::vector<LogPoint>& out) {
    double k0 = std::max(0.0, std::ceil((fam.min_phase - fam.offset) / fam.period));
    if (fam.offset + fam.period * k0 <= fam.min_phase) k0 += 1.0;  // strict: keep t < 1
    double lo_au = std::log(fam.offset + fam.period * k0);
    double hi_au = -u_floor;
    if (!(hi_au > lo_au)) return;
    double last_k = -1.0;
    for (int j = 0; j < count; ++j) {
        double au = (count == 1)
                        ? hi_au
                        : lo_au * std::pow(hi_au / lo_au, double(j) / (count - 1));
        double k = std::round((std::exp(au) - fam.offset) / fam.period);
        if (k < k0) k = k0;
        if (k == last_k) continue;
        last_k = k;
        double phase = fam.offset + fam.period * k;
        double u = -std::log(phase);
        if (u < u_floor || u >= 0.0) continue;
        out.push_back({u, fam.slope == 0.0 ? 0.0 : fam.slope * u});
    }
}

}  // namespace

std::vector<LogPoint> probe_points(const MeanExpr& expr, int count, double u_floor) {
    std::vector<LogPoint> out;
    if (count <= 0) return out;
    const auto* env = std::get_if<EnvelopeNode>(&expr.node());
    if (env == nullptr) return out;

    constexpr double pi = std::numbers::pi;
    switch (env->spec.kind) {
        case EnvelopeKind::E1:
            // sin(1/t) = +1: exponent 1;  sin(1/t) = -1: exponent 0
            emit_family({0.5 * pi, 2.0 * pi, 1.0, 1.0}, count, u_floor, out);
            emit_family({1.5 * pi, 2.0 * pi, 0.0, 1.0}, count, u_floor, out);
            break;
        case EnvelopeKind::E2:
            // 1/t = 4k+3: sin(pi/(2t)) = -1, e2(t) = t;  1/t = 4k+1: sin = +1, e2 = sqrt(t)
            emit_family({3.0, 4.0, 1.0, 1.0}, count, u_floor, out);
            emit_family({1.0, 4.0, 0.5, 1.0}, count, u_floor, out);
            break;
        default:
            break;  // tabulated envelopes carry no analytic phases
    }
    std::sort(out.begin(), out.end(),
              [](const LogPoint& a, const LogPoint& b) { return a.u > b.u; });
    return out;
}

}  // namespace meanlab
