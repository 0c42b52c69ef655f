#include "meanlab/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "meanlab/numfmt.hpp"

namespace meanlab {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    MeanExpr run() {
        MeanExpr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start)
            throw ParseError("expected a mean name", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    double number() {
        skip_ws();
        std::size_t start = pos_;
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        std::size_t digits = p;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p == digits)
            throw ParseError("expected a number", start);
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        }
        // exponent suffix: superset of the grammar, so formatted output re-parses
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            std::size_t ed = q;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q > ed) p = q;
        }
        bool neg = text_[start] == '-';
        std::size_t from = (text_[start] == '+' || neg) ? start + 1 : start;
        double value = 0.0;
        auto res = std::from_chars(text_.data() + from, text_.data() + p, value);
        if (res.ec != std::errc{} || res.ptr != text_.data() + p)
            throw ParseError("malformed number", start);
        pos_ = p;
        return neg ? -value : value;
    }

    MeanExpr expr() {
        skip_ws();
        std::size_t at = pos_;
        std::string name = ident();
        if (name == "arith") return arithmetic_mean();
        if (name == "geom") return geometric_mean();
        if (name == "harm") return harmonic_mean();
        if (name == "rms") return rms_mean();
        if (name == "min") return min_mean();
        if (name == "max") return max_mean();
        if (name == "log") return log_mean();
        if (name == "power") {
            expect('(');
            double p = number();
            expect(')');
            return power_mean(p);
        }
        if (name == "gini") {
            expect('(');
            double p = number();
            expect(',');
            double q = number();
            expect(')');
            return gini(p, q);
        }
        if (name == "env") {
            expect('(');
            std::size_t kind_at = pos_;
            std::string kind = ident();
            expect(')');
            if (kind == "e1") return envelope(EnvelopeKind::E1);
            if (kind == "e2") return envelope(EnvelopeKind::E2);
            throw ParseError("unknown envelope '" + kind + "'", kind_at);
        }
        if (name == "compose") {
            expect('(');
            MeanExpr outer = expr();
            expect(',');
            MeanExpr lhs = expr();
            expect(',');
            MeanExpr rhs = expr();
            expect(')');
            return compose(std::move(outer), std::move(lhs), std::move(rhs));
        }
        if (name == "invariant") {
            expect('(');
            MeanExpr lhs = expr();
            expect(',');
            MeanExpr rhs = expr();
            expect(')');
            return invariant(std::move(lhs), std::move(rhs));
        }
        throw ParseError("unknown mean name '" + name + "'", at);
    }
};

}  // namespace

MeanExpr parse_mean(std::string_view text) { return Parser(text).run(); }

std::string format_mean(const MeanExpr& expr) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, GiniNode>) {
                return "gini(" + format_double(node.p) + "," + format_double(node.q) + ")";
            } else if constexpr (std::is_same_v<T, LogNode>) {
                return "log";
            } else if constexpr (std::is_same_v<T, MinNode>) {
                return "min";
            } else if constexpr (std::is_same_v<T, MaxNode>) {
                return "max";
            } else if constexpr (std::is_same_v<T, EnvelopeNode>) {
                switch (node.spec.kind) {
                    case EnvelopeKind::E1: return "env(e1)";
                    case EnvelopeKind::E2: return "env(e2)";
                    default:
                        throw std::invalid_argument("user-table envelope has no textual form");
                }
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                return "compose(" + format_mean(*node.outer) + "," + format_mean(*node.lhs) +
                       "," + format_mean(*node.rhs) + ")";
            } else {
                return "invariant(" + format_mean(*node.lhs) + "," + format_mean(*node.rhs) + ")";
            }
        },
        expr.node());
}

}  // namespace meanlab
