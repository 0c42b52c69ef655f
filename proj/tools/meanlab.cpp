// meanlab: numerics for homogeneous symmetric bivariate means.
// Evaluate mean expressions, build invariant means by Gauss iteration,
// estimate asymptotic orders, and check the invariance-order predictions.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meanlab/eval.hpp"
#include "meanlab/gauss.hpp"
#include "meanlab/grid.hpp"
#include "meanlab/numfmt.hpp"
#include "meanlab/order.hpp"
#include "meanlab/parse.hpp"
#include "meanlab/serialize.hpp"
#include "meanlab/theory.hpp"

namespace {

using namespace meanlab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitEval = 3;

struct GridFlags {
    CLI::Option* u_start = nullptr;
    CLI::Option* u_end = nullptr;
    CLI::Option* points = nullptr;
    CLI::Option* windows = nullptr;
    CLI::Option* probes = nullptr;
    GridSpec values;

    void attach(CLI::App* cmd) {
        u_start = cmd->add_option("--u-start", values.u_start, "Shallow end of the log grid (< 0)");
        u_end = cmd->add_option("--u-end", values.u_end, "Deep end of the log grid (< u-start)");
        points = cmd->add_option("--points", values.points, "Grid points, log-uniform in |u|");
        windows = cmd->add_option("--windows", values.windows, "Extreme-tracking windows");
        probes = cmd->add_option("--probes", values.probes, "Phase-exact probes per oscillation extreme (0 disables)");
    }

    // defaults come from the expression (envelopes cap the depth); explicit
    // flags override them verbatim
    GridSpec resolve(const MeanExpr& expr) const {
        GridSpec g = GridSpec::defaults_for(expr);
        if (u_start->count() > 0) g.u_start = values.u_start;
        if (u_end->count() > 0) g.u_end = values.u_end;
        if (points->count() > 0) g.points = values.points;
        if (windows->count() > 0) g.windows = values.windows;
        if (probes->count() > 0) g.probes = values.probes;
        g.validate();
        return g;
    }
};

class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string fd(double v) { return format_double(v); }

void print_estimate_text(std::ostream& os, const OrderEstimate& est) {
    os << "lower: " << fd(est.lower) << "\n"
       << "upper: " << fd(est.upper) << "\n"
       << "fit_residual_lower: " << fd(est.fit_residual_lower) << "\n"
       << "fit_residual_upper: " << fd(est.fit_residual_upper) << "\n";
}

void print_growth_text(std::ostream& os, const PowerGrowthReport& growth) {
    os << "gpg: " << (growth.is_gpg ? "true" : "false") << "\n"
       << "gpg_gap: " << fd(growth.gpg_gap) << "\n";
    if (growth.order) os << "order: " << fd(*growth.order) << "\n";
    os << "pg: " << (growth.is_pg ? "true" : "false") << "\n";
    if (growth.constant) os << "constant: " << fd(*growth.constant) << "\n";
    os << "constant_spread: " << fd(growth.constant_spread) << "\n";
}

int cmd_eval(const std::string& expr_text, double x, double y) {
    MeanExpr expr = parse_mean(expr_text);
    try {
        std::cout << fd(eval(expr, x, y)) << "\n";
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;  // bad input values, same class as parse errors here
    }
    return kExitPass;
}

int cmd_order(const std::string& expr_text, const GridFlags& flags,
              const std::string& fmt, const std::string& out_path) {
    MeanExpr expr = parse_mean(expr_text);
    GridSpec grid = flags.resolve(expr);
    OutputSink sink(out_path);
    if (fmt == "csv") {
        sink.stream() << to_csv(sample_phi(expr, grid));
        return kExitPass;
    }
    OrderEstimate est = estimate_orders(expr, grid);
    PowerGrowthReport growth = classify_power_growth(expr, grid);
    if (fmt == "json") {
        json j{{"expression", format_mean(expr)},
               {"estimate", to_json(est)},
               {"growth", to_json(growth)},
               {"grid", to_json(grid)}};
        sink.stream() << j.dump(2) << "\n";
    } else {
        sink.stream() << "expression: " << format_mean(expr) << "\n";
        print_estimate_text(sink.stream(), est);
        print_growth_text(sink.stream(), growth);
    }
    return kExitPass;
}

int cmd_invariant(const std::string& m_text, const std::string& n_text,
                  double x, double y, double tol, int max_iter,
                  unsigned long long seed, const std::string& fmt,
                  const std::string& out_path) {
    MeanExpr M = parse_mean(m_text);
    MeanExpr N = parse_mean(n_text);
    IterationResult result = gauss_iterate(M, N, x, y, tol, max_iter);
    ContractionReport contraction = contraction_check(M, N, 256, seed);
    double residual = invariance_residual(invariant(M, N), M, N, 64, seed);
    OutputSink sink(out_path);
    if (fmt == "json") {
        json j{{"m", format_mean(M)},
               {"n", format_mean(N)},
               {"iteration", to_json(result)},
               {"contraction", to_json(contraction)},
               {"invariance_residual", residual}};
        sink.stream() << j.dump(2) << "\n";
    } else {
        sink.stream() << "value: " << fd(result.value) << "\n"
                      << "iterations: " << result.iterations << "\n"
                      << "final_gap: " << fd(result.final_gap) << "\n"
                      << "contraction_max_ratio: " << fd(contraction.max_ratio) << "\n"
                      << "invariance_residual: " << fd(residual) << "\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string& m_text, const std::string& n_text, double tol,
               const GridFlags& flags, const std::string& fmt,
               const std::string& out_path) {
    MeanExpr M = parse_mean(m_text);
    MeanExpr N = parse_mean(n_text);
    GridSpec grid = flags.resolve(invariant(M, N));
    VerificationReport report = verify_invariance_order(M, N, grid, tol);
    OutputSink sink(out_path);
    if (fmt == "json") {
        sink.stream() << to_json(report).dump(2) << "\n";
    } else {
        auto& os = sink.stream();
        os << "m: " << report.expr_m << "\n"
           << "n: " << report.expr_n << "\n"
           << "k: " << report.expr_k << "\n"
           << "mode: "
           << (report.mode == VerifyMode::Law
                   ? "law"
                   : report.mode == VerifyMode::Bounds ? "bounds" : "excluded-pair")
           << "\n";
        os << "k_lower: " << fd(report.estimate_k.lower)
           << "\nk_upper: " << fd(report.estimate_k.upper) << "\n";
        if (report.predicted) os << "predicted: " << fd(*report.predicted) << "\n";
        if (report.lower_bound) os << "lower_bound: " << fd(*report.lower_bound) << "\n";
        if (report.upper_bound) os << "upper_bound: " << fd(*report.upper_bound) << "\n";
        os << "contraction_max_ratio: " << fd(report.contraction.max_ratio) << "\n"
           << "ratio_sup: " << fd(report.ratio_sup) << "\n"
           << "margin: " << fd(report.margin) << "\n"
           << "pass: " << (report.pass ? "true" : "false") << "\n";
    }
    return report.pass ? kExitPass : kExitFail;
}

int cmd_gini_table(const std::vector<double>& ps, const std::vector<double>& qs,
                   double tol, const GridFlags& flags, const std::string& out_path) {
    OutputSink sink(out_path);
    auto& os = sink.stream();
    os << "p,q,closed_form,estimated_lower,estimated_upper,abs_error\n";
    bool ok = true;
    for (double p : ps) {
        for (double q : qs) {
            MeanExpr expr = gini(p, q);
            GridSpec grid = flags.resolve(expr);
            OrderEstimate est = estimate_orders(expr, grid);
            double closed = gini_order(p, q);
            double err = std::max(std::abs(est.lower - closed), std::abs(est.upper - closed));
            if (err > tol) ok = false;
            os << fd(p) << ',' << fd(q) << ',' << fd(closed) << ',' << fd(est.lower)
               << ',' << fd(est.upper) << ',' << fd(err) << "\n";
        }
    }
    return ok ? kExitPass : kExitFail;
}

int cmd_compare(double p, double q, double r, double s, const std::string& fmt,
                const std::string& out_path) {
    OutputSink sink(out_path);
    bool dl = dl_leq(p, q, r, s);
    bool pales = pales_leq(p, q, r, s);
    bool dl_rev = dl_leq(r, s, p, q);
    bool pales_rev = pales_leq(r, s, p, q);
    if (fmt == "json") {
        json j{{"p", p}, {"q", q}, {"r", r}, {"s", s},
               {"dl_leq", dl}, {"pales_leq", pales},
               {"dl_geq", dl_rev}, {"pales_geq", pales_rev},
               {"m_pq", pales_m(p, q)}, {"m_rs", pales_m(r, s)},
               {"mu_pq", pales_mu(p, q)}, {"mu_rs", pales_mu(r, s)}};
        sink.stream() << j.dump(2) << "\n";
    } else {
        auto& os = sink.stream();
        os << "dl_leq: " << (dl ? "true" : "false") << "\n"
           << "pales_leq: " << (pales ? "true" : "false") << "\n"
           << "dl_geq: " << (dl_rev ? "true" : "false") << "\n"
           << "pales_geq: " << (pales_rev ? "true" : "false") << "\n"
           << "m: " << fd(pales_m(p, q)) << " vs " << fd(pales_m(r, s)) << "\n"
           << "mu: " << fd(pales_mu(p, q)) << " vs " << fd(pales_mu(r, s)) << "\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for homogeneous symmetric bivariate means"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string fmt = "text";
    std::string out_path;
    unsigned long long seed = 0;
    app.add_option("--format", fmt, "Output format: text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--output", out_path, "Write output to a file instead of stdout");
    app.add_option("--seed", seed, "Seed for randomized sampling diagnostics");

    std::string expr_text, m_text, n_text;
    double x = 1.0, y = 1.0;
    double verify_tol = 0.02, table_tol = 0.01;
    double iter_tol = kGaussTol;
    int max_iter = kGaussMaxIter;
    std::vector<double> ps, qs;
    double cp = 0, cq = 0, cr = 0, cs = 0;

    auto* c_eval = app.add_subcommand("eval", "Evaluate a mean expression at (x, y)");
    c_eval->add_option("expr", expr_text)->required();
    c_eval->add_option("x", x)->required();
    c_eval->add_option("y", y)->required();

    auto* c_order = app.add_subcommand("order", "Estimate lower/upper orders and power growth");
    c_order->add_option("expr", expr_text)->required();
    GridFlags order_grid;
    order_grid.attach(c_order);

    auto* c_inv = app.add_subcommand("invariant", "Run the Gauss iteration at (x, y) with diagnostics");
    c_inv->add_option("m", m_text)->required();
    c_inv->add_option("n", n_text)->required();
    c_inv->add_option("x", x)->required();
    c_inv->add_option("y", y)->required();
    c_inv->add_option("--tol", iter_tol, "Relative-gap stopping tolerance");
    c_inv->add_option("--max-iter", max_iter, "Iteration cap");

    auto* c_verify = app.add_subcommand("verify", "Check the invariance-order prediction for a pair");
    c_verify->add_option("m", m_text)->required();
    c_verify->add_option("n", n_text)->required();
    c_verify->add_option("--tol", verify_tol, "Allowed |estimate - prediction|");
    GridFlags verify_grid;
    verify_grid.attach(c_verify);

    auto* c_table = app.add_subcommand("gini-table", "Estimated vs closed-form Gini orders as CSV");
    c_table->add_option("--p", ps, "p parameters")->required()->delimiter(',');
    c_table->add_option("--q", qs, "q parameters")->required()->delimiter(',');
    c_table->add_option("--tol", table_tol, "Allowed |estimate - closed form| per row");
    GridFlags table_grid;
    table_grid.attach(c_table);

    auto* c_compare = app.add_subcommand("compare", "Gini comparability verdicts for (p,q) vs (r,s)");
    c_compare->add_option("p", cp)->required();
    c_compare->add_option("q", cq)->required();
    c_compare->add_option("r", cr)->required();
    c_compare->add_option("s", cs)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (app.got_subcommand(c_eval)) return cmd_eval(expr_text, x, y);
        if (app.got_subcommand(c_order)) return cmd_order(expr_text, order_grid, fmt, out_path);
        if (app.got_subcommand(c_inv))
            return cmd_invariant(m_text, n_text, x, y, iter_tol, max_iter, seed, fmt, out_path);
        if (app.got_subcommand(c_verify))
            return cmd_verify(m_text, n_text, verify_tol, verify_grid, fmt, out_path);
        if (app.got_subcommand(c_table))
            return cmd_gini_table(ps, qs, table_tol, table_grid, out_path);
        if (app.got_subcommand(c_compare)) return cmd_compare(cp, cq, cr, cs, fmt, out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;  // evaluation rejected mid-run (e.g. envelope depth)
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    }
    return kExitPass;
}
