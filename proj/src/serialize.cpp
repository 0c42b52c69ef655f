#include "meanlab/serialize.hpp"

#include "meanlab/numfmt.hpp"

namespace meanlab {

json to_json(const GridSpec& grid) {
    return json{{"u_start", grid.u_start},
                {"u_end", grid.u_end},
                {"points", grid.points},
                {"windows", grid.windows},
                {"probes", grid.probes}};
}

json to_json(const IterationResult& result) {
    return json{{"value", result.value},
                {"iterations", result.iterations},
                {"final_gap", result.final_gap}};
}

json to_json(const ContractionReport& report) {
    return json{{"max_ratio", report.max_ratio},
                {"worst_point", {report.worst_x, report.worst_y}},
                {"sample_count", report.sample_count}};
}

json to_json(const OrderEstimate& estimate) {
    json windows = json::array();
    for (std::size_t i = 0; i < estimate.window_minima.size(); ++i) {
        windows.push_back(json{{"min", {{"u", estimate.window_minima[i].u},
                                        {"phi", estimate.window_minima[i].phi}}},
                               {"max", {{"u", estimate.window_maxima[i].u},
                                        {"phi", estimate.window_maxima[i].phi}}}});
    }
    return json{{"lower", estimate.lower},
                {"upper", estimate.upper},
                {"residuals", {{"lower", estimate.fit_residual_lower},
                               {"upper", estimate.fit_residual_upper}}},
                {"windows", std::move(windows)},
                {"raw", {{"lower", estimate.raw_lower}, {"upper", estimate.raw_upper}}},
                {"clamped", estimate.clamped_lower || estimate.clamped_upper ||
                                estimate.reordered}};
}

json to_json(const PowerGrowthReport& report) {
    json j{{"gpg", report.is_gpg},
           {"gpg_gap", report.gpg_gap},
           {"pg", report.is_pg},
           {"constant_spread", report.constant_spread}};
    j["order"] = report.order ? json(*report.order) : json(nullptr);
    j["constant"] = report.constant ? json(*report.constant) : json(nullptr);
    return j;
}

json to_json(const VerificationReport& report) {
    const char* mode = report.mode == VerifyMode::Law
                           ? "law"
                           : (report.mode == VerifyMode::Bounds ? "bounds" : "excluded-pair");
    json j{{"m", report.expr_m},
           {"n", report.expr_n},
           {"k", report.expr_k},
           {"mode", mode},
           {"estimates", {{"m", to_json(report.estimate_m)},
                          {"n", to_json(report.estimate_n)},
                          {"k", to_json(report.estimate_k)}}},
           {"growth", {{"m", to_json(report.growth_m)}, {"n", to_json(report.growth_n)}}}};
    j["predicted"] = report.predicted ? json(*report.predicted) : json(nullptr);
    j["lower_bound"] = report.lower_bound ? json(*report.lower_bound) : json(nullptr);
    j["upper_bound"] = report.upper_bound ? json(*report.upper_bound) : json(nullptr);
    j["witkowski_value"] =
        report.witkowski_value ? json(*report.witkowski_value) : json(nullptr);
    j["pass"] = report.pass;
    j["margin"] = report.margin;
    j["tol"] = report.tol;
    j["grid"] = to_json(report.grid);
    j["contraction"] = to_json(report.contraction);
    j["ratio_sup"] = report.ratio_sup;
    return j;
}

std::string to_csv(const std::vector<PhiSample>& samples) {
    std::string out = "u,phi\n";
    for (const auto& s : samples) {
        out += format_double(s.u);
        out += ',';
        out += format_double(s.phi);
        out += '\n';
    }
    return out;
}

}  // namespace meanlab
