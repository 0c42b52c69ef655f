#include "meanlab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "meanlab/eval.hpp"

namespace meanlab {

void GridSpec::validate() const {
    if (!(u_end < u_start && u_start < 0.0))
        throw std::invalid_argument("grid needs u_end < u_start < 0");
    if (windows < 2)
        throw std::invalid_argument("grid needs at least 2 windows");
    if (points < 2 * windows)
        throw std::invalid_argument("grid needs points >= 2*windows");
    if (probes < 0)
        throw std::invalid_argument("probe count cannot be negative");
}

std::vector<double> GridSpec::sample_points() const {
    validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    double lo = -u_start, hi = -u_end;
    for (int i = 0; i < points; ++i) {
        double frac = double(i) / (points - 1);
        out.push_back(-(lo * std::pow(hi / lo, frac)));
    }
    return out;
}

GridSpec GridSpec::defaults_for(const MeanExpr& expr) {
    return GridSpec{}.capped_for(expr);
}

GridSpec GridSpec::capped_for(const MeanExpr& expr) const {
    GridSpec g = *this;
    if (contains_envelope(expr) && g.u_end < kEnvelopeLogFloor)
        g.u_end = kEnvelopeLogFloor;
    return g;
}

}  // namespace meanlab
