#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "meanlab/expr.hpp"
#include "meanlab/order.hpp"

namespace testutil {

using meanlab::MeanExpr;

// Any expression the grammar can denote; used for parser round-trips.
inline MeanExpr random_grammar_ast(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> leaf(0, 9);
    std::uniform_real_distribution<double> param(-3.0, 3.0);
    std::uniform_int_distribution<int> combinator(0, 3);

    if (depth <= 0 || combinator(rng) == 0) {
        switch (leaf(rng)) {
            case 0: return meanlab::arithmetic_mean();
            case 1: return meanlab::geometric_mean();
            case 2: return meanlab::harmonic_mean();
            case 3: return meanlab::rms_mean();
            case 4: return meanlab::min_mean();
            case 5: return meanlab::max_mean();
            case 6: return meanlab::log_mean();
            case 7: return meanlab::envelope(meanlab::EnvelopeKind::E1);
            case 8: return meanlab::envelope(meanlab::EnvelopeKind::E2);
            default: return meanlab::gini(param(rng), param(rng));
        }
    }
    if (combinator(rng) < 2) {
        return meanlab::compose(random_grammar_ast(rng, depth - 1),
                                random_grammar_ast(rng, depth - 1),
                                random_grammar_ast(rng, depth - 1));
    }
    return meanlab::invariant(random_grammar_ast(rng, depth - 1),
                              random_grammar_ast(rng, depth - 1));
}

// Leaves whose pairwise Gauss iterations contract at a usable rate:
// Gini means with min <= 0 <= max (no exponentially min/max-pinned
// diagonal cases) and the logarithmic mean.
inline MeanExpr random_contracting_leaf(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 6);
    std::uniform_real_distribution<double> pos(0.0, 2.0);
    switch (kind(rng)) {
        case 0: return meanlab::arithmetic_mean();
        case 1: return meanlab::geometric_mean();
        case 2: return meanlab::harmonic_mean();
        case 3: return meanlab::rms_mean();
        case 4: return meanlab::log_mean();
        default: return meanlab::gini(pos(rng), -pos(rng));
    }
}

// The log-coordinate gap of a Gauss iteration closes by roughly a factor
// of |order(M) - order(N)| per step, so operand pairs whose orders differ
// by almost 1 blow the default iteration cap on deep grids. Pool leaves
// all have closed-form orders; keep the gap away from 1.
inline std::pair<MeanExpr, MeanExpr> random_iterable_pair(std::mt19937_64& rng) {
    MeanExpr a = random_contracting_leaf(rng);
    for (int tries = 0; tries < 64; ++tries) {
        MeanExpr b = random_contracting_leaf(rng);
        double oa = *meanlab::known_order(a);
        double ob = *meanlab::known_order(b);
        if (std::abs(oa - ob) <= 0.75) return {a, b};
    }
    return {a, a};
}

// Evaluable expressions for property suites: envelopes and min/max appear
// only outside invariant operands, which draw from the contracting pool.
inline MeanExpr random_safe_ast(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> shape(0, 5);
    int s = depth <= 0 ? 0 : shape(rng);
    if (s <= 2) {
        std::uniform_int_distribution<int> leaf(0, 8);
        switch (leaf(rng)) {
            case 0: return meanlab::min_mean();
            case 1: return meanlab::max_mean();
            case 2: return meanlab::envelope(meanlab::EnvelopeKind::E1);
            case 3: return meanlab::envelope(meanlab::EnvelopeKind::E2);
            default: return random_contracting_leaf(rng);
        }
    }
    if (s <= 4) {
        return meanlab::compose(random_safe_ast(rng, depth - 1),
                                random_safe_ast(rng, depth - 1),
                                random_safe_ast(rng, depth - 1));
    }
    auto [a, b] = random_iterable_pair(rng);
    return meanlab::invariant(std::move(a), std::move(b));
}

inline std::vector<MeanExpr> builtin_means() {
    using namespace meanlab;
    return {arithmetic_mean(), geometric_mean(), harmonic_mean(), rms_mean(),
            min_mean(),        max_mean(),       log_mean(),
            envelope(EnvelopeKind::E1),          envelope(EnvelopeKind::E2),
            gini(3.0, -1.0),   gini(0.5, 0.5),   gini(-2.0, -1.0)};
}

}  // namespace testutil
