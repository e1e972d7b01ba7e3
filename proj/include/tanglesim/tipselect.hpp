#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "tanglesim/rng.hpp"
#include "tanglesim/tangle.hpp"

namespace tanglesim {

enum class walk_start { genesis, latest_milestone };

/// Parameters of the weighted random walk. alpha = 0 walks uniformly; larger
/// alpha biases each step towards approvers with larger cumulative weight.
struct walk_config {
    double alpha = 0.001;
    walk_start start = walk_start::latest_milestone;
    std::uint64_t rng_seed = 0;
};

/// Monte Carlo walk from the start transaction towards the tips. At each
/// step the next transaction y is drawn from the direct approvers of the
/// current one with probability proportional to exp(alpha * (W(y) - Wmax)),
/// where W is cumulative weight and Wmax the largest weight among the
/// approvers (the shift keeps the exponentials in range).
inline tx_hash walk(const tangle& graph, const walk_config& cfg) {
    if (graph.size() == 0) throw empty_graph_error("cannot walk an empty graph");
    if (cfg.alpha < 0) throw config_error("alpha must be non-negative");

    tx_hash current = graph.genesis_hash();
    if (cfg.start == walk_start::latest_milestone)
        if (const auto m = graph.latest_milestone()) current = *m;

    const auto weights = graph.cumulative_weights_all();
    seeded_rng rng(cfg.rng_seed);

    std::vector<tx_hash> next;
    std::vector<double> probs;
    while (true) {
        const auto& approvers = graph.approvers_of(current);
        if (approvers.empty()) return current;

        next.assign(approvers.begin(), approvers.end());
        double wmax = 0;
        for (const auto& h : next) wmax = std::max(wmax, static_cast<double>(weights.at(h)));
        probs.clear();
        for (const auto& h : next)
            probs.push_back(std::exp(cfg.alpha * (static_cast<double>(weights.at(h)) - wmax)));
        current = next[rng.pick_weighted(probs)];
    }
}

/// Two independent walks with derived sub-seeds; the results may coincide.
inline std::pair<tx_hash, tx_hash> select_two_tips(const tangle& graph, const walk_config& cfg) {
    walk_config first = cfg;
    first.rng_seed = derive_seed(cfg.rng_seed, 1);
    walk_config second = cfg;
    second.rng_seed = derive_seed(cfg.rng_seed, 2);
    return {walk(graph, first), walk(graph, second)};
}

} // namespace tanglesim
