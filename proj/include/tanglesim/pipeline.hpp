#pragma once

#include <cstdint>
#include <vector>

#include "tanglesim/pow.hpp"
#include "tanglesim/tangle.hpp"
#include "tanglesim/tipselect.hpp"
#include "tanglesim/trinary.hpp"

namespace tanglesim {

/// Outcome of attaching one transaction: its hash plus the proof-of-work
/// cost, which the benchmark harness turns into the attach-stage duration.
struct chunk_attach {
    tx_hash hash;
    std::uint64_t pow_attempts = 0;
    double pow_wall_ms = 0.0;
};

struct attach_result {
    std::vector<chunk_attach> chunks;

    std::vector<tx_hash> hashes() const {
        std::vector<tx_hash> out;
        out.reserve(chunks.size());
        for (const auto& c : chunks) out.push_back(c.hash);
        return out;
    }
};

/// Segments the content and runs the full tip-selection / proof-of-work /
/// append pipeline for each chunk.
inline attach_result attach_payload(tangle& graph, const tryte_string& content,
                                    const account_id& address, const walk_config& walk_cfg,
                                    const pow_config& pow_cfg, std::uint64_t timestamp_ms,
                                    std::uint64_t bundle_id) {
    attach_result out;
    const auto chunks = segment_payload(content);
    for (const auto& chunk : chunks) {
        walk_config wc = walk_cfg;
        wc.rng_seed = derive_seed(walk_cfg.rng_seed, 0x100 + chunk.index);
        const auto [trunk, branch] = select_two_tips(graph, wc);

        transaction tx;
        tx.trunk = trunk;
        tx.branch = branch;
        tx.payload = chunk.data;
        tx.address = address;
        tx.timestamp_ms = timestamp_ms;
        tx.bundle = {bundle_id, static_cast<std::uint32_t>(chunk.index),
                     static_cast<std::uint32_t>(chunk.total)};

        auto solved = solve(std::move(tx), pow_cfg, derive_seed(walk_cfg.rng_seed, 0x200 + chunk.index));
        graph.append(solved.tx);
        out.chunks.push_back({solved.tx.hash, solved.attempts, solved.wall_ms});
    }
    return out;
}

struct transfer_result {
    chunk_attach spend;   // bundle index 0, value -amount at the sender
    chunk_attach deposit; // bundle index 1, value +amount at the receiver
};

/// Attaches a two-transaction value bundle. The deposit approves the spend
/// through its trunk, so any cone that confirms the deposit also confirms
/// the spend.
inline transfer_result attach_transfer(tangle& graph, const account_id& from,
                                       const account_id& to, std::int64_t amount,
                                       const walk_config& walk_cfg, const pow_config& pow_cfg,
                                       std::uint64_t timestamp_ms, std::uint64_t bundle_id) {
    transfer_result out;

    walk_config wc = walk_cfg;
    wc.rng_seed = derive_seed(walk_cfg.rng_seed, 0x300);
    const auto [trunk, branch] = select_two_tips(graph, wc);

    transaction spend;
    spend.trunk = trunk;
    spend.branch = branch;
    spend.address = from;
    spend.value = -amount;
    spend.timestamp_ms = timestamp_ms;
    spend.bundle = {bundle_id, 0, 2};
    auto solved_spend = solve(std::move(spend), pow_cfg, derive_seed(walk_cfg.rng_seed, 0x400));
    graph.append(solved_spend.tx);
    out.spend = {solved_spend.tx.hash, solved_spend.attempts, solved_spend.wall_ms};

    walk_config wc2 = walk_cfg;
    wc2.rng_seed = derive_seed(walk_cfg.rng_seed, 0x301);
    const tx_hash side = walk(graph, wc2);

    transaction deposit;
    deposit.trunk = solved_spend.tx.hash;
    deposit.branch = side;
    deposit.address = to;
    deposit.value = amount;
    deposit.timestamp_ms = timestamp_ms;
    deposit.bundle = {bundle_id, 1, 2};
    auto solved_deposit = solve(std::move(deposit), pow_cfg, derive_seed(walk_cfg.rng_seed, 0x401));
    graph.append(solved_deposit.tx);
    out.deposit = {solved_deposit.tx.hash, solved_deposit.attempts, solved_deposit.wall_ms};

    return out;
}

} // namespace tanglesim
