#pragma once

#include <array>
#include <cstdint>

#include <sodium.h>

#include "tanglesim/pow.hpp"
#include "tanglesim/tangle.hpp"
#include "tanglesim/tipselect.hpp"

namespace tanglesim {

/// Milestone issuance cadence and the key that authenticates milestones.
struct milestone_policy {
    std::uint64_t interval_ms = 60'000;
    std::array<std::uint8_t, 32> authority_key{};
    int walk_retries = 10;
};

namespace detail {

inline std::array<std::uint8_t, 32> milestone_tag(const transaction& tx,
                                                  const std::array<std::uint8_t, 32>& key) {
    ensure_sodium();
    static_assert(crypto_auth_BYTES == 32 && crypto_auth_KEYBYTES == 32);
    const auto msg = authenticated_bytes(tx);
    std::array<std::uint8_t, 32> tag{};
    crypto_auth(tag.data(), msg.data(), msg.size(), key.data());
    return tag;
}

} // namespace detail

/// True iff the milestone flag is set and the authentication tag carried in
/// the payload verifies under the authority key.
inline bool verify_milestone(const transaction& tx, const milestone_policy& policy) {
    if (!tx.is_milestone) return false;
    std::vector<std::uint8_t> tag;
    try {
        tag = trytes_to_bytes(tx.payload);
    } catch (const tangle_error&) {
        return false;
    }
    if (tag.size() != crypto_auth_BYTES) return false;
    detail::ensure_sodium();
    const auto msg = authenticated_bytes(tx);
    return crypto_auth_verify(tag.data(), msg.data(), msg.size(),
                              policy.authority_key.data()) == 0;
}

/// Elects a tip, checks that confirming its past cone keeps every balance
/// non-negative, and appends an authenticated milestone approving
/// (previous milestone, elected tip). Tips whose cone would complete a
/// double spend are rejected and the walk retried; after the retry budget
/// the milestone falls back to approving the previous milestone twice, so
/// a conflicting cone can never be confirmed.
inline transaction issue_milestone(tangle& graph, const milestone_policy& policy,
                                   const walk_config& walk_cfg, const pow_config& pow_cfg,
                                   std::uint64_t now_ms) {
    const auto previous = graph.latest_milestone();
    if (previous) {
        const std::uint64_t prev_ts = graph.get(*previous).timestamp_ms;
        if (now_ms < prev_ts + policy.interval_ms)
            throw interval_not_elapsed_error("previous milestone at " + std::to_string(prev_ts) +
                                             " ms, interval " + std::to_string(policy.interval_ms) +
                                             " ms");
    }

    const tx_hash trunk = previous ? *previous : graph.genesis_hash();
    const auto confirmed = graph.past_cone(trunk);

    tx_hash branch = trunk; // fallback: approve the previous milestone twice
    for (int attempt = 0; attempt < policy.walk_retries; ++attempt) {
        walk_config wc = walk_cfg;
        wc.rng_seed = derive_seed(walk_cfg.rng_seed, 0x7000 + static_cast<std::uint64_t>(attempt));
        const tx_hash candidate = walk(graph, wc);
        std::set<tx_hash> combined = graph.past_cone(candidate);
        combined.insert(confirmed.begin(), confirmed.end());
        if (!graph.ledger_over(combined).has_negative()) {
            branch = candidate;
            break;
        }
    }

    transaction tx;
    tx.trunk = trunk;
    tx.branch = branch;
    tx.address = account_from_bytes(policy.authority_key);
    tx.timestamp_ms = now_ms;
    tx.bundle.id = graph.milestones().size() + 1;
    tx.is_milestone = true;
    tx.payload = bytes_to_trytes(detail::milestone_tag(tx, policy.authority_key));

    const std::uint64_t pow_seed =
        derive_seed(walk_cfg.rng_seed, 0x9000 + graph.milestones().size());
    transaction solved = solve(std::move(tx), pow_cfg, pow_seed).tx;
    graph.append(solved);
    return solved;
}

} // namespace tanglesim
