#pragma once

#include <chrono>
#include <cstdint>

#include "tanglesim/errors.hpp"
#include "tanglesim/rng.hpp"
#include "tanglesim/transaction.hpp"

namespace tanglesim {

/// Binary leading-zero-bit target over the transaction hash. "accelerated"
/// does not change the search; it tells the simulator to charge a fixed
/// 300 ms for the attach stage instead of the measured or modeled time.
struct pow_config {
    int difficulty_bits = 14;
    bool accelerated = false;
};

inline constexpr double accelerated_pow_ms = 300.0;

struct solve_result {
    transaction tx;
    std::uint64_t attempts = 0;
    double wall_ms = 0.0;
};

inline void validate(const pow_config& cfg) {
    if (cfg.difficulty_bits < 0 || cfg.difficulty_bits > 32)
        throw config_error("difficulty_bits must be in [0, 32], got " +
                           std::to_string(cfg.difficulty_bits));
}

/// Finds a nonce whose hash meets the difficulty. The search starts at a
/// seeded pseudorandom nonce and probes linearly, so it is deterministic.
inline solve_result solve(transaction tx, const pow_config& cfg, std::uint64_t seed) {
    validate(cfg);
    tx.hash = tx_hash{};
    const std::uint64_t start = splitmix64(seed);

    const auto t0 = std::chrono::steady_clock::now();
    solve_result out;
    for (std::uint64_t k = 0;; ++k) {
        tx.nonce = start + k;
        const tx_hash h = compute_tx_hash(tx);
        ++out.attempts;
        if (leading_zero_bits(h) >= cfg.difficulty_bits) {
            tx.hash = h;
            break;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    out.tx = std::move(tx);
    out.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

/// Pure check: the hash recomputed from the transaction bytes has at least
/// difficulty_bits leading zero bits.
inline bool verify(const transaction& tx, const pow_config& cfg) {
    validate(cfg);
    return leading_zero_bits(compute_tx_hash(tx)) >= cfg.difficulty_bits;
}

} // namespace tanglesim
