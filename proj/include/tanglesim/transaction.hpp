#pragma once

#include <cstdint>
#include <vector>

#include "tanglesim/hash.hpp"
#include "tanglesim/trinary.hpp"

namespace tanglesim {

/// Groups the transactions of one logical message or transfer.
struct bundle_ref {
    std::uint64_t id = 0;
    std::uint32_t index = 0;
    std::uint32_t total = 1;

    auto operator<=>(const bundle_ref&) const = default;
};

/// A node of the tangle. trunk and branch are the two approved parents.
struct transaction {
    tx_hash hash;
    tx_hash trunk;
    tx_hash branch;
    tryte_string payload;
    account_id address;
    std::int64_t value = 0;
    std::uint64_t timestamp_ms = 0;
    std::uint64_t nonce = 0;
    bundle_ref bundle;
    bool is_milestone = false;

    bool operator==(const transaction&) const = default;
};

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_digest(std::vector<std::uint8_t>& out, const std::array<std::uint8_t, 32>& d) {
    out.insert(out.end(), d.begin(), d.end());
}

/// The genesis transaction references itself; its parent links hash as zero
/// so the self-referential hash is well defined.
inline bool is_self_referential(const transaction& tx) {
    return !tx.hash.is_zero() && tx.trunk == tx.hash && tx.branch == tx.hash;
}

} // namespace detail

/// Canonical little-endian serialization. The nonce goes last.
inline std::vector<std::uint8_t> canonical_bytes(const transaction& tx) {
    static constexpr std::array<std::uint8_t, 32> zero{};
    const bool self_ref = detail::is_self_referential(tx);

    std::vector<std::uint8_t> out;
    out.reserve(32 * 3 + 8 * 4 + 4 * 3 + 1 + tx.payload.size());
    detail::put_digest(out, self_ref ? zero : tx.trunk.bytes);
    detail::put_digest(out, self_ref ? zero : tx.branch.bytes);
    detail::put_digest(out, tx.address.bytes);
    detail::put_u64(out, static_cast<std::uint64_t>(tx.value));
    detail::put_u64(out, tx.timestamp_ms);
    detail::put_u64(out, tx.bundle.id);
    detail::put_u32(out, tx.bundle.index);
    detail::put_u32(out, tx.bundle.total);
    out.push_back(tx.is_milestone ? 1 : 0);
    detail::put_u32(out, static_cast<std::uint32_t>(tx.payload.size()));
    const std::string& chars = tx.payload.str();
    out.insert(out.end(), chars.begin(), chars.end());
    detail::put_u64(out, tx.nonce);
    return out;
}

inline tx_hash compute_tx_hash(const transaction& tx) {
    return tx_hash{sha256_bytes(canonical_bytes(tx))};
}

inline transaction with_computed_hash(transaction tx) {
    tx.hash = tx_hash{};
    tx.hash = compute_tx_hash(tx);
    return tx;
}

/// Bytes covered by the milestone authentication tag: every field except the
/// payload (which carries the tag itself), the nonce and the hash.
inline std::vector<std::uint8_t> authenticated_bytes(const transaction& tx) {
    static constexpr std::array<std::uint8_t, 32> zero{};
    const bool self_ref = detail::is_self_referential(tx);

    std::vector<std::uint8_t> out;
    out.reserve(32 * 3 + 8 * 3 + 4 * 2 + 1);
    detail::put_digest(out, self_ref ? zero : tx.trunk.bytes);
    detail::put_digest(out, self_ref ? zero : tx.branch.bytes);
    detail::put_digest(out, tx.address.bytes);
    detail::put_u64(out, static_cast<std::uint64_t>(tx.value));
    detail::put_u64(out, tx.timestamp_ms);
    detail::put_u64(out, tx.bundle.id);
    detail::put_u32(out, tx.bundle.index);
    detail::put_u32(out, tx.bundle.total);
    out.push_back(tx.is_milestone ? 1 : 0);
    return out;
}

} // namespace tanglesim
