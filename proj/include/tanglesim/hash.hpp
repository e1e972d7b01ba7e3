#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <sodium.h>

#include "tanglesim/errors.hpp"

namespace tanglesim {

namespace detail {

inline void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw tangle_error("libsodium initialization failed");
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace detail

/// 32-byte opaque identifier. The tag keeps transaction hashes and account
/// ids from being mixed up at compile time.
template <class Tag>
struct opaque32 {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const opaque32&) const = default;

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(64, '0');
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            out[2 * i] = digits[bytes[i] >> 4];
            out[2 * i + 1] = digits[bytes[i] & 0x0f];
        }
        return out;
    }

    static opaque32 from_hex(std::string_view hex) {
        if (hex.size() != 64)
            throw config_error("expected 64 hex characters, got " + std::to_string(hex.size()));
        opaque32 out;
        for (std::size_t i = 0; i < out.bytes.size(); ++i) {
            const int hi = detail::hex_nibble(hex[2 * i]);
            const int lo = detail::hex_nibble(hex[2 * i + 1]);
            if (hi < 0 || lo < 0) throw config_error("invalid hex character");
            out.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
        }
        return out;
    }
};

using tx_hash = opaque32<struct tx_hash_tag>;
using account_id = opaque32<struct account_id_tag>;

inline std::array<std::uint8_t, 32> sha256_bytes(std::span<const std::uint8_t> data) {
    detail::ensure_sodium();
    std::array<std::uint8_t, 32> out{};
    static const std::uint8_t empty = 0;
    crypto_hash_sha256(out.data(), data.empty() ? &empty : data.data(), data.size());
    return out;
}

/// Account id derived from an arbitrary byte string (e.g. a key or a label).
inline account_id account_from_bytes(std::span<const std::uint8_t> data) {
    return account_id{sha256_bytes(data)};
}

inline account_id account_from_label(std::string_view label) {
    return account_from_bytes(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
}

/// Number of leading zero bits in a 256-bit digest.
template <class Tag>
int leading_zero_bits(const opaque32<Tag>& d) {
    int bits = 0;
    for (std::uint8_t b : d.bytes) {
        if (b == 0) {
            bits += 8;
            continue;
        }
        bits += std::countl_zero(b);
        break;
    }
    return bits;
}

} // namespace tanglesim
