#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <sodium.h>

#include "tanglesim/pipeline.hpp"

namespace tanglesim {

namespace detail {

inline std::array<std::uint8_t, 12> mam_nonce(std::uint64_t index) {
    std::array<std::uint8_t, 12> nonce{};
    for (int i = 0; i < 8; ++i)
        nonce[4 + i] = static_cast<std::uint8_t>(index >> (8 * (7 - i))); // big-endian
    return nonce;
}

} // namespace detail

/// Address of message `index` on the channel: hash(key || index), with the
/// index appended as 8 big-endian bytes.
inline account_id mam_address(const std::array<std::uint8_t, 32>& key, std::uint64_t index) {
    std::vector<std::uint8_t> buf(key.begin(), key.end());
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<std::uint8_t>(index >> (8 * (7 - i))));
    return account_from_bytes(buf);
}

/// Keyed message stream. Only holders of the channel key can derive message
/// addresses or decrypt payloads; the index makes every message land at a
/// fresh address with a fresh nonce.
class mam_channel {
public:
    explicit mam_channel(std::array<std::uint8_t, 32> key, std::uint64_t next_index = 0)
        : key_(key), next_index_(next_index) {}

    static mam_channel from_hex(std::string_view hex64, std::uint64_t next_index = 0) {
        const auto id = account_id::from_hex(hex64); // reuse 32-byte hex parsing
        std::array<std::uint8_t, 32> key = id.bytes;
        return mam_channel(key, next_index);
    }

    const std::array<std::uint8_t, 32>& key() const { return key_; }
    std::uint64_t next_index() const { return next_index_; }
    account_id channel_id() const { return account_from_bytes(key_); }

    struct encoded {
        account_id address;
        tryte_string payload;
        std::uint64_t index = 0;
    };

    /// Encrypts and authenticates the plaintext under (key, index), returns
    /// the derived address and the tryte payload, and advances the index.
    encoded encode(std::span<const std::uint8_t> plaintext) {
        detail::ensure_sodium();
        static_assert(crypto_aead_chacha20poly1305_ietf_KEYBYTES == 32);

        const std::uint64_t index = next_index_++;
        const auto nonce = detail::mam_nonce(index);
        std::vector<std::uint8_t> cipher(plaintext.size() +
                                         crypto_aead_chacha20poly1305_ietf_ABYTES);
        unsigned long long cipher_len = 0;
        static const std::uint8_t empty = 0;
        crypto_aead_chacha20poly1305_ietf_encrypt(
            cipher.data(), &cipher_len, plaintext.empty() ? &empty : plaintext.data(),
            plaintext.size(), nullptr, 0, nullptr, nonce.data(), key_.data());
        cipher.resize(cipher_len);

        return {mam_address(key_, index), bytes_to_trytes(cipher), index};
    }

private:
    std::array<std::uint8_t, 32> key_;
    std::uint64_t next_index_ = 0;
};

/// Encodes the plaintext and attaches each payload chunk through the full
/// tip-selection / proof-of-work / append pipeline. Returns the transaction
/// hashes in chunk order.
inline std::vector<tx_hash> mam_publish(tangle& graph, mam_channel& channel,
                                        std::span<const std::uint8_t> plaintext,
                                        const walk_config& walk_cfg, const pow_config& pow_cfg,
                                        std::uint64_t timestamp_ms) {
    const auto msg = channel.encode(plaintext);
    std::uint64_t bundle_id = 0;
    for (int i = 0; i < 8; ++i) bundle_id = (bundle_id << 8) | msg.address.bytes[i];
    walk_config wc = walk_cfg;
    wc.rng_seed = derive_seed(walk_cfg.rng_seed, msg.index);
    return attach_payload(graph, msg.payload, msg.address, wc, pow_cfg, timestamp_ms, bundle_id)
        .hashes();
}

/// Locates the transactions at the derived address, reassembles the chunks
/// in bundle order and decrypts. Tampered or foreign payloads fail the
/// authentication tag.
inline std::vector<std::uint8_t> mam_fetch(const tangle& graph,
                                           const std::array<std::uint8_t, 32>& key,
                                           std::uint64_t index) {
    const account_id address = mam_address(key, index);
    const auto txs = graph.find_by_address(address);
    if (txs.empty())
        throw not_found_error("no transactions at the address of message " + std::to_string(index));

    tryte_string payload;
    for (const auto& tx : txs) payload = payload + tx.payload;

    std::vector<std::uint8_t> cipher;
    try {
        cipher = trytes_to_bytes(payload);
    } catch (const tangle_error&) {
        throw auth_failure_error("stored payload is not a valid tryte encoding");
    }
    if (cipher.size() < crypto_aead_chacha20poly1305_ietf_ABYTES)
        throw auth_failure_error("stored payload is shorter than the authentication tag");

    detail::ensure_sodium();
    const auto nonce = detail::mam_nonce(index);
    std::vector<std::uint8_t> plain(cipher.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
    unsigned long long plain_len = 0;
    static std::uint8_t sink = 0;
    const int rc = crypto_aead_chacha20poly1305_ietf_decrypt(
        plain.empty() ? &sink : plain.data(), &plain_len, nullptr, cipher.data(), cipher.size(),
        nullptr, 0, nonce.data(), key.data());
    if (rc != 0) throw auth_failure_error("authentication tag mismatch");
    plain.resize(plain_len);
    return plain;
}

} // namespace tanglesim
