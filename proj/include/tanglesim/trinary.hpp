#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tanglesim/errors.hpp"

namespace tanglesim {

/// The 27-symbol tryte alphabet; '9' plays the role of zero.
inline constexpr std::string_view tryte_alphabet = "9ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Payload capacity of a single transaction, in trytes.
inline constexpr std::size_t max_payload_trytes = 2187;

/// Index of a character in the tryte alphabet, or -1 if it is not a tryte.
inline int tryte_index(char c) {
    if (c == '9') return 0;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 1;
    return -1;
}

/// Validated sequence over the tryte alphabet.
class tryte_string {
public:
    tryte_string() = default;

    explicit tryte_string(std::string chars) : chars_(std::move(chars)) {
        for (char c : chars_)
            if (tryte_index(c) < 0)
                throw invalid_tryte_error(std::string("character '") + c + "' is not a tryte");
    }

    std::size_t size() const { return chars_.size(); }
    bool empty() const { return chars_.empty(); }
    const std::string& str() const { return chars_; }

    tryte_string substr(std::size_t pos, std::size_t len) const {
        tryte_string out;
        out.chars_ = chars_.substr(pos, len);
        return out;
    }

    friend tryte_string operator+(const tryte_string& a, const tryte_string& b) {
        tryte_string out;
        out.chars_ = a.chars_ + b.chars_;
        return out;
    }

    bool operator==(const tryte_string&) const = default;

private:
    std::string chars_;
};

/// One transaction-sized piece of a segmented payload.
struct payload_chunk {
    tryte_string data;
    std::size_t index = 0;
    std::size_t total = 1;
};

/// Each byte b maps to the tryte pair (b mod 27, b div 27).
inline tryte_string bytes_to_trytes(std::span<const std::uint8_t> input) {
    std::string out;
    out.reserve(input.size() * 2);
    for (std::uint8_t b : input) {
        out.push_back(tryte_alphabet[b % 27]);
        out.push_back(tryte_alphabet[b / 27]);
    }
    return tryte_string(std::move(out));
}

/// Exact inverse of bytes_to_trytes.
inline std::vector<std::uint8_t> trytes_to_bytes(const tryte_string& input) {
    const std::string& s = input.str();
    if (s.size() % 2 != 0)
        throw odd_length_error("tryte string of length " + std::to_string(s.size()) +
                               " cannot encode whole bytes");
    std::vector<std::uint8_t> out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2) {
        const int value = tryte_index(s[i]) + 27 * tryte_index(s[i + 1]);
        if (value > 255)
            throw value_out_of_range_error("tryte pair \"" + s.substr(i, 2) +
                                           "\" decodes to " + std::to_string(value));
        out.push_back(static_cast<std::uint8_t>(value));
    }
    return out;
}

/// Splits content into transaction-sized chunks; empty content still yields
/// one (empty) chunk so every message maps to at least one transaction.
inline std::vector<payload_chunk> segment_payload(const tryte_string& content) {
    const std::size_t len = content.size();
    const std::size_t total = len == 0 ? 1 : (len + max_payload_trytes - 1) / max_payload_trytes;
    std::vector<payload_chunk> chunks;
    chunks.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        payload_chunk c;
        c.data = content.substr(i * max_payload_trytes, max_payload_trytes);
        c.index = i;
        c.total = total;
        chunks.push_back(std::move(c));
    }
    return chunks;
}

/// Reassembles chunk data in index order.
inline tryte_string join_chunks(const std::vector<payload_chunk>& chunks) {
    tryte_string out;
    for (const auto& c : chunks) out = out + c.data;
    return out;
}

} // namespace tanglesim
