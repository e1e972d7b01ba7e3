#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "tanglesim/tangle.hpp"

namespace tanglesim {

namespace detail {

inline nlohmann::json tx_to_json(const transaction& tx) {
    return nlohmann::json{
        {"hash", tx.hash.hex()},
        {"trunk", tx.trunk.hex()},
        {"branch", tx.branch.hex()},
        {"payload", tx.payload.str()},
        {"address", tx.address.hex()},
        {"value", tx.value},
        {"timestamp", tx.timestamp_ms},
        {"nonce", tx.nonce},
        {"bundle", {{"id", tx.bundle.id}, {"index", tx.bundle.index}, {"total", tx.bundle.total}}},
        {"is_milestone", tx.is_milestone},
    };
}

inline transaction tx_from_json(const nlohmann::json& j) {
    transaction tx;
    tx.hash = tx_hash::from_hex(j.at("hash").get<std::string>());
    tx.trunk = tx_hash::from_hex(j.at("trunk").get<std::string>());
    tx.branch = tx_hash::from_hex(j.at("branch").get<std::string>());
    tx.payload = tryte_string(j.at("payload").get<std::string>());
    tx.address = account_id::from_hex(j.at("address").get<std::string>());
    tx.value = j.at("value").get<std::int64_t>();
    tx.timestamp_ms = j.at("timestamp").get<std::uint64_t>();
    tx.nonce = j.at("nonce").get<std::uint64_t>();
    const auto& b = j.at("bundle");
    tx.bundle.id = b.at("id").get<std::uint64_t>();
    tx.bundle.index = b.at("index").get<std::uint32_t>();
    tx.bundle.total = b.at("total").get<std::uint32_t>();
    tx.is_milestone = j.at("is_milestone").get<bool>();
    return tx;
}

} // namespace detail

/// Writes one transaction per line as JSON, in topological order (ties broken
/// by hash) so equal graphs always serialize to identical bytes.
inline void export_snapshot(const tangle& graph, std::ostream& out) {
    for (const auto& h : graph.topological_order())
        out << detail::tx_to_json(graph.get(h)).dump() << '\n';
    if (!out) throw io_error("failed writing snapshot stream");
}

inline void export_snapshot(const tangle& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    export_snapshot(graph, out);
}

/// Reads a snapshot back. With verify on, every hash must match its
/// serialization and satisfy the difficulty; with verify off the lines are
/// restored exactly as stored (used to inspect possibly damaged snapshots).
inline tangle import_snapshot(std::istream& in, int difficulty_bits, bool verify = true) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<tangle> graph;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        transaction tx;
        try {
            tx = detail::tx_from_json(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw io_error("snapshot line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!graph) {
            graph.emplace(tangle::restore(tx, difficulty_bits, verify));
            continue;
        }
        if (verify)
            graph->append(tx);
        else
            graph->append_trusted(tx);
    }
    if (!graph) throw io_error("snapshot is empty");
    return std::move(*graph);
}

inline tangle import_snapshot(const std::string& path, int difficulty_bits, bool verify = true) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    return import_snapshot(in, difficulty_bits, verify);
}

} // namespace tanglesim
