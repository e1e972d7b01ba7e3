#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tanglesim/errors.hpp"
#include "tanglesim/transaction.hpp"

namespace tanglesim {

/// Token balances over a chosen set of transactions.
struct ledger_state {
    std::map<account_id, std::int64_t> balances;

    std::vector<account_id> negatives() const {
        std::vector<account_id> out;
        for (const auto& [addr, bal] : balances)
            if (bal < 0) out.push_back(addr);
        return out;
    }

    bool has_negative() const {
        for (const auto& [addr, bal] : balances)
            if (bal < 0) return true;
        return false;
    }

    std::int64_t total() const {
        std::int64_t sum = 0;
        for (const auto& [addr, bal] : balances) sum += bal;
        return sum;
    }
};

enum class ledger_scope { confirmed_only, all };

/// Append-only DAG of transactions with approver index, tip set, milestone
/// history and ledger queries. Single writer, any number of readers between
/// writes.
class tangle {
public:
    struct config {
        account_id genesis_address;
        std::int64_t genesis_supply = 1'000'000;
        int difficulty_bits = 0;
        std::uint64_t genesis_timestamp_ms = 0;
    };

    explicit tangle(const config& cfg) : difficulty_bits_(cfg.difficulty_bits) {
        transaction g;
        g.address = cfg.genesis_address;
        g.value = cfg.genesis_supply;
        g.timestamp_ms = cfg.genesis_timestamp_ms;
        g.hash = compute_tx_hash(g); // parents hash as zero
        g.trunk = g.hash;
        g.branch = g.hash;
        insert_node(g, 0);
        genesis_ = g.hash;
    }

    /// Rebuilds a graph from a stored genesis transaction (snapshot import).
    static tangle restore(const transaction& genesis_tx, int difficulty_bits, bool verify = true) {
        if (genesis_tx.trunk != genesis_tx.hash || genesis_tx.branch != genesis_tx.hash)
            throw io_error("snapshot does not start with a self-referential genesis");
        if (verify && compute_tx_hash(genesis_tx) != genesis_tx.hash)
            throw io_error("genesis hash does not match its serialization");
        tangle g(genesis_tx, difficulty_bits);
        return g;
    }

    /// Adds a transaction whose parents are present and whose hash satisfies
    /// the configured proof-of-work difficulty.
    void append(const transaction& tx) {
        if (txs_.contains(tx.hash))
            throw duplicate_hash_error("transaction " + tx.hash.hex() + " already present");
        if (tx.payload.size() > max_payload_trytes)
            throw tangle_error("payload exceeds " + std::to_string(max_payload_trytes) + " trytes");
        if (compute_tx_hash(tx) != tx.hash)
            throw invalid_pow_error("hash does not match the canonical serialization");
        if (leading_zero_bits(tx.hash) < difficulty_bits_)
            throw invalid_pow_error("hash has fewer than " + std::to_string(difficulty_bits_) +
                                    " leading zero bits");
        const auto trunk_it = txs_.find(tx.trunk);
        if (trunk_it == txs_.end())
            throw unknown_parent_error("trunk " + tx.trunk.hex() + " not in graph");
        const auto branch_it = txs_.find(tx.branch);
        if (branch_it == txs_.end())
            throw unknown_parent_error("branch " + tx.branch.hex() + " not in graph");
        const std::uint32_t rank =
            1 + std::max(rank_.at(tx.trunk), rank_.at(tx.branch));
        insert_node(tx, rank);
    }

    /// Adds a transaction without hash or proof-of-work verification. Used to
    /// restore snapshots as stored; parents must still exist.
    void append_trusted(const transaction& tx) {
        if (txs_.contains(tx.hash))
            throw duplicate_hash_error("transaction " + tx.hash.hex() + " already present");
        if (!txs_.contains(tx.trunk))
            throw unknown_parent_error("trunk " + tx.trunk.hex() + " not in graph");
        if (!txs_.contains(tx.branch))
            throw unknown_parent_error("branch " + tx.branch.hex() + " not in graph");
        const std::uint32_t rank =
            1 + std::max(rank_.at(tx.trunk), rank_.at(tx.branch));
        insert_node(tx, rank);
    }

    std::size_t size() const { return txs_.size(); }
    bool contains(const tx_hash& h) const { return txs_.contains(h); }
    int difficulty_bits() const { return difficulty_bits_; }
    const tx_hash& genesis_hash() const { return genesis_; }
    const std::set<tx_hash>& tips() const { return tips_; }
    const std::vector<tx_hash>& milestones() const { return milestones_; }
    const std::map<tx_hash, transaction>& transactions() const { return txs_; }

    std::optional<tx_hash> latest_milestone() const {
        if (milestones_.empty()) return std::nullopt;
        return milestones_.back();
    }

    const transaction& get(const tx_hash& h) const {
        const auto it = txs_.find(h);
        if (it == txs_.end())
            throw unknown_transaction_error("no transaction " + h.hex());
        return it->second;
    }

    const std::set<tx_hash>& approvers_of(const tx_hash& h) const {
        const auto it = approvers_.find(h);
        if (it == approvers_.end())
            throw unknown_transaction_error("no transaction " + h.hex());
        return it->second;
    }

    /// Own weight 1 plus the number of distinct transactions that directly or
    /// indirectly approve the target.
    std::uint64_t cumulative_weight(const tx_hash& target) const {
        const auto& direct = approvers_of(target);
        std::set<tx_hash> seen(direct.begin(), direct.end());
        std::deque<tx_hash> queue(direct.begin(), direct.end());
        while (!queue.empty()) {
            const tx_hash cur = queue.front();
            queue.pop_front();
            for (const auto& a : approvers_.at(cur))
                if (seen.insert(a).second) queue.push_back(a);
        }
        return 1 + seen.size();
    }

    /// Weights of every transaction in one pass (bitset DP over the reverse
    /// topological order, so shared approvers are counted once).
    std::map<tx_hash, std::uint64_t> cumulative_weights_all() const {
        const auto order = topological_order();
        const std::size_t n = order.size();
        std::map<tx_hash, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index[order[i]] = i;

        const std::size_t words = (n + 63) / 64;
        std::vector<std::uint64_t> reach(n * words, 0);
        std::map<tx_hash, std::uint64_t> weights;
        for (std::size_t i = n; i-- > 0;) {
            const tx_hash& h = order[i];
            const std::size_t self = index.at(h);
            std::uint64_t* row = reach.data() + self * words;
            for (const auto& a : approvers_.at(h)) {
                const std::size_t child = index.at(a);
                const std::uint64_t* child_row = reach.data() + child * words;
                for (std::size_t w = 0; w < words; ++w) row[w] |= child_row[w];
                row[child / 64] |= (std::uint64_t{1} << (child % 64));
            }
            std::uint64_t count = 0;
            for (std::size_t w = 0; w < words; ++w) count += std::popcount(row[w]);
            weights[h] = count + 1;
        }
        return weights;
    }

    /// All transactions reachable from h through parent links, h included.
    std::set<tx_hash> past_cone(const tx_hash& target) const {
        get(target);
        std::set<tx_hash> seen{target};
        std::deque<tx_hash> queue{target};
        while (!queue.empty()) {
            const transaction& tx = txs_.at(queue.front());
            queue.pop_front();
            for (const tx_hash& p : {tx.trunk, tx.branch})
                if (seen.insert(p).second) queue.push_back(p);
        }
        return seen;
    }

    /// A transaction is confirmed when the latest milestone is the
    /// transaction itself or approves it directly or indirectly.
    bool is_confirmed(const tx_hash& target) const {
        get(target);
        if (milestones_.empty()) return false;
        const tx_hash m = milestones_.back();
        if (m == target) return true;
        return past_cone(m).contains(target);
    }

    /// Balance of every address over the transactions the scope selects.
    ledger_state ledger_balances(ledger_scope scope) const {
        if (scope == ledger_scope::all) {
            ledger_state out;
            for (const auto& [h, tx] : txs_) apply_value(out, tx);
            return out;
        }
        if (milestones_.empty()) return {};
        return ledger_over(past_cone(milestones_.back()));
    }

    /// Balances over an explicit set of transactions.
    ledger_state ledger_over(const std::set<tx_hash>& scope) const {
        ledger_state out;
        for (const auto& h : scope) apply_value(out, get(h));
        return out;
    }

    /// True when confirming both would drive some balance negative while each
    /// alone would not.
    bool conflicts(const tx_hash& a, const tx_hash& b) const {
        const auto cone_a = past_cone(a);
        const auto cone_b = past_cone(b);
        if (a == b) return false;
        if (ledger_over(cone_a).has_negative()) return false;
        if (ledger_over(cone_b).has_negative()) return false;
        std::set<tx_hash> both = cone_a;
        both.insert(cone_b.begin(), cone_b.end());
        return ledger_over(both).has_negative();
    }

    /// Transactions sorted by topological rank, ties by hash. Parents always
    /// precede children.
    std::vector<tx_hash> topological_order() const {
        std::vector<tx_hash> order;
        order.reserve(txs_.size());
        for (const auto& [h, tx] : txs_) order.push_back(h);
        std::sort(order.begin(), order.end(), [this](const tx_hash& x, const tx_hash& y) {
            const auto rx = rank_.at(x), ry = rank_.at(y);
            if (rx != ry) return rx < ry;
            return x < y;
        });
        return order;
    }

    std::uint32_t rank_of(const tx_hash& h) const {
        const auto it = rank_.find(h);
        if (it == rank_.end())
            throw unknown_transaction_error("no transaction " + h.hex());
        return it->second;
    }

    /// Transactions carrying the given address, in bundle order.
    std::vector<transaction> find_by_address(const account_id& address) const {
        std::vector<transaction> out;
        for (const auto& [h, tx] : txs_)
            if (tx.address == address) out.push_back(tx);
        std::sort(out.begin(), out.end(), [](const transaction& x, const transaction& y) {
            if (x.bundle.id != y.bundle.id) return x.bundle.id < y.bundle.id;
            if (x.bundle.index != y.bundle.index) return x.bundle.index < y.bundle.index;
            return x.hash < y.hash;
        });
        return out;
    }

private:
    tangle(const transaction& genesis_tx, int difficulty_bits)
        : difficulty_bits_(difficulty_bits) {
        insert_node(genesis_tx, 0);
        genesis_ = genesis_tx.hash;
    }

    void insert_node(const transaction& tx, std::uint32_t rank) {
        txs_.emplace(tx.hash, tx);
        rank_.emplace(tx.hash, rank);
        approvers_.emplace(tx.hash, std::set<tx_hash>{});
        if (tx.hash != tx.trunk) {
            approvers_[tx.trunk].insert(tx.hash);
            tips_.erase(tx.trunk);
        }
        if (tx.hash != tx.branch && tx.branch != tx.trunk) {
            approvers_[tx.branch].insert(tx.hash);
            tips_.erase(tx.branch);
        }
        tips_.insert(tx.hash);
        if (tx.is_milestone) milestones_.push_back(tx.hash);
    }

    static void apply_value(ledger_state& state, const transaction& tx) {
        if (tx.value != 0) state.balances[tx.address] += tx.value;
    }

    std::map<tx_hash, transaction> txs_;
    std::map<tx_hash, std::set<tx_hash>> approvers_;
    std::map<tx_hash, std::uint32_t> rank_;
    std::set<tx_hash> tips_;
    std::vector<tx_hash> milestones_;
    tx_hash genesis_;
    int difficulty_bits_ = 0;
};

} // namespace tanglesim
