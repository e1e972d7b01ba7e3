#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tanglesim/latency.hpp"
#include "tanglesim/mam.hpp"
#include "tanglesim/pipeline.hpp"

namespace tanglesim {

namespace detail {

/// Shortest round-trip decimal form, so CSV exports re-import bit-exactly.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Stage-decomposed latency of one trial.
struct trial_record {
    int trial_id = 0;
    std::string message_label;
    std::string node;
    std::map<pipeline_stage, double> stage_durations;
    double total_ms = 0;

    bool operator==(const trial_record&) const = default;
};

/// Box-plot summary: quartiles by linear interpolation, whiskers at the most
/// extreme data point within 1.5 IQR of the quartiles.
struct summary_stats {
    double median = 0, q1 = 0, q3 = 0, iqr = 0;
    double whisker_lo = 0, whisker_hi = 0;
    std::vector<double> outliers;
    double mean = 0;
    std::size_t count = 0;
};

enum class trial_kind { plain_tx, mam };

/// Everything one benchmark trial needs: what to attach, where, and how the
/// stage latencies are produced.
struct trial_scenario {
    trial_kind kind = trial_kind::plain_tx;
    std::string message_label = "u";
    std::size_t payload_trytes = 1093;  // plain transactions
    std::size_t plaintext_bytes = 256;  // masked messages
    node_profile node;
    walk_config walk{};
    pow_config pow{};
    bool real_pow = false; // measure the nonce search instead of drawing attach
    std::array<std::uint8_t, 32> mam_key{};
    int bootstrap_txs = 8;
    std::int64_t genesis_supply = 1'000'000;
};

namespace detail {

inline tryte_string random_trytes(std::size_t n, seeded_rng& rng) {
    std::string out(n, '9');
    for (auto& c : out) c = tryte_alphabet[rng.next_u64() % 27];
    return tryte_string(std::move(out));
}

/// Fresh desk-scale graph for one trial: a genesis plus a few seed
/// transactions so the tip walk has somewhere to go.
inline tangle bootstrap_graph(const trial_scenario& sc, std::uint64_t seed) {
    tangle graph({account_from_label("bench-genesis"), sc.genesis_supply, 0, 0});
    seeded_rng rng(derive_seed(seed, 2));
    for (int i = 0; i < sc.bootstrap_txs; ++i) {
        walk_config wc = sc.walk;
        wc.rng_seed = derive_seed(seed, 0x50 + static_cast<std::uint64_t>(i));
        attach_payload(graph, random_trytes(9, rng), account_from_label("bench-seed"), wc,
                       pow_config{0, false}, static_cast<std::uint64_t>(i), 0x5eed + i);
    }
    return graph;
}

/// Attaches the chunks of one message, drawing (or measuring) per-chunk
/// tip-selection and attach durations.
inline void attach_chunks(tangle& graph, const tryte_string& content, const account_id& address,
                          std::uint64_t bundle_id, const trial_scenario& sc, std::uint64_t seed,
                          seeded_rng& lat, double& ts_ms, double& attach_ms) {
    const auto chunks = segment_payload(content);
    for (const auto& chunk : chunks) {
        ts_ms += sample_stage(sc.node, pipeline_stage::tip_selection, lat);

        walk_config wc = sc.walk;
        wc.rng_seed = derive_seed(seed, 0x10 + chunk.index);
        const auto [trunk, branch] = select_two_tips(graph, wc);

        transaction tx;
        tx.trunk = trunk;
        tx.branch = branch;
        tx.payload = chunk.data;
        tx.address = address;
        tx.bundle = {bundle_id, static_cast<std::uint32_t>(chunk.index),
                     static_cast<std::uint32_t>(chunk.total)};

        const pow_config solve_cfg = sc.real_pow ? sc.pow : pow_config{0, false};
        const auto solved = solve(std::move(tx), solve_cfg, derive_seed(seed, 0x20 + chunk.index));
        graph.append(solved.tx);

        if (sc.pow.accelerated)
            attach_ms += accelerated_pow_ms;
        else if (sc.real_pow)
            attach_ms += solved.wall_ms;
        else
            attach_ms += sample_stage(sc.node, pipeline_stage::attach_to_tangle, lat);
    }
}

} // namespace detail

/// Runs n independent trials with derived sub-seeds. Plain trials record the
/// three transaction stages; masked-message trials record all five.
inline std::vector<trial_record> run_trials(const trial_scenario& sc, int n, std::uint64_t seed) {
    if (n < 1) throw config_error("trial count must be at least 1");
    validate(sc.pow);

    std::vector<trial_record> records;
    records.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
        seeded_rng lat(derive_seed(trial_seed, 1));
        tangle graph = detail::bootstrap_graph(sc, trial_seed);

        trial_record rec;
        rec.trial_id = k;
        rec.message_label = sc.message_label;
        rec.node = sc.node.name;

        double ts_ms = 0, attach_ms = 0;
        if (sc.kind == trial_kind::plain_tx) {
            seeded_rng content_rng(derive_seed(trial_seed, 4));
            const auto content = detail::random_trytes(sc.payload_trytes, content_rng);
            detail::attach_chunks(graph, content, account_from_label("bench-recipient"),
                                  0xb0 + static_cast<std::uint64_t>(k), sc, trial_seed, lat,
                                  ts_ms, attach_ms);
            rec.stage_durations[pipeline_stage::tip_selection] = ts_ms;
            rec.stage_durations[pipeline_stage::attach_to_tangle] = attach_ms;
            rec.stage_durations[pipeline_stage::broadcast] =
                sample_stage(sc.node, pipeline_stage::broadcast, lat);
        } else {
            seeded_rng content_rng(derive_seed(trial_seed, 4));
            std::vector<std::uint8_t> plaintext(sc.plaintext_bytes);
            for (auto& b : plaintext) b = static_cast<std::uint8_t>(content_rng.next_u64());

            const double encoding_ms = sample_stage(sc.node, pipeline_stage::encoding, lat);
            mam_channel channel(sc.mam_key, static_cast<std::uint64_t>(k));
            const auto msg = channel.encode(plaintext);
            std::uint64_t bundle_id = 0;
            for (int i = 0; i < 8; ++i) bundle_id = (bundle_id << 8) | msg.address.bytes[i];
            detail::attach_chunks(graph, msg.payload, msg.address, bundle_id, sc, trial_seed, lat,
                                  ts_ms, attach_ms);

            rec.stage_durations[pipeline_stage::encoding] = encoding_ms;
            rec.stage_durations[pipeline_stage::tip_selection] = ts_ms;
            rec.stage_durations[pipeline_stage::attach_to_tangle] = attach_ms;
            rec.stage_durations[pipeline_stage::broadcast] =
                sample_stage(sc.node, pipeline_stage::broadcast, lat);
            rec.stage_durations[pipeline_stage::get_message] =
                sample_stage(sc.node, pipeline_stage::get_message, lat);

            // round-trip check: the published message must decode bit-exactly
            if (mam_fetch(graph, sc.mam_key, static_cast<std::uint64_t>(k)) != plaintext)
                throw tangle_error("benchmark round trip decoded a different plaintext");
        }

        for (const auto& [s, d] : rec.stage_durations) rec.total_ms += d;
        records.push_back(std::move(rec));
    }
    return records;
}

/// Quartiles of raw values under the linear-interpolation convention.
inline summary_stats summarize_values(std::vector<double> values) {
    if (values.empty()) throw empty_input_error("cannot summarize zero samples");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();

    const auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (lo + 1 >= n) return values[n - 1];
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };

    summary_stats s;
    s.count = n;
    s.median = quantile(0.5);
    s.q1 = quantile(0.25);
    s.q3 = quantile(0.75);
    s.iqr = s.q3 - s.q1;
    const double lo_bound = s.q1 - 1.5 * s.iqr;
    const double hi_bound = s.q3 + 1.5 * s.iqr;
    s.whisker_lo = s.median;
    s.whisker_hi = s.median;
    for (double v : values) {
        if (v >= lo_bound) {
            s.whisker_lo = v; // first (smallest) value inside the fence
            break;
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        if (values[i] <= hi_bound) {
            s.whisker_hi = values[i];
            break;
        }
    }
    double sum = 0;
    for (double v : values) {
        sum += v;
        if (v < lo_bound || v > hi_bound) s.outliers.push_back(v);
    }
    s.mean = sum / static_cast<double>(n);
    return s;
}

namespace detail {

inline std::vector<double> stage_values(std::span<const trial_record> records,
                                        std::optional<pipeline_stage> stage) {
    if (records.empty()) throw empty_input_error("no trial records");
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) {
        if (!stage) {
            values.push_back(r.total_ms);
            continue;
        }
        const auto it = r.stage_durations.find(*stage);
        if (it != r.stage_durations.end()) values.push_back(it->second);
    }
    if (values.empty())
        throw unknown_stage_error("no record contains stage \"" +
                                  std::string(stage_name(*stage)) + "\"");
    return values;
}

} // namespace detail

/// Summary over one stage, or over the trial totals when stage is empty.
inline summary_stats summarize(std::span<const trial_record> records,
                               std::optional<pipeline_stage> stage = std::nullopt) {
    return summarize_values(detail::stage_values(records, stage));
}

/// Empirical CDF: sorted distinct values with fraction = rank / n.
inline std::vector<std::pair<double, double>> cdf_values(std::vector<double> values) {
    if (values.empty()) throw empty_input_error("cannot build a CDF from zero samples");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        points.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
    return points;
}

inline std::vector<std::pair<double, double>> cdf(std::span<const trial_record> records,
                                                  std::optional<pipeline_stage> stage) {
    return cdf_values(detail::stage_values(records, stage));
}

/// Fraction of samples at or below the threshold.
inline double cdf_fraction_below(std::span<const trial_record> records,
                                 std::optional<pipeline_stage> stage, double threshold_ms) {
    const auto values = detail::stage_values(records, stage);
    std::size_t below = 0;
    for (double v : values)
        if (v <= threshold_ms) ++below;
    return static_cast<double>(below) / static_cast<double>(values.size());
}

// --- CSV export / import -------------------------------------------------

inline void write_records_csv(std::span<const trial_record> records, std::ostream& out) {
    out << "trial_id,message_label,node,stage,duration_ms\n";
    for (const auto& r : records)
        for (const auto& [stage, ms] : r.stage_durations)
            out << r.trial_id << ',' << r.message_label << ',' << r.node << ','
                << stage_name(stage) << ',' << detail::format_double(ms) << '\n';
    if (!out) throw io_error("failed writing records CSV");
}

inline std::vector<trial_record> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("records CSV is empty");
    std::vector<trial_record> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() != 5) throw io_error("bad records CSV row: " + line);

        const int trial_id = std::stoi(cols[0]);
        if (records.empty() || records.back().trial_id != trial_id ||
            records.back().message_label != cols[1] || records.back().node != cols[2]) {
            trial_record r;
            r.trial_id = trial_id;
            r.message_label = cols[1];
            r.node = cols[2];
            records.push_back(std::move(r));
        }
        double ms = 0;
        const auto res = std::from_chars(cols[4].data(), cols[4].data() + cols[4].size(), ms);
        if (res.ec != std::errc{}) throw io_error("bad duration in records CSV: " + cols[4]);
        records.back().stage_durations[stage_from_name(cols[3])] = ms;
        records.back().total_ms += ms;
    }
    return records;
}

inline void write_summary_csv(
    std::span<const std::pair<std::string, summary_stats>> rows, std::ostream& out) {
    out << "target,count,mean,median,q1,q3,iqr,whisker_lo,whisker_hi,outliers\n";
    for (const auto& [name, s] : rows) {
        out << name << ',' << s.count << ',' << detail::format_double(s.mean) << ','
            << detail::format_double(s.median) << ',' << detail::format_double(s.q1) << ','
            << detail::format_double(s.q3) << ',' << detail::format_double(s.iqr) << ','
            << detail::format_double(s.whisker_lo) << ',' << detail::format_double(s.whisker_hi)
            << ',';
        for (std::size_t i = 0; i < s.outliers.size(); ++i)
            out << (i ? ";" : "") << detail::format_double(s.outliers[i]);
        out << '\n';
    }
    if (!out) throw io_error("failed writing summary CSV");
}

inline void write_cdf_csv(std::string_view target,
                          std::span<const std::pair<double, double>> points, std::ostream& out) {
    out << "target,duration_ms,cumulative_fraction\n";
    for (const auto& [ms, frac] : points)
        out << target << ',' << detail::format_double(ms) << ',' << detail::format_double(frac)
            << '\n';
    if (!out) throw io_error("failed writing CDF CSV");
}

template <class WriteFn>
void write_csv_file(const std::string& path, WriteFn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    fn(out);
}

} // namespace tanglesim
