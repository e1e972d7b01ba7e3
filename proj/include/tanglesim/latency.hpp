#pragma once

#include <map>
#include <string>
#include <string_view>

#include "tanglesim/errors.hpp"
#include "tanglesim/rng.hpp"

namespace tanglesim {

/// Stages of the attachment pipeline, in pipeline order. Plain transactions
/// use the middle three; masked messages use all five.
enum class pipeline_stage {
    encoding,
    tip_selection,
    attach_to_tangle,
    broadcast,
    get_message,
};

inline constexpr pipeline_stage all_stages[] = {
    pipeline_stage::encoding,    pipeline_stage::tip_selection,
    pipeline_stage::attach_to_tangle, pipeline_stage::broadcast,
    pipeline_stage::get_message,
};

inline std::string_view stage_name(pipeline_stage s) {
    switch (s) {
        case pipeline_stage::encoding: return "encoding";
        case pipeline_stage::tip_selection: return "tip_selection";
        case pipeline_stage::attach_to_tangle: return "attach_to_tangle";
        case pipeline_stage::broadcast: return "broadcast";
        case pipeline_stage::get_message: return "get_message";
    }
    return "?";
}

inline pipeline_stage stage_from_name(std::string_view name) {
    for (pipeline_stage s : all_stages)
        if (stage_name(s) == name) return s;
    throw unknown_stage_error("unknown stage \"" + std::string(name) + "\"");
}

/// Per-stage latency distributions, in milliseconds.
struct latency_model {
    enum class dist { constant, uniform, lognormal };

    struct spec {
        dist kind = dist::constant;
        double a = 0; // constant: value; uniform: lo; lognormal: median
        double b = 0; // uniform: hi; lognormal: sigma
    };

    std::map<pipeline_stage, spec> stages;

    static spec constant(double ms) {
        if (ms <= 0) throw config_error("constant latency must be positive");
        return {dist::constant, ms, 0};
    }
    static spec uniform(double lo_ms, double hi_ms) {
        if (lo_ms <= 0 || hi_ms < lo_ms) throw config_error("uniform latency needs 0 < lo <= hi");
        return {dist::uniform, lo_ms, hi_ms};
    }
    static spec lognormal(double median_ms, double sigma) {
        if (median_ms <= 0 || sigma <= 0) throw config_error("lognormal latency needs positive median and sigma");
        return {dist::lognormal, median_ms, sigma};
    }
};

/// A node is a latency profile; load_factor scales the stages that depend on
/// how busy the node is (tip selection and broadcast).
struct node_profile {
    std::string name;
    latency_model latency;
    double load_factor = 1.0;
};

/// One latency draw for a stage on a node.
inline double sample_stage(const latency_model& model, pipeline_stage stage,
                           const node_profile& node, seeded_rng& rng) {
    const auto it = model.stages.find(stage);
    if (it == model.stages.end())
        throw unknown_stage_error("no latency model for stage \"" +
                                  std::string(stage_name(stage)) + "\"");
    const auto& s = it->second;
    double ms = 0;
    switch (s.kind) {
        case latency_model::dist::constant: ms = s.a; break;
        case latency_model::dist::uniform: ms = rng.uniform(s.a, s.b); break;
        case latency_model::dist::lognormal: ms = rng.lognormal(s.a, s.b); break;
    }
    if (stage == pipeline_stage::tip_selection || stage == pipeline_stage::broadcast)
        ms *= node.load_factor;
    return ms;
}

inline double sample_stage(const node_profile& node, pipeline_stage stage, seeded_rng& rng) {
    return sample_stage(node.latency, stage, node, rng);
}

} // namespace tanglesim
