#include "distill.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "distill/objective.hpp"
#include "distill/optimize.hpp"
#include "distill/oracle.hpp"
#include "distill/protocol.hpp"

struct dst_protocol {
    distill::Protocol impl;
};

namespace {

thread_local std::string g_last_error;

dst_status fail(dst_status status, const char* what) {
    g_last_error = what ? what : "unknown error";
    return status;
}

// Maps the core exception taxonomy onto C status codes.
dst_status translate_current_exception() {
    try {
        throw;
    } catch (const distill::DegenerateProtocolError& e) {
        return fail(DST_ERR_DEGENERATE, e.what());
    } catch (const distill::ProtocolParseError& e) {
        return fail(DST_ERR_PARSE, e.what());
    } catch (const std::domain_error& e) {
        return fail(DST_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DST_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(DST_ERR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return fail(DST_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DST_ERR_INTERNAL, "unknown exception");
    }
}

std::optional<distill::ProtocolParams> make_params(const dst_protocol* proto,
                                                   const double* theta) {
    if (proto->impl.num_params == 1) {
        if (!theta) {
            throw std::invalid_argument("protocol \"" + proto->impl.name +
                                        "\" requires a theta parameter");
        }
        return distill::ProtocolParams(*theta);
    }
    if (theta) {
        throw std::invalid_argument("protocol \"" + proto->impl.name +
                                    "\" has no free parameters");
    }
    return std::nullopt;
}

void fill_evaluation(const distill::EvaluationResult& in, dst_evaluation* out) {
    out->avg_fidelity = in.avg_fidelity;
    out->p_succ = in.p_succ;
    for (int o = 0; o < 4; ++o) {
        out->outcome[o].probability = in.per_outcome[o].probability;
        out->outcome[o].fidelity = in.per_outcome[o].fidelity;
        out->outcome[o].present = in.per_outcome[o].present ? 1 : 0;
    }
}

distill::SearchConfig make_search_config(const dst_search_config* cfg) {
    distill::SearchConfig out;
    if (cfg) {
        if (cfg->grid_points != 0) out.grid_points = cfg->grid_points;
        if (cfg->refine_tol != 0.0) out.refine_tol = cfg->refine_tol;
        if (cfg->refine_max_iter != 0) out.refine_max_iter = cfg->refine_max_iter;
    }
    return out;
}

}  // namespace

extern "C" {

const char* dst_version(void) { return "0.1.0"; }

const char* dst_last_error(void) { return g_last_error.c_str(); }

int dst_builtin_count(void) {
    return static_cast<int>(distill::builtin_protocol_names().size());
}

const char* dst_builtin_name(int index) {
    const auto& names = distill::builtin_protocol_names();
    if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
    return names[static_cast<std::size_t>(index)].c_str();
}

dst_status dst_protocol_builtin(const char* name, dst_protocol** out) {
    if (!name || !out) return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto handle = new dst_protocol{distill::builtin_protocol(name)};
        *out = handle;
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

dst_status dst_protocol_from_json(const char* json_text, dst_protocol** out) {
    if (!json_text || !out) return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto handle = new dst_protocol{distill::protocol_from_json(json_text)};
        *out = handle;
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

void dst_protocol_free(dst_protocol* proto) { delete proto; }

const char* dst_protocol_name(const dst_protocol* proto) {
    return proto ? proto->impl.name.c_str() : nullptr;
}

int dst_protocol_num_params(const dst_protocol* proto) {
    return proto ? proto->impl.num_params : -1;
}

int dst_protocol_success_set(const dst_protocol* proto, int out_pairs[8]) {
    if (!proto || !out_pairs) return -1;
    int count = 0;
    for (auto [a, b] : proto->impl.success_set) {
        if (count >= 4) break;
        out_pairs[2 * count] = a;
        out_pairs[2 * count + 1] = b;
        ++count;
    }
    return count;
}

dst_status dst_protocol_to_json(const dst_protocol* proto, char* buf,
                                size_t buf_size, size_t* needed) {
    if (!proto || !needed) return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    try {
        const std::string text = distill::protocol_to_json(proto->impl);
        *needed = text.size();
        if (buf && buf_size > 0) {
            const size_t n = std::min(buf_size - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

dst_status dst_evaluate(const dst_protocol* proto, const double* theta,
                        double input_fidelity, double flip_probability,
                        dst_evaluation* out) {
    if (!proto || !out) return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    try {
        const auto result =
            distill::evaluate(proto->impl, make_params(proto, theta), input_fidelity,
                              distill::ChannelModel(flip_probability));
        fill_evaluation(result, out);
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

dst_status dst_optimize(const dst_protocol* proto, dst_opt_mode mode,
                        double input_fidelity, double flip_probability,
                        const dst_search_config* cfg, double* theta_star,
                        dst_evaluation* out) {
    if (!proto || !theta_star || !out) {
        return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        const auto opt_mode = (mode == DST_OPT_NOISELESS)
                                  ? distill::OptimizeMode::Noiseless
                                  : distill::OptimizeMode::NoiseAware;
        const auto optimized = distill::optimize_protocol(
            proto->impl, input_fidelity, distill::ChannelModel(flip_probability),
            opt_mode, make_search_config(cfg));
        *theta_star = optimized.params.theta();
        fill_evaluation(optimized.result, out);
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

dst_status dst_mc_evaluate(const dst_protocol* proto, const double* theta,
                           double input_fidelity, double flip_probability,
                           const dst_mc_config* cfg, dst_mc_result* out) {
    if (!proto || !out) return fail(DST_ERR_INVALID_ARGUMENT, "null argument");
    try {
        distill::OracleConfig oracle_cfg;
        if (cfg) {
            if (cfg->num_samples != 0) oracle_cfg.num_samples = cfg->num_samples;
            oracle_cfg.seed = cfg->seed;
        }
        const auto result = distill::mc_evaluate(
            proto->impl, make_params(proto, theta), input_fidelity,
            distill::ChannelModel(flip_probability), oracle_cfg);
        out->avg_fidelity = result.avg_fidelity;
        out->avg_fidelity_stderr = result.avg_fidelity_stderr;
        out->p_succ = result.p_succ;
        out->p_succ_stderr = result.p_succ_stderr;
        for (int o = 0; o < 4; ++o) out->outcome_freq[o] = result.outcome_freq[o];
        out->num_samples = result.num_samples;
        out->num_successes = result.num_successes;
        return DST_OK;
    } catch (...) {
        return translate_current_exception();
    }
}

}  // extern "C"
