// Command-line harness around the distill C API: single-point evaluation,
// parameter optimization, experiment sweeps to CSV, and Monte-Carlo
// verification of the exact pipeline.
//
// Exit codes: 0 success, 1 I/O error, 2 usage or domain error,
// 3 verification failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "distill.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFail = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void die_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(kExitUsage);
}

void check(dst_status status) {
    if (status != DST_OK) die_usage(dst_last_error());
}

struct ProtocolHandle {
    dst_protocol* ptr = nullptr;
    ~ProtocolHandle() { dst_protocol_free(ptr); }
    ProtocolHandle() = default;
    ProtocolHandle(const ProtocolHandle&) = delete;
    ProtocolHandle& operator=(const ProtocolHandle&) = delete;
};

void load_protocol(const std::string& name, const std::string& circuit_file,
                   ProtocolHandle& out) {
    if (!name.empty() && !circuit_file.empty()) {
        die_usage("--protocol and --circuit-file are mutually exclusive");
    }
    if (name.empty() && circuit_file.empty()) {
        die_usage("one of --protocol or --circuit-file is required");
    }
    if (!name.empty()) {
        check(dst_protocol_builtin(name.c_str(), &out.ptr));
        return;
    }
    std::ifstream in(circuit_file);
    if (!in) {
        std::cerr << "error: cannot open circuit file: " << circuit_file << "\n";
        std::exit(kExitIo);
    }
    std::stringstream text;
    text << in.rdbuf();
    check(dst_protocol_from_json(text.str().c_str(), &out.ptr));
}

void print_evaluation(const dst_evaluation& ev) {
    std::cout << "avg_fidelity  " << fmt(ev.avg_fidelity) << "\n";
    std::cout << "p_succ        " << fmt(ev.p_succ) << "\n";
    std::cout << "outcome   P^xy             F^xy\n";
    for (int o = 0; o < 4; ++o) {
        std::printf("  (%d,%d)   %-16s %s\n", o >> 1, o & 1,
                    fmt(ev.outcome[o].probability).c_str(),
                    ev.outcome[o].present ? fmt(ev.outcome[o].fidelity).c_str()
                                          : "absent");
    }
}

std::string evaluation_json(const dst_evaluation& ev) {
    std::ostringstream out;
    out << "{\"avg_fidelity\": " << fmt(ev.avg_fidelity)
        << ", \"p_succ\": " << fmt(ev.p_succ) << ", \"per_outcome\": [";
    for (int o = 0; o < 4; ++o) {
        if (o) out << ", ";
        out << "{\"x\": " << (o >> 1) << ", \"y\": " << (o & 1)
            << ", \"probability\": " << fmt(ev.outcome[o].probability)
            << ", \"fidelity\": " << fmt(ev.outcome[o].fidelity)
            << ", \"present\": " << (ev.outcome[o].present ? "true" : "false")
            << "}";
    }
    out << "]}";
    return out.str();
}

dst_opt_mode parse_opt_mode(const std::string& mode) {
    if (mode == "noise_aware") return DST_OPT_NOISE_AWARE;
    if (mode == "noiseless") return DST_OPT_NOISELESS;
    die_usage("unknown mode: " + mode + " (expected noise_aware or noiseless)");
}

struct SweepPoint {
    double F = 0.0;
    double p = 0.0;
};

struct SweepRow {
    bool ok = false;
    std::string text;
    std::string error;
};

// One CSV row per sweep point; parameterized protocols are re-optimized per
// point unless the mode is "fixed".
SweepRow sweep_point(const dst_protocol* proto, const std::string& mode,
                     const SweepPoint& pt, std::optional<double> theta,
                     const dst_search_config& cfg) {
    SweepRow row;
    dst_evaluation ev{};
    std::string theta_field;
    dst_status status = DST_OK;

    if (dst_protocol_num_params(proto) == 0) {
        status = dst_evaluate(proto, nullptr, pt.F, pt.p, &ev);
    } else if (mode == "fixed") {
        status = dst_evaluate(proto, &*theta, pt.F, pt.p, &ev);
        theta_field = fmt(*theta);
    } else {
        double theta_star = 0.0;
        status = dst_optimize(proto, parse_opt_mode(mode), pt.F, pt.p, &cfg,
                              &theta_star, &ev);
        theta_field = fmt(theta_star);
    }
    if (status != DST_OK) {
        row.error = dst_last_error();
        return row;
    }

    std::ostringstream out;
    out << dst_protocol_name(proto) << "," << mode << "," << fmt(pt.F) << ","
        << fmt(pt.p) << "," << theta_field << "," << fmt(ev.avg_fidelity) << ","
        << fmt(ev.p_succ) << "," << fmt((1.0 + pt.F) / 2.0);
    row.ok = true;
    row.text = out.str();
    return row;
}

int run_sweep(const dst_protocol* proto, const std::string& mode,
              const std::string& var, double start, double stop, int steps,
              double fixed_F, double fixed_p, std::optional<double> theta,
              const dst_search_config& cfg, const std::string& out_path) {
    if (steps < 2) die_usage("--steps must be >= 2");
    const bool sweeping_p = (var == "p");
    if (!sweeping_p && var != "F") die_usage("--var must be p or F");
    const double lo = sweeping_p ? 0.0 : 0.0;
    const double hi = sweeping_p ? 0.5 : 1.0;
    if (!(start >= lo && stop <= hi && start <= stop)) {
        die_usage("sweep range must satisfy " + std::to_string(lo) +
                  " <= start <= stop <= " + std::to_string(hi));
    }
    if (mode == "fixed" && dst_protocol_num_params(proto) == 1 && !theta) {
        die_usage("mode fixed requires --theta for this protocol");
    }
    if (theta && dst_protocol_num_params(proto) == 0) {
        die_usage("--theta was given but the protocol has no free parameters");
    }
    if (mode != "fixed") parse_opt_mode(mode);  // validates the name

    std::vector<SweepPoint> points(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double v = start + (stop - start) * i / (steps - 1);
        points[i] = sweeping_p ? SweepPoint{fixed_F, v} : SweepPoint{v, fixed_p};
    }

    // Points evaluate concurrently; rows are emitted in sweep order.
    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(points.size())));
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < points.size();
                 i = next.fetch_add(1)) {
                rows[i] = sweep_point(proto, mode, points[i], theta, cfg);
            }
        });
    }
    for (auto& w : workers) w.join();

    for (const SweepRow& row : rows) {
        if (!row.ok) die_usage(row.error);
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return kExitIo;
    }
    out << "protocol,mode,F,p,theta_star,avg_fidelity,p_succ,input_state_fidelity\n";
    for (const SweepRow& row : rows) out << row.text << "\n";
    if (!out) {
        std::cerr << "error: write failed: " << out_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_verify(const dst_protocol* proto, double F, double p,
               std::optional<double> theta, std::uint64_t samples,
               std::uint64_t seed) {
    if (samples < 10000) {
        std::cout << "warning: fewer than 10000 samples gives weak statistics\n";
    }
    if (theta && dst_protocol_num_params(proto) == 0) {
        die_usage("--theta was given but the protocol has no free parameters");
    }

    double theta_value = 0.0;
    const double* theta_ptr = nullptr;
    dst_evaluation exact{};
    if (dst_protocol_num_params(proto) == 1) {
        if (theta) {
            theta_value = *theta;
        } else {
            // Default to the channel-aware optimum so the check runs at the
            // protocol's operating point.
            dst_search_config cfg{};
            check(dst_optimize(proto, DST_OPT_NOISE_AWARE, F, p, &cfg, &theta_value,
                               &exact));
        }
        theta_ptr = &theta_value;
    }
    check(dst_evaluate(proto, theta_ptr, F, p, &exact));

    dst_mc_config mc_cfg{samples, seed};
    dst_mc_result mc{};
    check(dst_mc_evaluate(proto, theta_ptr, F, p, &mc_cfg, &mc));

    std::cout << "protocol " << dst_protocol_name(proto) << "  F=" << fmt(F)
              << " p=" << fmt(p);
    if (theta_ptr) std::cout << " theta=" << fmt(theta_value);
    std::cout << " samples=" << samples << " seed=" << seed << "\n";

    bool pass = true;
    const auto report = [&pass](const char* label, double exact_v, double est,
                                double sigma) {
        const double delta = std::abs(exact_v - est);
        const bool ok = delta <= 3.0 * sigma + 1e-12;
        pass = pass && ok;
        std::printf("%-13s exact=%-16s mc=%-16s stderr=%-13s %s\n", label,
                    fmt(exact_v).c_str(), fmt(est).c_str(), fmt(sigma).c_str(),
                    ok ? "PASS" : "FAIL");
    };
    report("avg_fidelity", exact.avg_fidelity, mc.avg_fidelity,
           mc.avg_fidelity_stderr);
    report("p_succ", exact.p_succ, mc.p_succ, mc.p_succ_stderr);

    std::cout << "outcome frequencies (true):";
    for (int o = 0; o < 4; ++o) {
        std::cout << " P" << (o >> 1) << (o & 1) << " exact=" <<
            fmt(exact.outcome[o].probability) << " mc=" << fmt(mc.outcome_freq[o]);
    }
    std::cout << "\n";
    std::cout << (pass ? "verdict: PASS (3-sigma)" : "verdict: FAIL (3-sigma)")
              << "\n";
    return pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and optimizer for two-pair entanglement "
                 "distillation protocols over noisy classical channels"};
    app.require_subcommand(1);

    std::string protocol_name;
    std::string circuit_file;
    double arg_F = 0.0;
    double arg_p = 0.0;
    double arg_theta = 0.0;
    bool has_theta = false;
    std::string mode = "noise_aware";
    std::string out_path;
    int grid_points = 0;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    bool as_json = false;
    std::string sweep_var = "p";
    double sweep_start = 0.0;
    double sweep_stop = 0.5;
    int sweep_steps = 26;

    const auto add_protocol_flags = [&](CLI::App* cmd) {
        cmd->add_option("--protocol", protocol_name, "Registry protocol name");
        cmd->add_option("--circuit-file", circuit_file,
                        "Circuit-description JSON file");
    };

    auto* list = app.add_subcommand("list-protocols", "List built-in protocols");

    auto* eval = app.add_subcommand("eval", "Evaluate a protocol at one point");
    add_protocol_flags(eval);
    eval->add_option("--F", arg_F, "Input fidelity in [0,1]")->required();
    eval->add_option("--p", arg_p, "Bit flip probability in [0,0.5]")->required();
    eval->add_option("--theta", arg_theta, "Parameter angle in radians");
    eval->add_flag("--json", as_json, "Emit the result as JSON");

    auto* optimize = app.add_subcommand("optimize", "Maximize over theta");
    add_protocol_flags(optimize);
    optimize->add_option("--F", arg_F, "Input fidelity in [0,1]")->required();
    optimize->add_option("--p", arg_p, "Bit flip probability in [0,0.5]")->required();
    optimize->add_option("--mode", mode, "noise_aware or noiseless");
    optimize->add_option("--grid-points", grid_points, "Coarse grid size");

    auto* sweep = app.add_subcommand("sweep", "Sweep p or F and write CSV");
    add_protocol_flags(sweep);
    sweep->add_option("--var", sweep_var, "Sweep variable: p or F");
    sweep->add_option("--start", sweep_start, "Sweep start")->required();
    sweep->add_option("--stop", sweep_stop, "Sweep stop")->required();
    sweep->add_option("--steps", sweep_steps, "Number of sweep points");
    sweep->add_option("--F", arg_F, "Fixed input fidelity (when sweeping p)");
    sweep->add_option("--p", arg_p, "Fixed flip probability (when sweeping F)");
    sweep->add_option("--theta", arg_theta, "Fixed angle (mode fixed)");
    sweep->add_option("--mode", mode, "noise_aware, noiseless or fixed");
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--grid-points", grid_points, "Coarse grid size");

    auto* verify = app.add_subcommand("verify",
                                      "Compare exact against the Monte-Carlo oracle");
    add_protocol_flags(verify);
    verify->add_option("--F", arg_F, "Input fidelity in [0,1]")->required();
    verify->add_option("--p", arg_p, "Bit flip probability in [0,0.5]")->required();
    verify->add_option("--theta", arg_theta,
                       "Angle (defaults to the channel-aware optimum)");
    verify->add_option("--samples", samples, "Monte-Carlo sample count");
    verify->add_option("--seed", seed, "Pseudo-random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    has_theta = eval->count("--theta") > 0 || sweep->count("--theta") > 0 ||
                verify->count("--theta") > 0;
    const std::optional<double> theta =
        has_theta ? std::optional<double>(arg_theta) : std::nullopt;

    if (list->parsed()) {
        for (int i = 0; i < dst_builtin_count(); ++i) {
            ProtocolHandle handle;
            check(dst_protocol_builtin(dst_builtin_name(i), &handle.ptr));
            int pairs[8] = {0};
            const int count = dst_protocol_success_set(handle.ptr, pairs);
            std::cout << dst_builtin_name(i) << "  params="
                      << dst_protocol_num_params(handle.ptr) << "  success={";
            for (int k = 0; k < count; ++k) {
                std::cout << (k ? "," : "") << "(" << pairs[2 * k] << ","
                          << pairs[2 * k + 1] << ")";
            }
            std::cout << "}\n";
        }
        return kExitOk;
    }

    ProtocolHandle proto;
    load_protocol(protocol_name, circuit_file, proto);

    dst_search_config cfg{};
    cfg.grid_points = grid_points;

    if (eval->parsed()) {
        dst_evaluation ev{};
        const double* theta_ptr = theta ? &*theta : nullptr;
        check(dst_evaluate(proto.ptr, theta_ptr, arg_F, arg_p, &ev));
        if (as_json) {
            std::cout << evaluation_json(ev) << "\n";
        } else {
            print_evaluation(ev);
        }
        return kExitOk;
    }

    if (optimize->parsed()) {
        double theta_star = 0.0;
        dst_evaluation ev{};
        check(dst_optimize(proto.ptr, parse_opt_mode(mode), arg_F, arg_p, &cfg,
                           &theta_star, &ev));
        std::cout << "theta_star    " << fmt(theta_star) << "\n";
        print_evaluation(ev);
        return kExitOk;
    }

    if (sweep->parsed()) {
        return run_sweep(proto.ptr, mode, sweep_var, sweep_start, sweep_stop,
                         sweep_steps, arg_F, arg_p, theta, cfg, out_path);
    }

    if (verify->parsed()) {
        return run_verify(proto.ptr, arg_F, arg_p, theta, samples, seed);
    }

    return kExitUsage;
}
