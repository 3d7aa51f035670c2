#include "distill/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace distill {

namespace {

// SplitMix64 step; the per-sample stream key uses a different odd constant
// so streams never align with the in-stream increment.
constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamGamma = 0xD1B54A32D192ED03ULL;

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += kSplitMixGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g{seed + (index + 1) * kStreamGamma};
    g.next();
    return g;
}

struct AmpVector {
    std::array<Complex, 16> amps{};
};

// Deterministic per-input-state data: trajectories only differ in which of
// the four product inputs is drawn and in the sampled outcome and flips, so
// the evolved statevector quantities are computed once per input.
struct EvolvedInput {
    std::array<double, 4> outcome_prob{};
    std::array<double, 4> outcome_cum{};
    std::array<double, 4> conditional_fidelity{};
};

AmpVector product_input(bool first_entangled, bool second_entangled) {
    const double h = 1.0 / std::sqrt(2.0);
    std::array<Complex, 4> pair0{}, pair1{};
    if (first_entangled) {
        pair0[0] = h;
        pair0[3] = h;
    } else {
        pair0[0] = 1.0;
    }
    if (second_entangled) {
        pair1[0] = h;
        pair1[3] = h;
    } else {
        pair1[0] = 1.0;
    }
    AmpVector v;
    // index = 4*(2*a0 + b0) + (2*a1 + b1) under the (A0,B0,A1,B1) ordering
    for (int k = 0; k < 4; ++k) {
        for (int o = 0; o < 4; ++o) {
            v.amps[4 * k + o] = pair0[k] * pair1[o];
        }
    }
    return v;
}

EvolvedInput evolve_input(const ComplexMatrix& u, const AmpVector& input) {
    AmpVector psi;
    for (int i = 0; i < 16; ++i) {
        Complex sum{0.0, 0.0};
        for (int j = 0; j < 16; ++j) {
            sum += u(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                   input.amps[j];
        }
        psi.amps[i] = sum;
    }

    EvolvedInput evolved;
    double cum = 0.0;
    for (int o = 0; o < 4; ++o) {
        double prob = 0.0;
        for (int k = 0; k < 4; ++k) prob += std::norm(psi.amps[4 * k + o]);
        evolved.outcome_prob[o] = prob;
        cum += prob;
        evolved.outcome_cum[o] = cum;

        if (prob > 1e-300) {
            // |<phi+|post>|^2 of the normalized post-measurement pair.
            const Complex overlap = psi.amps[4 * 0 + o] + psi.amps[4 * 3 + o];
            evolved.conditional_fidelity[o] = 0.5 * std::norm(overlap) / prob;
        }
    }
    evolved.outcome_cum[3] = 1.0;  // guard against rounding in the last bin
    return evolved;
}

}  // namespace

OracleResult mc_evaluate(const Protocol& proto,
                         const std::optional<ProtocolParams>& params,
                         double input_fidelity, const ChannelModel& ch,
                         const OracleConfig& cfg) {
    if (!(input_fidelity >= 0.0 && input_fidelity <= 1.0)) {
        throw std::domain_error("mc_evaluate: input fidelity must lie in [0,1]");
    }
    if (cfg.num_samples == 0) {
        throw std::invalid_argument("mc_evaluate: num_samples must be positive");
    }
    const ComplexMatrix u = circuit_unitary(bind(proto, params));

    std::array<EvolvedInput, 4> evolved;
    for (int first = 0; first < 2; ++first) {
        for (int second = 0; second < 2; ++second) {
            evolved[2 * first + second] =
                evolve_input(u, product_input(first == 1, second == 1));
        }
    }

    std::array<bool, 4> success{};
    for (auto [a, b] : proto.success_set) success[2 * a + b] = true;

    const double p = ch.flip_probability();
    std::array<std::uint64_t, 4> outcome_count{};
    std::uint64_t num_success = 0;
    double fid_sum = 0.0;
    double fid_sq_sum = 0.0;

    for (std::uint64_t i = 0; i < cfg.num_samples; ++i) {
        SplitMix64 rng = sample_stream(cfg.seed, i);
        const int first = rng.next_unit() < input_fidelity ? 1 : 0;
        const int second = rng.next_unit() < input_fidelity ? 1 : 0;
        const EvolvedInput& e = evolved[2 * first + second];

        const double draw = rng.next_unit();
        int outcome = 3;
        for (int o = 0; o < 4; ++o) {
            if (draw < e.outcome_cum[o]) {
                outcome = o;
                break;
            }
        }
        outcome_count[outcome] += 1;

        const int sent_x = outcome >> 1;
        const int sent_y = outcome & 1;
        const int recv_x = (rng.next_unit() < p) ? 1 - sent_x : sent_x;
        const int recv_y = (rng.next_unit() < p) ? 1 - sent_y : sent_y;
        if (success[2 * recv_x + recv_y]) {
            num_success += 1;
            const double f = e.conditional_fidelity[outcome];
            fid_sum += f;
            fid_sq_sum += f * f;
        }
    }

    OracleResult result;
    result.num_samples = cfg.num_samples;
    result.num_successes = num_success;
    const double n = static_cast<double>(cfg.num_samples);
    for (int o = 0; o < 4; ++o) {
        result.outcome_freq[o] = static_cast<double>(outcome_count[o]) / n;
    }
    result.p_succ = static_cast<double>(num_success) / n;
    result.p_succ_stderr = std::sqrt(result.p_succ * (1.0 - result.p_succ) / n);
    if (num_success > 0) {
        const double ns = static_cast<double>(num_success);
        result.avg_fidelity = fid_sum / ns;
        if (num_success > 1) {
            const double var =
                std::max(0.0, (fid_sq_sum - ns * result.avg_fidelity *
                                                result.avg_fidelity) /
                                  (ns - 1.0));
            result.avg_fidelity_stderr = std::sqrt(var / ns);
        }
    }
    return result;
}

}  // namespace distill
