#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "distill/objective.hpp"

namespace distill {

struct OracleConfig {
    std::uint64_t num_samples = 1'000'000;
    std::uint64_t seed = 1;
};

struct OracleResult {
    double avg_fidelity = 0.0;
    double avg_fidelity_stderr = 0.0;
    double p_succ = 0.0;
    double p_succ_stderr = 0.0;
    std::array<double, 4> outcome_freq{};  // true outcome frequencies, 2*x+y
    std::uint64_t num_samples = 0;
    std::uint64_t num_successes = 0;
};

/// Monte-Carlo trajectory estimate of the same quantities as evaluate(),
/// using a code path independent of the density-matrix pipeline: each sample
/// draws the two pairs' pure states (|phi+> with probability F, |00>
/// otherwise), applies the bound circuit unitary to the 4-qubit statevector,
/// samples the sacrificial measurement from the Born probabilities, flips
/// each transmitted bit with probability p, and scores success against the
/// protocol's success set. Conditional fidelities are accumulated from the
/// normalized post-measurement statevector.
///
/// Sampling uses counter-based pseudo-random streams keyed on (seed, sample
/// index), so results are reproducible and independent of evaluation order.
OracleResult mc_evaluate(const Protocol& proto,
                         const std::optional<ProtocolParams>& params,
                         double input_fidelity, const ChannelModel& ch,
                         const OracleConfig& cfg);

}  // namespace distill
