#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "distill/protocol.hpp"

namespace distill {

/// Two independent binary symmetric channels, one per party, each flipping
/// the transmitted bit with probability p. p is restricted to [0, 0.5]; a
/// BSC with p > 0.5 is equivalent to one with 1-p after relabeling.
class ChannelModel {
public:
    explicit ChannelModel(double flip_probability);
    double flip_probability() const { return p_; }

private:
    double p_;
};

/// P(received | sent) for the pair of channels: the product of the two
/// per-party transition probabilities.
double receive_prob(const ChannelModel& ch, std::pair<int, int> sent,
                    std::pair<int, int> received);

struct OutcomeStat {
    double probability = 0.0;  // P^xy of the true measurement outcome
    double fidelity = 0.0;     // F^xy; 0 when the outcome is absent
    bool present = false;
};

struct EvaluationResult {
    double avg_fidelity = 0.0;  // channel-aware conditional average
    double p_succ = 0.0;        // probability Charlie declares success
    std::array<OutcomeStat, 4> per_outcome;  // indexed by 2*x + y
};

/// Thrown when the success probability vanishes, so the conditional average
/// fidelity is undefined.
class DegenerateProtocolError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full pipeline on two copies of s_state(F): bind, evolve, measure the
/// sacrificial pair, then average the conditional fidelities weighted by the
/// channel transition probabilities into the protocol's success set:
///
///   P_succ = sum_{r in S} sum_{xy} P(r | xy) P^xy
///   Fbar   = sum_{r in S} sum_{xy} P(r | xy) P^xy F^xy / P_succ
///
/// Absent outcomes (P^xy below the probability floor) contribute zero weight.
EvaluationResult evaluate(const Protocol& proto,
                          const std::optional<ProtocolParams>& params,
                          double input_fidelity, const ChannelModel& ch);

/// F^00: the conditional fidelity on true outcome (0,0), i.e. the noiseless
/// training objective. Throws DegenerateProtocolError when P^00 vanishes.
double noiseless_objective(const Protocol& proto,
                           const std::optional<ProtocolParams>& params,
                           double input_fidelity);

}  // namespace distill
