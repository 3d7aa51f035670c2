#include "distill/objective.hpp"

#include <algorithm>
#include <cmath>

namespace distill {

namespace {

constexpr double kSuccessProbFloor = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::array<OutcomeStat, 4> outcome_table(const Protocol& proto,
                                         const std::optional<ProtocolParams>& params,
                                         double input_fidelity) {
    const DensityMatrix pair = s_state(input_fidelity);
    const DensityMatrix input(4, kron(pair.mat(), pair.mat()));
    const ComplexMatrix u = circuit_unitary(bind(proto, params));
    const DensityMatrix out = evolve(input, u);
    const MeasurementOutcomes measured = measure_sacrificial(out);

    std::array<OutcomeStat, 4> table;
    for (int o = 0; o < 4; ++o) {
        table[o].probability = measured[o].probability;
        if (measured[o].state) {
            table[o].fidelity = fidelity_to_bell(*measured[o].state);
            table[o].present = true;
        }
    }
    return table;
}

}  // namespace

ChannelModel::ChannelModel(double flip_probability) : p_(flip_probability) {
    if (!(flip_probability >= 0.0 && flip_probability <= 0.5)) {
        throw std::domain_error("ChannelModel: flip probability must lie in [0, 0.5]");
    }
}

double receive_prob(const ChannelModel& ch, std::pair<int, int> sent,
                    std::pair<int, int> received) {
    for (int b : {sent.first, sent.second, received.first, received.second}) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("receive_prob: messages must be bits");
        }
    }
    const double p = ch.flip_probability();
    const double first = (sent.first == received.first) ? 1.0 - p : p;
    const double second = (sent.second == received.second) ? 1.0 - p : p;
    return first * second;
}

EvaluationResult evaluate(const Protocol& proto,
                          const std::optional<ProtocolParams>& params,
                          double input_fidelity, const ChannelModel& ch) {
    EvaluationResult result;
    result.per_outcome = outcome_table(proto, params, input_fidelity);

    double weighted_fidelity = 0.0;
    double p_succ = 0.0;
    for (auto received : proto.success_set) {
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const OutcomeStat& stat = result.per_outcome[2 * x + y];
                const double w = receive_prob(ch, {x, y}, received) * stat.probability;
                p_succ += w;
                if (stat.present) {
                    weighted_fidelity += w * stat.fidelity;
                }
            }
        }
    }
    if (p_succ <= kSuccessProbFloor) {
        throw DegenerateProtocolError(
            "degenerate protocol: success probability vanishes for \"" + proto.name +
            "\"");
    }
    result.p_succ = clamp01(p_succ);
    result.avg_fidelity = clamp01(weighted_fidelity / p_succ);
    return result;
}

double noiseless_objective(const Protocol& proto,
                           const std::optional<ProtocolParams>& params,
                           double input_fidelity) {
    const auto table = outcome_table(proto, params, input_fidelity);
    if (!table[0].present) {
        throw DegenerateProtocolError(
            "degenerate protocol: outcome (0,0) has vanishing probability for \"" +
            proto.name + "\"");
    }
    return table[0].fidelity;
}

}  // namespace distill
