#pragma once

#include <functional>

#include "distill/objective.hpp"

namespace distill {

struct SearchConfig {
    int grid_points = 1024;      // >= 8
    double refine_tol = 1e-9;    // radians
    int refine_max_iter = 200;
};

struct MaximizeResult {
    double theta = 0.0;
    double value = 0.0;
};

/// Maximizes a scalar objective over theta in [0, 2*pi): a uniform coarse
/// grid followed by golden-section refinement of the bracketing interval
/// around the best grid point. Deterministic; grid ties break toward the
/// smallest theta; the returned value is never below the best grid value.
/// Exceptions from the objective are rethrown with the offending theta
/// attached to the message.
MaximizeResult maximize_theta(const std::function<double(double)>& objective,
                              const SearchConfig& cfg = {});

enum class OptimizeMode {
    NoiseAware,  // maximize the channel-aware average fidelity Fbar(theta)
    Noiseless,   // maximize F^00(theta), then report metrics at the actual p
};

struct OptimizedProtocol {
    ProtocolParams params;
    EvaluationResult result;
};

/// One-dimensional search over the protocol's free parameter. Requires
/// num_params == 1. Grid points where the evaluation is degenerate are
/// skipped; if every point is degenerate the error propagates.
OptimizedProtocol optimize_protocol(const Protocol& proto, double input_fidelity,
                                    const ChannelModel& ch, OptimizeMode mode,
                                    const SearchConfig& cfg = {});

}  // namespace distill
