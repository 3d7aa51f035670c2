#include "distill/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace distill {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

// Sentinel strictly below any fidelity; marks grid points whose evaluation
// is degenerate so the search skips them.
constexpr double kSkipped = -1.0;

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

double call_objective(const std::function<double(double)>& objective, double theta) {
    const double wrapped = wrap_angle(theta);
    double value;
    try {
        value = objective(wrapped);
    } catch (const std::exception& e) {
        throw std::runtime_error("objective evaluation failed at theta=" +
                                 std::to_string(wrapped) + ": " + e.what());
    }
    if (std::isnan(value)) {
        throw std::runtime_error("objective returned NaN at theta=" +
                                 std::to_string(wrapped));
    }
    return value;
}

}  // namespace

MaximizeResult maximize_theta(const std::function<double(double)>& objective,
                              const SearchConfig& cfg) {
    if (cfg.grid_points < 8) {
        throw std::invalid_argument("maximize_theta: grid_points must be >= 8");
    }
    if (!(cfg.refine_tol > 0.0)) {
        throw std::invalid_argument("maximize_theta: refine_tol must be positive");
    }
    if (cfg.refine_max_iter < 1) {
        throw std::invalid_argument("maximize_theta: refine_max_iter must be positive");
    }

    const double step = kTwoPi / cfg.grid_points;
    double best_theta = 0.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.grid_points; ++k) {
        const double theta = k * step;
        const double value = call_objective(objective, theta);
        if (value > best_value) {  // strict: ties keep the smallest theta
            best_theta = theta;
            best_value = value;
        }
    }

    // Golden-section refinement on the bracket around the best grid point.
    double lo = best_theta - step;
    double hi = best_theta + step;
    double inner_lo = hi - kInvGolden * (hi - lo);
    double inner_hi = lo + kInvGolden * (hi - lo);
    double f_lo = call_objective(objective, inner_lo);
    double f_hi = call_objective(objective, inner_hi);
    for (int iter = 0; iter < cfg.refine_max_iter && (hi - lo) > cfg.refine_tol; ++iter) {
        if (f_lo > f_hi) {
            hi = inner_hi;
            inner_hi = inner_lo;
            f_hi = f_lo;
            inner_lo = hi - kInvGolden * (hi - lo);
            f_lo = call_objective(objective, inner_lo);
        } else {
            lo = inner_lo;
            inner_lo = inner_hi;
            f_lo = f_hi;
            inner_hi = lo + kInvGolden * (hi - lo);
            f_hi = call_objective(objective, inner_hi);
        }
    }

    MaximizeResult result{best_theta, best_value};
    const double refined = 0.5 * (lo + hi);
    const double refined_value = call_objective(objective, refined);
    if (refined_value > result.value) {
        result = {refined, refined_value};
    }
    // Either inner point may beat the midpoint when refinement stopped early.
    if (f_lo > result.value) result = {inner_lo, f_lo};
    if (f_hi > result.value) result = {inner_hi, f_hi};
    result.theta = wrap_angle(result.theta);
    return result;
}

OptimizedProtocol optimize_protocol(const Protocol& proto, double input_fidelity,
                                    const ChannelModel& ch, OptimizeMode mode,
                                    const SearchConfig& cfg) {
    if (proto.num_params == 0) {
        throw std::invalid_argument("optimize_protocol: protocol \"" + proto.name +
                                    "\" has no free parameters");
    }

    const auto objective = [&](double theta) -> double {
        try {
            if (mode == OptimizeMode::Noiseless) {
                return noiseless_objective(proto, ProtocolParams(theta), input_fidelity);
            }
            return evaluate(proto, ProtocolParams(theta), input_fidelity, ch)
                .avg_fidelity;
        } catch (const DegenerateProtocolError&) {
            return kSkipped;
        }
    };

    const MaximizeResult best = maximize_theta(objective, cfg);
    if (best.value <= kSkipped) {
        throw DegenerateProtocolError("optimize_protocol: protocol \"" + proto.name +
                                      "\" is degenerate at every searched theta");
    }
    ProtocolParams params(best.theta);
    return OptimizedProtocol{params, evaluate(proto, params, input_fidelity, ch)};
}

}  // namespace distill
