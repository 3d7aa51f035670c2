#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "distill/qstate.hpp"

namespace distill {

/// A protocol gate whose angle is either a fixed value or the protocol's
/// single free parameter theta.
struct ProtocolGate {
    GateKind kind;
    std::vector<int> targets;
    bool uses_theta = false;
    double angle = 0.0;  // used when !uses_theta; ignored for CNOT
};

/// A two-pair distillation protocol: Alice's circuit over positions {A0,A1},
/// Bob's over {B0,B1}, and the set of received message pairs Charlie treats
/// as success.
struct Protocol {
    std::string name;
    std::vector<ProtocolGate> alice;
    std::vector<ProtocolGate> bob;
    std::vector<std::pair<int, int>> success_set;  // received (alice, bob) bits
    int num_params = 0;                            // 0 or 1
};

/// Thrown when circuit-description JSON is malformed or violates the
/// protocol invariants (locality, success set, parameter count).
class ProtocolParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks locality (Alice on {0,2}, Bob on {1,3}), target validity, a
/// nonempty success set, and that theta-bearing gates appear iff
/// num_params == 1. Throws ProtocolParseError on violation.
void validate_protocol(const Protocol& proto);

/// The protocol's free parameter, reduced into [0, 2*pi) on construction.
class ProtocolParams {
public:
    explicit ProtocolParams(double theta_radians);
    double theta() const { return theta_; }

private:
    double theta_;
};

// Built-in registry.
Protocol dejmps();
Protocol loccnet();
Protocol na_loccnet();

const std::vector<std::string>& builtin_protocol_names();

/// Looks up "dejmps", "loccnet" or "na-loccnet"; throws std::invalid_argument
/// for unknown names.
Protocol builtin_protocol(const std::string& name);

/// Concatenates Alice's and Bob's gates into one 4-qubit circuit with all
/// angles concrete. params must be supplied iff num_params == 1.
Circuit bind(const Protocol& proto, const std::optional<ProtocolParams>& params);

/// Circuit-description file format (JSON):
///   {"name": str, "alice": [gate...], "bob": [gate...],
///    "success_set": [[0,0],...], "num_params": int}
/// with gate = {"kind": "RX|RY|RZ|RZY|CNOT", "targets": [int,...],
///              "angle": float | "theta" | null}.
Protocol protocol_from_json(const std::string& json_text);
std::string protocol_to_json(const Protocol& proto);

}  // namespace distill
