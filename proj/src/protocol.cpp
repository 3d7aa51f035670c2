#include "distill/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace distill {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool targets_allowed(const std::vector<ProtocolGate>& gates,
                     std::initializer_list<int> allowed) {
    for (const ProtocolGate& g : gates) {
        for (int t : g.targets) {
            if (std::find(allowed.begin(), allowed.end(), t) == allowed.end()) {
                return false;
            }
        }
    }
    return true;
}

GatePlacement to_placement(const ProtocolGate& g, double theta) {
    return GatePlacement{g.kind, g.targets, g.uses_theta ? theta : g.angle};
}

nlohmann::json gate_to_json(const ProtocolGate& g) {
    nlohmann::json j;
    j["kind"] = gate_kind_name(g.kind);
    j["targets"] = g.targets;
    if (g.kind == GateKind::CNOT) {
        j["angle"] = nullptr;
    } else if (g.uses_theta) {
        j["angle"] = "theta";
    } else {
        j["angle"] = g.angle;
    }
    return j;
}

ProtocolGate gate_from_json(const nlohmann::json& j) {
    ProtocolGate g;
    g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
    g.targets = j.at("targets").get<std::vector<int>>();
    const auto& angle = j.at("angle");
    if (angle.is_null()) {
        if (g.kind != GateKind::CNOT) {
            throw ProtocolParseError("rotation gate is missing its angle");
        }
    } else if (angle.is_string()) {
        if (angle.get<std::string>() != "theta") {
            throw ProtocolParseError("angle string must be \"theta\"");
        }
        g.uses_theta = true;
    } else if (angle.is_number()) {
        g.angle = angle.get<double>();
    } else {
        throw ProtocolParseError("angle must be a number, \"theta\" or null");
    }
    return g;
}

}  // namespace

void validate_protocol(const Protocol& proto) {
    if (proto.num_params != 0 && proto.num_params != 1) {
        throw ProtocolParseError("num_params must be 0 or 1");
    }
    if (!targets_allowed(proto.alice, {kPosA0, kPosA1})) {
        throw ProtocolParseError("Alice's gates must touch only positions {0,2}");
    }
    if (!targets_allowed(proto.bob, {kPosB0, kPosB1})) {
        throw ProtocolParseError("Bob's gates must touch only positions {1,3}");
    }
    if (proto.success_set.empty()) {
        throw ProtocolParseError("success set must be nonempty");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : proto.success_set) {
        if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
            throw ProtocolParseError("success set entries must be bit pairs");
        }
        if (!seen.insert({a, b}).second) {
            throw ProtocolParseError("duplicate success set entry");
        }
    }
    bool any_theta = false;
    for (const auto* side : {&proto.alice, &proto.bob}) {
        for (const ProtocolGate& g : *side) {
            if (g.uses_theta && g.kind == GateKind::CNOT) {
                throw ProtocolParseError("CNOT cannot carry the free parameter");
            }
            any_theta = any_theta || g.uses_theta;
            // Shape checks are delegated to the gate layer.
            GatePlacement p = to_placement(g, 0.0);
            embed_gate(p, 4);
        }
    }
    if (any_theta != (proto.num_params == 1)) {
        throw ProtocolParseError(
            "theta-bearing gates must appear exactly when num_params == 1");
    }
}

ProtocolParams::ProtocolParams(double theta_radians) {
    if (!std::isfinite(theta_radians)) {
        throw std::domain_error("ProtocolParams: theta must be finite");
    }
    theta_ = std::fmod(theta_radians, kTwoPi);
    if (theta_ < 0.0) theta_ += kTwoPi;
}

Protocol dejmps() {
    Protocol p;
    p.name = "dejmps";
    p.alice = {
        {GateKind::RX, {kPosA0}, false, kPi / 2.0},
        {GateKind::RX, {kPosA1}, false, kPi / 2.0},
        {GateKind::CNOT, {kPosA0, kPosA1}, false, 0.0},
    };
    p.bob = {
        {GateKind::RX, {kPosB0}, false, -kPi / 2.0},
        {GateKind::RX, {kPosB1}, false, -kPi / 2.0},
        {GateKind::CNOT, {kPosB0, kPosB1}, false, 0.0},
    };
    p.success_set = {{0, 0}, {1, 1}};
    p.num_params = 0;
    return p;
}

Protocol loccnet() {
    Protocol p;
    p.name = "loccnet";
    p.alice = {
        {GateKind::CNOT, {kPosA1, kPosA0}, false, 0.0},
        {GateKind::RY, {kPosA1}, true, 0.0},
    };
    p.bob = {
        {GateKind::CNOT, {kPosB1, kPosB0}, false, 0.0},
        {GateKind::CNOT, {kPosB0, kPosB1}, false, 0.0},
        {GateKind::RY, {kPosB1}, true, 0.0},
    };
    p.success_set = {{0, 0}};
    p.num_params = 1;
    return p;
}

Protocol na_loccnet() {
    Protocol p;
    p.name = "na-loccnet";
    p.alice = {
        {GateKind::CNOT, {kPosA0, kPosA1}, false, 0.0},
        {GateKind::RZY, {kPosA0, kPosA1}, true, 0.0},
    };
    p.bob = {
        {GateKind::CNOT, {kPosB0, kPosB1}, false, 0.0},
        {GateKind::RZY, {kPosB0, kPosB1}, true, 0.0},
    };
    p.success_set = {{0, 0}};
    p.num_params = 1;
    return p;
}

const std::vector<std::string>& builtin_protocol_names() {
    static const std::vector<std::string> names = {"dejmps", "loccnet", "na-loccnet"};
    return names;
}

Protocol builtin_protocol(const std::string& name) {
    if (name == "dejmps") return dejmps();
    if (name == "loccnet") return loccnet();
    if (name == "na-loccnet") return na_loccnet();
    throw std::invalid_argument("unknown protocol: " + name +
                                " (known: dejmps, loccnet, na-loccnet)");
}

Circuit bind(const Protocol& proto, const std::optional<ProtocolParams>& params) {
    validate_protocol(proto);
    if ((proto.num_params == 1) != params.has_value()) {
        throw std::invalid_argument(
            proto.num_params == 1
                ? "bind: protocol requires a theta parameter"
                : "bind: protocol has no free parameters but theta was supplied");
    }
    const double theta = params ? params->theta() : 0.0;
    Circuit c;
    c.num_qubits = 4;
    for (const ProtocolGate& g : proto.alice) c.gates.push_back(to_placement(g, theta));
    for (const ProtocolGate& g : proto.bob) c.gates.push_back(to_placement(g, theta));
    return c;
}

Protocol protocol_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolParseError(std::string("invalid JSON: ") + e.what());
    }
    Protocol p;
    try {
        p.name = j.at("name").get<std::string>();
        for (const auto& g : j.at("alice")) p.alice.push_back(gate_from_json(g));
        for (const auto& g : j.at("bob")) p.bob.push_back(gate_from_json(g));
        for (const auto& s : j.at("success_set")) {
            if (!s.is_array() || s.size() != 2) {
                throw ProtocolParseError("success_set entries must be [a,b] pairs");
            }
            p.success_set.emplace_back(s[0].get<int>(), s[1].get<int>());
        }
        p.num_params = j.at("num_params").get<int>();
    } catch (const ProtocolParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolParseError(std::string("bad circuit description: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ProtocolParseError(std::string("bad circuit description: ") + e.what());
    }
    try {
        validate_protocol(p);
    } catch (const std::invalid_argument& e) {
        throw ProtocolParseError(e.what());
    }
    return p;
}

std::string protocol_to_json(const Protocol& proto) {
    validate_protocol(proto);
    nlohmann::json j;
    j["name"] = proto.name;
    j["alice"] = nlohmann::json::array();
    for (const ProtocolGate& g : proto.alice) j["alice"].push_back(gate_to_json(g));
    j["bob"] = nlohmann::json::array();
    for (const ProtocolGate& g : proto.bob) j["bob"].push_back(gate_to_json(g));
    j["success_set"] = nlohmann::json::array();
    for (auto [a, b] : proto.success_set) {
        j["success_set"].push_back(nlohmann::json::array({a, b}));
    }
    j["num_params"] = proto.num_params;
    return j.dump(2) + "\n";
}

}  // namespace distill
