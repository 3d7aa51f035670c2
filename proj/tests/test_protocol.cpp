#include <cmath>

#include "distill/protocol.hpp"
#include "doctest.h"

using namespace distill;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix party_unitary(const std::vector<ProtocolGate>& gates, double theta) {
    Circuit c{4, {}};
    for (const ProtocolGate& g : gates) {
        c.gates.push_back({g.kind, g.targets, g.uses_theta ? theta : g.angle});
    }
    return circuit_unitary(c);
}

}  // namespace

TEST_CASE("registry basics") {
    CHECK(dejmps().num_params == 0);
    CHECK(loccnet().num_params == 1);
    CHECK(na_loccnet().num_params == 1);

    CHECK(dejmps().success_set ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(loccnet().success_set == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(na_loccnet().success_set == std::vector<std::pair<int, int>>{{0, 0}});

    bool has_rzy = false;
    for (const auto& g : na_loccnet().alice) has_rzy |= g.kind == GateKind::RZY;
    CHECK(has_rzy);

    CHECK(builtin_protocol_names().size() == 3);
    CHECK(builtin_protocol("na-loccnet").name == "na-loccnet");
    CHECK_THROWS_AS(builtin_protocol("nope"), std::invalid_argument);
}

TEST_CASE("registry protocols satisfy the structural invariants") {
    for (const auto& name : builtin_protocol_names()) {
        const Protocol p = builtin_protocol(name);
        CHECK_NOTHROW(validate_protocol(p));
        for (const auto& g : p.alice) {
            for (int t : g.targets) CHECK((t == kPosA0 || t == kPosA1));
        }
        for (const auto& g : p.bob) {
            for (int t : g.targets) CHECK((t == kPosB0 || t == kPosB1));
        }
    }
}

TEST_CASE("locality: Alice's unitary commutes with Bob's") {
    for (const auto& name : builtin_protocol_names()) {
        const Protocol p = builtin_protocol(name);
        for (double theta : {0.0, 0.9, 4.2}) {
            const ComplexMatrix ua = party_unitary(p.alice, theta);
            const ComplexMatrix ub = party_unitary(p.bob, theta);
            CHECK(max_abs_diff(matmul(ua, ub), matmul(ub, ua)) < 1e-10);
        }
    }
}

TEST_CASE("bound registry circuits are unitary") {
    CHECK(is_unitary(circuit_unitary(bind(dejmps(), std::nullopt)), 1e-10));
    CHECK(is_unitary(circuit_unitary(bind(loccnet(), ProtocolParams(1.1))), 1e-10));
    CHECK(is_unitary(circuit_unitary(bind(na_loccnet(), ProtocolParams(2.2))),
                     1e-10));
}

TEST_CASE("bind gate counts and party order irrelevance") {
    const Circuit c = bind(dejmps(), std::nullopt);
    CHECK(c.gates.size() == 6);
    CHECK(c.num_qubits == 4);

    // Disjoint supports: concatenating Bob before Alice gives the same unitary.
    const double theta = 0.7;
    Circuit forward = bind(loccnet(), ProtocolParams(theta));
    Circuit reversed{4, {}};
    const Protocol p = loccnet();
    for (const auto& g : p.bob) {
        reversed.gates.push_back({g.kind, g.targets, g.uses_theta ? theta : g.angle});
    }
    for (const auto& g : p.alice) {
        reversed.gates.push_back({g.kind, g.targets, g.uses_theta ? theta : g.angle});
    }
    CHECK(max_abs_diff(circuit_unitary(forward), circuit_unitary(reversed)) < 1e-10);
}

TEST_CASE("bind parameter arity is enforced") {
    CHECK_THROWS_AS(bind(dejmps(), ProtocolParams(0.3)), std::invalid_argument);
    CHECK_THROWS_AS(bind(loccnet(), std::nullopt), std::invalid_argument);
}

TEST_CASE("na-loccnet at theta=0 reduces to its CNOT pair") {
    const Circuit bound = bind(na_loccnet(), ProtocolParams(0.0));
    Circuit cnots_only{4,
                       {{GateKind::CNOT, {kPosA0, kPosA1}, 0.0},
                        {GateKind::CNOT, {kPosB0, kPosB1}, 0.0}}};
    CHECK(max_abs_diff(circuit_unitary(bound), circuit_unitary(cnots_only)) <
          kAlgebraTol);
}

TEST_CASE("theta reduces modulo 2 pi and RZY's global phase cancels") {
    const double theta = 1.234;
    CHECK(ProtocolParams(theta + 2.0 * kPi).theta() ==
          doctest::Approx(theta).epsilon(1e-12));
    CHECK(ProtocolParams(-0.5).theta() ==
          doctest::Approx(2.0 * kPi - 0.5).epsilon(1e-12));

    // Raw angles differing by 2 pi negate the unitary; conjugation kills the
    // sign, so density evolution agrees exactly.
    const GatePlacement a{GateKind::RZY, {0, 1}, theta};
    const GatePlacement b{GateKind::RZY, {0, 1}, theta + 2.0 * kPi};
    CHECK(max_abs_diff(gate_matrix(b), scale(gate_matrix(a), -1.0)) < 1e-12);
    const DensityMatrix s = s_state(0.4);
    CHECK(max_abs_diff(evolve(s, gate_matrix(a)).mat(),
                       evolve(s, gate_matrix(b)).mat()) < 1e-12);
}

TEST_CASE("JSON round trip reproduces identical unitaries") {
    for (const auto& name : builtin_protocol_names()) {
        const Protocol original = builtin_protocol(name);
        const Protocol reloaded = protocol_from_json(protocol_to_json(original));
        CHECK(reloaded.name == original.name);
        CHECK(reloaded.num_params == original.num_params);
        CHECK(reloaded.success_set == original.success_set);

        const std::optional<ProtocolParams> params =
            original.num_params == 1 ? std::optional<ProtocolParams>(1.37)
                                     : std::nullopt;
        CHECK(max_abs_diff(circuit_unitary(bind(original, params)),
                           circuit_unitary(bind(reloaded, params))) < 1e-12);
    }
}

TEST_CASE("circuit JSON rejects malformed descriptions") {
    CHECK_THROWS_AS(protocol_from_json("not json at all"), ProtocolParseError);
    CHECK_THROWS_AS(protocol_from_json("{}"), ProtocolParseError);

    // Alice touching Bob's qubit violates locality.
    CHECK_THROWS_AS(protocol_from_json(R"({
        "name": "bad", "num_params": 0,
        "alice": [{"kind": "RX", "targets": [1], "angle": 0.5}],
        "bob": [], "success_set": [[0,0]]
    })"),
                    ProtocolParseError);

    // Unknown gate kind.
    CHECK_THROWS_AS(protocol_from_json(R"({
        "name": "bad", "num_params": 0,
        "alice": [{"kind": "HADAMARD", "targets": [0], "angle": null}],
        "bob": [], "success_set": [[0,0]]
    })"),
                    ProtocolParseError);

    // Empty success set.
    CHECK_THROWS_AS(protocol_from_json(R"({
        "name": "bad", "num_params": 0,
        "alice": [], "bob": [], "success_set": []
    })"),
                    ProtocolParseError);

    // theta gate in a parameterless protocol.
    CHECK_THROWS_AS(protocol_from_json(R"({
        "name": "bad", "num_params": 0,
        "alice": [{"kind": "RY", "targets": [0], "angle": "theta"}],
        "bob": [], "success_set": [[0,0]]
    })"),
                    ProtocolParseError);
}
