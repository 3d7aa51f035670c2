#include <cmath>
#include <random>

#include "distill/objective.hpp"
#include "doctest.h"

using namespace distill;

namespace {

// Protocol that always measures (1,0) on |00> pairs: flips A1 before the
// measurement and succeeds only on received (0,0).
Protocol always_flips_a1() {
    Protocol p;
    p.name = "flip-a1";
    p.alice = {{GateKind::RX, {kPosA1}, false, 3.14159265358979323846}};
    p.bob = {};
    p.success_set = {{0, 0}};
    p.num_params = 0;
    return p;
}

DensityMatrix protocol_output_state(const Protocol& proto,
                                    const std::optional<ProtocolParams>& params,
                                    double F) {
    const DensityMatrix pair = s_state(F);
    const DensityMatrix input(4, kron(pair.mat(), pair.mat()));
    return evolve(input, circuit_unitary(bind(proto, params)));
}

}  // namespace

TEST_CASE("channel transition probabilities") {
    CHECK_THROWS_AS(ChannelModel(-0.01), std::domain_error);
    CHECK_THROWS_AS(ChannelModel(0.51), std::domain_error);

    const ChannelModel noiseless(0.0);
    CHECK(receive_prob(noiseless, {0, 1}, {0, 1}) == 1.0);
    CHECK(receive_prob(noiseless, {0, 1}, {0, 0}) == 0.0);

    const ChannelModel quarter(0.25);
    CHECK(receive_prob(quarter, {1, 1}, {0, 0}) ==
          doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(receive_prob(quarter, {0, 0}, {0, 0}) ==
          doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(receive_prob(quarter, {0, 1}, {0, 1}) ==
          doctest::Approx(0.5625).epsilon(1e-15));

    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double total = 0.0;
            for (int r1 = 0; r1 < 2; ++r1) {
                for (int r2 = 0; r2 < 2; ++r2) {
                    total += receive_prob(quarter, {x, y}, {r1, r2});
                }
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
        }
    }

    CHECK_THROWS_AS(receive_prob(quarter, {0, 2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("p=0 reduces the average to the (0,0) branch") {
    const ChannelModel noiseless(0.0);
    for (double theta : {0.4, 1.9, 5.5}) {
        const auto result =
            evaluate(na_loccnet(), ProtocolParams(theta), 0.6, noiseless);
        CHECK(result.avg_fidelity ==
              doctest::Approx(result.per_outcome[0].fidelity).epsilon(1e-12));
        CHECK(result.p_succ ==
              doctest::Approx(result.per_outcome[0].probability).epsilon(1e-12));
        CHECK(noiseless_objective(na_loccnet(), ProtocolParams(theta), 0.6) ==
              doctest::Approx(result.avg_fidelity).epsilon(1e-12));
    }
}

TEST_CASE("p=0.5 erases the channel information") {
    const ChannelModel maximal(0.5);
    const double theta = 2.1;

    // Success probability collapses to |S|/4.
    const auto na = evaluate(na_loccnet(), ProtocolParams(theta), 0.6, maximal);
    CHECK(na.p_succ == doctest::Approx(0.25).epsilon(1e-10));
    const auto dj = evaluate(dejmps(), std::nullopt, 0.6, maximal);
    CHECK(dj.p_succ == doctest::Approx(0.5).epsilon(1e-10));

    // The conditional average equals the fidelity of the partial-traced state.
    const DensityMatrix out =
        protocol_output_state(na_loccnet(), ProtocolParams(theta), 0.6);
    CHECK(na.avg_fidelity ==
          doctest::Approx(fidelity_to_bell(partial_trace_sacrificial(out)))
              .epsilon(1e-10));

    // And is independent of the success set.
    Protocol variant = na_loccnet();
    for (auto success : std::vector<std::vector<std::pair<int, int>>>{
             {{0, 1}}, {{1, 0}, {1, 1}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}) {
        variant.success_set = success;
        const auto alt = evaluate(variant, ProtocolParams(theta), 0.6, maximal);
        CHECK(alt.avg_fidelity == doctest::Approx(na.avg_fidelity).epsilon(1e-10));
    }
}

TEST_CASE("generalized sums reduce to the four-term closed forms") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const double theta = 2.0 * 3.141592653589793 * unit(rng);
        const double F = unit(rng);
        const double p = 0.5 * unit(rng);
        const ChannelModel ch(p);

        // Success set {(0,0)}: the weights must be exactly (1-p)^2, p^2,
        // p(1-p) and (1-p)p on outcomes (0,0),(1,1),(1,0),(0,1).
        const auto result = evaluate(na_loccnet(), ProtocolParams(theta), F, ch);
        const auto& po = result.per_outcome;
        const double p_succ_closed = (1 - p) * (1 - p) * po[0].probability +
                                     p * p * po[3].probability +
                                     p * (1 - p) * po[2].probability +
                                     (1 - p) * p * po[1].probability;
        const double numerator_closed =
            (1 - p) * (1 - p) * po[0].probability * po[0].fidelity +
            p * p * po[3].probability * po[3].fidelity +
            p * (1 - p) * po[2].probability * po[2].fidelity +
            (1 - p) * p * po[1].probability * po[1].fidelity;
        CHECK(result.p_succ == doctest::Approx(p_succ_closed).epsilon(1e-10));
        CHECK(result.avg_fidelity ==
              doctest::Approx(numerator_closed / p_succ_closed).epsilon(1e-10));

        // DEJMPS's two-element success set sums the same pattern twice.
        const auto dj = evaluate(dejmps(), std::nullopt, F, ch);
        const auto& dpo = dj.per_outcome;
        double dj_p_succ = 0.0;
        for (auto received : dejmps().success_set) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    dj_p_succ += receive_prob(ch, {x, y}, received) *
                                 dpo[2 * x + y].probability;
                }
            }
        }
        CHECK(dj.p_succ == doctest::Approx(dj_p_succ).epsilon(1e-10));
    }
}

TEST_CASE("average fidelity stays within [0,1] across the domain") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double theta = 2.0 * 3.141592653589793 * unit(rng);
        const double F = unit(rng);
        const double p = 0.5 * unit(rng);
        for (const auto& name : builtin_protocol_names()) {
            const Protocol proto = builtin_protocol(name);
            const std::optional<ProtocolParams> params =
                proto.num_params == 1 ? std::optional<ProtocolParams>(theta)
                                      : std::nullopt;
            const auto result = evaluate(proto, params, F, ChannelModel(p));
            CHECK(result.avg_fidelity >= 0.0);
            CHECK(result.avg_fidelity <= 1.0);
            CHECK(result.p_succ >= 0.0);
            CHECK(result.p_succ <= 1.0);
        }
    }
}

TEST_CASE("DEJMPS outcome table at F=0.6") {
    // Exact values confirmed against the Monte-Carlo trajectory oracle:
    // matched outcomes carry probability 0.34 and fidelity 16/17 each,
    // mismatched ones probability 0.16 and fidelity 0.
    const auto result = evaluate(dejmps(), std::nullopt, 0.6, ChannelModel(0.0));
    const auto& po = result.per_outcome;
    CHECK(po[0].probability == doctest::Approx(0.34).epsilon(1e-9));
    CHECK(po[3].probability == doctest::Approx(0.34).epsilon(1e-9));
    CHECK(po[1].probability == doctest::Approx(0.16).epsilon(1e-9));
    CHECK(po[2].probability == doctest::Approx(0.16).epsilon(1e-9));
    CHECK(po[0].fidelity == doctest::Approx(16.0 / 17.0).epsilon(1e-9));
    CHECK(po[3].fidelity == doctest::Approx(16.0 / 17.0).epsilon(1e-9));
    CHECK(po[1].fidelity == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(po[2].fidelity == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(result.avg_fidelity == doctest::Approx(16.0 / 17.0).epsilon(1e-9));
    CHECK(result.p_succ == doctest::Approx(0.68).epsilon(1e-9));
}

TEST_CASE("perfect input stays perfect through DEJMPS") {
    const auto result = evaluate(dejmps(), std::nullopt, 1.0, ChannelModel(0.0));
    CHECK(result.avg_fidelity == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("noiseless objective is locally smooth in theta") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = angle(rng);
        const double base = noiseless_objective(loccnet(), ProtocolParams(theta), 0.6);
        const double nudged =
            noiseless_objective(loccnet(), ProtocolParams(theta + 1e-6), 0.6);
        CHECK(std::abs(nudged - base) < 1e-4);
    }
}

TEST_CASE("vanishing success probability raises a degenerate error") {
    const Protocol proto = always_flips_a1();
    CHECK_THROWS_AS(evaluate(proto, std::nullopt, 0.0, ChannelModel(0.0)),
                    DegenerateProtocolError);
    CHECK_THROWS_AS(noiseless_objective(proto, std::nullopt, 0.0),
                    DegenerateProtocolError);
    // With channel noise the wrong outcome can still be received as (0,0).
    CHECK_NOTHROW(evaluate(proto, std::nullopt, 0.0, ChannelModel(0.25)));
}
