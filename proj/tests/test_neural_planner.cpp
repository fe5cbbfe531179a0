#include <stdexcept>

#include "acbw/neural_planner.hpp"
#include "doctest.h"

using namespace acbw;

namespace {

NeuralPlannerParams small_params(uint64_t seed, uint32_t n) {
    NeuralPlannerParams p;
    p.n = n;
    p.seed = seed;
    return p;
}

BWConfig cfg(std::vector<Stack> stacks) {
    BWConfig c;
    c.stacks = std::move(stacks);
    return c;
}

}  // namespace

TEST_CASE("neural naive plan matches the symbolic plan move for move") {
    auto init = cfg({{2, 1}, {3}});
    auto goal = cfg({{1, 3}, {2}});
    auto result =
        neural_plan(init, goal, Provenance::naive, small_params(11, 2500));
    REQUIRE(result.readouts_complete);
    CHECK(result.plan.moves == plan_naive(init, goal).moves);
    CHECK(validate_plan(init, goal, result.plan));
    CHECK(result.plan.neural_trace.size() == result.plan.moves.size());
    CHECK(result.min_confidence >= 0.75);
    CHECK(result.rounds_total > 0);
    CHECK(!result.trace.empty());
}

TEST_CASE("neural 2approx keeps the matched suffix in place") {
    // stack heights stay at three or less: taller chains need the full
    // production neuron counts to read back reliably
    auto init = cfg({{4, 1, 2}, {3, 5}});
    auto goal = cfg({{1, 2}, {5, 3}, {4}});
    auto result =
        neural_plan(init, goal, Provenance::two_approx, small_params(21, 3000));
    REQUIRE(result.readouts_complete);
    auto symbolic = plan_2approx(init, goal);
    CHECK(result.plan.moves == symbolic.moves);
    CHECK(result.plan.moves.size() == 3);
    CHECK(validate_plan(init, goal, result.plan));
}

TEST_CASE("neural 2approx grows a matched stack in place") {
    auto init = cfg({{2, 1}, {3}});
    auto goal = cfg({{3, 2, 1}});
    auto result =
        neural_plan(init, goal, Provenance::two_approx, small_params(61, 3000));
    REQUIRE(result.readouts_complete);
    CHECK(result.plan.moves ==
          std::vector<Move>{{Move::Kind::put_on, 3, 2}});
    CHECK(validate_plan(init, goal, result.plan));
}

TEST_CASE("identity task needs no moves and keeps its chains") {
    auto init = cfg({{1, 2}, {3}});
    auto result =
        neural_plan(init, init, Provenance::two_approx, small_params(31, 2500));
    REQUIRE(result.readouts_complete);
    CHECK(result.plan.moves.empty());
    CHECK(result.min_confidence == 1.0);
    CHECK(result.rounds_total > 0);
}

TEST_CASE("pop confidences land in the trace, puts record unity") {
    auto init = cfg({{1, 2, 3}});
    auto goal = cfg({{3, 2, 1}});
    auto result =
        neural_plan(init, goal, Provenance::naive, small_params(41, 2500));
    REQUIRE(result.readouts_complete);
    REQUIRE(result.plan.neural_trace.size() == 4);
    CHECK(result.plan.neural_trace[0] >= 0.75);
    CHECK(result.plan.neural_trace[0] <= 1.0);
    CHECK(result.plan.neural_trace[1] >= 0.75);
    CHECK(result.plan.neural_trace[2] == 1.0);
    CHECK(result.plan.neural_trace[3] == 1.0);
    CHECK(validate_plan(init, goal, result.plan));
}

TEST_CASE("undersized brains still complete with an honest report") {
    auto init = cfg({{1, 2, 3}});
    auto goal = cfg({{3, 2, 1}});
    auto result =
        neural_plan(init, goal, Provenance::naive, small_params(51, 500));
    CHECK(result.plan.moves.size() == 4);
    CHECK(result.trace.size() >= 4);
    if (result.readouts_complete) CHECK(validate_plan(init, goal, result.plan));
}

TEST_CASE("mismatched block sets are rejected up front") {
    CHECK_THROWS_AS(neural_plan(cfg({{1}}), cfg({{1, 2}}), Provenance::naive,
                                small_params(1, 500)),
                    std::invalid_argument);
}
