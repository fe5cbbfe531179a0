#include <set>
#include <stdexcept>
#include <string>

#include "acbw/instances.hpp"
#include "doctest.h"

using namespace acbw;

namespace {

std::string thrown_message(const std::string& text) {
    try {
        parse_task(text);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("task text parses into both configurations") {
    auto task = parse_task("initial:\n4 5 3 1 2\ngoal:\n4 1 2\n3 5\n");
    REQUIRE(task.initial.stacks.size() == 1);
    CHECK(task.initial.stacks[0] == Stack{4, 5, 3, 1, 2});
    REQUIRE(task.goal.stacks.size() == 2);
    CHECK(task.goal.stacks[0] == Stack{4, 1, 2});
    CHECK(task.goal.stacks[1] == Stack{3, 5});
}

TEST_CASE("trivial one block task") {
    auto task = parse_task("initial:\n1\ngoal:\n1\n");
    CHECK(task.initial.stacks == std::vector<Stack>{{1}});
    CHECK(same_configuration(task.initial, task.goal));
}

TEST_CASE("comments and blank lines are ignored") {
    auto task = parse_task(
        "# generated by hand\n"
        "\n"
        "initial:\n"
        "2 1   # the only stack\n"
        "\n"
        "goal:\n"
        "1\n"
        "2\n");
    CHECK(task.initial.stacks == std::vector<Stack>{{2, 1}});
    CHECK(task.goal.stacks.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    auto msg = thrown_message("initial:\n1 x 2\ngoal:\n1 2\n");
    CHECK(msg.find("line 2") != std::string::npos);

    msg = thrown_message("initial:\n1 2\n2\ngoal:\n1 2\n");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("duplicate block 2") != std::string::npos);

    msg = thrown_message("1 2\ninitial:\ngoal:\n");
    CHECK(msg.find("line 1") != std::string::npos);
}

TEST_CASE("mismatched block sets name the block") {
    auto msg = thrown_message("initial:\n1 2 3\ngoal:\n1 2\n");
    CHECK(msg.find("block 3") != std::string::npos);
    CHECK(msg.find("goal") != std::string::npos);

    msg = thrown_message("initial:\n1 2\ngoal:\n1 2 3\n");
    CHECK(msg.find("block 3") != std::string::npos);
    CHECK(msg.find("initial") != std::string::npos);
}

TEST_CASE("missing or duplicate sections are rejected") {
    CHECK_THROWS_AS(parse_task("initial:\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_task("goal:\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_task("initial:\n1\ninitial:\ngoal:\n1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_task(""), std::invalid_argument);
}

TEST_CASE("non contiguous ids are rejected") {
    CHECK_THROWS_AS(parse_task("initial:\n2 4\ngoal:\n4 2\n"),
                    std::invalid_argument);
}

TEST_CASE("serialize orders stacks by bottom block") {
    TaskFile task;
    task.initial.stacks = {{4, 5, 3, 1, 2}};
    task.goal.stacks = {{3, 5}, {4, 1, 2}};
    CHECK(serialize_task(task) == "initial:\n4 5 3 1 2\ngoal:\n4 1 2\n3 5\n");
}

TEST_CASE("roundtrip identity on random tasks") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        auto task = random_task(8, 4, 5, seed);
        auto text = serialize_task(task);
        auto back = parse_task(text);
        CHECK(same_configuration(task.initial, back.initial));
        CHECK(same_configuration(task.goal, back.goal));
        CHECK(serialize_task(back) == text);
    }
}

TEST_CASE("random tasks honor the bounds") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto task = random_task(10, 5, 7, seed);
        for (const BWConfig* cfg : {&task.initial, &task.goal}) {
            CHECK(cfg->stacks.size() <= 5);
            for (const auto& st : cfg->stacks) CHECK(st.size() <= 7);
            CHECK(block_count(*cfg) == 10);
        }
    }
}

TEST_CASE("single block task is forced") {
    auto task = random_task(1, 5, 7, 99);
    CHECK(task.initial.stacks == std::vector<Stack>{{1}});
    CHECK(task.goal.stacks == std::vector<Stack>{{1}});
}

TEST_CASE("generation is deterministic in the seed") {
    auto a = serialize_task(random_task(10, 5, 7, 12345));
    auto b = serialize_task(random_task(10, 5, 7, 12345));
    CHECK(a == b);
    auto c = serialize_task(random_task(10, 5, 7, 12346));
    CHECK(a != c);
}

TEST_CASE("initial and goal are sampled independently") {
    int differing = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto task = random_task(10, 5, 7, seed);
        if (!same_configuration(task.initial, task.goal)) ++differing;
    }
    CHECK(differing >= 8);
}

TEST_CASE("unsatisfiable bounds are rejected") {
    CHECK_THROWS_AS(random_task(11, 2, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_task(0, 2, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_task(3, 0, 5, 1), std::invalid_argument);
    CHECK(random_task(10, 2, 5, 1).initial.stacks.size() == 2);
}
