#pragma once

// Symbolic blocks world: configurations, the two planners, plan validation,
// and a BFS optimum for small instances. Everything here is pure; the neural
// executions of these planners live in neural_planner.hpp.

#include <cstdint>
#include <string>
#include <vector>

#include "acbw/types.hpp"

namespace acbw {

// One stack, top to bottom.
using Stack = std::vector<BlockId>;

// A configuration is a set of stacks; order between stacks carries no
// meaning. Blocks are unique positive integers, a singleton stack is a
// block sitting on the table.
struct BWConfig {
    std::vector<Stack> stacks;
};

// Validates uniqueness, contiguity 1..s, no empty stacks. Throws
// std::invalid_argument with a description otherwise.
void check_config(const BWConfig& config);

// Total number of blocks.
uint32_t block_count(const BWConfig& config);

// True iff the two configurations hold the same stacks (order ignored).
bool same_configuration(const BWConfig& a, const BWConfig& b);

struct Move {
    enum class Kind { to_table, put_on };
    Kind kind = Kind::to_table;
    BlockId block = 0;
    BlockId target = 0;  // put_on only
};

bool operator==(const Move& a, const Move& b);

// Applies one move. to_table requires block to be a stack top; put_on
// additionally requires block to be a singleton and target a top of another
// stack. Throws std::invalid_argument when the move does not apply.
BWConfig apply_move(const BWConfig& config, const Move& move);

enum class Provenance { naive, two_approx };

struct Plan {
    std::vector<Move> moves;
    Provenance provenance = Provenance::naive;
    std::vector<double> neural_trace;  // per-move decode confidence; empty
                                       // for symbolic plans
};

// One matched (init stack, goal stack) pair sharing a bottom run.
struct StackMatch {
    int init_index = -1;
    int goal_index = -1;
    uint32_t height = 0;
};

// Greedy pairing of init stacks to goal stacks by common-suffix height,
// largest first; ties prefer the lowest init index, then goal index. Only
// pairs with height >= 1 are kept. Throws when the block sets differ.
std::vector<StackMatch> match_stacks(const BWConfig& init,
                                     const BWConfig& goal);

// The same greedy selection from a precomputed matrix of pairwise suffix
// heights (heights[init_index][goal_index]); shared with the neural matcher,
// which fills the matrix by chain intersection instead of symbolically.
std::vector<StackMatch> select_matches(
    const std::vector<std::vector<uint32_t>>& heights);

// Per-stack view of a match set: kept suffix height for every init and goal
// stack (0 when unmatched) and each goal stack's partner init index or -1.
struct MatchLayout {
    std::vector<uint32_t> init_keep;
    std::vector<uint32_t> goal_keep;
    std::vector<int> goal_partner;
};

MatchLayout match_layout(size_t init_count, size_t goal_count,
                         const std::vector<StackMatch>& matches);

// Blocks outside every matched common suffix.
uint32_t misplaced_count(const BWConfig& init, const BWConfig& goal);

// Pops every non-bottom block to the table, then rebuilds each goal stack
// bottom-up.
Plan plan_naive(const BWConfig& init, const BWConfig& goal);

// Keeps the matched common suffixes in place and moves only the blocks
// above them; plan length <= 2 * misplaced_count and never exceeds naive.
Plan plan_2approx(const BWConfig& init, const BWConfig& goal);

// Replays the plan from init; true iff the result equals goal. On an
// inapplicable move returns false and stores its index in failure_index
// (when non-null); -1 means the replay ran through.
bool validate_plan(const BWConfig& init, const BWConfig& goal,
                   const Plan& plan, int* failure_index = nullptr);

// Exact minimum move count by breadth-first search; instances above
// max_blocks (default 7) are rejected.
uint32_t optimal_plan_length(const BWConfig& init, const BWConfig& goal,
                             uint32_t max_blocks = 7);

// One move per line: "TABLE <block>" or "PUT <block> ON <target>".
std::string plan_to_text(const Plan& plan);
Plan plan_from_text(const std::string& text);

}  // namespace acbw
