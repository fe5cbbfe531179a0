#pragma once

// Task files: a pair of block configurations in a line-oriented text format,
// plus a seeded random task generator for experiments.

#include <cstdint>
#include <string>

#include "acbw/planner.hpp"

namespace acbw {

struct TaskFile {
    BWConfig initial;
    BWConfig goal;
};

// Text format: an `initial:` section followed by a `goal:` section, one stack
// per line as space-separated block ids top to bottom. `#` starts a comment,
// blank lines are ignored. Throws std::invalid_argument with the offending
// line number for malformed tokens or duplicate blocks, and a message naming
// the block for mismatched block sets.
TaskFile parse_task(const std::string& text);

// Canonical form: within each section stacks are ordered by their bottom
// block id. parse_task(serialize_task(t)) reproduces t.
std::string serialize_task(const TaskFile& task);

// Two independent random configurations over blocks 1..s, built by dropping
// each block in turn onto the table or a uniformly chosen existing stack,
// honoring the stack-count and height bounds. Deterministic in seed. The
// sampling is not uniform over configurations; tall stacks are rarer.
TaskFile random_task(uint32_t s, uint32_t max_stacks, uint32_t max_height,
                     uint64_t seed);

}  // namespace acbw
