#pragma once

// Neural execution of the two planners. Every stack gets its own register
// bank inside one shared brain; removed blocks decode their identity from the
// Blocks area on the way out, and the 2-approximation's stack matching runs
// on chain intersection instead of the symbolic suffix.

#include <cstdint>
#include <string>
#include <vector>

#include "acbw/chain.hpp"
#include "acbw/planner.hpp"

namespace acbw {

struct NeuralPlannerParams {
    uint32_t n = 100000;
    uint32_t k = 50;
    double p = 0.1;
    double beta = 0.1;
    uint64_t seed = 1;
    ChainParams chain{};
};

struct NeuralPlanResult {
    // Pop moves carry the decoded block id; put moves place goal-directed
    // blocks, so their ids are the planner's own. neural_trace holds one
    // confidence per move (1.0 for puts, which decode nothing).
    Plan plan;

    // True when every pop decoded at or above tau_decode, no matching
    // readout degraded, and the final readback of every goal stack matched
    // exactly. When true, the plan equals its symbolic counterpart
    // move for move.
    bool readouts_complete = false;

    double min_confidence = 1.0;  // weakest pop decode; 1.0 with no pops
    std::vector<std::string> trace;  // one line per neural event
    uint64_t rounds_total = 0;
    uint32_t blocks_processed = 0;
};

// Runs the naive or 2-approximation planner with all stack edits executed
// neurally. The shadow bookkeeping drives loop bounds; decode quality is
// reported, never trusted for control flow.
NeuralPlanResult neural_plan(const BWConfig& init, const BWConfig& goal,
                             Provenance algo,
                             const NeuralPlannerParams& params);

}  // namespace acbw
