#pragma once

// Assembly-level operations on top of the substrate: repeated projection
// until the target stabilizes, whole-network settling, and a
// non-destructive attractor probe.

#include <cstdint>

#include "acbw/substrate.hpp"
#include "acbw/types.hpp"

namespace acbw {

struct ProjectParams {
    uint32_t max_rounds = 50;
    double tol = 1.0;
    // Rounds the target must stay stable before declaring convergence.
    // Values above 1 keep firing the settled winners, which multiplies the
    // weights binding them and is what makes later re-evocation reliable.
    uint32_t stable_rounds = 1;
};

struct StrongParams {
    uint32_t max_rounds = 30;
    double tol = 1.0;
    uint32_t stable_rounds = 1;
};

struct ProjectionResult {
    Assembly assembly;
    uint32_t rounds = 0;
    bool converged = false;
};

struct StrongResult {
    uint32_t rounds = 0;
    bool converged = false;
};

// Clamps one of the block assemblies in an explicit area; block ids are
// 1-based and double as assembly indices.
void activate_block(Brain& b, AreaId blocks, BlockId block);

// Fires src into dst until consecutive dst winner sets overlap by at least
// params.tol. Requires an open fiber src->dst, a disinhibited dst, and a
// source with winners.
ProjectionResult project(Brain& b, AreaId src, AreaId dst,
                         ProjectParams params = {});

// Synchronous settling of every disinhibited area until all of them are
// stable between consecutive steps. Requires at least one disinhibited
// area with winners.
StrongResult strong_project(Brain& b, StrongParams params = {});

// True when firing the area's current winners through its recurrent
// connections alone reproduces at least `threshold` of them. Pure probe:
// no winners move, no weights change, no step is consumed.
bool is_assembly(Brain& b, AreaId area, double threshold = 0.75);

}  // namespace acbw
