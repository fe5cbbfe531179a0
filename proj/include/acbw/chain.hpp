#pragma once

// Block stacks as chains of assemblies. One register bank per stack: an
// explicit Blocks area shared across banks, plus Head and three Node areas
// per bank. Parse builds the chain, pop/put edit it, readout decodes it,
// intersect compares two chains.

#include <array>
#include <cstdint>
#include <vector>

#include "acbw/ops.hpp"
#include "acbw/substrate.hpp"
#include "acbw/types.hpp"

namespace acbw {

struct StackRegisters {
    AreaId blocks = 0;
    AreaId head = 0;
    std::array<AreaId, 3> nodes{};
};

// Creates Head and Node0..2 for one bank and wires the fiber layout:
// Head to every Node, the Node triangle, and every Node to Blocks.
StackRegisters make_stack_registers(Brain& b, AreaId blocks, uint32_t n,
                                    uint32_t k, const std::string& prefix);

struct ChainParams {
    // Binding projections run well past first stability: the settled
    // assemblies keep co-firing, which is what stores the chain edges
    // strongly enough to survive later single-probe evocation.
    StrongParams strong{40, 1.0, 10};
    ProjectParams project{50, 1.0, 10};
    // Majority overlap against the best explicit block assembly. Deep-chain
    // hop evokes arrive attenuated yet still decode to the right block, so
    // the bar sits well below a healthy evoke but well above the overlap a
    // scrambled pattern reaches by chance.
    double tau_decode = 0.5;
    uint32_t probe_rounds = 10;  // pattern-completion budget per probe hop
};

struct StackRep {
    StackRegisters regs{};
    int head_node = -1;  // -1 while the chain is empty
    uint32_t length = 0;
    Assembly head_assembly{};
    std::vector<BlockId> shadow;  // symbolic mirror, top to bottom
    uint64_t rounds_total = 0;
    uint32_t blocks_processed = 0;
};

// The removed-blocks chain has the same shape as a stack chain; it shares
// the Blocks area and owns four additional areas.
using TableRep = StackRep;

// Runs the parser over the whole stack (given top to bottom). Leaves every
// bank area and fiber inhibited, with the chain stored in the weights.
StackRep parse_stack(Brain& b, const StackRegisters& regs,
                     const std::vector<BlockId>& stack, ChainParams params = {});

// Walks the chain from Head downward with plasticity suppressed, decoding
// one block per node visit; stops at the first decode below tau_decode.
std::vector<BlockId> readout(Brain& b, const StackRep& rep, uint32_t max_len,
                             ChainParams params = {});

struct ReadoutStats {
    std::vector<BlockId> blocks;
    uint32_t probes = 0;             // node assemblies visited and decoded
    uint32_t strong_assemblies = 0;  // of those, self-sustaining at 0.95
};

ReadoutStats readout_with_stats(Brain& b, const StackRep& rep, uint32_t max_len,
                                ChainParams params = {});

struct PopResult {
    BlockId block = 0;
    double confidence = 0.0;
};

// Removes the top block: decodes it, advances Head to the block below, and
// optionally records the removed block into the table chain.
PopResult pop_top(Brain& b, StackRep& rep, TableRep* table = nullptr,
                  ChainParams params = {});

// Pushes a block on top of the chain (chain restart when the rep is empty).
void put_block(Brain& b, StackRep& rep, BlockId block, ChainParams params = {});

struct IntersectResult {
    uint32_t height = 0;
    BlockId top_common = 0;  // meaningful only when height >= 1
    bool degraded = false;   // some readout stopped before its full length
};

// Longest common bottom-up run of the two decoded chains.
IntersectResult intersect(Brain& b, const StackRep& a, const StackRep& b2,
                          ChainParams params = {});

}  // namespace acbw
