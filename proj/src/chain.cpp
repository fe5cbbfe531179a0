#include "acbw/chain.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace acbw {

namespace {

struct PlasticityGuard {
    Brain& b;
    bool saved;
    PlasticityGuard(Brain& brain, bool on) : b(brain), saved(brain.plasticity_enabled()) {
        b.set_plasticity(on);
    }
    ~PlasticityGuard() { b.set_plasticity(saved); }
};

void area_on(Brain& b, AreaId a) { b.set_area_inhibition(a, false); }
void area_off(Brain& b, AreaId a) { b.set_area_inhibition(a, true); }
void fiber_on(Brain& b, AreaId x, AreaId y) { b.set_fiber_inhibition(x, y, false); }
void fiber_off(Brain& b, AreaId x, AreaId y) { b.set_fiber_inhibition(x, y, true); }

// One silent step between ops. Recurrent input only counts for areas that
// fired on the immediately preceding step, so this makes every assembly
// stale and keeps the previous op's activity out of the next evocation.
void cooldown(Brain& b) {
    PlasticityGuard quiet(b, false);
    b.step();
}

struct Decode {
    BlockId block = 0;
    double confidence = 0.0;
};

Decode decode_blocks(const Brain& b, AreaId blocks) {
    const uint32_t k = b.area_k(blocks);
    const uint32_t count = b.num_assemblies(blocks);
    std::vector<uint32_t> hits(count, 0);
    for (NeuronId w : b.winners(blocks)) ++hits[w / k];
    Decode d;
    uint32_t best = 0;
    for (uint32_t a = 0; a < count; ++a) {
        if (hits[a] > best) {
            best = hits[a];
            d.block = a + 1;
        }
    }
    d.confidence = double(best) / double(k);
    return d;
}

void snapshot_head(Brain& b, StackRep& rep) {
    auto w = b.winners(rep.regs.head);
    rep.head_assembly.area = rep.regs.head;
    rep.head_assembly.neurons.assign(w.begin(), w.end());
}

// Alg. 1 lines 1-4 plus full teardown: starts a fresh one-block chain.
void bind_first_block(Brain& b, StackRep& rep, BlockId block,
                      const ChainParams& params) {
    const auto& r = rep.regs;
    area_on(b, r.blocks);
    area_on(b, r.head);
    area_on(b, r.nodes[0]);
    // a reused bank may hold winners from a previous chain; they must not
    // fire into the fresh binding, so the forming areas start cold
    b.clear_winners(r.head);
    b.clear_winners(r.nodes[0]);
    fiber_on(b, r.head, r.nodes[0]);
    fiber_on(b, r.nodes[0], r.blocks);
    activate_block(b, r.blocks, block);
    auto s = strong_project(b, params.strong);
    rep.rounds_total += s.rounds;
    ++rep.blocks_processed;
    snapshot_head(b, rep);
    area_off(b, r.head);
    fiber_off(b, r.head, r.nodes[0]);
    fiber_off(b, r.nodes[0], r.blocks);
    area_off(b, r.blocks);
    area_off(b, r.nodes[0]);
    b.release_clamp(r.blocks);
    rep.head_node = 0;
    rep.length = 1;
}

void validate_block(const Brain& b, AreaId blocks, BlockId block) {
    if (block == 0 || block > b.num_assemblies(blocks))
        throw std::invalid_argument("unknown block id " + std::to_string(block));
}

}  // namespace

StackRegisters make_stack_registers(Brain& b, AreaId blocks, uint32_t n,
                                    uint32_t k, const std::string& prefix) {
    StackRegisters r;
    r.blocks = blocks;
    r.head = b.add_area(prefix + ".head", n, k);
    for (int i = 0; i < 3; ++i)
        r.nodes[i] = b.add_area(prefix + ".node" + std::to_string(i), n, k);
    for (int i = 0; i < 3; ++i) {
        b.connect(r.head, r.nodes[i]);
        b.connect(r.nodes[i], r.nodes[(i + 1) % 3]);
        b.connect(r.nodes[i], blocks);
    }
    return r;
}

StackRep parse_stack(Brain& b, const StackRegisters& regs,
                     const std::vector<BlockId>& stack, ChainParams params) {
    if (stack.empty())
        throw std::invalid_argument("parse_stack: stack is empty");
    std::unordered_set<BlockId> seen;
    for (BlockId blk : stack) {
        validate_block(b, regs.blocks, blk);
        if (!seen.insert(blk).second)
            throw std::invalid_argument("parse_stack: duplicate block id " +
                                        std::to_string(blk));
    }

    // normalize the bank so the schedule below fully owns the flags
    area_off(b, regs.blocks);
    area_off(b, regs.head);
    for (int i = 0; i < 3; ++i) {
        area_off(b, regs.nodes[i]);
        fiber_off(b, regs.head, regs.nodes[i]);
        fiber_off(b, regs.nodes[i], regs.nodes[(i + 1) % 3]);
        fiber_off(b, regs.nodes[i], regs.blocks);
    }
    b.release_clamp(regs.blocks);
    cooldown(b);

    PlasticityGuard plastic(b, true);
    StackRep rep;
    rep.regs = regs;
    rep.shadow = stack;

    bind_first_block(b, rep, stack[0], params);
    // bind_first_block tears the whole bank down; the loop below re-opens
    // exactly what each iteration needs, as in the parser schedule
    area_on(b, regs.blocks);

    const uint32_t s = uint32_t(stack.size());
    for (uint32_t i = 2; i <= s; ++i) {
        const AreaId np = regs.nodes[(i - 2) % 3];
        const AreaId nc = regs.nodes[(i - 1) % 3];
        if (i == 2) area_on(b, regs.nodes[0]);
        area_on(b, nc);
        // from i=4 on nc was bound two iterations ago; its stale winners
        // would fire through the reopened fibers and re-ignite old assemblies
        b.clear_winners(nc);
        fiber_on(b, np, nc);
        fiber_on(b, nc, regs.blocks);
        activate_block(b, regs.blocks, stack[i - 1]);
        auto sr = strong_project(b, params.strong);
        rep.rounds_total += sr.rounds;
        ++rep.blocks_processed;
        area_off(b, np);
        fiber_off(b, np, nc);
        fiber_off(b, nc, regs.blocks);
    }
    area_off(b, regs.blocks);
    area_off(b, regs.nodes[(s - 1) % 3]);
    b.release_clamp(regs.blocks);

    rep.head_node = 0;
    rep.length = s;
    return rep;
}

namespace {

// Probe-side evocation: repeated drives into the target so its recurrence
// can complete the pattern, stopping once the image repeats exactly.
// Bypasses inhibition flags like drive does; callers keep plasticity off.
void evoke(Brain& b, AreaId src, AreaId dst, uint32_t max_rounds) {
    std::vector<NeuronId> prev;
    for (uint32_t r = 0; r < max_rounds; ++r) {
        auto cur = b.drive(src, dst);
        if (!prev.empty() && overlap(cur, prev) >= 1.0) break;
        prev.assign(cur.begin(), cur.end());
    }
}

// Shared traversal: evoke the chain top from Head, then per position decode
// through Blocks and advance along the node triangle. Plasticity stays off.
template <typename Visit>
void traverse_chain(Brain& b, const StackRep& rep, uint32_t max_len,
                    const ChainParams& params, Visit&& visit) {
    if (rep.length == 0 || rep.head_node < 0 || max_len == 0) return;
    PlasticityGuard quiet(b, false);
    b.release_clamp(rep.regs.blocks);
    b.step();
    int j = rep.head_node;
    evoke(b, rep.regs.head, rep.regs.nodes[j], params.probe_rounds);
    for (uint32_t pos = 0; pos < max_len; ++pos) {
        b.drive(rep.regs.nodes[j], rep.regs.blocks);
        Decode d = decode_blocks(b, rep.regs.blocks);
        if (d.confidence < params.tau_decode) break;
        if (!visit(d, AreaId(rep.regs.nodes[j]))) break;
        if (pos + 1 < max_len) {
            int nj = (j + 1) % 3;
            evoke(b, rep.regs.nodes[j], rep.regs.nodes[nj], params.probe_rounds);
            j = nj;
        }
    }
}

}  // namespace

std::vector<BlockId> readout(Brain& b, const StackRep& rep, uint32_t max_len,
                             ChainParams params) {
    std::vector<BlockId> out;
    traverse_chain(b, rep, max_len, params, [&](const Decode& d, AreaId) {
        out.push_back(d.block);
        return true;
    });
    return out;
}

ReadoutStats readout_with_stats(Brain& b, const StackRep& rep, uint32_t max_len,
                                ChainParams params) {
    ReadoutStats stats;
    traverse_chain(b, rep, max_len, params, [&](const Decode& d, AreaId node) {
        stats.blocks.push_back(d.block);
        ++stats.probes;
        if (is_assembly(b, node, 0.95)) ++stats.strong_assemblies;
        return true;
    });
    return stats;
}

namespace {

// Parse-style append of one block at the far end of the table chain. The
// tail assembly is first re-evoked from its block so the binding strong
// projection sees a live predecessor.
void table_append(Brain& b, TableRep& t, BlockId block,
                  const ChainParams& params) {
    cooldown(b);
    PlasticityGuard plastic(b, true);
    if (t.length == 0) {
        t.shadow.clear();
        bind_first_block(b, t, block, params);
        t.shadow.assign(1, block);
        return;
    }
    const auto& r = t.regs;
    const uint32_t i = t.length + 1;
    const AreaId np = r.nodes[(i - 2) % 3];
    const AreaId nc = r.nodes[(i - 1) % 3];
    const BlockId prev = t.shadow.back();

    // warm the tail: re-evoke its assembly from the previous block
    area_on(b, r.blocks);
    area_on(b, np);
    fiber_on(b, r.blocks, np);
    activate_block(b, r.blocks, prev);
    auto warm = project(b, r.blocks, np, params.project);
    t.rounds_total += warm.rounds;
    fiber_off(b, r.blocks, np);

    area_on(b, nc);
    b.clear_winners(nc);
    fiber_on(b, np, nc);
    fiber_on(b, nc, r.blocks);
    activate_block(b, r.blocks, block);
    auto sr = strong_project(b, params.strong);
    t.rounds_total += sr.rounds;
    ++t.blocks_processed;

    area_off(b, np);
    area_off(b, nc);
    area_off(b, r.blocks);
    fiber_off(b, np, nc);
    fiber_off(b, nc, r.blocks);
    b.release_clamp(r.blocks);
    t.shadow.push_back(block);
    ++t.length;
}

}  // namespace

PopResult pop_top(Brain& b, StackRep& rep, TableRep* table, ChainParams params) {
    if (rep.length == 0 || rep.head_node < 0)
        throw std::logic_error("pop_top: the stack is empty");
    const auto& r = rep.regs;
    const int h = rep.head_node;
    const int nxt = (h + 1) % 3;

    cooldown(b);
    PlasticityGuard plastic(b, true);

    // evoke the top assembly from Head
    area_on(b, r.nodes[h]);
    fiber_on(b, r.head, r.nodes[h]);
    auto ev = project(b, r.head, r.nodes[h], params.project);
    rep.rounds_total += ev.rounds;
    fiber_off(b, r.head, r.nodes[h]);

    // decode it before any rewiring
    PopResult res;
    {
        PlasticityGuard quiet(b, false);
        b.release_clamp(r.blocks);
        b.drive(r.nodes[h], r.blocks);
        Decode d = decode_blocks(b, r.blocks);
        res.block = d.block;
        res.confidence = d.confidence;
    }

    rep.shadow.erase(rep.shadow.begin());
    --rep.length;
    ++rep.blocks_processed;

    if (rep.length == 0) {
        area_off(b, r.nodes[h]);
        b.clear_winners(r.head);
        rep.head_node = -1;
        rep.head_assembly = {};
    } else {
        // activate the block below the popped one
        area_on(b, r.nodes[nxt]);
        fiber_on(b, r.nodes[h], r.nodes[nxt]);
        auto below = project(b, r.nodes[h], r.nodes[nxt], params.project);
        rep.rounds_total += below.rounds;

        // retire the old top node, bind a fresh head to the new top
        area_off(b, r.nodes[h]);
        fiber_off(b, r.nodes[h], r.nodes[nxt]);
        area_on(b, r.head);
        b.clear_winners(r.head);
        fiber_on(b, r.head, r.nodes[nxt]);
        auto sr = strong_project(b, params.strong);
        rep.rounds_total += sr.rounds;
        snapshot_head(b, rep);

        area_off(b, r.head);
        area_off(b, r.nodes[nxt]);
        fiber_off(b, r.head, r.nodes[nxt]);
        rep.head_node = nxt;
    }

    if (table) table_append(b, *table, res.block, params);
    return res;
}

void put_block(Brain& b, StackRep& rep, BlockId block, ChainParams params) {
    validate_block(b, rep.regs.blocks, block);
    if (std::find(rep.shadow.begin(), rep.shadow.end(), block) != rep.shadow.end())
        throw std::invalid_argument("put_block: block " + std::to_string(block) +
                                    " is already in this stack");
    cooldown(b);
    PlasticityGuard plastic(b, true);
    if (rep.length == 0) {
        bind_first_block(b, rep, block, params);
        rep.shadow.assign(1, block);
        return;
    }

    const auto& r = rep.regs;
    const int h = rep.head_node;
    const int nn = (h + 2) % 3;

    // evoke the current top and keep it alive on its node area
    area_on(b, r.nodes[h]);
    fiber_on(b, r.head, r.nodes[h]);
    auto ev = project(b, r.head, r.nodes[h], params.project);
    rep.rounds_total += ev.rounds;
    fiber_off(b, r.head, r.nodes[h]);

    // bind the new block into the preceding node area
    activate_block(b, r.blocks, block);
    area_on(b, r.blocks);
    area_on(b, r.nodes[nn]);
    b.clear_winners(r.nodes[nn]);
    fiber_on(b, r.blocks, r.nodes[nn]);
    auto s1 = strong_project(b, params.strong);
    rep.rounds_total += s1.rounds;

    // bind a fresh head to the new top
    area_on(b, r.head);
    b.clear_winners(r.head);
    fiber_on(b, r.head, r.nodes[nn]);
    auto s2 = strong_project(b, params.strong);
    rep.rounds_total += s2.rounds;

    // link the new top to the old one; everything settles together
    fiber_on(b, r.nodes[nn], r.nodes[h]);
    auto s3 = strong_project(b, params.strong);
    rep.rounds_total += s3.rounds;
    snapshot_head(b, rep);

    area_off(b, r.blocks);
    area_off(b, r.head);
    area_off(b, r.nodes[h]);
    area_off(b, r.nodes[nn]);
    fiber_off(b, r.blocks, r.nodes[nn]);
    fiber_off(b, r.head, r.nodes[nn]);
    fiber_off(b, r.nodes[nn], r.nodes[h]);
    b.release_clamp(r.blocks);

    rep.head_node = nn;
    ++rep.length;
    ++rep.blocks_processed;
    rep.shadow.insert(rep.shadow.begin(), block);
}

IntersectResult intersect(Brain& b, const StackRep& a, const StackRep& b2,
                          ChainParams params) {
    auto da = readout(b, a, a.length, params);
    auto db = readout(b, b2, b2.length, params);
    IntersectResult res;
    res.degraded = da.size() < a.length || db.size() < b2.length;
    size_t h = 0;
    while (h < da.size() && h < db.size() &&
           da[da.size() - 1 - h] == db[db.size() - 1 - h])
        ++h;
    res.height = uint32_t(h);
    if (h > 0) res.top_common = da[da.size() - h];
    return res;
}

}  // namespace acbw
