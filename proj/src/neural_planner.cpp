#include "acbw/neural_planner.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace acbw {

namespace {

std::string stack_text(const std::vector<BlockId>& s) {
    std::ostringstream out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out << ' ';
        out << s[i];
    }
    return out.str();
}

}  // namespace

NeuralPlanResult neural_plan(const BWConfig& init, const BWConfig& goal,
                             Provenance algo,
                             const NeuralPlannerParams& params) {
    check_config(init);
    check_config(goal);
    if (block_count(init) != block_count(goal))
        throw std::invalid_argument(
            "neural_plan: initial and goal hold different blocks");
    const uint32_t s = block_count(init);

    NeuralPlanResult result;
    result.plan.provenance = algo;
    result.readouts_complete = true;

    Brain b(params.p, params.seed, params.beta);
    AreaId blocks = b.add_explicit_area("blocks", s, params.k);
    auto trace = [&result](const std::string& line) {
        result.trace.push_back(line);
    };

    std::vector<StackRep> init_reps;
    init_reps.reserve(init.stacks.size());
    for (size_t i = 0; i < init.stacks.size(); ++i) {
        auto regs = make_stack_registers(b, blocks, params.n, params.k,
                                         "i" + std::to_string(i));
        init_reps.push_back(parse_stack(b, regs, init.stacks[i], params.chain));
        trace("parse init[" + std::to_string(i) + "] " +
              stack_text(init.stacks[i]) + " rounds=" +
              std::to_string(init_reps.back().rounds_total));
    }

    // Scratch copies of the goal stacks exist only for the 2-approximation,
    // whose matching intersects each (init, goal) chain pair.
    std::vector<StackRep> goal_reps;
    MatchLayout layout =
        match_layout(init.stacks.size(), goal.stacks.size(), {});
    if (algo == Provenance::two_approx) {
        goal_reps.reserve(goal.stacks.size());
        for (size_t g = 0; g < goal.stacks.size(); ++g) {
            auto regs = make_stack_registers(b, blocks, params.n, params.k,
                                             "g" + std::to_string(g));
            goal_reps.push_back(
                parse_stack(b, regs, goal.stacks[g], params.chain));
            trace("parse goal[" + std::to_string(g) + "] " +
                  stack_text(goal.stacks[g]));
        }
        std::vector<std::vector<uint32_t>> heights(init.stacks.size());
        for (size_t i = 0; i < init.stacks.size(); ++i) {
            heights[i].resize(goal.stacks.size());
            for (size_t g = 0; g < goal.stacks.size(); ++g) {
                auto isec =
                    intersect(b, init_reps[i], goal_reps[g], params.chain);
                // A degraded readout cannot vouch for a shared suffix, and a
                // wrong height here would demand blocks that ended up kept in
                // place. Claim nothing and let the verbatim rebuild cover it.
                heights[i][g] = isec.degraded ? 0 : isec.height;
                if (isec.degraded) result.readouts_complete = false;
                std::ostringstream line;
                line << "intersect init[" << i << "] goal[" << g
                     << "] h=" << isec.height;
                if (isec.degraded) line << " degraded";
                trace(line.str());
            }
        }
        layout = match_layout(init.stacks.size(), goal.stacks.size(),
                              select_matches(heights));
    }

    TableRep table;
    table.regs = make_stack_registers(b, blocks, params.n, params.k, "t");

    // Pop phase, in the same stack order the symbolic emitter uses. Loop
    // bounds come from the shadows; the decoded ids only enter the plan.
    std::set<BlockId> on_table;
    std::deque<StackRep> rebuilds;
    std::vector<StackRep*> goal_bank(goal.stacks.size(), nullptr);
    try {
    for (size_t i = 0; i < init_reps.size(); ++i) {
        uint32_t kept = std::max<uint32_t>(layout.init_keep[i], 1);
        while (init_reps[i].shadow.size() > kept) {
            BlockId truth = init_reps[i].shadow.front();
            auto popped = pop_top(b, init_reps[i], &table, params.chain);
            result.plan.moves.push_back(
                {Move::Kind::to_table, popped.block, 0});
            result.plan.neural_trace.push_back(popped.confidence);
            result.min_confidence =
                std::min(result.min_confidence, popped.confidence);
            if (popped.confidence < params.chain.tau_decode)
                result.readouts_complete = false;
            on_table.insert(truth);
            std::ostringstream line;
            line << "pop init[" << i << "] -> block " << popped.block
                 << " conf " << popped.confidence;
            if (popped.block != truth) line << " (stack held " << truth << ")";
            trace(line.str());
        }
        if (layout.init_keep[i] == 0) on_table.insert(init_reps[i].shadow[0]);
    }

    auto take_from_table = [&on_table](BlockId blk) {
        if (!on_table.erase(blk))
            throw std::logic_error("neural_plan: block " +
                                   std::to_string(blk) +
                                   " is not free on the table");
    };

    // Rebuild phase. Matched goal stacks grow on the bank holding their kept
    // suffix; unmatched ones grow on the bank of a free bottom block when one
    // exists, else on a fresh bank seeded from the table.
    for (size_t g = 0; g < goal.stacks.size(); ++g) {
        const Stack& want = goal.stacks[g];
        uint32_t kept = std::max<uint32_t>(layout.goal_keep[g], 1);
        StackRep* bank = nullptr;
        if (layout.goal_partner[g] >= 0) {
            bank = &init_reps[layout.goal_partner[g]];
        } else {
            BlockId base = want.back();
            for (size_t i = 0; i < init_reps.size(); ++i)
                if (layout.init_keep[i] == 0 && init_reps[i].shadow.size() == 1 &&
                    init_reps[i].shadow[0] == base)
                    bank = &init_reps[i];
            take_from_table(base);
            if (bank) {
                trace("base goal[" + std::to_string(g) + "] block " +
                      std::to_string(base) + " stays put");
            } else {
                auto regs = make_stack_registers(
                    b, blocks, params.n, params.k, "r" + std::to_string(g));
                rebuilds.emplace_back();
                rebuilds.back().regs = regs;
                bank = &rebuilds.back();
                put_block(b, *bank, base, params.chain);
                trace("base goal[" + std::to_string(g) + "] block " +
                      std::to_string(base) + " from table");
            }
        }
        for (size_t j = want.size() - kept; j-- > 0;) {
            take_from_table(want[j]);
            put_block(b, *bank, want[j], params.chain);
            result.plan.moves.push_back(
                {Move::Kind::put_on, want[j], want[j + 1]});
            result.plan.neural_trace.push_back(1.0);
            trace("put " + std::to_string(want[j]) + " on " +
                  std::to_string(want[j + 1]) + " (goal[" +
                  std::to_string(g) + "])");
        }
        goal_bank[g] = bank;
    }
    } catch (const std::exception& e) {
        // A wrong but confident suffix readout can demand a block the table
        // never received. Surrender the rest of the plan instead of throwing;
        // the partial plan fails validation and the trace names the block.
        result.readouts_complete = false;
        trace(std::string("aborted: ") + e.what());
    }

    // Every goal stack must now read back exactly from its bank.
    for (size_t g = 0; g < goal.stacks.size(); ++g) {
        if (!goal_bank[g]) {
            result.readouts_complete = false;
            continue;
        }
        auto got = readout(b, *goal_bank[g], uint32_t(goal.stacks[g].size()),
                           params.chain);
        bool ok = got == goal.stacks[g];
        if (!ok) result.readouts_complete = false;
        trace("readback goal[" + std::to_string(g) + "] " +
              (ok ? "ok" : "got [" + stack_text(got) + "] want [" +
                               stack_text(goal.stacks[g]) + "]"));
    }

    for (const auto& rep : init_reps) {
        result.rounds_total += rep.rounds_total;
        result.blocks_processed += rep.blocks_processed;
    }
    for (const auto& rep : goal_reps) {
        result.rounds_total += rep.rounds_total;
        result.blocks_processed += rep.blocks_processed;
    }
    for (const auto& rep : rebuilds) {
        result.rounds_total += rep.rounds_total;
        result.blocks_processed += rep.blocks_processed;
    }
    result.rounds_total += table.rounds_total;
    result.blocks_processed += table.blocks_processed;
    return result;
}

}  // namespace acbw
