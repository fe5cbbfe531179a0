// Release gates for the whole pipeline, from substrate equivalence up to
// end-to-end neural planning at production scale. Each gate prints exactly
// one PASS/FAIL line with the measured values; the binary exits nonzero if
// any gate fails. Expected total runtime is on the order of twenty minutes.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "acbw/experiments.hpp"
#include "acbw/instances.hpp"
#include "acbw/neural_planner.hpp"
#include "acbw/ops.hpp"
#include "acbw/planner.hpp"
#include "acbw/rng.hpp"
#include "acbw/substrate.hpp"
#include "support/mirror_program.hpp"

namespace {

int g_failures = 0;

class Gate {
   public:
    explicit Gate(int index) : index_(index) {
        start_ = std::chrono::steady_clock::now();
    }
    void verdict(bool pass, const std::string& detail) {
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
        std::printf("C%d %s - %s [%llds]\n", index_, pass ? "PASS" : "FAIL",
                    detail.c_str(), static_cast<long long>(secs));
        std::fflush(stdout);
        if (!pass) ++g_failures;
    }

   private:
    int index_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// C1: the lazy substrate must match the eager dense reference step for step
// over randomized op sequences on small brains.
void gate_substrate_equivalence() {
    Gate gate(1);
    constexpr int kSeeds = 10;
    constexpr uint32_t kOps = 100;
    int ok = 0;
    std::string first_failure;
    for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
        auto world = acbw::testing::make_mirror_world(seed);
        auto res = acbw::testing::run_mirror_program(*world, seed, kOps);
        if (res.ok)
            ++ok;
        else if (first_failure.empty())
            first_failure = " seed " + std::to_string(seed) + ": " + res.message;
    }
    gate.verdict(ok == kSeeds,
                 fmt("lazy substrate equals dense reference on %d/%d random "
                     "%u-op programs%s",
                     ok, kSeeds, kOps, first_failure.c_str()));
}

// C2: projection from an explicit stimulus into a fresh area must settle.
void gate_projection_stability() {
    Gate gate(2);
    constexpr int kSeeds = 20;
    constexpr int kNeeded = 18;
    constexpr uint32_t kN = 10000;
    constexpr uint32_t kK = 100;
    int converged = 0;
    uint32_t worst_rounds = 0;
    for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
        acbw::Brain b(0.1, seed, 0.1);
        acbw::AreaId stim = b.add_explicit_area("stim", 1, kK);
        acbw::AreaId tgt = b.add_area("tgt", kN, kK);
        b.connect(stim, tgt);
        b.set_fiber_inhibition(stim, tgt, false);
        b.set_area_inhibition(stim, false);
        b.set_area_inhibition(tgt, false);
        b.clamp_assembly(stim, 1);
        auto res = acbw::project(b, stim, tgt, {50, 1.0, 1});
        if (res.converged) ++converged;
        worst_rounds = std::max(worst_rounds, res.rounds);
    }
    gate.verdict(converged >= kNeeded,
                 fmt("stimulus projection at n=%u k=%u converged in %d/%d "
                     "seeds within 50 rounds (need %d, worst %u rounds)",
                     kN, kK, converged, kSeeds, kNeeded, worst_rounds));
}

// Shared chain-trial runner for C3, C4 and the C10 rounds bookkeeping.
struct ChainCell {
    std::vector<acbw::ChainTrialRecord> records;
};

ChainCell run_cell(uint32_t n, uint32_t len, uint32_t trials,
                   uint64_t master_seed) {
    acbw::ChainExperimentConfig cfg;
    cfg.n_list = {n};
    cfg.lengths = {len};
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    return {acbw::run_chain_experiment(cfg)};
}

// C3: length-3 chains at production scale must read out perfectly.
ChainCell gate_chain_length3() {
    Gate gate(3);
    constexpr uint32_t kTrials = 20;
    auto cell = run_cell(100000, 3, kTrials, 3001);
    uint32_t full = 0;
    for (const auto& r : cell.records)
        if (r.correct_prefix == 3) ++full;
    gate.verdict(full == kTrials,
                 fmt("length-3 chains at n=100000: %u/%u trials read out all "
                     "3 blocks (need %u/%u)",
                     full, kTrials, kTrials, kTrials));
    return cell;
}

// C4: length-5 mean correct prefix sits in the tolerance band.
ChainCell gate_chain_length5() {
    Gate gate(4);
    constexpr uint32_t kTrials = 30;
    constexpr double kLo = 3.5;
    constexpr double kHi = 5.0;
    auto cell = run_cell(100000, 5, kTrials, 4001);
    double sum = 0;
    for (const auto& r : cell.records) sum += r.correct_prefix;
    double mean = sum / kTrials;
    gate.verdict(mean >= kLo && mean <= kHi,
                 fmt("length-5 chains at n=100000: mean correct prefix %.2f "
                     "over %u trials (need [%.1f, %.1f])",
                     mean, kTrials, kLo, kHi));
    return cell;
}

// C5: length-7 readout quality must not drop as the area grows.
void gate_chain_trend() {
    Gate gate(5);
    constexpr uint32_t kTrials = 20;
    auto small = run_cell(10000, 7, kTrials, 5001);
    auto large = run_cell(100000, 7, kTrials, 5001);
    auto mean = [](const ChainCell& c) {
        double s = 0;
        for (const auto& r : c.records) s += r.correct_prefix;
        return s / double(c.records.size());
    };
    double lo = mean(small), hi = mean(large);
    gate.verdict(lo <= hi,
                 fmt("length-7 mean correct prefix rises %.2f -> %.2f from "
                     "n=10000 to n=100000 (%u trials each, need non-decreasing)",
                     lo, hi, kTrials));
}

// C6: with k=10 the chain capacity must collapse to roughly one block.
void gate_maxchain_degenerate() {
    Gate gate(6);
    constexpr uint32_t kTrials = 20;
    constexpr double kBound = 2.0;
    acbw::MaxChainExperimentConfig cfg;
    cfg.n_list = {100000};
    cfg.k_list = {10};
    cfg.trials = kTrials;
    cfg.length_cap = 8;
    cfg.master_seed = 6001;
    auto records = acbw::run_maxchain_experiment(cfg);
    double sum = 0;
    for (const auto& r : records) sum += r.chain_len;
    double mean = sum / kTrials;
    gate.verdict(mean <= kBound,
                 fmt("max parsable chain at n=100000 k=10: mean %.2f over %u "
                     "trials (need <= %.1f)",
                     mean, kTrials, kBound));
}

// C7: both symbolic planners must emit valid plans on random tasks.
void gate_planner_soundness() {
    Gate gate(7);
    constexpr int kTasks = 100;
    int ok = 0;
    std::string first_failure;
    for (uint64_t seed = 1; seed <= kTasks; ++seed) {
        auto task = acbw::random_task(10, 5, 7, seed);
        auto naive = acbw::plan_naive(task.initial, task.goal);
        auto approx = acbw::plan_2approx(task.initial, task.goal);
        bool a = acbw::validate_plan(task.initial, task.goal, naive);
        bool b = acbw::validate_plan(task.initial, task.goal, approx);
        if (a && b)
            ++ok;
        else if (first_failure.empty())
            first_failure = fmt(" seed %llu: naive=%d approx=%d",
                                static_cast<unsigned long long>(seed), a, b);
    }
    gate.verdict(ok == kTasks,
                 fmt("symbolic plans validate on %d/%d random 10-block tasks, "
                     "both algorithms%s",
                     ok, kTasks, first_failure.c_str()));
}

// C8 support: every block configuration over {1..b}, as sets of stacks.
std::string config_key(const acbw::BWConfig& c) {
    std::vector<std::string> parts;
    for (const auto& s : c.stacks) {
        std::string t;
        for (auto blk : s) t += std::to_string(blk) + ",";
        parts.push_back(t);
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (auto& p : parts) key += p + "|";
    return key;
}

std::vector<acbw::BWConfig> enumerate_configs(uint32_t blocks) {
    std::vector<acbw::BWConfig> configs{acbw::BWConfig{{{1}}}};
    for (uint32_t blk = 2; blk <= blocks; ++blk) {
        std::vector<acbw::BWConfig> next;
        for (const auto& cfg : configs) {
            for (size_t s = 0; s < cfg.stacks.size(); ++s)
                for (size_t pos = 0; pos <= cfg.stacks[s].size(); ++pos) {
                    auto child = cfg;
                    child.stacks[s].insert(child.stacks[s].begin() + pos, blk);
                    next.push_back(std::move(child));
                }
            auto child = cfg;
            child.stacks.push_back({blk});
            next.push_back(std::move(child));
        }
        configs = std::move(next);
    }
    return configs;
}

// C8: on every instance with up to 5 blocks, the suffix-matching planner must
// stay within twice the BFS optimum and never lose to the naive planner.
void gate_approximation_bound() {
    Gate gate(8);
    // Counts of distinct configurations per block count; a mismatch means the
    // enumeration itself broke.
    const std::vector<size_t> expected_counts{1, 3, 13, 73, 501};
    size_t pairs = 0;
    size_t violations = 0;
    std::string first_violation;
    bool enumeration_ok = true;
    for (uint32_t blocks = 1; blocks <= 5; ++blocks) {
        auto configs = enumerate_configs(blocks);
        if (configs.size() != expected_counts[blocks - 1]) {
            enumeration_ok = false;
            break;
        }
        std::unordered_map<std::string, int> index;
        for (size_t i = 0; i < configs.size(); ++i)
            index[config_key(configs[i])] = int(i);
        // Neighbor lists under single legal moves. Moves are invertible, so
        // distance-from-goal equals distance-to-goal.
        std::vector<std::vector<int>> adjacent(configs.size());
        for (size_t i = 0; i < configs.size(); ++i) {
            const auto& cfg = configs[i];
            for (size_t s = 0; s < cfg.stacks.size(); ++s) {
                if (cfg.stacks[s].size() > 1) {
                    auto child = cfg;
                    acbw::BlockId top = child.stacks[s].front();
                    child.stacks[s].erase(child.stacks[s].begin());
                    child.stacks.push_back({top});
                    adjacent[i].push_back(index.at(config_key(child)));
                }
                for (size_t t = 0; t < cfg.stacks.size(); ++t) {
                    if (t == s) continue;
                    auto child = cfg;
                    acbw::BlockId top = child.stacks[s].front();
                    child.stacks[s].erase(child.stacks[s].begin());
                    child.stacks[t].insert(child.stacks[t].begin(), top);
                    if (child.stacks[s].empty())
                        child.stacks.erase(child.stacks.begin() + s);
                    adjacent[i].push_back(index.at(config_key(child)));
                }
            }
        }
        for (size_t goal = 0; goal < configs.size(); ++goal) {
            std::vector<int> dist(configs.size(), -1);
            std::queue<int> frontier;
            dist[goal] = 0;
            frontier.push(int(goal));
            while (!frontier.empty()) {
                int cur = frontier.front();
                frontier.pop();
                for (int nb : adjacent[cur])
                    if (dist[nb] < 0) {
                        dist[nb] = dist[cur] + 1;
                        frontier.push(nb);
                    }
            }
            for (size_t init = 0; init < configs.size(); ++init) {
                ++pairs;
                auto approx =
                    acbw::plan_2approx(configs[init], configs[goal]);
                auto naive = acbw::plan_naive(configs[init], configs[goal]);
                size_t opt = size_t(dist[init]);
                bool within_twice = approx.moves.size() <= 2 * opt;
                bool beats_naive = approx.moves.size() <= naive.moves.size();
                if (opt == 0) within_twice = approx.moves.empty();
                if (!within_twice || !beats_naive) {
                    ++violations;
                    if (first_violation.empty())
                        first_violation = fmt(
                            " first: %u blocks init#%zu goal#%zu approx=%zu "
                            "naive=%zu opt=%zu",
                            blocks, init, goal, approx.moves.size(),
                            naive.moves.size(), opt);
                }
            }
        }
    }
    gate.verdict(enumeration_ok && violations == 0,
                 fmt("exhaustive sweep of %zu instance pairs (<=5 blocks): %zu "
                     "violations of approx<=2*optimal and approx<=naive%s%s",
                     pairs, violations,
                     enumeration_ok ? "" : " (config enumeration broke)",
                     first_violation.c_str()));
}

// C9: end-to-end neural planning at production scale.
void gate_neural_end_to_end(double* rounds_sum, uint64_t* blocks_sum) {
    Gate gate(9);
    constexpr int kTasks = 20;
    constexpr int kNeeded = 16;
    int valid = 0;
    int complete = 0;
    int complete_matching = 0;
    std::string first_failure;
    for (uint64_t seed = 1; seed <= kTasks; ++seed) {
        auto task = acbw::random_task(10, 5, 4, seed);
        acbw::NeuralPlannerParams params;
        params.n = 100000;
        params.k = 50;
        params.seed = 100 + seed;
        auto res = acbw::neural_plan(task.initial, task.goal,
                                     acbw::Provenance::two_approx, params);
        *rounds_sum += double(res.rounds_total);
        *blocks_sum += res.blocks_processed;
        bool plan_ok =
            acbw::validate_plan(task.initial, task.goal, res.plan);
        if (plan_ok) ++valid;
        if (res.readouts_complete) {
            ++complete;
            auto symbolic = acbw::plan_2approx(task.initial, task.goal);
            if (res.plan.moves == symbolic.moves)
                ++complete_matching;
            else if (first_failure.empty())
                first_failure =
                    fmt(" seed %llu diverged from the symbolic plan",
                        static_cast<unsigned long long>(seed));
        }
        if (!plan_ok && first_failure.empty())
            first_failure = fmt(" seed %llu emitted an invalid plan",
                                static_cast<unsigned long long>(seed));
    }
    bool pass = valid >= kNeeded && complete_matching == complete;
    gate.verdict(
        pass,
        fmt("neural plans at n=100000: %d/%d valid (need >=%d), %d/%d "
            "complete-readout runs match the symbolic plan move for move%s",
            valid, kTasks, kNeeded, complete_matching, complete,
            first_failure.c_str()));
}

// C10: rounds spent per parsed block at production scale, reported from the
// C3/C4 trial records and loosely bounded.
void gate_rounds_per_block(const ChainCell& c3, const ChainCell& c4) {
    Gate gate(10);
    constexpr double kLo = 10.0;
    constexpr double kHi = 100.0;
    double per_block_sum = 0;
    size_t count = 0;
    for (const ChainCell* cell : {&c3, &c4})
        for (const auto& r : cell->records) {
            per_block_sum += double(r.rounds) / double(r.chain_len);
            ++count;
        }
    double mean = per_block_sum / double(count);
    gate.verdict(mean >= kLo && mean <= kHi,
                 fmt("settling rounds per parsed block at n=100000: mean %.1f "
                     "over %zu chain trials (need [%.0f, %.0f])",
                     mean, count, kLo, kHi));
}

}  // namespace

int main() {
    std::printf("acceptance gates (expect roughly 20 minutes total)\n");
    std::fflush(stdout);
    gate_substrate_equivalence();
    gate_projection_stability();
    auto c3 = gate_chain_length3();
    auto c4 = gate_chain_length5();
    gate_chain_trend();
    gate_maxchain_degenerate();
    gate_planner_soundness();
    gate_approximation_bound();
    double rounds_sum = 0;
    uint64_t blocks_sum = 0;
    gate_neural_end_to_end(&rounds_sum, &blocks_sum);
    gate_rounds_per_block(c3, c4);
    if (g_failures == 0)
        std::printf("all 10 gates passed\n");
    else
        std::printf("%d gate(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
