#include "acbw/planner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace acbw {

namespace {

std::vector<Stack> canonical_stacks(const BWConfig& config) {
    auto s = config.stacks;
    std::sort(s.begin(), s.end(),
              [](const Stack& a, const Stack& b) { return a.back() < b.back(); });
    return s;
}

// Height of the shared bottom run of two stacks.
uint32_t common_suffix(const Stack& a, const Stack& b) {
    uint32_t h = 0;
    while (h < a.size() && h < b.size() &&
           a[a.size() - 1 - h] == b[b.size() - 1 - h])
        ++h;
    return h;
}

void check_same_blocks(const BWConfig& init, const BWConfig& goal) {
    check_config(init);
    check_config(goal);
    std::vector<BlockId> a, b;
    for (const auto& s : init.stacks) a.insert(a.end(), s.begin(), s.end());
    for (const auto& s : goal.stacks) b.insert(b.end(), s.begin(), s.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw std::invalid_argument(
            "planner: initial and goal configurations hold different blocks");
}

// Shared emission: pop everything above the kept suffix of each init stack,
// then rebuild each goal stack above its kept suffix bottom-up. With all
// keep heights at their minimum this degenerates to the naive plan.
Plan emit_plan(const BWConfig& init, const BWConfig& goal,
               const MatchLayout& keep, Provenance provenance) {
    Plan plan;
    plan.provenance = provenance;
    for (size_t i = 0; i < init.stacks.size(); ++i) {
        const Stack& s = init.stacks[i];
        // the bottom block is already "on the table" once uncovered
        uint32_t kept = std::max<uint32_t>(keep.init_keep[i], 1);
        for (size_t j = 0; j + kept < s.size(); ++j)
            plan.moves.push_back({Move::Kind::to_table, s[j], 0});
    }
    for (size_t g = 0; g < goal.stacks.size(); ++g) {
        const Stack& s = goal.stacks[g];
        uint32_t kept = std::max<uint32_t>(keep.goal_keep[g], 1);
        for (size_t j = s.size() - kept; j-- > 0;)
            plan.moves.push_back({Move::Kind::put_on, s[j], s[j + 1]});
    }
    return plan;
}

}  // namespace

void check_config(const BWConfig& config) {
    std::unordered_set<BlockId> seen;
    BlockId max_id = 0;
    for (const auto& s : config.stacks) {
        if (s.empty())
            throw std::invalid_argument("configuration holds an empty stack");
        for (BlockId b : s) {
            if (b == 0)
                throw std::invalid_argument("block ids start at 1");
            if (!seen.insert(b).second)
                throw std::invalid_argument("block " + std::to_string(b) +
                                            " appears twice");
            max_id = std::max(max_id, b);
        }
    }
    if (max_id != seen.size())
        throw std::invalid_argument("block ids must be contiguous 1..s");
}

uint32_t block_count(const BWConfig& config) {
    uint32_t n = 0;
    for (const auto& s : config.stacks) n += uint32_t(s.size());
    return n;
}

bool same_configuration(const BWConfig& a, const BWConfig& b) {
    return canonical_stacks(a) == canonical_stacks(b);
}

bool operator==(const Move& a, const Move& b) {
    return a.kind == b.kind && a.block == b.block && a.target == b.target;
}

BWConfig apply_move(const BWConfig& config, const Move& move) {
    BWConfig next = config;
    auto top_of = [&](BlockId b) -> int {
        for (size_t i = 0; i < next.stacks.size(); ++i)
            if (next.stacks[i].front() == b) return int(i);
        return -1;
    };
    int src = top_of(move.block);
    if (src < 0)
        throw std::invalid_argument("move: block " + std::to_string(move.block) +
                                    " is not a stack top");
    if (move.kind == Move::Kind::to_table) {
        if (next.stacks[src].size() == 1) return next;  // already on the table
        next.stacks[src].erase(next.stacks[src].begin());
        next.stacks.push_back({move.block});
        return next;
    }
    if (next.stacks[src].size() != 1)
        throw std::invalid_argument("move: block " + std::to_string(move.block) +
                                    " is not on the table");
    if (move.target == move.block)
        throw std::invalid_argument("move: block cannot be placed on itself");
    int dst = top_of(move.target);
    if (dst < 0)
        throw std::invalid_argument("move: target " +
                                    std::to_string(move.target) +
                                    " is not a stack top");
    next.stacks[dst].insert(next.stacks[dst].begin(), move.block);
    next.stacks.erase(next.stacks.begin() + src);
    return next;
}

std::vector<StackMatch> match_stacks(const BWConfig& init,
                                     const BWConfig& goal) {
    check_same_blocks(init, goal);
    std::vector<std::vector<uint32_t>> heights(init.stacks.size());
    for (size_t i = 0; i < init.stacks.size(); ++i) {
        heights[i].resize(goal.stacks.size());
        for (size_t g = 0; g < goal.stacks.size(); ++g)
            heights[i][g] = common_suffix(init.stacks[i], goal.stacks[g]);
    }
    return select_matches(heights);
}

std::vector<StackMatch> select_matches(
    const std::vector<std::vector<uint32_t>>& heights) {
    std::vector<StackMatch> candidates;
    for (size_t i = 0; i < heights.size(); ++i)
        for (size_t g = 0; g < heights[i].size(); ++g)
            if (heights[i][g] >= 1)
                candidates.push_back({int(i), int(g), heights[i][g]});
    std::sort(candidates.begin(), candidates.end(),
              [](const StackMatch& a, const StackMatch& b) {
                  if (a.height != b.height) return a.height > b.height;
                  if (a.init_index != b.init_index)
                      return a.init_index < b.init_index;
                  return a.goal_index < b.goal_index;
              });
    std::vector<StackMatch> out;
    std::unordered_set<int> used_init, used_goal;
    for (const auto& c : candidates) {
        if (used_init.count(c.init_index) || used_goal.count(c.goal_index))
            continue;
        used_init.insert(c.init_index);
        used_goal.insert(c.goal_index);
        out.push_back(c);
    }
    return out;
}

MatchLayout match_layout(size_t init_count, size_t goal_count,
                         const std::vector<StackMatch>& matches) {
    MatchLayout layout;
    layout.init_keep.assign(init_count, 0);
    layout.goal_keep.assign(goal_count, 0);
    layout.goal_partner.assign(goal_count, -1);
    for (const auto& m : matches) {
        layout.init_keep[m.init_index] = m.height;
        layout.goal_keep[m.goal_index] = m.height;
        layout.goal_partner[m.goal_index] = m.init_index;
    }
    return layout;
}

uint32_t misplaced_count(const BWConfig& init, const BWConfig& goal) {
    uint32_t matched = 0;
    for (const auto& m : match_stacks(init, goal)) matched += m.height;
    return block_count(init) - matched;
}

Plan plan_naive(const BWConfig& init, const BWConfig& goal) {
    check_same_blocks(init, goal);
    MatchLayout keep = match_layout(init.stacks.size(), goal.stacks.size(), {});
    return emit_plan(init, goal, keep, Provenance::naive);
}

Plan plan_2approx(const BWConfig& init, const BWConfig& goal) {
    auto matches = match_stacks(init, goal);
    return emit_plan(
        init, goal,
        match_layout(init.stacks.size(), goal.stacks.size(), matches),
        Provenance::two_approx);
}

bool validate_plan(const BWConfig& init, const BWConfig& goal,
                   const Plan& plan, int* failure_index) {
    if (failure_index) *failure_index = -1;
    BWConfig cur = init;
    for (size_t i = 0; i < plan.moves.size(); ++i) {
        try {
            cur = apply_move(cur, plan.moves[i]);
        } catch (const std::invalid_argument&) {
            if (failure_index) *failure_index = int(i);
            return false;
        }
    }
    return same_configuration(cur, goal);
}

uint32_t optimal_plan_length(const BWConfig& init, const BWConfig& goal,
                             uint32_t max_blocks) {
    check_same_blocks(init, goal);
    if (block_count(init) > max_blocks)
        throw std::invalid_argument(
            "optimal_plan_length: instance above the exhaustive-search bound");

    auto key = [](const BWConfig& c) {
        std::string k;
        for (const auto& s : canonical_stacks(c)) {
            for (BlockId b : s) k += char('0' + b);
            k += '|';
        }
        return k;
    };
    const std::string target = key(goal);
    std::map<std::string, uint32_t> dist;
    std::queue<BWConfig> frontier;
    dist[key(init)] = 0;
    frontier.push(init);
    while (!frontier.empty()) {
        BWConfig cur = frontier.front();
        frontier.pop();
        const std::string cur_key = key(cur);
        uint32_t d = dist[cur_key];
        if (cur_key == target) return d;
        auto visit = [&](const Move& m) {
            BWConfig next = apply_move(cur, m);
            auto [it, fresh] = dist.emplace(key(next), d + 1);
            if (fresh) frontier.push(next);
        };
        for (const auto& s : cur.stacks) {
            if (s.size() > 1) visit({Move::Kind::to_table, s.front(), 0});
            if (s.size() == 1)
                for (const auto& t : cur.stacks)
                    if (t.front() != s.front())
                        visit({Move::Kind::put_on, s.front(), t.front()});
        }
    }
    throw std::logic_error("optimal_plan_length: goal unreachable");
}

std::string plan_to_text(const Plan& plan) {
    std::string out;
    for (const auto& m : plan.moves) {
        if (m.kind == Move::Kind::to_table)
            out += "TABLE " + std::to_string(m.block) + "\n";
        else
            out += "PUT " + std::to_string(m.block) + " ON " +
                   std::to_string(m.target) + "\n";
    }
    return out;
}

Plan plan_from_text(const std::string& text) {
    Plan plan;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        Move m;
        unsigned long block = 0, target = 0;
        if (word == "TABLE") {
            if (!(ls >> block))
                throw std::invalid_argument("plan text line " +
                                            std::to_string(lineno) +
                                            ": expected TABLE <block>");
            m = {Move::Kind::to_table, BlockId(block), 0};
        } else if (word == "PUT") {
            std::string on;
            if (!(ls >> block >> on >> target) || on != "ON")
                throw std::invalid_argument("plan text line " +
                                            std::to_string(lineno) +
                                            ": expected PUT <block> ON <target>");
            m = {Move::Kind::put_on, BlockId(block), BlockId(target)};
        } else {
            throw std::invalid_argument("plan text line " +
                                        std::to_string(lineno) +
                                        ": unknown move '" + word + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("plan text line " +
                                        std::to_string(lineno) +
                                        ": trailing content");
        plan.moves.push_back(m);
    }
    return plan;
}

}  // namespace acbw
