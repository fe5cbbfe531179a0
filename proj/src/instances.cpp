#include "acbw/instances.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "acbw/rng.hpp"

namespace acbw {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_line(int lineno, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
}

BlockId parse_block(const std::string& tok, int lineno) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        fail_line(lineno, "not a block id: '" + tok + "'");
    unsigned long v = 0;
    try {
        v = std::stoul(tok);
    } catch (const std::exception&) {
        fail_line(lineno, "not a block id: '" + tok + "'");
    }
    if (v == 0 || v > 0xFFFFFFFFul)
        fail_line(lineno, "block id out of range: '" + tok + "'");
    return BlockId(v);
}

void sort_by_bottom(BWConfig& c) {
    std::sort(c.stacks.begin(), c.stacks.end(),
              [](const Stack& a, const Stack& b) { return a.back() < b.back(); });
}

BWConfig random_config(uint32_t s, uint32_t max_stacks, uint32_t max_height,
                       uint64_t stream_seed) {
    rng::Xoshiro256ss gen(stream_seed);
    BWConfig cfg;
    for (BlockId blk = 1; blk <= s; ++blk) {
        std::vector<size_t> open;
        for (size_t i = 0; i < cfg.stacks.size(); ++i)
            if (cfg.stacks[i].size() < max_height) open.push_back(i);
        bool can_new = cfg.stacks.size() < max_stacks;
        uint32_t choices = uint32_t(open.size()) + (can_new ? 1 : 0);
        uint32_t pick = gen.bounded(choices);
        if (pick < open.size()) {
            auto& st = cfg.stacks[open[pick]];
            st.insert(st.begin(), blk);
        } else {
            cfg.stacks.push_back({blk});
        }
    }
    sort_by_bottom(cfg);
    return cfg;
}

}  // namespace

TaskFile parse_task(const std::string& text) {
    TaskFile task;
    BWConfig* section = nullptr;
    std::set<BlockId> seen_initial, seen_goal;
    std::set<BlockId>* seen = nullptr;
    bool have_initial = false, have_goal = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line == "initial:") {
            if (have_initial) fail_line(lineno, "duplicate initial: section");
            have_initial = true;
            section = &task.initial;
            seen = &seen_initial;
            continue;
        }
        if (line == "goal:") {
            if (have_goal) fail_line(lineno, "duplicate goal: section");
            have_goal = true;
            section = &task.goal;
            seen = &seen_goal;
            continue;
        }
        if (!section) fail_line(lineno, "stack before any section header");
        Stack stack;
        std::istringstream toks(line);
        std::string tok;
        while (toks >> tok) {
            BlockId blk = parse_block(tok, lineno);
            if (!seen->insert(blk).second)
                fail_line(lineno, "duplicate block " + std::to_string(blk));
            stack.push_back(blk);
        }
        section->stacks.push_back(std::move(stack));
    }

    if (!have_initial) throw std::invalid_argument("missing initial: section");
    if (!have_goal) throw std::invalid_argument("missing goal: section");

    for (BlockId blk : seen_initial)
        if (!seen_goal.count(blk))
            throw std::invalid_argument("block " + std::to_string(blk) +
                                        " missing from goal section");
    for (BlockId blk : seen_goal)
        if (!seen_initial.count(blk))
            throw std::invalid_argument("block " + std::to_string(blk) +
                                        " missing from initial section");

    check_config(task.initial);
    check_config(task.goal);
    return task;
}

std::string serialize_task(const TaskFile& task) {
    BWConfig init = task.initial;
    BWConfig goal = task.goal;
    sort_by_bottom(init);
    sort_by_bottom(goal);
    std::ostringstream out;
    auto emit = [&out](const char* header, const BWConfig& c) {
        out << header << '\n';
        for (const auto& st : c.stacks) {
            for (size_t i = 0; i < st.size(); ++i) {
                if (i) out << ' ';
                out << st[i];
            }
            out << '\n';
        }
    };
    emit("initial:", init);
    emit("goal:", goal);
    return out.str();
}

TaskFile random_task(uint32_t s, uint32_t max_stacks, uint32_t max_height,
                     uint64_t seed) {
    if (s == 0) throw std::invalid_argument("need at least one block");
    if (max_stacks == 0 || max_height == 0)
        throw std::invalid_argument("stack bounds must be positive");
    if (uint64_t(max_stacks) * uint64_t(max_height) < s)
        throw std::invalid_argument("bounds cannot hold " + std::to_string(s) +
                                    " blocks");
    TaskFile task;
    task.initial = random_config(s, max_stacks, max_height, rng::mix(seed, 1));
    task.goal = random_config(s, max_stacks, max_height, rng::mix(seed, 2));
    check_config(task.initial);
    check_config(task.goal);
    return task;
}

}  // namespace acbw
