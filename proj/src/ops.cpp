#include "acbw/ops.hpp"

#include <stdexcept>
#include <vector>

namespace acbw {

void activate_block(Brain& b, AreaId blocks, BlockId block) {
    b.clamp_assembly(blocks, block);
}

ProjectionResult project(Brain& b, AreaId src, AreaId dst, ProjectParams params) {
    if (!b.connected(src, dst))
        throw std::invalid_argument("project: areas are not connected");
    if (b.fiber_inhibited(src, dst))
        throw std::invalid_argument("project: fiber is inhibited");
    if (b.area_inhibited(dst))
        throw std::invalid_argument("project: destination is inhibited");
    if (b.winners(src).empty())
        throw std::invalid_argument("project: source has no winners");

    ProjectionResult res;
    std::vector<NeuronId> prev(b.winners(dst).begin(), b.winners(dst).end());
    uint32_t stable = 0;
    for (uint32_t r = 1; r <= params.max_rounds; ++r) {
        auto cur = b.drive(src, dst);
        res.rounds = r;
        stable = (!prev.empty() && overlap(cur, prev) >= params.tol) ? stable + 1 : 0;
        if (stable >= params.stable_rounds) {
            res.converged = true;
            break;
        }
        prev.assign(cur.begin(), cur.end());
    }
    res.assembly.area = dst;
    auto w = b.winners(dst);
    res.assembly.neurons.assign(w.begin(), w.end());
    return res;
}

StrongResult strong_project(Brain& b, StrongParams params) {
    std::vector<AreaId> active;
    bool any_input = false;
    for (AreaId a = 0; a < b.area_count(); ++a) {
        if (b.area_inhibited(a)) continue;
        active.push_back(a);
        if (!b.winners(a).empty()) any_input = true;
    }
    if (!any_input)
        throw std::invalid_argument(
            "strong_project: no disinhibited area has winners");

    StrongResult res;
    std::vector<std::vector<NeuronId>> prev(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
        auto w = b.winners(active[i]);
        prev[i].assign(w.begin(), w.end());
    }
    uint32_t stable_run = 0;
    for (uint32_t r = 1; r <= params.max_rounds; ++r) {
        b.step();
        res.rounds = r;
        bool stable = true;
        for (size_t i = 0; i < active.size(); ++i) {
            auto cur = b.winners(active[i]);
            if (prev[i].empty() || overlap(cur, prev[i]) < params.tol) {
                stable = false;
            }
            prev[i].assign(cur.begin(), cur.end());
        }
        stable_run = stable ? stable_run + 1 : 0;
        if (stable_run >= params.stable_rounds) {
            res.converged = true;
            break;
        }
    }
    return res;
}

bool is_assembly(Brain& b, AreaId area, double threshold) {
    if (b.is_explicit(area)) return false;
    if (b.winners(area).empty()) return false;
    auto image = b.preview_recurrent(area);
    return overlap(image, b.winners(area)) >= threshold;
}

}  // namespace acbw
