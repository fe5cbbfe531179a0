#pragma once

// Drives the sparse substrate and the dense reference model with one
// randomly generated op sequence and checks state equality after every op.

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "acbw/rng.hpp"
#include "acbw/substrate.hpp"
#include "support/dense_oracle.hpp"

namespace acbw::testing {

struct MirrorWorld {
    Brain lazy;
    DenseBrain dense;
    std::vector<std::pair<AreaId, AreaId>> pairs;
    std::vector<AreaId> explicit_areas;
    uint32_t area_count = 0;
};

inline std::unique_ptr<MirrorWorld> make_mirror_world(uint64_t seed) {
    rng::Xoshiro256ss r(rng::mix(seed, 0xA11CE));
    const double p = 0.05 + 0.01 * double(r.bounded(16));
    const double beta = 0.05 + 0.01 * double(r.bounded(16));
    const uint64_t brain_seed = rng::mix(seed, 7);

    auto w = std::make_unique<MirrorWorld>(MirrorWorld{
        Brain(p, brain_seed, beta), DenseBrain(p, brain_seed, beta), {}, {}, 0});

    const uint32_t n_normal = 2 + r.bounded(2);
    for (uint32_t a = 0; a < n_normal; ++a) {
        const uint32_t n = 150 + r.bounded(250);
        const uint32_t k = 8 + r.bounded(12);
        const double ab = 0.05 + 0.01 * double(r.bounded(16));
        char name[16];
        std::snprintf(name, sizeof name, "A%u", a);
        w->lazy.add_area(name, n, k, ab);
        w->dense.add_area(name, n, k, ab);
    }
    const uint32_t assemblies = 3 + r.bounded(4);
    const uint32_t ek = 10 + r.bounded(10);
    AreaId ex = w->lazy.add_explicit_area("EX", assemblies, ek);
    w->dense.add_explicit_area("EX", assemblies, ek);
    w->explicit_areas.push_back(ex);
    w->area_count = n_normal + 1;

    for (AreaId a = 0; a < w->area_count; ++a)
        for (AreaId b = a + 1; b < w->area_count; ++b) {
            if (r.bounded(4) == 0) continue;
            w->lazy.connect(a, b);
            w->dense.connect(a, b);
            w->pairs.emplace_back(a, b);
        }
    if (w->pairs.empty()) {
        w->lazy.connect(0, 1);
        w->dense.connect(0, 1);
        w->pairs.emplace_back(0, 1);
    }
    return w;
}

struct MirrorResult {
    bool ok = true;
    std::string message;
    uint32_t ops_run = 0;
};

inline bool mirror_states_equal(MirrorWorld& w, std::string& why) {
    for (AreaId a = 0; a < w.area_count; ++a) {
        auto lw = w.lazy.winners(a);
        const auto& dw = w.dense.winners(a);
        if (!std::equal(lw.begin(), lw.end(), dw.begin(), dw.end())) {
            why = "winner mismatch in area " + std::to_string(a) + " (lazy " +
                  std::to_string(lw.size()) + " vs dense " +
                  std::to_string(dw.size()) + ")";
            return false;
        }
        if (w.lazy.quiescent_fill_count(a) != w.dense.quiescent_fill_count(a)) {
            why = "quiescent fill count mismatch in area " + std::to_string(a);
            return false;
        }
    }
    return true;
}

inline MirrorResult run_mirror_program(MirrorWorld& w, uint64_t seed,
                                       uint32_t n_ops) {
    rng::Xoshiro256ss r(rng::mix(seed, 0x0B5));
    MirrorResult res;
    auto random_pair = [&]() {
        auto pr = w.pairs[r.bounded(uint32_t(w.pairs.size()))];
        if (r.bounded(2)) std::swap(pr.first, pr.second);
        return pr;
    };
    for (uint32_t op = 0; op < n_ops; ++op) {
        const uint32_t roll = r.bounded(100);
        if (roll < 30) {
            w.lazy.step();
            w.dense.step();
        } else if (roll < 50) {
            auto [s, d] = random_pair();
            w.lazy.drive(s, d);
            w.dense.drive(s, d);
        } else if (roll < 60) {
            AreaId a = r.bounded(w.area_count);
            bool inh = !w.lazy.area_inhibited(a);
            w.lazy.set_area_inhibition(a, inh);
            w.dense.set_area_inhibition(a, inh);
        } else if (roll < 70) {
            auto [a, b] = random_pair();
            bool both = r.bounded(2) == 0;
            bool inh = !w.lazy.fiber_inhibited(a, b);
            w.lazy.set_fiber_inhibition(
                a, b, inh, both ? FiberDirection::both : FiberDirection::forward);
            w.dense.set_fiber_inhibition(a, b, inh, both);
        } else if (roll < 78) {
            AreaId ex = w.explicit_areas[0];
            uint32_t idx = 1 + r.bounded(w.lazy.num_assemblies(ex));
            w.lazy.clamp_assembly(ex, idx);
            w.dense.clamp_assembly(ex, idx);
        } else if (roll < 82) {
            AreaId ex = w.explicit_areas[0];
            w.lazy.release_clamp(ex);
            w.dense.release_clamp(ex);
        } else if (roll < 90) {
            AreaId a = r.bounded(w.area_count);
            const uint32_t n = w.lazy.area_n(a);
            std::vector<NeuronId> ids;
            for (uint32_t i = 0; i < w.lazy.area_k(a); ++i)
                ids.push_back(r.bounded(n));
            w.lazy.set_winners(a, ids);
            w.dense.set_winners(a, ids);
        } else if (roll < 94) {
            AreaId a = r.bounded(w.area_count);
            w.lazy.clear_winners(a);
            w.dense.clear_winners(a);
        } else {
            bool on = !w.lazy.plasticity_enabled();
            w.lazy.set_plasticity(on);
            w.dense.set_plasticity(on);
        }
        res.ops_run = op + 1;
        std::string why;
        if (!mirror_states_equal(w, why)) {
            res.ok = false;
            res.message = "op " + std::to_string(op) + ": " + why;
            return res;
        }
    }
    for (auto [a, b] : w.pairs) {
        for (auto [s, d] : {std::pair{a, b}, std::pair{b, a}}) {
            for (int probe = 0; probe < 32; ++probe) {
                NeuronId i = r.bounded(w.lazy.area_n(s));
                NeuronId j = r.bounded(w.lazy.area_n(d));
                double wl = w.lazy.edge_weight(s, d, i, j);
                double wd = w.dense.edge_weight(s, d, i, j);
                if (wl != wd) {
                    res.ok = false;
                    res.message = "edge weight mismatch on fiber " +
                                  std::to_string(s) + "->" + std::to_string(d);
                    return res;
                }
            }
        }
    }
    return res;
}

}  // namespace acbw::testing
