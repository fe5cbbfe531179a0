#pragma once

// Sparse simulator for assembly dynamics: areas of n neurons with cap-k
// winner-take-all steps, G(n, p) random connectivity sampled lazily per
// presynaptic row, multiplicative Hebbian plasticity, and explicit
// inhibition gates on areas and fibers.
//
// Determinism contract: given the construction seed and the same sequence of
// calls, winner sequences are identical across runs and platforms. Synaptic
// rows are drawn from per-(fiber, source-neuron) substreams, so when a row is
// first needed has no effect on its contents, and input accumulation uses
// fixed-point integers, so summation order has no effect on winner selection.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "acbw/rng.hpp"
#include "acbw/types.hpp"

namespace acbw {

// |a ∩ b| / max(|a|, 1) for sorted ascending neuron lists.
double overlap(std::span<const NeuronId> a, std::span<const NeuronId> b);

enum class FiberDirection { both, forward };

struct StepAreaReport {
    AreaId area = 0;
    std::span<const NeuronId> winners;  // empty if the area did not fire
    bool quiescent_fill = false;        // winners chosen on all-zero input
};

struct StepReport {
    uint64_t step_index = 0;
    std::vector<StepAreaReport> areas;  // one entry per area, in id order
};

class Brain {
public:
    // p: edge probability for every fiber; beta: default plasticity gain.
    Brain(double p, uint64_t seed, double default_beta);

    AreaId add_area(const std::string& name, uint32_t n, uint32_t k);
    AreaId add_area(const std::string& name, uint32_t n, uint32_t k, double beta);
    // Readout area holding num_assemblies disjoint preassigned assemblies of
    // k neurons each (n = num_assemblies * k). No recurrent connectivity.
    AreaId add_explicit_area(const std::string& name, uint32_t num_assemblies,
                             uint32_t k);

    // Creates the fiber pair a->b and b->a (both start inhibited). Returns
    // false if the areas were already connected (no-op). a == b is an error;
    // recurrent connectivity is implicit and not addressable.
    bool connect(AreaId a, AreaId b);
    bool connected(AreaId a, AreaId b) const;

    void set_area_inhibition(AreaId a, bool inhibited);
    void set_fiber_inhibition(AreaId a, AreaId b, bool inhibited,
                              FiberDirection dir = FiberDirection::both);
    bool area_inhibited(AreaId a) const;
    bool fiber_inhibited(AreaId src, AreaId dst) const;

    // One synchronous update: every disinhibited unclamped area recomputes
    // winners from its disinhibited incoming fibers (recurrent input counts
    // only if the area itself fired on the previous step), then every edge
    // whose source fired into a firing destination is potentiated. An area
    // whose input is all zero still selects winners (lowest indices) and is
    // reported as a quiescent fill.
    const StepReport& step();

    // Drives dst's winner update from src's current winners through the
    // fiber src->dst, ignoring inhibition flags. Same recurrent and
    // plasticity rules as step(), restricted to this one destination.
    // Returns the committed dst winners.
    std::span<const NeuronId> drive(AreaId src, AreaId dst);

    // Winner set produced by firing area's current winners through its
    // recurrent connectivity only. Pure preview: nothing is committed and no
    // weight changes.
    std::vector<NeuronId> preview_recurrent(AreaId area);

    // Explicit-area control. clamp_assembly pins the area's winners to
    // assembly `index` (1-based); while clamped the area never recomputes
    // winners but still receives plasticity.
    void clamp_assembly(AreaId area, uint32_t index);
    void release_clamp(AreaId area);
    bool clamped(AreaId area) const;
    std::vector<NeuronId> explicit_assembly(AreaId area, uint32_t index) const;
    uint32_t num_assemblies(AreaId area) const;

    std::span<const NeuronId> winners(AreaId a) const;
    void set_winners(AreaId a, std::vector<NeuronId> w);
    void clear_winners(AreaId a);

    bool plasticity_enabled() const { return plasticity_on_; }
    void set_plasticity(bool on) { plasticity_on_ = on; }

    uint32_t area_count() const { return uint32_t(areas_.size()); }
    const std::string& area_name(AreaId a) const;
    uint32_t area_n(AreaId a) const;
    uint32_t area_k(AreaId a) const;
    double area_beta(AreaId a) const;
    bool is_explicit(AreaId a) const;
    double p() const { return p_; }
    uint64_t seed() const { return seed_; }
    uint64_t step_count() const { return step_count_; }
    uint64_t quiescent_fill_count(AreaId a) const;

    // Test hooks. Weight of edge i->j on the fiber src->dst: (1+beta_dst)^m
    // where m is the edge's potentiation count, or 0.0 if the edge does not
    // exist. row_targets samples the row if needed.
    double edge_weight(AreaId src, AreaId dst, NeuronId i, NeuronId j);
    std::vector<NeuronId> row_targets(AreaId src, AreaId dst, NeuronId i);

private:
    // Accumulator values are weights in Q48.16; weight images saturate at
    // 2^45 so row sums stay clear of uint64 range.
    static constexpr double kWeightScale = 65536.0;
    static constexpr uint64_t kWeightCap = 1ULL << 45;
    static constexpr uint64_t kNeverFired = UINT64_MAX;
    static constexpr uint16_t kMaxPotentiation = 65535;

    struct SynRow {
        std::vector<NeuronId> targets;   // sorted
        std::vector<uint16_t> potent;    // potentiation count per target
        bool sampled = false;
    };

    struct Fiber {
        AreaId src = 0, dst = 0;
        bool inhibited = true;
        std::unordered_map<NeuronId, SynRow> rows;
    };

    struct Area {
        std::string name;
        uint32_t n = 0, k = 0;
        double beta = 0.0;
        bool inhibited = true;
        bool explicit_area = false;
        bool clamped = false;
        uint32_t assemblies = 0;  // explicit areas only
        std::vector<NeuronId> winners;
        uint64_t last_fired = kNeverFired;
        uint64_t quiescent_fills = 0;
        std::vector<AreaId> in_sources;  // connected peers, ascending
        // weight tables indexed by potentiation count
        std::vector<double> pow_w{1.0};
        std::vector<uint64_t> pow_fixed{uint64_t(kWeightScale)};
        // accumulation scratch, sized on first use
        std::vector<uint64_t> acc;
        std::vector<uint32_t> stamp;
        uint32_t stamp_cur = 0;
        std::vector<NeuronId> touched;
    };

    static uint64_t fiber_key(AreaId src, AreaId dst) {
        return (uint64_t(src) << 32) | uint64_t(dst);
    }

    Area& area_at(AreaId a);
    const Area& area_at(AreaId a) const;
    Fiber* find_fiber(AreaId src, AreaId dst);
    SynRow& row(Fiber& f, NeuronId i);
    void ensure_pow(Area& a, uint16_t m);
    void ensure_scratch(Area& a);

    void accumulate(Area& dst, Fiber& f, std::span<const NeuronId> src_winners);
    std::vector<NeuronId> select_winners(Area& dst, bool& quiescent);
    void potentiate(Fiber& f, std::span<const NeuronId> src_pre,
                    std::span<const NeuronId> dst_new);

    double p_;
    uint64_t seed_;
    double default_beta_;
    bool plasticity_on_ = true;
    uint64_t step_count_ = 0;
    rng::GeometricTable geo_;
    std::vector<Area> areas_;
    std::map<uint64_t, Fiber> fibers_;
    StepReport report_;
};

}  // namespace acbw
