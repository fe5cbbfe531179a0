#include "acbw/substrate.hpp"

#include <algorithm>
#include <stdexcept>

namespace acbw {

double overlap(std::span<const NeuronId> a, std::span<const NeuronId> b) {
    size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    return double(common) / double(std::max<size_t>(a.size(), 1));
}

Brain::Brain(double p, uint64_t seed, double default_beta)
    : p_(p), seed_(seed), default_beta_(default_beta), geo_(p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("Brain: p must lie in [0, 1]");
    if (default_beta < 0.0)
        throw std::invalid_argument("Brain: beta must be non-negative");
}

AreaId Brain::add_area(const std::string& name, uint32_t n, uint32_t k) {
    return add_area(name, n, k, default_beta_);
}

AreaId Brain::add_area(const std::string& name, uint32_t n, uint32_t k,
                       double beta) {
    if (n == 0) throw std::invalid_argument("add_area: n must be positive");
    if (k == 0 || k > n)
        throw std::invalid_argument("add_area: need 1 <= k <= n");
    if (beta < 0.0)
        throw std::invalid_argument("add_area: beta must be non-negative");
    AreaId id = AreaId(areas_.size());
    Area a;
    a.name = name;
    a.n = n;
    a.k = k;
    a.beta = beta;
    areas_.push_back(std::move(a));
    // Implicit recurrent fiber; not user-addressable, never inhibited.
    Fiber rec;
    rec.src = id;
    rec.dst = id;
    rec.inhibited = false;
    fibers_.emplace(fiber_key(id, id), std::move(rec));
    return id;
}

AreaId Brain::add_explicit_area(const std::string& name, uint32_t num_assemblies,
                                uint32_t k) {
    if (num_assemblies == 0)
        throw std::invalid_argument("add_explicit_area: need at least one assembly");
    if (k == 0) throw std::invalid_argument("add_explicit_area: k must be positive");
    AreaId id = AreaId(areas_.size());
    Area a;
    a.name = name;
    a.n = num_assemblies * k;
    a.k = k;
    a.beta = default_beta_;
    a.explicit_area = true;
    a.assemblies = num_assemblies;
    areas_.push_back(std::move(a));
    return id;
}

Brain::Area& Brain::area_at(AreaId a) {
    if (a >= areas_.size()) throw std::invalid_argument("unknown area id");
    return areas_[a];
}

const Brain::Area& Brain::area_at(AreaId a) const {
    if (a >= areas_.size()) throw std::invalid_argument("unknown area id");
    return areas_[a];
}

bool Brain::connect(AreaId a, AreaId b) {
    area_at(a);
    area_at(b);
    if (a == b)
        throw std::invalid_argument("connect: recurrent connectivity is implicit");
    if (connected(a, b)) return false;
    for (auto [s, d] : {std::pair{a, b}, std::pair{b, a}}) {
        Fiber f;
        f.src = s;
        f.dst = d;
        fibers_.emplace(fiber_key(s, d), std::move(f));
    }
    auto add_sorted = [](std::vector<AreaId>& v, AreaId x) {
        v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    };
    add_sorted(areas_[a].in_sources, b);
    add_sorted(areas_[b].in_sources, a);
    return true;
}

bool Brain::connected(AreaId a, AreaId b) const {
    return fibers_.count(fiber_key(a, b)) != 0 && a != b;
}

void Brain::set_area_inhibition(AreaId a, bool inhibited) {
    area_at(a).inhibited = inhibited;
}

bool Brain::area_inhibited(AreaId a) const { return area_at(a).inhibited; }

void Brain::set_fiber_inhibition(AreaId a, AreaId b, bool inhibited,
                                 FiberDirection dir) {
    area_at(a);
    area_at(b);
    if (a == b)
        throw std::invalid_argument(
            "set_fiber_inhibition: recurrent connectivity is not addressable");
    auto it = fibers_.find(fiber_key(a, b));
    if (it == fibers_.end())
        throw std::invalid_argument("set_fiber_inhibition: areas are not connected");
    it->second.inhibited = inhibited;
    if (dir == FiberDirection::both)
        fibers_.find(fiber_key(b, a))->second.inhibited = inhibited;
}

bool Brain::fiber_inhibited(AreaId src, AreaId dst) const {
    auto it = fibers_.find(fiber_key(src, dst));
    if (it == fibers_.end())
        throw std::invalid_argument("fiber_inhibited: areas are not connected");
    return it->second.inhibited;
}

Brain::Fiber* Brain::find_fiber(AreaId src, AreaId dst) {
    auto it = fibers_.find(fiber_key(src, dst));
    return it == fibers_.end() ? nullptr : &it->second;
}

Brain::SynRow& Brain::row(Fiber& f, NeuronId i) {
    SynRow& r = f.rows[i];
    if (!r.sampled) {
        rng::sample_row(rng::row_stream(seed_, f.src, f.dst, i), areas_[f.dst].n,
                        geo_, r.targets);
        r.potent.assign(r.targets.size(), 0);
        r.sampled = true;
    }
    return r;
}

void Brain::ensure_pow(Area& a, uint16_t m) {
    while (a.pow_w.size() <= m) {
        double next = a.pow_w.back() * (1.0 + a.beta);
        a.pow_w.push_back(next);
        double scaled = next * kWeightScale;
        a.pow_fixed.push_back(scaled >= double(kWeightCap) ? kWeightCap
                                                           : uint64_t(scaled));
    }
}

void Brain::ensure_scratch(Area& a) {
    if (a.acc.size() != a.n) {
        a.acc.assign(a.n, 0);
        a.stamp.assign(a.n, 0);
        a.stamp_cur = 0;
    }
    if (++a.stamp_cur == 0) {
        std::fill(a.stamp.begin(), a.stamp.end(), 0);
        a.stamp_cur = 1;
    }
    a.touched.clear();
}

void Brain::accumulate(Area& dst, Fiber& f, std::span<const NeuronId> src_winners) {
    const auto& pf = dst.pow_fixed;
    const uint32_t cur = dst.stamp_cur;
    for (NeuronId i : src_winners) {
        const SynRow& r = row(f, i);
        const size_t len = r.targets.size();
        for (size_t q = 0; q < len; ++q) {
            const NeuronId t = r.targets[q];
            const uint64_t w = pf[r.potent[q]];
            if (dst.stamp[t] != cur) {
                dst.stamp[t] = cur;
                dst.acc[t] = w;
                dst.touched.push_back(t);
            } else {
                dst.acc[t] += w;
            }
        }
    }
}

std::vector<NeuronId> Brain::select_winners(Area& dst, bool& quiescent) {
    const uint32_t k = dst.k;
    std::vector<NeuronId> out;
    out.reserve(k);
    quiescent = false;
    if (dst.touched.empty()) {
        quiescent = true;
        for (NeuronId j = 0; j < k; ++j) out.push_back(j);
        return out;
    }
    if (dst.touched.size() <= k) {
        out.assign(dst.touched.begin(), dst.touched.end());
        const uint32_t cur = dst.stamp_cur;
        for (NeuronId j = 0; out.size() < k && j < dst.n; ++j)
            if (dst.stamp[j] != cur) out.push_back(j);
        std::sort(out.begin(), out.end());
        return out;
    }
    auto better = [&](NeuronId a, NeuronId b) {
        return dst.acc[a] > dst.acc[b] || (dst.acc[a] == dst.acc[b] && a < b);
    };
    std::nth_element(dst.touched.begin(), dst.touched.begin() + k - 1,
                     dst.touched.end(), better);
    out.assign(dst.touched.begin(), dst.touched.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

void Brain::potentiate(Fiber& f, std::span<const NeuronId> src_pre,
                       std::span<const NeuronId> dst_new) {
    if (src_pre.empty() || dst_new.empty()) return;
    Area& dst_area = areas_[f.dst];
    for (NeuronId i : src_pre) {
        SynRow& r = row(f, i);
        for (NeuronId j : dst_new) {
            auto it = std::lower_bound(r.targets.begin(), r.targets.end(), j);
            if (it != r.targets.end() && *it == j) {
                uint16_t& m = r.potent[size_t(it - r.targets.begin())];
                if (m < kMaxPotentiation) {
                    ++m;
                    ensure_pow(dst_area, m);
                }
            }
        }
    }
}

const StepReport& Brain::step() {
    const uint64_t t = ++step_count_;

    struct Contribution {
        Fiber* fiber;
        std::span<const NeuronId> src_winners;
    };
    struct Pending {
        AreaId area;
        std::vector<Contribution> contribs;
        std::vector<NeuronId> new_winners;
        bool selected = false;
        bool quiescent = false;
    };
    std::vector<Pending> pend;

    for (AreaId id = 0; id < areas_.size(); ++id) {
        Area& dst = areas_[id];
        if (dst.inhibited) continue;
        Pending p;
        p.area = id;
        for (AreaId src : dst.in_sources) {
            Area& sa = areas_[src];
            if (sa.inhibited || sa.winners.empty()) continue;
            Fiber* f = find_fiber(src, id);
            if (f->inhibited) continue;
            p.contribs.push_back({f, sa.winners});
        }
        if (!dst.explicit_area && dst.last_fired + 1 == t && !dst.winners.empty())
            p.contribs.push_back({find_fiber(id, id), dst.winners});
        if (!dst.clamped) {
            ensure_scratch(dst);
            for (auto& c : p.contribs) accumulate(dst, *c.fiber, c.src_winners);
            p.new_winners = select_winners(dst, p.quiescent);
            p.selected = true;
            if (p.quiescent) ++dst.quiescent_fills;
        }
        pend.push_back(std::move(p));
    }

    if (plasticity_on_) {
        for (auto& p : pend) {
            std::span<const NeuronId> target =
                p.selected ? std::span<const NeuronId>(p.new_winners)
                           : std::span<const NeuronId>(areas_[p.area].winners);
            for (auto& c : p.contribs) potentiate(*c.fiber, c.src_winners, target);
        }
    }

    for (auto& p : pend)
        if (p.selected) areas_[p.area].winners = std::move(p.new_winners);
    for (AreaId id = 0; id < areas_.size(); ++id) {
        Area& a = areas_[id];
        if (!a.inhibited && !a.winners.empty()) a.last_fired = t;
    }

    report_.step_index = t;
    report_.areas.assign(areas_.size(), {});
    for (AreaId id = 0; id < areas_.size(); ++id) {
        auto& r = report_.areas[id];
        r.area = id;
        if (!areas_[id].inhibited) r.winners = areas_[id].winners;
    }
    for (auto& p : pend) report_.areas[p.area].quiescent_fill = p.quiescent;
    return report_;
}

std::span<const NeuronId> Brain::drive(AreaId src, AreaId dst) {
    Area& sa = area_at(src);
    Area& da = area_at(dst);
    if (src == dst) throw std::invalid_argument("drive: src and dst must differ");
    Fiber* f = find_fiber(src, dst);
    if (!f) throw std::invalid_argument("drive: areas are not connected");
    const uint64_t t = ++step_count_;

    std::vector<NeuronId> fresh;
    bool quiescent = false;
    const bool recurrent = !da.explicit_area && da.last_fired + 1 == t &&
                           !da.winners.empty();
    if (!da.clamped) {
        ensure_scratch(da);
        if (!sa.winners.empty()) accumulate(da, *f, sa.winners);
        if (recurrent) accumulate(da, *find_fiber(dst, dst), da.winners);
        fresh = select_winners(da, quiescent);
        if (quiescent) ++da.quiescent_fills;
    }
    if (plasticity_on_) {
        std::span<const NeuronId> target =
            da.clamped ? std::span<const NeuronId>(da.winners)
                       : std::span<const NeuronId>(fresh);
        if (!sa.winners.empty()) potentiate(*f, sa.winners, target);
        if (recurrent) potentiate(*find_fiber(dst, dst), da.winners, target);
    }
    if (!da.clamped) da.winners = std::move(fresh);
    if (!sa.winners.empty()) sa.last_fired = t;
    if (!da.winners.empty()) da.last_fired = t;
    return da.winners;
}

std::vector<NeuronId> Brain::preview_recurrent(AreaId area) {
    Area& a = area_at(area);
    if (a.explicit_area)
        throw std::logic_error("preview_recurrent: explicit areas have no recurrence");
    ensure_scratch(a);
    if (!a.winners.empty())
        accumulate(a, *find_fiber(area, area), a.winners);
    bool quiescent = false;
    return select_winners(a, quiescent);
}

void Brain::clamp_assembly(AreaId area, uint32_t index) {
    Area& a = area_at(area);
    if (!a.explicit_area)
        throw std::invalid_argument("clamp_assembly: area is not explicit");
    if (index == 0 || index > a.assemblies)
        throw std::invalid_argument("clamp_assembly: unknown assembly index");
    a.winners.clear();
    for (uint32_t j = (index - 1) * a.k; j < index * a.k; ++j)
        a.winners.push_back(j);
    a.clamped = true;
}

void Brain::release_clamp(AreaId area) {
    Area& a = area_at(area);
    if (!a.explicit_area)
        throw std::invalid_argument("release_clamp: area is not explicit");
    a.clamped = false;
}

bool Brain::clamped(AreaId area) const { return area_at(area).clamped; }

std::vector<NeuronId> Brain::explicit_assembly(AreaId area, uint32_t index) const {
    const Area& a = area_at(area);
    if (!a.explicit_area)
        throw std::invalid_argument("explicit_assembly: area is not explicit");
    if (index == 0 || index > a.assemblies)
        throw std::invalid_argument("explicit_assembly: unknown assembly index");
    std::vector<NeuronId> out;
    for (uint32_t j = (index - 1) * a.k; j < index * a.k; ++j) out.push_back(j);
    return out;
}

uint32_t Brain::num_assemblies(AreaId area) const {
    const Area& a = area_at(area);
    if (!a.explicit_area)
        throw std::invalid_argument("num_assemblies: area is not explicit");
    return a.assemblies;
}

std::span<const NeuronId> Brain::winners(AreaId a) const {
    return area_at(a).winners;
}

void Brain::set_winners(AreaId a, std::vector<NeuronId> w) {
    Area& ar = area_at(a);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (!w.empty() && w.back() >= ar.n)
        throw std::invalid_argument("set_winners: neuron id out of range");
    ar.winners = std::move(w);
}

void Brain::clear_winners(AreaId a) { area_at(a).winners.clear(); }

const std::string& Brain::area_name(AreaId a) const { return area_at(a).name; }
uint32_t Brain::area_n(AreaId a) const { return area_at(a).n; }
uint32_t Brain::area_k(AreaId a) const { return area_at(a).k; }
double Brain::area_beta(AreaId a) const { return area_at(a).beta; }
bool Brain::is_explicit(AreaId a) const { return area_at(a).explicit_area; }

uint64_t Brain::quiescent_fill_count(AreaId a) const {
    return area_at(a).quiescent_fills;
}

double Brain::edge_weight(AreaId src, AreaId dst, NeuronId i, NeuronId j) {
    area_at(src);
    Area& da = area_at(dst);
    Fiber* f = find_fiber(src, dst);
    if (!f) throw std::invalid_argument("edge_weight: no such fiber");
    SynRow& r = row(*f, i);
    auto it = std::lower_bound(r.targets.begin(), r.targets.end(), j);
    if (it == r.targets.end() || *it != j) return 0.0;
    uint16_t m = r.potent[size_t(it - r.targets.begin())];
    ensure_pow(da, m);
    return da.pow_w[m];
}

std::vector<NeuronId> Brain::row_targets(AreaId src, AreaId dst, NeuronId i) {
    area_at(src);
    area_at(dst);
    Fiber* f = find_fiber(src, dst);
    if (!f) throw std::invalid_argument("row_targets: no such fiber");
    return row(*f, i).targets;
}

}  // namespace acbw
