#pragma once

// Portable deterministic RNG layer. Everything here is fixed-width integer
// arithmetic (plus IEEE double multiplication, which is exactly rounded), so
// the same seeds produce the same streams on every platform and standard
// library. std::* distributions are implementation-defined and must not be
// used anywhere results have to be reproducible.

#include <cstdint>
#include <vector>

namespace acbw::rng {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function (Vigna). Used both as a stream generator and as
// a finalizer for seed derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_final(uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Order-sensitive combine: fold a value into an accumulated seed.
inline uint64_t mix(uint64_t acc, uint64_t v) {
    return mix_final(acc ^ (v + kGolden + (acc << 6) + (acc >> 2)));
}

// Substream seed for one presynaptic row of one directed fiber. Sampling a
// row consumes only its own substream, so the order in which rows are first
// touched cannot change their contents. This is what keeps the lazy backend
// bit-identical to an eagerly sampled one.
inline uint64_t row_stream(uint64_t brain_seed, uint32_t src_area,
                           uint32_t dst_area, uint32_t src_neuron) {
    uint64_t fiber_key = (uint64_t(src_area) << 32) | uint64_t(dst_area);
    return mix(mix(brain_seed, fiber_key), src_neuron);
}

// xoshiro256** (Blackman/Vigna, public domain), seeded through splitmix64.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden;
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, n), n >= 1. Lemire's multiply-shift with
    // rejection; exact and portable.
    uint32_t bounded(uint32_t n) {
        uint32_t x = uint32_t(next() >> 32);
        uint64_t m = uint64_t(x) * uint64_t(n);
        uint32_t l = uint32_t(m);
        if (l < n) {
            uint32_t t = (0u - n) % n;
            while (l < t) {
                x = uint32_t(next() >> 32);
                m = uint64_t(x) * uint64_t(n);
                l = uint32_t(m);
            }
        }
        return uint32_t(m >> 32);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Geometric(p) gap sampler backed by a fixed-point threshold table, so draws
// need only integer comparisons. thresholds_[i] holds floor((1-p)^(i+1) *
// 2^64); a uniform 64-bit draw U maps to the smallest g with U >=
// thresholds_[g-1]. Tail mass past the table is handled by memorylessness
// (skip table_size trials and redraw).
class GeometricTable {
public:
    explicit GeometricTable(double p) {
        if (p <= 0.0) {
            never_ = true;
            return;
        }
        if (p >= 1.0) {
            thresholds_.push_back(0);
            return;
        }
        const double q = 1.0 - p;
        const double two64 = 18446744073709551616.0;
        double x = 1.0;
        while (thresholds_.size() < 4096) {
            x *= q;
            double scaled = x * two64;
            uint64_t th = scaled >= two64 ? UINT64_MAX : uint64_t(scaled);
            thresholds_.push_back(th);
            if (th == 0) break;
        }
    }

    bool never() const { return never_; }

    // Number of Bernoulli(p) trials up to and including the first success.
    uint64_t draw(Xoshiro256ss& g) const {
        uint64_t base = 0;
        const size_t len = thresholds_.size();
        for (;;) {
            const uint64_t u = g.next();
            if (u < thresholds_[len - 1]) {
                base += len;
                continue;
            }
            // Smallest idx with u >= thresholds_[idx] (array is descending).
            size_t lo = 0, hi = len - 1;
            while (lo < hi) {
                const size_t mid = (lo + hi) / 2;
                if (u >= thresholds_[mid])
                    hi = mid;
                else
                    lo = mid + 1;
            }
            return base + lo + 1;
        }
    }

private:
    std::vector<uint64_t> thresholds_;
    bool never_ = false;
};

// Sorted target list for one G(n, p) row: each of the n candidates is an
// edge independently with probability p, realized by geometric skipping over
// the row's own substream.
inline void sample_row(uint64_t stream, uint32_t n_dst, const GeometricTable& geo,
                       std::vector<uint32_t>& out) {
    out.clear();
    if (geo.never() || n_dst == 0) return;
    Xoshiro256ss g(stream);
    uint64_t cursor = 0;  // 1-based index of the most recent present edge
    for (;;) {
        cursor += geo.draw(g);
        if (cursor > n_dst) break;
        out.push_back(uint32_t(cursor - 1));
    }
}

}  // namespace acbw::rng
