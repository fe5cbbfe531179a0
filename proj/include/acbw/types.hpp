#pragma once

#include <cstdint>
#include <vector>

namespace acbw {

using AreaId = uint32_t;
using NeuronId = uint32_t;
using BlockId = uint32_t;  // 1-based block labels

// A named set of neurons inside one area, e.g. the winner set a projection
// converged to.
struct Assembly {
    AreaId area = 0;
    std::vector<NeuronId> neurons;  // sorted ascending
};

}  // namespace acbw
