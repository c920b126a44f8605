#pragma once

#include <cstdint>
#include <random>

namespace resinet {

/// mt19937_64 output is fixed by the standard; the conversion below keeps
/// uniform draws identical across standard libraries.
inline double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * uniform01(engine);
}

}  // namespace resinet
