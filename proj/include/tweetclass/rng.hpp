#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace twc::rng {

// Uniform integer in [0, n) by rejection sampling. Used instead of
// std::uniform_int_distribution, whose output is implementation-defined and
// would break cross-platform reproducibility of seeded runs.
inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    while (true) {
        std::uint64_t r = g();
        if (r >= threshold) return r % n;
    }
}

// Fisher-Yates with the portable bounded draw.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& g) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded(g, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace twc::rng
