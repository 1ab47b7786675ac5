#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace strfp {

using rng_engine = std::mt19937_64;

// Unbiased draw from [0, bound) by rejection. std::uniform_int_distribution is
// not pinned down by the standard, so seeded runs would not be portable with it.
inline std::uint64_t uniform_below(rng_engine& rng, std::uint64_t bound) {
    if (bound == 0) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = rng();
    while (v >= limit) {
        v = rng();
    }
    return v % bound;
}

// `count` distinct indices drawn uniformly from [0, population), ascending.
// Partial Fisher-Yates; count is clamped to population.
inline std::vector<std::size_t> sample_indices(rng_engine& rng, std::size_t population,
                                               std::size_t count) {
    if (count > population) {
        count = population;
    }
    std::vector<std::size_t> pool(population);
    for (std::size_t i = 0; i < population; ++i) {
        pool[i] = i;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, population - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace strfp
