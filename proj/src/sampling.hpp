#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mmkmeans/random.hpp"

namespace mmkmeans::detail {

/// First `count` entries of a partial Fisher-Yates shuffle of `pool`.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t count, Rng& rng) {
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t pick = t + rng.index(pool.size() - t);
        std::swap(pool[t], pool[pick]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace mmkmeans::detail
