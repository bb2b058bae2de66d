#pragma once

#include <cstdint>
#include <random>

namespace gjr {

/// The one generator type used throughout; every stream is seeded explicitly.
using Rng = std::mt19937_64;

/// Seed for the `index`-th independent stream derived from `base`.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace gjr
