#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace vho {

namespace detail {

// 64 uniformly random bits from a full-range 32- or 64-bit generator.
template <class URBG>
std::uint64_t bits64(URBG& rng) {
    using result_type = typename URBG::result_type;
    static_assert(URBG::min() == 0, "generator must cover its full range");
    if constexpr (URBG::max() == std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::uint64_t>(rng());
    } else {
        static_assert(URBG::max() == std::numeric_limits<std::uint32_t>::max(),
                      "generator must produce full 32- or 64-bit words");
        const auto lo = static_cast<std::uint64_t>(static_cast<std::uint32_t>(rng()));
        const auto hi = static_cast<std::uint64_t>(static_cast<std::uint32_t>(rng()));
        (void)sizeof(result_type);
        return (hi << 32) | lo;
    }
}

}  // namespace detail

/// Uniform draw on [0, 1) with 53 random bits. Fully specified, so results
/// are reproducible across standard libraries.
template <class URBG>
double canonical(URBG& rng) {
    return static_cast<double>(detail::bits64(rng) >> 11) * 0x1.0p-53;
}

/// Standard normal deviate via the Marsaglia polar method.
template <class URBG>
double standard_normal(URBG& rng) {
    for (;;) {
        const double u = 2.0 * canonical(rng) - 1.0;
        const double w = 2.0 * canonical(rng) - 1.0;
        const double s = u * u + w * w;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

/// Engine for one simulation block, derived from (seed, stream, block).
/// Block streams are independent of scheduling, which is what makes the
/// parallel trial loops deterministic under any worker count.
inline std::mt19937_64 make_block_engine(std::uint64_t seed, std::uint64_t stream,
                                         std::uint64_t block) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace vho
