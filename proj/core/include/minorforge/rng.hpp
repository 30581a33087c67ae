#pragma once

#include <cstdint>
#include <vector>

namespace minorforge {

/// Deterministic stream of 64-bit words (xoshiro256**), seeded through
/// SplitMix64. All bounded draws are produced here rather than through
/// std:: distributions, so identical (seed, stream) pairs reproduce the
/// same graphs bit-for-bit on any platform.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Unbiased draw from {0, ..., n-1}; n must be nonzero.
    std::uint64_t below(std::uint64_t n);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

    template <typename T>
    void shuffle(std::vector<T>& a) {
        for (std::size_t i = a.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(a[i - 1], a[j]);
        }
    }

private:
    std::uint64_t s_[4];
};

/// Master seed plus stream derivation: (master_seed, stream_index) yields an
/// independent, reproducible generator per trial.
struct RandomSource {
    std::uint64_t master_seed = 0;

    RandomSource() = default;
    explicit RandomSource(std::uint64_t seed) : master_seed(seed) {}

    RngStream stream(std::uint64_t stream_index) const {
        return RngStream(master_seed, stream_index);
    }
};

}  // namespace minorforge
