#include "minorforge/rng.hpp"

#include <stdexcept>

namespace minorforge {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t x = master_seed;
    std::uint64_t mixed = splitmix64(x) ^ (stream_index * 0xD2B74407B1CE6E93ULL);
    for (auto& word : s_) word = splitmix64(mixed);
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t RngStream::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::below: n must be nonzero");
    std::uint64_t threshold = (0 - n) % n;  // rejection keeps the draw unbiased
    for (;;) {
        std::uint64_t x = next_u64();
        if (x >= threshold) return x % n;
    }
}

double RngStream::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace minorforge
