#pragma once

#include <array>
#include <cstdint>

namespace halfline {

// Philox 4x32-10 counter-based block function. Each output block is a pure
// function of (counter, key), so draws can be addressed by index instead of
// advancing shared state.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t mult0 = 0xD2511F53u;
    constexpr std::uint32_t mult1 = 0xCD9E8D57u;
    constexpr std::uint32_t weyl0 = 0x9E3779B9u;
    constexpr std::uint32_t weyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            key[0] += weyl0;
            key[1] += weyl1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(mult0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(mult1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

// Uniform draws on [0,1) addressed by (seed, stream, index). One Philox block
// yields two 53-bit doubles; sequential access over indices reuses the cached
// block, so the amortized cost is half a block per draw.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    double uniform(std::uint64_t index) {
        const std::uint64_t pair = index >> 1;
        if (pair != cached_pair_) {
            block_ = philox4x32({static_cast<std::uint32_t>(pair),
                                 static_cast<std::uint32_t>(pair >> 32),
                                 static_cast<std::uint32_t>(stream_),
                                 static_cast<std::uint32_t>(stream_ >> 32)},
                                key_);
            cached_pair_ = pair;
        }
        const std::uint64_t bits =
            (index & 1u) ? (static_cast<std::uint64_t>(block_[2]) << 32) | block_[3]
                         : (static_cast<std::uint64_t>(block_[0]) << 32) | block_[1];
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    std::uint64_t stream() const { return stream_; }

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t cached_pair_ = ~std::uint64_t{0};
    std::array<std::uint32_t, 4> block_{};
};

}  // namespace halfline
