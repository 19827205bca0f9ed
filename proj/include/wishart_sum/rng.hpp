// SPDX-License-Identifier: Apache-2.0
//
// Counter-based pseudo-random streams. Each (seed, stream) pair names an
// independent sequence; output i is a pure function of (seed, stream, i), so
// any scheduling of consumers reproduces identical draws.
#pragma once

#include <cstdint>

namespace wishart_sum {

namespace detail {
// SplitMix64 finalizer: bijective 64-bit mix with full avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(detail::mix64(seed ^ 0x8f462907531fc6b5ULL) ^
                detail::mix64(stream * 0x2545f4914f6cdd1dULL + 0x632be59bd9b4e019ULL)),
          counter_(0) {}

    std::uint64_t next_u64() { return detail::mix64(base_ + counter_++ * 0x9e3779b97f4a7c15ULL); }

    // uniform on (0, 1]; never returns 0 so log() is always safe
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
    }

    // standard normal via Box-Muller, pairs cached
    double next_normal();

    // derive a child stream id for sub-draws (per-term matrices etc.)
    static std::uint64_t substream(std::uint64_t stream, std::uint64_t idx) {
        return detail::mix64(stream * 0xd1342543de82ef95ULL + idx + 0x2b2e14bdf9b1a823ULL);
    }

  private:
    std::uint64_t base_;
    std::uint64_t counter_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace wishart_sum
