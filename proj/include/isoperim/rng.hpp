#pragma once

#include <cstdint>

namespace isoperim::rng {

// Counter-based generator: each draw is a stateless mix of
// (seed, stream, counter), so any point index can be sampled independently
// of execution order and thread count.
namespace detail {
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream)
        : key_(detail::mix64(seed ^ detail::mix64(stream * 0xda942042e4dd58b5ULL))) {}

    uint64_t next_u64() {
        return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_);
    }

    // uniform in [0, 1)
    double next_double() {
        return (next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in (0, 1): safe as an argument to log or the inverse CDF
    double next_open() {
        return ((next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace isoperim::rng
