#pragma once

#include <cstdint>
#include <vector>

namespace linforest {

// splitmix64: tiny, well-mixed, and identical on every platform.  The
// generators promise byte-identical output for a (spec, seed) pair, and
// std::uniform_int_distribution's mapping is implementation-defined, so the
// bounded sampler is pinned here.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0.  Rejection sampling, no modulo bias.
    uint64_t bounded(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(bounded(static_cast<uint64_t>(hi - lo + 1)));
    }

    // True with probability num/den (exact).
    bool chance(long long num, long long den) {
        if (num <= 0) return false;
        if (num >= den) return true;
        return bounded(static_cast<uint64_t>(den)) < static_cast<uint64_t>(num);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    uint64_t state_;
};

// Stable per-instance seed derivation for experiment workers.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    Rng r(master ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return r.next();
}

}  // namespace linforest
