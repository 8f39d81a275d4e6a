#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace qsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seedable, splittable generator: one mt19937_64 per stream, streams keyed
// by a splitmix64 chain. derive() is pure, so a parent can hand independent
// streams to worker threads; results depend only on (seed, stream path),
// never on thread scheduling.
//
// Stream rule: child_seed = splitmix64(parent_seed ^ splitmix64(stream + 1)).
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    SplitRng derive(std::uint64_t stream) const {
        return SplitRng(splitmix64(seed_ ^ splitmix64(stream + 1)));
    }

    std::uint64_t next() { return engine_(); }

    // low `width` bits of one draw
    std::uint32_t bits(unsigned width) {
        const std::uint64_t v = next();
        if (width >= 32) return static_cast<std::uint32_t>(v);
        return static_cast<std::uint32_t>(v & ((1ull << width) - 1));
    }

    // uniform in [0, bound); masked rejection keeps this implementation-stable
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const int k = 64 - std::countl_zero(bound - 1);
        const std::uint64_t m = (k >= 64) ? ~0ull : ((1ull << k) - 1ull);
        for (;;) {
            const std::uint64_t v = next() & m;
            if (v < bound) return v;
        }
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qsim
