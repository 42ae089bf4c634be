#pragma once

#include <cstdint>

namespace ddna {

// splitmix64 step; doubles as a stream mixer. All randomness in the library
// flows through this generator so any fixed seed reproduces bit-identical
// results regardless of platform or standard-library version.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // burn two steps so trivially related seeds decorrelate
        next();
        next();
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Deterministic per-task seed: the stream for (master, index) does not depend
// on evaluation order, so trials and cells may run in any order (or
// concurrently) and still reproduce sequential results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

}  // namespace ddna
