#include "l0dag/rng.hpp"

#include <random>

namespace l0dag {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Engine make_engine(std::uint64_t seed, Stream stream) {
    // std::seed_seq's mixing is fully specified by the standard, so the
    // resulting engine state is identical across platforms.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Engine(seq);
}

} // namespace l0dag
