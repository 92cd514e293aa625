#pragma once

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>

namespace l0dag {

using Engine = boost::random::mt19937_64;

/// Independent, named streams derived from one master seed. Each simulation
/// stage draws from its own stream so that changing how one stage consumes
/// randomness leaves the others untouched.
enum class Stream : std::uint32_t {
    dag = 1,
    weights = 2,
    noise = 3,
};

/// Seed for a sub-stream of `master`, e.g. per replication.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

Engine make_engine(std::uint64_t seed, Stream stream);

} // namespace l0dag
