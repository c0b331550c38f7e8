#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "asep/transition.hpp"

namespace asep {

struct TrajectoryConfig {
    ParticleState initial;
    double t = 0.0;
    double p = 0.5;  // 0 and 1 are accepted here (totally asymmetric limits)
    std::uint64_t seed = 0;
    std::int64_t samples = 1;

    void validate() const;
};

// Sample `index` draws from its own generator, seeded from (seed, index) by SplitMix64.
std::mt19937_64 sample_rng(std::uint64_t seed, std::int64_t index);

// One trajectory of the two-sided exclusion dynamics up to time t. A particle
// jumping onto an occupied site exchanges places with the occupant when the
// occupant's species is lower, and is blocked otherwise.
ParticleState simulate_trajectory(const TrajectoryConfig& cfg, std::int64_t sample_index);

// Advances `state` by a single attempted jump of particle `k` (0-based) to the right or
// left. Returns false when the jump is blocked.
bool attempt_jump(ParticleState& state, int k, bool right);

struct EmpiricalEntry {
    ParticleState state;
    std::int64_t count = 0;
    double frequency = 0.0;
    double std_error = 0.0;  // sqrt(f (1 - f) / samples)
};

struct EmpiricalDistribution {
    std::vector<EmpiricalEntry> entries;  // sorted by state
    std::int64_t samples = 0;

    const EmpiricalEntry* find(const ParticleState& s) const;
};

EmpiricalDistribution estimate_distribution(const TrajectoryConfig& cfg);

}  // namespace asep
