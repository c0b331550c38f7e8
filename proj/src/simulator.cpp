#include "asep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "asep/errors.hpp"

namespace asep {

void TrajectoryConfig::validate() const {
    initial.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0,1]");
    if (samples < 1) throw InvalidArgument("at least one sample is required");
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::int64_t index) {
    // SplitMix64 step on a per-sample counter
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

bool attempt_jump(ParticleState& state, int k, bool right) {
    const int n = state.size();
    const std::size_t i = static_cast<std::size_t>(k);
    const long target = state.positions[i] + (right ? 1 : -1);
    const int nb = right ? k + 1 : k - 1;
    if (nb < 0 || nb >= n || state.positions[static_cast<std::size_t>(nb)] != target) {
        state.positions[i] = target;
        return true;
    }
    auto& mine = state.species.letters[i];
    auto& theirs = state.species.letters[static_cast<std::size_t>(nb)];
    if (theirs < mine) {
        // positions stay sorted; the two labels trade places
        std::swap(mine, theirs);
        return true;
    }
    return false;
}

ParticleState simulate_trajectory(const TrajectoryConfig& cfg, std::int64_t sample_index) {
    ParticleState s = cfg.initial;
    const int n = s.size();
    auto rng = sample_rng(cfg.seed, sample_index);
    std::exponential_distribution<double> wait(static_cast<double>(n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::bernoulli_distribution dir(cfg.p);
    double clock = 0.0;
    for (;;) {
        clock += wait(rng);
        if (clock > cfg.t) break;
        const int k = pick(rng);
        attempt_jump(s, k, dir(rng));
    }
    return s;
}

const EmpiricalEntry* EmpiricalDistribution::find(const ParticleState& s) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), s,
                               [](const EmpiricalEntry& e, const ParticleState& k) { return e.state < k; });
    if (it == entries.end() || it->state != s) return nullptr;
    return &*it;
}

EmpiricalDistribution estimate_distribution(const TrajectoryConfig& cfg) {
    cfg.validate();
    std::map<ParticleState, std::int64_t> counts;
    for (std::int64_t i = 0; i < cfg.samples; ++i) ++counts[simulate_trajectory(cfg, i)];
    EmpiricalDistribution out;
    out.samples = cfg.samples;
    const double n = static_cast<double>(cfg.samples);
    for (auto& [state, c] : counts) {
        const double f = static_cast<double>(c) / n;
        out.entries.push_back({state, c, f, std::sqrt(f * (1.0 - f) / n)});
    }
    return out;
}

}  // namespace asep
