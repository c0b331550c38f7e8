#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asep/block_matrices.hpp"
#include "asep/scattering.hpp"

namespace asep {

struct ParticleState {
    std::vector<long> positions;  // strictly increasing
    MultisetWord species;

    // Throws InvalidArgument on unordered positions or a length mismatch.
    void validate() const;
    int size() const { return static_cast<int>(positions.size()); }
    auto operator<=>(const ParticleState&) const = default;
};

enum class AmplitudePath {
    Auto,        // factorized when nu is supported (or N = 1), otherwise the oracle
    Factorized,  // closed-form and operator-calculus products
    Oracle,      // sector matrices propagated numerically, N <= 4
};

std::string to_string(AmplitudePath path);
AmplitudePath parse_path(const std::string& text);

struct QuadratureSpec {
    double t = 0.0;
    double p = 0.5;
    double radius = 0.0;  // <= 0 selects default_radius(p)
    int nodes = 64;       // per variable; at least 16
    int max_nodes = 1024;
    double tolerance = 1e-6;  // on max |result(M) - result(2M)|
    bool adaptive = true;
    AmplitudePath path = AmplitudePath::Auto;
};

cplx epsilon(cplx xi, double p);

// Radius below which no scattering denominator vanishes on the polycircle:
// the positive root of r (1 + q r) = p.
double critical_radius(double p);
// min(0.5 min(1, p/q), 0.85 critical_radius(p)).
double default_radius(double p);
// Throws DenominatorVanishes when a circle of radius r would enclose amplitude poles.
void check_radius(double r, double p, int n);

struct QuadratureInfo {
    int nodes = 0;
    double radius = 0.0;
    double change = 0.0;  // max |result(M) - result(M/2)|, 0 when not adaptive
    AmplitudePath path = AmplitudePath::Auto;
};

struct ProbabilityResult {
    double value = 0.0;
    double imag = 0.0;
    QuadratureInfo info;
};

struct DistributionEntry {
    ParticleState state;
    double value = 0.0;
    double imag = 0.0;
};

struct Distribution {
    std::vector<DistributionEntry> entries;  // positions ascending, then species
    QuadratureInfo info;
    double max_imag = 0.0;

    double total() const;
    // nullptr when the state is outside the window.
    const DistributionEntry* find(const ParticleState& s) const;
};

// Cap on the number of polycircle grid points M^N.
inline constexpr std::int64_t kMaxGridPoints = std::int64_t{1} << 24;

ProbabilityResult transition_probability(const ParticleState& initial, const ParticleState& final_state,
                                         const QuadratureSpec& spec);

// Every final state with positions in [y_1 - W, y_N + W] and species in the sector.
Distribution transition_distribution(const ParticleState& initial, const QuadratureSpec& spec, int window);

// Total of transition_distribution.
double normalization_check(const ParticleState& initial, const QuadratureSpec& spec, int window);

// e^{-t} sum_k (pt)^{d+k} (qt)^k / ((d+k)! k!), the single-particle law of d = x - y.
double single_particle_series(long d, double t, double p);

}  // namespace asep
