#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "asep/simulator.hpp"
#include "asep/transition.hpp"

namespace asep {

struct Target {
    std::vector<long> x;
    MultisetWord pi;
};

// A run description read from JSON:
//   {"N": 3, "nu": "221", "Y": [0,1,2], "t": 0.5, "p": 0.7,
//    "targets": [{"X": [0,1,3], "pi": "212"}]  or  "window": 10,
//    "quadrature": {"radius": 0.4, "nodes": 64, "max_nodes": 1024, "tolerance": 1e-6,
//                   "adaptive": true, "path": "auto"},
//    "mc": {"seed": 1, "samples": 100000}}
struct Scenario {
    int n = 0;
    MultisetWord nu;
    std::vector<long> y;
    double t = 0.0;
    double p = 0.5;
    std::vector<Target> targets;
    std::optional<int> window;
    QuadratureSpec quadrature;
    std::uint64_t seed = 1;
    std::int64_t samples = 100000;

    ParticleState initial() const { return {y, nu}; }
    TrajectoryConfig trajectory() const { return {initial(), t, p, seed, samples}; }
};

// Throws InvalidArgument with the offending field named.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const ParticleState& s);

}  // namespace asep
