#include "asep/scenario.hpp"

#include <fstream>

#include "asep/errors.hpp"
#include "asep/initial_order.hpp"

namespace asep {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* name) {
    if (!j.contains(name)) throw InvalidArgument(std::string("scenario: missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("scenario: field '") + name + "' has the wrong type");
    }
}

template <class T>
void optional_field(const nlohmann::json& j, const char* name, T& out) {
    if (!j.contains(name) || j.at(name).is_null()) return;
    try {
        out = j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("scenario: field '") + name + "' has the wrong type");
    }
}

}  // namespace

Scenario parse_scenario(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("scenario: expected a JSON object");
    Scenario s;
    s.nu = MultisetWord::parse(field<std::string>(j, "nu"));
    s.n = j.contains("N") ? field<int>(j, "N") : s.nu.size();
    s.y = field<std::vector<long>>(j, "Y");
    s.t = field<double>(j, "t");
    s.p = field<double>(j, "p");
    if (s.nu.size() != s.n) throw InvalidArgument("scenario: nu has length " + std::to_string(s.nu.size()) + ", expected N=" + std::to_string(s.n));
    if (static_cast<int>(s.y.size()) != s.n) throw InvalidArgument("scenario: Y must list N positions");
    s.initial().validate();
    check_probability(s.p);
    if (!(s.t >= 0.0)) throw InvalidArgument("scenario: t must be nonnegative");

    if (j.contains("targets")) {
        for (const auto& tj : j.at("targets")) {
            Target t;
            t.x = field<std::vector<long>>(tj, "X");
            t.pi = MultisetWord::parse(field<std::string>(tj, "pi"));
            ParticleState fs{t.x, t.pi};
            if (fs.size() != s.n) throw InvalidArgument("scenario: target X must list N positions");
            fs.validate();
            if (t.pi.multiset() != s.nu.multiset()) throw InvalidArgument("scenario: target pi " + t.pi.to_string() + " is not an arrangement of nu");
            s.targets.push_back(std::move(t));
        }
    }
    if (j.contains("window")) {
        s.window = field<int>(j, "window");
        if (*s.window < 0) throw InvalidArgument("scenario: window must be nonnegative");
    }

    s.quadrature.t = s.t;
    s.quadrature.p = s.p;
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        optional_field(q, "radius", s.quadrature.radius);
        optional_field(q, "nodes", s.quadrature.nodes);
        optional_field(q, "max_nodes", s.quadrature.max_nodes);
        optional_field(q, "tolerance", s.quadrature.tolerance);
        optional_field(q, "adaptive", s.quadrature.adaptive);
        std::string path = "auto";
        optional_field(q, "path", path);
        s.quadrature.path = parse_path(path);
    }
    if (j.contains("mc")) {
        const auto& m = j.at("mc");
        optional_field(m, "seed", s.seed);
        optional_field(m, "samples", s.samples);
        if (s.samples < 1) throw InvalidArgument("scenario: mc.samples must be positive");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open scenario " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("scenario " + path + ": " + e.what());
    }
    return parse_scenario(j);
}

nlohmann::json to_json(const ParticleState& s) {
    return {{"X", s.positions}, {"pi", s.species.to_string()}};
}

nlohmann::json to_json(const Scenario& s) {
    nlohmann::json j{{"N", s.n}, {"nu", s.nu.to_string()}, {"Y", s.y}, {"t", s.t}, {"p", s.p}};
    if (!s.targets.empty()) {
        j["targets"] = nlohmann::json::array();
        for (const auto& t : s.targets) j["targets"].push_back({{"X", t.x}, {"pi", t.pi.to_string()}});
    }
    if (s.window) j["window"] = *s.window;
    j["quadrature"] = {{"radius", s.quadrature.radius > 0 ? s.quadrature.radius : default_radius(s.p)},
                       {"nodes", s.quadrature.nodes},
                       {"max_nodes", s.quadrature.max_nodes},
                       {"tolerance", s.quadrature.tolerance},
                       {"adaptive", s.quadrature.adaptive},
                       {"path", to_string(s.quadrature.path)}};
    j["mc"] = {{"seed", s.seed}, {"samples", s.samples}};
    return j;
}

}  // namespace asep
