#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "asep/block_matrices.hpp"
#include "asep/errors.hpp"
#include "asep/initial_order.hpp"
#include "asep/operator_calculus.hpp"
#include "asep/simulator.hpp"
#include "asep/transition.hpp"

namespace asep::cli {

namespace {

void emit(const nlohmann::json& j, const std::optional<std::string>& path, std::ostream& out) {
    if (path) {
        std::ofstream f(*path);
        if (!f) throw InvalidArgument("cannot write " + *path);
        f << j.dump(2) << '\n';
    } else {
        out << j.dump(2) << '\n';
    }
}

nlohmann::json quadrature_json(const QuadratureInfo& info) {
    return {{"radius", info.radius}, {"nodes", info.nodes}, {"last_change", info.change}, {"path", to_string(info.path)}};
}

// Smallest W such that every listed state lies in [y_1 - W, y_N + W].
int covering_window(const std::vector<long>& y, const std::vector<ParticleState>& states) {
    long w = 1;
    for (const auto& s : states) {
        w = std::max(w, y.front() - s.positions.front());
        w = std::max(w, s.positions.back() - y.back());
    }
    return static_cast<int>(w);
}

}  // namespace

void Overrides::apply(Scenario& s) const {
    if (p) {
        check_probability(*p);
        s.p = s.quadrature.p = *p;
    }
    if (t) {
        if (!(*t >= 0.0)) throw InvalidArgument("--t must be nonnegative");
        s.t = s.quadrature.t = *t;
    }
    if (radius) s.quadrature.radius = *radius;
    if (nodes) s.quadrature.nodes = *nodes;
    if (window) {
        if (*window < 0) throw InvalidArgument("--window must be nonnegative");
        s.window = *window;
    }
    if (seed) s.seed = *seed;
    if (samples) {
        if (*samples < 1) throw InvalidArgument("--samples must be positive");
        s.samples = *samples;
    }
}

int cmd_decompose(const std::string& sigma, const std::string& scheme, std::ostream& out) {
    const SchemeSegmentation seg = decompose(Permutation::parse(sigma), parse_scheme(scheme));
    out << seg.word.to_string() << '\n' << seg.to_string() << '\n';
    return kPass;
}

int cmd_table(int n, const std::string& nu, const std::optional<std::string>& out_path, std::ostream& out) {
    const auto rows = amplitude_table(n, MultisetWord::parse(nu));
    if (out_path) {
        std::ofstream f(*out_path);
        if (!f) throw InvalidArgument("cannot write " + *out_path);
        write_table(f, rows);
    } else {
        write_table(out, rows);
    }
    return kPass;
}

int cmd_amplitude(const std::string& sigma_text, const std::string& pi_text, const std::string& nu_text, bool trace,
                  std::ostream& out) {
    const Permutation sigma = Permutation::parse(sigma_text);
    const MultisetWord pi = MultisetWord::parse(pi_text), nu = MultisetWord::parse(nu_text);
    const AmplitudeProduct a = amplitude(sigma, pi, nu);
    out << canonical_form(a) << '\n';
    if (trace) {
        const OperatorResult r = amplitude_via_operators(sigma, pi, nu);
        const LabelledWord word = decompose(sigma, scheme_for(require_order(nu))).word;
        out << "word " << word.to_string() << '\n';
        if (r.reached)
            out << render_trace(run_operators(word, nu, r.hat_count), nu);
        else
            out << "no operator path reaches " << pi.to_string() << '\n';
    }
    return kPass;
}

nlohmann::json prob_report(const Scenario& s) {
    if (s.targets.empty() && !s.window) throw InvalidArgument("scenario needs 'targets' or 'window'");
    nlohmann::json rep{{"command", "prob"}, {"scenario", to_json(s)}};
    const ParticleState init = s.initial();
    double max_imag = 0.0;
    if (!s.targets.empty()) {
        auto rows = nlohmann::json::array();
        QuadratureInfo info;
        for (const auto& t : s.targets) {
            const auto r = transition_probability(init, {t.x, t.pi}, s.quadrature);
            rows.push_back({{"X", t.x}, {"pi", t.pi.to_string()}, {"probability", r.value}, {"imag", r.imag}});
            max_imag = std::max(max_imag, std::abs(r.imag));
            info = r.info;
        }
        rep["targets"] = rows;
        rep["quadrature"] = quadrature_json(info);
    }
    if (s.window) {
        const Distribution d = transition_distribution(init, s.quadrature, *s.window);
        auto rows = nlohmann::json::array();
        for (const auto& e : d.entries)
            rows.push_back({{"X", e.state.positions}, {"pi", e.state.species.to_string()}, {"probability", e.value}, {"imag", e.imag}});
        rep["window"] = {{"W", *s.window}, {"states", rows}, {"total", d.total()}};
        rep["quadrature"] = quadrature_json(d.info);
        max_imag = std::max(max_imag, d.max_imag);
    }
    rep["max_imag"] = max_imag;
    return rep;
}

nlohmann::json simulate_report(const Scenario& s) {
    const EmpiricalDistribution d = estimate_distribution(s.trajectory());
    auto rows = nlohmann::json::array();
    for (const auto& e : d.entries)
        rows.push_back({{"X", e.state.positions},
                        {"pi", e.state.species.to_string()},
                        {"probability", e.frequency},
                        {"std_error", e.std_error},
                        {"count", e.count}});
    return {{"command", "simulate"}, {"scenario", to_json(s)}, {"samples", d.samples}, {"states", rows}};
}

int cmd_prob(const std::string& path, const Overrides& ov, std::ostream& out) {
    Scenario s = load_scenario(path);
    ov.apply(s);
    emit(prob_report(s), ov.out, out);
    return kPass;
}

int cmd_simulate(const std::string& path, const Overrides& ov, std::ostream& out) {
    Scenario s = load_scenario(path);
    ov.apply(s);
    emit(simulate_report(s), ov.out, out);
    return kPass;
}

GoldenCheck check_golden(const std::vector<TableRow>& golden, int points, std::uint64_t seed) {
    GoldenCheck res;
    res.rows = golden.size();
    if (golden.empty()) return res;

    // generated tables for every (N, nu) present
    std::map<std::pair<int, std::string>, std::vector<TableRow>> generated;
    for (const auto& r : golden) {
        auto key = std::make_pair(r.nu.size(), r.nu.to_string());
        if (!generated.count(key)) generated[key] = amplitude_table(r.nu.size(), r.nu);
    }
    std::vector<TableRow> actual;
    for (auto& [k, rows] : generated) actual.insert(actual.end(), rows.begin(), rows.end());
    for (const auto& m : compare_tables(golden, actual)) {
        if (m.expected == "(missing)") continue;  // rows the golden file does not list
        ++res.table_mismatches;
        res.details.push_back("table " + m.sigma + " " + m.pi + " " + m.nu + ": file " + m.expected + ", generated " + m.actual);
    }

    std::mt19937_64 rng(seed);
    for (const auto& r : golden) {
        const auto order = require_order(r.nu);
        const Sector sector = sector_for(order, r.nu.size());
        const LabelledWord word = decompose(r.sigma, Scheme::Sigma).word;
        double worst = 0.0;
        for (int k = 0; k < points; ++k) {
            const EvalPoint pt = random_eval_point(r.nu.size(), rng);
            const cplx oracle = a_sigma_column(word, sector, sector.index_of(r.nu), pt)(sector.index_of(r.pi));
            worst = std::max(worst, relative_error(eval_product(r.product, pt), oracle));
        }
        if (worst > 1e-10) {
            ++res.oracle_mismatches;
            std::ostringstream os;
            os << "oracle " << r.sigma.to_string() << ' ' << r.pi.to_string() << ' ' << r.nu.to_string() << ": file "
               << canonical_form(r.product) << " differs from the matrix entry (relative error " << worst << ")";
            res.details.push_back(os.str());
        }
    }
    return res;
}

OracleSweep oracle_sweep(int n, const MultisetWord& nu, int points, std::uint64_t seed) {
    const InitialOrder order = require_order(nu);
    const Sector sector = sector_for(order, n);
    const int col = sector.index_of(nu);
    std::mt19937_64 rng(seed);
    OracleSweep res;
    for (const auto& sigma : all_permutations(n)) {
        std::vector<AmplitudeProduct> prods;
        for (const auto& pi : sector.words()) prods.push_back(amplitude(sigma, pi, nu));
        const LabelledWord word = decompose(sigma, scheme_for(order)).word;
        for (int k = 0; k < points; ++k) {
            const EvalPoint pt = random_eval_point(n, rng);
            const Eigen::VectorXcd v = a_sigma_column(word, sector, col, pt);
            for (int r = 0; r < sector.dim(); ++r) {
                const double e = relative_error(eval_product(prods[static_cast<std::size_t>(r)], pt), v(r));
                ++res.entries;
                if (e > res.max_rel_error) {
                    res.max_rel_error = e;
                    res.worst = sigma.to_string() + " " + sector.word(r).to_string() + " " + nu.to_string();
                }
            }
        }
    }
    return res;
}

int cmd_validate(const std::string& path, const Overrides& ov, const std::vector<std::string>& golden, std::ostream& out) {
    Scenario s = load_scenario(path);
    ov.apply(s);
    nlohmann::json rep{{"command", "validate"}, {"scenario", to_json(s)}};
    bool ok = true;

    // Monte Carlo against quadrature on every state either side puts mass >= 1e-3 on
    const EmpiricalDistribution mc = estimate_distribution(s.trajectory());
    std::vector<ParticleState> heavy;
    for (const auto& e : mc.entries)
        if (e.frequency >= 1e-3) heavy.push_back(e.state);
    const int window = std::max(s.window.value_or(0), covering_window(s.y, heavy));
    const Distribution quad = transition_distribution(s.initial(), s.quadrature, window);
    const double n = static_cast<double>(mc.samples);
    auto rows = nlohmann::json::array();
    double max_z = 0.0;
    for (const auto& q : quad.entries) {
        const EmpiricalEntry* m = mc.find(q.state);
        const double f = m ? m->frequency : 0.0;
        if (f < 1e-3 && q.value < 1e-3) continue;
        // binomial error at the larger of the two estimates, floored at one count
        const double pref = std::max(f, q.value);
        const double se = std::max(std::sqrt(pref * (1.0 - pref) / n), 1.0 / n);
        const double z = (q.value - f) / se;
        max_z = std::max(max_z, std::abs(z));
        rows.push_back({{"X", q.state.positions}, {"pi", q.state.species.to_string()}, {"probability", q.value}, {"frequency", f}, {"z", z}});
    }
    const bool mc_ok = max_z < 4.0;
    ok = ok && mc_ok;
    rep["monte_carlo"] = {{"samples", mc.samples}, {"window", window}, {"states", rows}, {"max_abs_z", max_z}, {"pass", mc_ok},
                          {"quadrature", quadrature_json(quad.info)}, {"total", quad.total()}};

    if (classify(s.nu) && s.n <= 5) {
        const OracleSweep sweep = oracle_sweep(s.n, s.nu, 5, s.seed);
        const bool sweep_ok = sweep.max_rel_error < 1e-10;
        ok = ok && sweep_ok;
        rep["oracle_sweep"] = {{"entries", sweep.entries}, {"max_rel_error", sweep.max_rel_error}, {"worst", sweep.worst}, {"pass", sweep_ok}};
    }

    auto gj = nlohmann::json::array();
    for (const auto& g : golden) {
        const GoldenCheck c = check_golden(read_table_file(g), 3, s.seed);
        const bool pass = c.table_mismatches == 0 && c.oracle_mismatches == 0;
        ok = ok && pass;
        gj.push_back({{"file", g}, {"rows", c.rows}, {"table_mismatches", c.table_mismatches},
                      {"oracle_mismatches", c.oracle_mismatches}, {"details", c.details}, {"pass", pass}});
    }
    if (!golden.empty()) rep["golden"] = gj;
    rep["pass"] = ok;
    emit(rep, ov.out, out);
    return ok ? kPass : kValidationFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-species ASEP transition probabilities from factorized Bethe amplitudes"};
    app.require_subcommand(1);

    Overrides ov;
    auto add_overrides = [&ov](CLI::App* c) {
        c->add_option("--p", ov.p, "right-jump probability");
        c->add_option("--t", ov.t, "time");
        c->add_option("--radius", ov.radius, "contour radius");
        c->add_option("--nodes", ov.nodes, "initial quadrature nodes per variable");
        c->add_option("--seed", ov.seed, "Monte Carlo seed");
        c->add_option("--samples", ov.samples, "Monte Carlo trajectories");
        c->add_option("--window", ov.window, "window half-width W");
        c->add_option("--out", ov.out, "write the report to this file");
    };

    std::string sigma, scheme = "sigma", pi, nu, scenario;
    int n = 0;
    bool trace = false;
    std::vector<std::string> golden;
    std::optional<std::string> table_out;

    auto* dec = app.add_subcommand("decompose", "labelled reduced word of a permutation");
    dec->add_option("sigma", sigma)->required();
    dec->add_option("scheme", scheme, "sigma, omega, gamma or xi");

    auto* tab = app.add_subcommand("table", "amplitude table for all sigma in S_N");
    tab->add_option("N", n)->required();
    tab->add_option("nu", nu)->required();
    tab->add_option("--out", table_out, "CSV output path");

    auto* amp = app.add_subcommand("amplitude", "one amplitude [A_sigma]_{pi,nu}");
    amp->add_option("sigma", sigma)->required();
    amp->add_option("pi", pi)->required();
    amp->add_option("nu", nu)->required();
    amp->add_flag("--trace", trace, "show the operator steps");

    auto* prob = app.add_subcommand("prob", "transition probabilities by contour quadrature");
    prob->add_option("scenario", scenario)->required();
    add_overrides(prob);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the same distribution");
    sim->add_option("scenario", scenario)->required();
    add_overrides(sim);

    auto* val = app.add_subcommand("validate", "cross-check quadrature, simulation, oracle and golden tables");
    val->add_option("scenario", scenario)->required();
    val->add_option("--golden", golden, "golden table CSV to verify");
    add_overrides(val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*dec) return cmd_decompose(sigma, scheme, out);
        if (*tab) return cmd_table(n, nu, table_out, out);
        if (*amp) return cmd_amplitude(sigma, pi, nu, trace, out);
        if (*prob) return cmd_prob(scenario, ov, out);
        if (*sim) return cmd_simulate(scenario, ov, out);
        if (*val) return cmd_validate(scenario, ov, golden, out);
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace asep::cli
