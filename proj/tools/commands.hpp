#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asep/factorized.hpp"
#include "asep/scenario.hpp"

namespace asep::cli {

enum ExitCode : int {
    kPass = 0,
    kValidationFailure = 1,
    kInputError = 2,
    kNonConvergence = 3,
};

// Command-line values that replace scenario fields.
struct Overrides {
    std::optional<double> p, t, radius;
    std::optional<int> nodes, window;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<std::string> out;

    void apply(Scenario& s) const;
};

int cmd_decompose(const std::string& sigma, const std::string& scheme, std::ostream& out);
int cmd_table(int n, const std::string& nu, const std::optional<std::string>& out_path, std::ostream& out);
int cmd_amplitude(const std::string& sigma, const std::string& pi, const std::string& nu, bool trace, std::ostream& out);
int cmd_prob(const std::string& scenario_path, const Overrides& ov, std::ostream& out);
int cmd_simulate(const std::string& scenario_path, const Overrides& ov, std::ostream& out);
int cmd_validate(const std::string& scenario_path, const Overrides& ov, const std::vector<std::string>& golden,
                 std::ostream& out);

// JSON bodies of the prob / simulate reports.
nlohmann::json prob_report(const Scenario& s);
nlohmann::json simulate_report(const Scenario& s);

struct GoldenCheck {
    std::size_t rows = 0;
    std::size_t table_mismatches = 0;   // against the generated table
    std::size_t oracle_mismatches = 0;  // against the sector-matrix oracle
    std::vector<std::string> details;
};
// Compares a golden table with the generated table and with the oracle at `points`
// random evaluation points (relative tolerance 1e-10).
GoldenCheck check_golden(const std::vector<TableRow>& golden, int points, std::uint64_t seed);

struct OracleSweep {
    std::size_t entries = 0;
    double max_rel_error = 0.0;
    std::string worst;
};
// Every sigma in S_N and every pi, amplitude() against the oracle column of nu.
OracleSweep oracle_sweep(int n, const MultisetWord& nu, int points, std::uint64_t seed);

// Parses argv, runs the command, and maps library errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asep::cli
