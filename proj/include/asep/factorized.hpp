#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "asep/block_matrices.hpp"
#include "asep/initial_order.hpp"
#include "asep/permutation.hpp"
#include "asep/scattering.hpp"

namespace asep {

// [A_sigma]_{nu,nu}: S over every inversion except the factor at the scheme's
// distinguished slot, which is Q (2...21, 21...1) or P (12...2, 1...12).
AmplitudeProduct diagonal_amplitude(const Permutation& sigma, const MultisetWord& nu);

// [A_sigma]_{pi,nu} as a product of scattering factors. Zero when pi and nu are
// arrangements of different multisets. Throws UnsupportedOrder for other nu.
AmplitudeProduct amplitude(const Permutation& sigma, const MultisetWord& pi, const MultisetWord& nu);

// The closed form for nu = 2...21 with pi the word whose 1 sits at slot i.
AmplitudeProduct amplitude_twos_one(const SchemeSegmentation& sigma_word, int i);

// Indices i (1-based, ascending) with [A_sigma]_{pi^(i), 2...21} nonzero, where
// pi^(i) has its 1 at slot i. Throws UnsupportedOrder for other nu.
std::vector<int> support(const Permutation& sigma, const MultisetWord& nu);

// Sector indices (1-based) whose oracle entry in the nu column exceeds `threshold`
// in modulus at any of the sample points. Works for every supported nu.
std::vector<int> empirical_support(const Permutation& sigma, const MultisetWord& nu,
                                   const std::vector<EvalPoint>& points, double threshold = 1e-12);

// Evaluation points with |xi_k| in [0.05, 0.5], distinct moduli, random phases and
// p in [0.1, 0.9]. Every scattering denominator stays away from zero there.
EvalPoint random_eval_point(int n, std::mt19937_64& rng);

struct TableRow {
    Permutation sigma;
    MultisetWord pi;
    MultisetWord nu;
    AmplitudeProduct product;
};

// One row per (sigma, pi) in the sector of nu; sigma and pi both ascending.
std::vector<TableRow> amplitude_table(int n, const MultisetWord& nu);

// CSV with header sigma,pi,nu,canonical_product.
void write_table(std::ostream& out, const std::vector<TableRow>& rows);
std::vector<TableRow> read_table(std::istream& in);
std::vector<TableRow> read_table_file(const std::string& path);

struct TableMismatch {
    std::string sigma, pi, nu;
    std::string expected;  // "(missing)" when absent
    std::string actual;
};

// Rows are matched on (sigma, pi, nu); products compared as factor multisets.
std::vector<TableMismatch> compare_tables(const std::vector<TableRow>& expected, const std::vector<TableRow>& actual);

}  // namespace asep
