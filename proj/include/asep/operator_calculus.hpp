#pragma once

#include <string>
#include <vector>

#include "asep/block_matrices.hpp"
#include "asep/initial_order.hpp"
#include "asep/permutation.hpp"
#include "asep/scattering.hpp"

namespace asep {

// A permutation row over a species row, with the factors gathered so far.
struct TwoRowState {
    Permutation top;
    MultisetWord bottom;
    AmplitudeProduct acc;

    static TwoRowState start(const MultisetWord& nu);
};

// Swaps the top row only. Gains S, Q or P for bottom letters equal, falling, rising.
TwoRowState apply_tstar(const TwoRowState& state, int i);
// Swaps the top row, and the bottom row when its letters differ. Gains pT (falling),
// qT (rising) or S (equal).
TwoRowState apply_that(const TwoRowState& state, int i);

enum class OperatorKind { Star, Hat };

struct OperatorStep {
    OperatorKind kind;
    int slot;
    AmplitudeFactor gained;
    TwoRowState after;
};

struct OperatorRun {
    std::vector<OperatorStep> steps;
    TwoRowState final_state;
};

// Runs the word's factors in application order: the first `hat_count` as hat
// operators, the rest as star operators.
OperatorRun run_operators(const LabelledWord& word, const MultisetWord& nu, std::size_t hat_count);

struct OperatorResult {
    AmplitudeProduct product;
    // Number of leading hat operators on the path used; meaningless for Zero.
    std::size_t hat_count = 0;
    bool reached = false;
};

// [A_sigma]_{pi,nu} for a supported nu via the matching scheme word. Every split
// point is tried; Zero if no run ends at pi, NotFactorized if runs disagree.
OperatorResult amplitude_via_operators(const Permutation& sigma, const MultisetWord& pi, const MultisetWord& nu);

// For nu = 2...21 and pi with its 1 at slot i: star operators on w_1...w_{i-1},
// hat operators on w_i...w_{N-1}. Zero when some w_l = 1 with l >= i.
AmplitudeProduct segment_split_amplitude(const Permutation& sigma, int i);

// Plain-text trace, one block per step, showing both rows and the factor gained.
std::string render_trace(const OperatorRun& run, const MultisetWord& nu);

}  // namespace asep
