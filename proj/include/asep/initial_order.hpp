#pragma once

#include <optional>
#include <string>

#include "asep/block_matrices.hpp"
#include "asep/permutation.hpp"
#include "asep/scattering.hpp"

namespace asep {

// The four initial species orders with closed-form amplitudes.
enum class InitialOrder {
    TwosOne,  // 2...21
    OneTwos,  // 12...2
    TwoOnes,  // 21...1
    OnesTwo,  // 1...12
};

std::string to_string(InitialOrder order);

// nullopt for any other word (or N < 2). For N = 2, 21 is read as 2...21 and 12 as 12...2.
std::optional<InitialOrder> classify(const MultisetWord& nu);
// As classify, but throws UnsupportedOrder.
InitialOrder require_order(const MultisetWord& nu);

MultisetWord initial_word(InitialOrder order, int n);
Scheme scheme_for(InitialOrder order);
// [1,2,...,2] for 2...21 and 12...2; [1,...,1,2] otherwise.
Sector sector_for(InitialOrder order, int n);
// The slot that may occur at most once in the matching scheme.
int distinguished_slot(InitialOrder order, int n);
// Kind carried by the distinguished factor on the diagonal.
FactorKind diagonal_kind(InitialOrder order);

}  // namespace asep
