#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asep {

// A bijection of {1..N} in one-line notation: entries()[i-1] = sigma(i).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> entries);

    static Permutation identity(int n);
    // "4321" -> 4321. Single-digit entries only, so N <= 9.
    static Permutation parse(std::string_view text);

    int size() const { return static_cast<int>(entries_.size()); }
    // 1-based slot access.
    int operator()(int slot) const { return entries_[static_cast<std::size_t>(slot - 1)]; }
    std::span<const int> entries() const { return entries_; }

    // 1-based slot holding `value`.
    int position_of(int value) const;
    Permutation inverse() const;
    bool is_identity() const;
    // Exchange the entries at slots `slot` and `slot`+1.
    void swap_slots(int slot);
    std::string to_string() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> entries_;
};

// Every permutation of {1..n}, lexicographic.
std::vector<Permutation> all_permutations(int n);

// (beta, alpha) with beta > alpha.
struct Inversion {
    int beta = 0;
    int alpha = 0;
    auto operator<=>(const Inversion&) const = default;
};

// All (sigma(i), sigma(j)) with i < j and sigma(i) > sigma(j), sorted.
std::vector<Inversion> inversions(const Permutation& sigma);

// T_slot(beta, alpha): swaps slots `slot`, `slot`+1, which held alpha then beta.
struct LabelledTransposition {
    int slot = 0;
    int beta = 0;
    int alpha = 0;
    auto operator<=>(const LabelledTransposition&) const = default;
};

enum class Scheme { Sigma, Omega, Gamma, Xi };

std::string to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

// Factors are stored as printed, left to right; the rightmost factor is applied
// first to the identity.
struct LabelledWord {
    std::vector<LabelledTransposition> factors;
    std::optional<Scheme> scheme;
    Permutation target;

    std::size_t length() const { return factors.size(); }
    // Factors in the order they act, i.e. reversed.
    std::vector<LabelledTransposition> application_order() const;
    // "T1(3,2) T2(3,1) T1(2,1)"; "(identity)" for the empty word.
    std::string to_string() const;
};

// Half-open range [begin, end) into LabelledWord::factors holding w_k.
struct Segment {
    int k = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool empty() const { return begin == end; }
    std::size_t size() const { return end - begin; }
};

// sigma = w_1 ... w_{N-1} (Sigma) or w_{N-1} ... w_1 (Omega, Gamma, Xi). Each w_k has
// an entry in `segments` (index k-1), empty when w_k = 1.
struct SchemeSegmentation {
    LabelledWord word;
    std::vector<Segment> segments;

    const Segment& segment(int k) const { return segments[static_cast<std::size_t>(k - 1)]; }
    std::span<const LabelledTransposition> factors_of(int k) const;
    // "(T1)(T2T1)(T3T2T1)" in print order; empty w_k renders as "(1)".
    std::string to_string() const;
};

// Slots are given in print order. Simulates right-to-left application on the
// identity of S_n and records the swapped values. Throws NotReduced when a swap
// would undo an inversion, and InvalidArgument for out-of-range slots.
LabelledWord label_word(std::span<const int> slots, int n, std::optional<Scheme> scheme = std::nullopt);

// The product of the word's factors, recomputed from the slots alone.
Permutation evaluate_word(const LabelledWord& word);

// The unique factorization of sigma in the given scheme.
SchemeSegmentation decompose(const Permutation& sigma, Scheme scheme);

// Slot sequence (print order) of w_k for each k, as produced by decompose.
std::vector<std::vector<int>> scheme_segment_slots(const Permutation& sigma, Scheme scheme);

}  // namespace asep
