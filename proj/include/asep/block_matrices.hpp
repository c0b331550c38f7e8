#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "asep/permutation.hpp"
#include "asep/scattering.hpp"

namespace asep {

// A species word such as 2212, stored letter by letter.
struct MultisetWord {
    std::vector<int> letters;

    static MultisetWord parse(std::string_view text);
    int size() const { return static_cast<int>(letters.size()); }
    int operator()(int slot) const { return letters[static_cast<std::size_t>(slot - 1)]; }
    std::string to_string() const;
    // Letters in ascending order.
    std::vector<int> multiset() const;

    auto operator<=>(const MultisetWord&) const = default;
};

// All arrangements of one multiset, listed lexicographically. Row and column i of a
// SectorMatrix refer to words()[i].
class Sector {
public:
    explicit Sector(std::vector<int> multiset);

    // [1,2,...,2]: index i (1-based) is the word with its 1 at slot i.
    static Sector minority_first(int n);
    // [1,...,1,2]: index i (1-based) is the word with its 2 at slot N+1-i.
    static Sector minority_last(int n);

    int n() const { return static_cast<int>(multiset_.size()); }
    int dim() const { return static_cast<int>(words_.size()); }
    const std::vector<int>& multiset() const { return multiset_; }
    const std::vector<MultisetWord>& words() const { return words_; }
    const MultisetWord& word(int index) const { return words_[static_cast<std::size_t>(index)]; }
    // 0-based row index; throws InvalidArgument for words outside the sector.
    int index_of(const MultisetWord& w) const;
    bool contains(const MultisetWord& w) const;
    // Row index of the word obtained by swapping slots l, l+1 of words()[index].
    int swapped_index(int index, int l) const;

private:
    std::vector<int> multiset_;
    std::vector<MultisetWord> words_;
    std::vector<std::vector<int>> swap_;  // swap_[l-1][index]
};

struct SectorMatrix {
    Sector sector;
    Eigen::MatrixXcd m;

    cplx at(const MultisetWord& row, const MultisetWord& col) const {
        return m(sector.index_of(row), sector.index_of(col));
    }
};

// Two-slot scattering matrix on C^N (x) C^N, basis 11,12,...,NN.
Eigen::MatrixXcd build_R(int beta, int alpha, const EvalPoint& pt, int n);

// T_l(beta, alpha) restricted to a sector.
SectorMatrix build_T_sector(int l, int beta, int alpha, const Sector& sector, const EvalPoint& pt);

// A_sigma = T_{i_j} ... T_{i_1} restricted to a sector, built from the given word.
SectorMatrix a_sigma_sector(const LabelledWord& word, const Sector& sector, const EvalPoint& pt);
SectorMatrix a_sigma_sector(const Permutation& sigma, Scheme scheme, const Sector& sector, const EvalPoint& pt);

// Column `col` of A_sigma only, propagated factor by factor.
Eigen::VectorXcd a_sigma_column(const LabelledWord& word, const Sector& sector, int col, const EvalPoint& pt);

// Full N^N x N^N matrices; basis words over {1..N} are ordered lexicographically
// with slot 1 most significant. Throws SizeLimitExceeded for N > 4.
inline constexpr int kMaxFullN = 4;
Eigen::MatrixXcd a_sigma_full(const LabelledWord& word, const EvalPoint& pt, int n);
// T_l(beta, alpha) built literally as I (x) ... (x) R (x) ... (x) I.
Eigen::MatrixXcd kron_T_full(int l, int beta, int alpha, const EvalPoint& pt, int n);
// Product of kron_T_full factors; slow reference for a_sigma_full.
Eigen::MatrixXcd a_sigma_full_kron(const LabelledWord& word, const EvalPoint& pt, int n);

// Index of a basis word in the full space.
int full_index(const MultisetWord& w, int n);

// Basis indices of the full space reordered so each multiset is contiguous.
struct SectorOrdering {
    std::vector<int> order;                 // new position -> full index
    std::vector<std::vector<int>> blocks;   // multiset of each block, ascending
    std::vector<int> block_start;           // first position of each block
};
SectorOrdering sector_ordering(int n);

// Largest |entry| connecting two different multisets.
double off_block_norm(const Eigen::MatrixXcd& full, int n);

// The block of a full matrix belonging to `sector`.
SectorMatrix extract_block(const Eigen::MatrixXcd& full, const Sector& sector);

}  // namespace asep
