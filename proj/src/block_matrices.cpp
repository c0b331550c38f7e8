#include "asep/block_matrices.hpp"

#include <algorithm>
#include <map>

#include "asep/errors.hpp"

namespace asep {

MultisetWord MultisetWord::parse(std::string_view text) {
    MultisetWord w;
    for (char c : text) {
        if (c < '1' || c > '9') throw InvalidArgument("bad species word '" + std::string(text) + "'");
        w.letters.push_back(c - '0');
    }
    if (w.letters.empty()) throw InvalidArgument("empty species word");
    return w;
}

std::string MultisetWord::to_string() const {
    std::string s;
    for (int v : letters) s += std::to_string(v);
    return s;
}

std::vector<int> MultisetWord::multiset() const {
    auto m = letters;
    std::sort(m.begin(), m.end());
    return m;
}

Sector::Sector(std::vector<int> multiset) : multiset_(std::move(multiset)) {
    if (multiset_.empty()) throw InvalidArgument("empty sector");
    std::sort(multiset_.begin(), multiset_.end());
    auto w = multiset_;
    do {
        words_.push_back({w});
    } while (std::next_permutation(w.begin(), w.end()));

    const int n = this->n();
    swap_.assign(static_cast<std::size_t>(std::max(n - 1, 0)), std::vector<int>(words_.size()));
    for (int l = 1; l < n; ++l)
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto s = words_[i];
            std::swap(s.letters[static_cast<std::size_t>(l - 1)], s.letters[static_cast<std::size_t>(l)]);
            swap_[static_cast<std::size_t>(l - 1)][i] = index_of(s);
        }
}

Sector Sector::minority_first(int n) {
    if (n < 1) throw InvalidArgument("sector size must be positive");
    std::vector<int> m(static_cast<std::size_t>(n), 2);
    m[0] = 1;
    return Sector(m);
}

Sector Sector::minority_last(int n) {
    if (n < 1) throw InvalidArgument("sector size must be positive");
    std::vector<int> m(static_cast<std::size_t>(n), 1);
    m.back() = 2;
    return Sector(m);
}

int Sector::index_of(const MultisetWord& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) throw InvalidArgument("word " + w.to_string() + " is not in the sector");
    return static_cast<int>(it - words_.begin());
}

bool Sector::contains(const MultisetWord& w) const {
    return std::binary_search(words_.begin(), words_.end(), w);
}

int Sector::swapped_index(int index, int l) const {
    return swap_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(index)];
}

namespace {

// Entries of T_l in row r: the diagonal value, and the value at column swap(r)
// (zero when the two letters agree).
struct RowEntries {
    cplx diag;
    cplx off;
};

RowEntries row_entries(int x, int y, const FactorValues& f) {
    if (x == y) return {f[FactorKind::S], 0.0};
    if (x < y) return {f[FactorKind::P], f[FactorKind::PT]};
    return {f[FactorKind::Q], f[FactorKind::QT]};
}

void check_labels(int beta, int alpha, const EvalPoint& pt) {
    if (beta == alpha || alpha < 1 || beta < 1 || alpha > pt.size() || beta > pt.size())
        throw InvalidArgument("labels (" + std::to_string(beta) + "," + std::to_string(alpha) + ") invalid for N=" + std::to_string(pt.size()));
}

// digits of a full-space index, slot 1 first
std::vector<int> full_letters(int index, int n) {
    std::vector<int> d(static_cast<std::size_t>(n));
    for (int s = n - 1; s >= 0; --s) {
        d[static_cast<std::size_t>(s)] = index % n + 1;
        index /= n;
    }
    return d;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_full_size(int n) {
    if (n < 1) throw InvalidArgument("N must be positive");
    if (n > kMaxFullN) throw SizeLimitExceeded("full tensor matrices are limited to N <= " + std::to_string(kMaxFullN));
}

}  // namespace

Eigen::MatrixXcd build_R(int beta, int alpha, const EvalPoint& pt, int n) {
    if (n < 2) throw InvalidArgument("build_R needs N >= 2");
    check_labels(beta, alpha, pt);
    const FactorValues f = factor_values(pt[beta], pt[alpha], pt.p);
    const int d = n * n;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int row = (i - 1) * n + (j - 1);
            const auto e = row_entries(i, j, f);
            r(row, row) = e.diag;
            if (i != j) r(row, (j - 1) * n + (i - 1)) = e.off;
        }
    return r;
}

SectorMatrix build_T_sector(int l, int beta, int alpha, const Sector& sector, const EvalPoint& pt) {
    if (l < 1 || l >= sector.n()) throw InvalidArgument("slot " + std::to_string(l) + " out of range");
    check_labels(beta, alpha, pt);
    const FactorValues f = factor_values(pt[beta], pt[alpha], pt.p);
    SectorMatrix out{sector, Eigen::MatrixXcd::Zero(sector.dim(), sector.dim())};
    for (int r = 0; r < sector.dim(); ++r) {
        const auto& w = sector.word(r);
        const auto e = row_entries(w(l), w(l + 1), f);
        out.m(r, r) = e.diag;
        if (w(l) != w(l + 1)) out.m(r, sector.swapped_index(r, l)) = e.off;
    }
    return out;
}

namespace {

// m <- T_l(beta,alpha) * m, touching only the two nonzero entries per row.
template <class Mat>
void left_apply_sector(Mat& m, const LabelledTransposition& t, const Sector& sector, const EvalPoint& pt) {
    const FactorValues f = factor_values(pt[t.beta], pt[t.alpha], pt.p);
    Mat out(m.rows(), m.cols());
    for (int r = 0; r < sector.dim(); ++r) {
        const auto& w = sector.word(r);
        const auto e = row_entries(w(t.slot), w(t.slot + 1), f);
        if (w(t.slot) == w(t.slot + 1))
            out.row(r) = e.diag * m.row(r);
        else
            out.row(r) = e.diag * m.row(r) + e.off * m.row(sector.swapped_index(r, t.slot));
    }
    m = std::move(out);
}

}  // namespace

SectorMatrix a_sigma_sector(const LabelledWord& word, const Sector& sector, const EvalPoint& pt) {
    if (word.target.size() != sector.n()) throw InvalidArgument("word and sector sizes differ");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(sector.dim(), sector.dim());
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) left_apply_sector(m, *it, sector, pt);
    return {sector, std::move(m)};
}

SectorMatrix a_sigma_sector(const Permutation& sigma, Scheme scheme, const Sector& sector, const EvalPoint& pt) {
    return a_sigma_sector(decompose(sigma, scheme).word, sector, pt);
}

Eigen::VectorXcd a_sigma_column(const LabelledWord& word, const Sector& sector, int col, const EvalPoint& pt) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sector.dim());
    v(col) = 1.0;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) left_apply_sector(v, *it, sector, pt);
    return v;
}

int full_index(const MultisetWord& w, int n) {
    int idx = 0;
    for (int v : w.letters) {
        if (v < 1 || v > n) throw InvalidArgument("letter out of range");
        idx = idx * n + (v - 1);
    }
    return idx;
}

Eigen::MatrixXcd a_sigma_full(const LabelledWord& word, const EvalPoint& pt, int n) {
    check_full_size(n);
    const int d = ipow(n, n);
    // Precompute letters of every basis word once.
    std::vector<std::vector<int>> letters(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) letters[static_cast<std::size_t>(i)] = full_letters(i, n);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        const FactorValues f = factor_values(pt[it->beta], pt[it->alpha], pt.p);
        const int l = it->slot;
        const int wl = ipow(n, n - l), wr = ipow(n, n - l - 1);  // place values of slots l, l+1
        Eigen::MatrixXcd out(d, d);
        for (int r = 0; r < d; ++r) {
            const auto& w = letters[static_cast<std::size_t>(r)];
            const int x = w[static_cast<std::size_t>(l - 1)], y = w[static_cast<std::size_t>(l)];
            const auto e = row_entries(x, y, f);
            if (x == y) {
                out.row(r) = e.diag * m.row(r);
            } else {
                const int s = r + (y - x) * wl + (x - y) * wr;
                out.row(r) = e.diag * m.row(r) + e.off * m.row(s);
            }
        }
        m = std::move(out);
    }
    return m;
}

Eigen::MatrixXcd kron_T_full(int l, int beta, int alpha, const EvalPoint& pt, int n) {
    check_full_size(n);
    if (l < 1 || l >= n) throw InvalidArgument("slot out of range");
    const Eigen::MatrixXcd r = build_R(beta, alpha, pt, n);
    const int left = ipow(n, l - 1), right = ipow(n, n - l - 1);
    const int d = ipow(n, n), rd = n * n;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
    // I_left (x) R (x) I_right
    for (int a = 0; a < left; ++a)
        for (int i = 0; i < rd; ++i)
            for (int j = 0; j < rd; ++j) {
                if (r(i, j) == cplx(0.0)) continue;
                for (int b = 0; b < right; ++b) t((a * rd + i) * right + b, (a * rd + j) * right + b) = r(i, j);
            }
    return t;
}

Eigen::MatrixXcd a_sigma_full_kron(const LabelledWord& word, const EvalPoint& pt, int n) {
    check_full_size(n);
    const int d = ipow(n, n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it)
        m = kron_T_full(it->slot, it->beta, it->alpha, pt, n) * m;
    return m;
}

SectorOrdering sector_ordering(int n) {
    check_full_size(n);
    const int d = ipow(n, n);
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int i = 0; i < d; ++i) {
        auto w = full_letters(i, n);
        std::sort(w.begin(), w.end());
        groups[w].push_back(i);
    }
    SectorOrdering out;
    for (auto& [ms, idx] : groups) {
        out.blocks.push_back(ms);
        out.block_start.push_back(static_cast<int>(out.order.size()));
        out.order.insert(out.order.end(), idx.begin(), idx.end());
    }
    return out;
}

double off_block_norm(const Eigen::MatrixXcd& full, int n) {
    check_full_size(n);
    const int d = ipow(n, n);
    if (full.rows() != d || full.cols() != d) throw InvalidArgument("matrix size does not match N");
    std::vector<std::vector<int>> key(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        key[static_cast<std::size_t>(i)] = full_letters(i, n);
        std::sort(key[static_cast<std::size_t>(i)].begin(), key[static_cast<std::size_t>(i)].end());
    }
    double worst = 0.0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (key[static_cast<std::size_t>(r)] != key[static_cast<std::size_t>(c)]) worst = std::max(worst, std::abs(full(r, c)));
    return worst;
}

SectorMatrix extract_block(const Eigen::MatrixXcd& full, const Sector& sector) {
    const int n = sector.n();
    SectorMatrix out{sector, Eigen::MatrixXcd(sector.dim(), sector.dim())};
    std::vector<int> idx;
    for (const auto& w : sector.words()) idx.push_back(full_index(w, n));
    for (int r = 0; r < sector.dim(); ++r)
        for (int c = 0; c < sector.dim(); ++c) out.m(r, c) = full(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    return out;
}

}  // namespace asep
