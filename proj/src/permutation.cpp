#include "asep/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "asep/errors.hpp"

namespace asep {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int n = size();
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : entries_) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw InvalidArgument("not a permutation of 1.." + std::to_string(n));
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 0) throw InvalidArgument("negative permutation size");
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> e;
    for (char c : text) {
        if (c < '1' || c > '9') throw InvalidArgument("bad permutation text '" + std::string(text) + "'");
        e.push_back(c - '0');
    }
    if (e.empty()) throw InvalidArgument("empty permutation text");
    return Permutation(std::move(e));
}

int Permutation::position_of(int value) const {
    auto it = std::find(entries_.begin(), entries_.end(), value);
    if (it == entries_.end()) throw InvalidArgument("value not in permutation");
    return static_cast<int>(it - entries_.begin()) + 1;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        inv[static_cast<std::size_t>(entries_[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != static_cast<int>(i) + 1) return false;
    return true;
}

void Permutation::swap_slots(int slot) {
    if (slot < 1 || slot >= size()) throw InvalidArgument("slot " + std::to_string(slot) + " out of range");
    std::swap(entries_[static_cast<std::size_t>(slot - 1)], entries_[static_cast<std::size_t>(slot)]);
}

std::string Permutation::to_string() const {
    std::string s;
    for (int v : entries_) {
        if (v > 9) {
            // multi-digit: fall back to a separated form
            s.clear();
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(entries_[i]);
            }
            return s;
        }
        s += static_cast<char>('0' + v);
    }
    return s;
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

std::vector<Inversion> inversions(const Permutation& sigma) {
    std::vector<Inversion> out;
    auto e = sigma.entries();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e[i] > e[j]) out.push_back({e[i], e[j]});
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Sigma: return "sigma";
        case Scheme::Omega: return "omega";
        case Scheme::Gamma: return "gamma";
        case Scheme::Xi: return "xi";
    }
    return "?";
}

Scheme parse_scheme(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "sigma") return Scheme::Sigma;
    if (t == "omega") return Scheme::Omega;
    if (t == "gamma") return Scheme::Gamma;
    if (t == "xi") return Scheme::Xi;
    throw InvalidArgument("unknown scheme '" + std::string(text) + "'");
}

std::vector<LabelledTransposition> LabelledWord::application_order() const {
    return {factors.rbegin(), factors.rend()};
}

std::string LabelledWord::to_string() const {
    if (factors.empty()) return "(identity)";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ' ';
        os << 'T' << factors[i].slot << '(' << factors[i].beta << ',' << factors[i].alpha << ')';
    }
    return os.str();
}

std::span<const LabelledTransposition> SchemeSegmentation::factors_of(int k) const {
    const Segment& s = segment(k);
    return std::span<const LabelledTransposition>(word.factors).subspan(s.begin, s.size());
}

std::string SchemeSegmentation::to_string() const {
    // segments are stored by k; print them in the order they occur in the word
    std::vector<const Segment*> order;
    for (const auto& s : segments) order.push_back(&s);
    const bool descending = word.scheme && *word.scheme != Scheme::Sigma;
    std::sort(order.begin(), order.end(), [descending](const Segment* a, const Segment* b) {
        return descending ? a->k > b->k : a->k < b->k;
    });
    std::string out;
    for (const Segment* s : order) {
        out += '(';
        if (s->empty()) out += '1';
        for (std::size_t i = s->begin; i < s->end; ++i) out += "T" + std::to_string(word.factors[i].slot);
        out += ')';
    }
    return out;
}

LabelledWord label_word(std::span<const int> slots, int n, std::optional<Scheme> scheme) {
    if (n < 1) throw InvalidArgument("word over S_0");
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::iota(cur.begin(), cur.end(), 1);
    LabelledWord w;
    w.scheme = scheme;
    w.factors.resize(slots.size());
    for (std::size_t j = slots.size(); j-- > 0;) {
        const int s = slots[j];
        if (s < 1 || s > n - 1) throw InvalidArgument("slot " + std::to_string(s) + " out of range for N=" + std::to_string(n));
        auto& a = cur[static_cast<std::size_t>(s - 1)];
        auto& b = cur[static_cast<std::size_t>(s)];
        if (a > b) throw NotReduced("factor T" + std::to_string(s) + " undoes the inversion (" + std::to_string(a) + "," + std::to_string(b) + ")");
        w.factors[j] = {s, b, a};
        std::swap(a, b);
    }
    w.target = Permutation(std::move(cur));
    return w;
}

Permutation evaluate_word(const LabelledWord& word) {
    const int n = word.target.size();
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::iota(cur.begin(), cur.end(), 1);
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it)
        std::swap(cur[static_cast<std::size_t>(it->slot - 1)], cur[static_cast<std::size_t>(it->slot)]);
    return Permutation(std::move(cur));
}

namespace {

using Slots = std::vector<std::vector<int>>;  // index k-1 -> slots of w_k in print order

Slots sigma_segments(const Permutation& sigma) {
    const int n = sigma.size();
    Slots seg(static_cast<std::size_t>(std::max(n - 1, 0)));
    std::vector<int> pat(sigma.entries().begin(), sigma.entries().end());
    for (int m = n; m >= 2; --m) {
        // w_{m-1} = T_{m-1} ... T_l carries value l from slot l to slot m
        const int l = pat[static_cast<std::size_t>(m - 1)];
        auto& w = seg[static_cast<std::size_t>(m - 2)];
        for (int s = m - 1; s >= l; --s) w.push_back(s);
        pat.pop_back();
        for (int& x : pat)
            if (x > l) --x;
    }
    return seg;
}

void omega_rec(std::vector<int> pat, int off, int n, Slots& seg) {
    if (pat.size() <= 1) return;
    auto mit = std::min_element(pat.begin(), pat.end());
    const int m = static_cast<int>(mit - pat.begin());
    auto& w = seg[static_cast<std::size_t>(n - 2 - off)];
    for (int s = off + m; s >= off + 1; --s) w.push_back(s);
    pat.erase(mit);
    omega_rec(std::move(pat), off + 1, n, seg);
}

Slots omega_segments(const Permutation& sigma) {
    const int n = sigma.size();
    Slots seg(static_cast<std::size_t>(std::max(n - 1, 0)));
    omega_rec({sigma.entries().begin(), sigma.entries().end()}, 0, n, seg);
    return seg;
}

Slots gamma_segments(const Permutation& sigma) {
    const int n = sigma.size();
    Slots seg(static_cast<std::size_t>(std::max(n - 1, 0)));
    std::vector<int> pat(sigma.entries().begin(), sigma.entries().end());
    for (int off = 0; off + 1 < n; ++off) {
        const int head = pat.front();
        const int v = static_cast<int>(std::count_if(pat.begin(), pat.end(), [head](int x) { return x < head; }));
        auto& w = seg[static_cast<std::size_t>(off)];
        for (int s = off + 1; s <= off + v; ++s) w.push_back(s);
        pat.erase(pat.begin());
    }
    return seg;
}

Slots xi_segments(const Permutation& sigma) {
    const int n = sigma.size();
    Slots seg(static_cast<std::size_t>(std::max(n - 1, 0)));
    std::vector<int> pat(sigma.entries().begin(), sigma.entries().end());
    for (int m = n; m >= 2; --m) {
        auto it = std::find(pat.begin(), pat.end(), m);
        const int pos = static_cast<int>(it - pat.begin()) + 1;
        auto& w = seg[static_cast<std::size_t>(m - 2)];
        for (int s = pos; s <= m - 1; ++s) w.push_back(s);
        pat.erase(it);
    }
    return seg;
}

}  // namespace

std::vector<std::vector<int>> scheme_segment_slots(const Permutation& sigma, Scheme scheme) {
    switch (scheme) {
        case Scheme::Sigma: return sigma_segments(sigma);
        case Scheme::Omega: return omega_segments(sigma);
        case Scheme::Gamma: return gamma_segments(sigma);
        case Scheme::Xi: return xi_segments(sigma);
    }
    throw InvalidArgument("unknown scheme");
}

SchemeSegmentation decompose(const Permutation& sigma, Scheme scheme) {
    const int n = sigma.size();
    if (n < 1) throw InvalidArgument("empty permutation");
    const Slots seg = scheme_segment_slots(sigma, scheme);

    // Sigma prints w_1 ... w_{N-1}; the others print w_{N-1} ... w_1.
    std::vector<int> ks;
    for (int k = 1; k <= n - 1; ++k) ks.push_back(k);
    if (scheme != Scheme::Sigma) std::reverse(ks.begin(), ks.end());

    SchemeSegmentation out;
    out.segments.resize(seg.size());
    std::vector<int> slots;
    for (int k : ks) {
        const auto& w = seg[static_cast<std::size_t>(k - 1)];
        Segment s{k, slots.size(), slots.size() + w.size()};
        out.segments[static_cast<std::size_t>(k - 1)] = s;
        slots.insert(slots.end(), w.begin(), w.end());
    }
    out.word = label_word(slots, n, scheme);
    if (out.word.target != sigma) throw Error("internal: " + to_string(scheme) + " decomposition of " + sigma.to_string() + " is wrong");
    return out;
}

}  // namespace asep
