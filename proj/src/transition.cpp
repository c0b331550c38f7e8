#include "asep/transition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "asep/errors.hpp"
#include "asep/factorized.hpp"
#include "asep/initial_order.hpp"

namespace asep {

void ParticleState::validate() const {
    if (positions.empty()) throw InvalidArgument("a state needs at least one particle");
    if (species.size() != size()) throw InvalidArgument("positions and species have different lengths");
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (positions[i] <= positions[i - 1]) throw InvalidArgument("positions must be strictly increasing");
}

std::string to_string(AmplitudePath path) {
    switch (path) {
        case AmplitudePath::Auto: return "auto";
        case AmplitudePath::Factorized: return "factorized";
        case AmplitudePath::Oracle: return "oracle";
    }
    return "?";
}

AmplitudePath parse_path(const std::string& text) {
    if (text == "auto") return AmplitudePath::Auto;
    if (text == "factorized") return AmplitudePath::Factorized;
    if (text == "oracle") return AmplitudePath::Oracle;
    throw InvalidArgument("unknown amplitude path '" + text + "'");
}

cplx epsilon(cplx xi, double p) {
    if (xi == cplx(0.0)) throw ZeroArgument("epsilon is singular at xi = 0");
    return p / xi + (1.0 - p) * xi - 1.0;
}

double critical_radius(double p) {
    check_probability(p);
    const double q = 1.0 - p;
    // r (1 + q r) = p, written to avoid cancellation for small q
    return 2.0 * p / (1.0 + std::sqrt(1.0 + 4.0 * p * q));
}

double default_radius(double p) {
    check_probability(p);
    const double q = 1.0 - p;
    return std::min(0.5 * std::min(1.0, p / q), 0.85 * critical_radius(p));
}

void check_radius(double r, double p, int n) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("contour radius must be positive");
    if (n >= 2 && r >= critical_radius(p))
        throw DenominatorVanishes("contour radius " + std::to_string(r) + " encloses amplitude poles; it must be below " +
                                  std::to_string(critical_radius(p)));
}

double Distribution::total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.value;
    return s;
}

const DistributionEntry* Distribution::find(const ParticleState& s) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), s,
                               [](const DistributionEntry& e, const ParticleState& k) { return e.state < k; });
    if (it == entries.end() || it->state != s) return nullptr;
    return &*it;
}

double single_particle_series(long d, double t, double p) {
    check_probability(p);
    if (t < 0) throw InvalidArgument("negative time");
    if (t == 0.0) return d == 0 ? 1.0 : 0.0;
    const double q = 1.0 - p;
    const double lp = std::log(p * t), lq = std::log(q * t);
    double sum = 0.0;
    for (long k = std::max(0L, -d); k < std::max(0L, -d) + 400; ++k) {
        const double a = static_cast<double>(d + k), b = static_cast<double>(k);
        const double term = std::exp(-t + a * lp + b * lq - std::lgamma(a + 1) - std::lgamma(b + 1));
        sum += term;
        if (term < 1e-300 || (b > t && term < 1e-18 * sum)) break;
    }
    return sum;
}

namespace {

struct Term {
    std::vector<int> ysigma;  // y'_{sigma(i)} per dimension i
    std::vector<int> inv;     // sigma^{-1}(label) - 1 per label - 1
    // factorized path: one product of (kind, a, b) lookups per final species row
    std::vector<std::vector<std::array<int, 3>>> factors;
    std::vector<char> zero;
    // oracle path
    std::vector<LabelledTransposition> applied;
};

// The integrand sum_sigma [A_sigma]_{pi,nu} prod_i eta_i^{-y_sigma(i)} prod_i e^{eps(eta_i) t}
// after relabelling eta_i = xi_sigma(i), for every pi of the sector at once.
class Integrand {
public:
    Integrand(const ParticleState& initial, AmplitudePath path, double p, double t)
        : n_(initial.size()), p_(p), t_(t), sector_(initial.species.multiset()) {
        initial.validate();
        check_probability(p);
        if (t < 0) throw InvalidArgument("negative time");
        base_ = initial.positions.front();
        for (long y : initial.positions) ylocal_.push_back(static_cast<int>(y - base_));

        const auto order = classify(initial.species);
        if (path == AmplitudePath::Auto) path = (order || n_ == 1) ? AmplitudePath::Factorized : AmplitudePath::Oracle;
        if (path == AmplitudePath::Factorized && !order && n_ != 1)
            throw UnsupportedOrder("species order " + initial.species.to_string() + " has no factorized form");
        if (path == AmplitudePath::Oracle && n_ > kMaxFullN)
            throw SizeLimitExceeded("the matrix oracle path is limited to N <= " + std::to_string(kMaxFullN));
        path_ = path;
        nu_index_ = sector_.index_of(initial.species);

        for (const auto& sigma : all_permutations(n_)) {
            Term term;
            for (int i = 1; i <= n_; ++i) term.ysigma.push_back(ylocal_[static_cast<std::size_t>(sigma(i) - 1)]);
            const Permutation inv = sigma.inverse();
            for (int j = 1; j <= n_; ++j) term.inv.push_back(inv(j) - 1);
            if (path_ == AmplitudePath::Factorized) {
                for (const auto& pi : sector_.words()) {
                    const AmplitudeProduct a = n_ == 1 ? AmplitudeProduct::one() : amplitude(sigma, pi, initial.species);
                    term.zero.push_back(a.is_zero());
                    std::vector<std::array<int, 3>> fs;
                    for (const auto& f : a.factors())
                        fs.push_back({static_cast<int>(f.kind), term.inv[static_cast<std::size_t>(f.beta - 1)],
                                      term.inv[static_cast<std::size_t>(f.alpha - 1)]});
                    term.factors.push_back(std::move(fs));
                }
            } else {
                // any reduced word gives the same matrix
                term.applied = decompose(sigma, Scheme::Sigma).word.application_order();
            }
            terms_.push_back(std::move(term));
        }
    }

    int n() const { return n_; }
    long base() const { return base_; }
    int span() const { return ylocal_.back(); }
    const Sector& sector() const { return sector_; }
    AmplitudePath path() const { return path_; }

    // visit(m, f) for every grid point; m holds per-dimension node indices and
    // f[pi] the integrand value without the eta^x factor.
    template <class Visit>
    void sweep(int M, double r, Visit&& visit) const {
        const int n = n_, dim = sector_.dim();
        std::vector<cplx> node(static_cast<std::size_t>(M)), expo(static_cast<std::size_t>(M));
        for (int k = 0; k < M; ++k) {
            node[static_cast<std::size_t>(k)] = std::polar(r, 2.0 * std::numbers::pi * k / M);
            expo[static_cast<std::size_t>(k)] = std::exp(epsilon(node[static_cast<std::size_t>(k)], p_) * t_);
        }
        // ypow[y*M + k] = node_k^{-y}
        std::vector<cplx> ypow(static_cast<std::size_t>(span() + 1) * static_cast<std::size_t>(M));
        for (int y = 0; y <= span(); ++y)
            for (int k = 0; k < M; ++k)
                ypow[static_cast<std::size_t>(y * M + k)] =
                    std::polar(std::pow(r, -y), -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * y) % M) / M);
        // a factor depends on two nodes only, so all of them fit in an M x M table
        std::vector<FactorValues> pairs(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
        if (n > 1)
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b)
                    pairs[static_cast<std::size_t>(a * M + b)] = factor_values(node[static_cast<std::size_t>(a)], node[static_cast<std::size_t>(b)], p_);

        std::vector<int> m(static_cast<std::size_t>(n), 0);
        std::vector<const FactorValues*> table(static_cast<std::size_t>(n * n), nullptr);
        std::vector<cplx> f(static_cast<std::size_t>(dim)), col(static_cast<std::size_t>(dim)), tmp(static_cast<std::size_t>(dim));
        std::int64_t total = 1;
        for (int i = 0; i < n; ++i) total *= M;

        for (std::int64_t flat = 0; flat < total; ++flat) {
            cplx e = 1.0;
            for (int i = 0; i < n; ++i) e *= expo[static_cast<std::size_t>(m[static_cast<std::size_t>(i)])];
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (a != b)
                        table[static_cast<std::size_t>(a * n + b)] =
                            &pairs[static_cast<std::size_t>(m[static_cast<std::size_t>(a)] * M + m[static_cast<std::size_t>(b)])];

            std::fill(f.begin(), f.end(), cplx(0.0));
            for (const auto& term : terms_) {
                cplx yc = 1.0;
                for (int i = 0; i < n; ++i)
                    yc *= ypow[static_cast<std::size_t>(term.ysigma[static_cast<std::size_t>(i)] * M + m[static_cast<std::size_t>(i)])];
                if (path_ == AmplitudePath::Factorized) {
                    for (int pi = 0; pi < dim; ++pi) {
                        if (term.zero[static_cast<std::size_t>(pi)]) continue;
                        cplx a = yc;
                        for (const auto& fk : term.factors[static_cast<std::size_t>(pi)])
                            a *= table[static_cast<std::size_t>(fk[1] * n + fk[2])]->v[fk[0]];
                        f[static_cast<std::size_t>(pi)] += a;
                    }
                } else {
                    std::fill(col.begin(), col.end(), cplx(0.0));
                    col[static_cast<std::size_t>(nu_index_)] = 1.0;
                    for (const auto& t : term.applied) {
                        const FactorValues& fv = *table[static_cast<std::size_t>(
                            term.inv[static_cast<std::size_t>(t.beta - 1)] * n + term.inv[static_cast<std::size_t>(t.alpha - 1)])];
                        for (int row = 0; row < dim; ++row) {
                            const auto& w = sector_.word(row);
                            const int x = w(t.slot), y = w(t.slot + 1);
                            if (x == y) {
                                tmp[static_cast<std::size_t>(row)] = fv[FactorKind::S] * col[static_cast<std::size_t>(row)];
                            } else {
                                const cplx off = x < y ? fv[FactorKind::PT] : fv[FactorKind::QT];
                                const cplx diag = x < y ? fv[FactorKind::P] : fv[FactorKind::Q];
                                tmp[static_cast<std::size_t>(row)] = diag * col[static_cast<std::size_t>(row)] +
                                                                     off * col[static_cast<std::size_t>(sector_.swapped_index(row, t.slot))];
                            }
                        }
                        std::swap(col, tmp);
                    }
                    for (int pi = 0; pi < dim; ++pi) f[static_cast<std::size_t>(pi)] += yc * col[static_cast<std::size_t>(pi)];
                }
            }
            for (auto& v : f) v *= e;
            visit(m, f);

            for (int i = n - 1; i >= 0; --i) {
                if (++m[static_cast<std::size_t>(i)] < M) break;
                m[static_cast<std::size_t>(i)] = 0;
            }
        }
    }

private:
    int n_;
    double p_, t_;
    Sector sector_;
    long base_ = 0;
    std::vector<int> ylocal_;
    AmplitudePath path_ = AmplitudePath::Auto;
    int nu_index_ = 0;
    std::vector<Term> terms_;
};

std::int64_t grid_points(int M, int n) {
    std::int64_t g = 1;
    for (int i = 0; i < n; ++i) {
        g *= M;
        if (g > (std::int64_t{1} << 40)) break;
    }
    return g;
}

double resolve_radius(const QuadratureSpec& spec, int n) {
    const double r = spec.radius > 0 ? spec.radius : default_radius(spec.p);
    check_radius(r, spec.p, n);
    return r;
}

void check_spec(const QuadratureSpec& spec) {
    check_probability(spec.p);
    if (!(spec.t >= 0.0) || !std::isfinite(spec.t)) throw InvalidArgument("time must be nonnegative");
    if (spec.nodes < 16) throw InvalidArgument("at least 16 quadrature nodes are required");
    if (spec.adaptive && !(spec.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
}

// Repeats `eval(M)` with doubling M until two successive results differ by at most
// the tolerance. `diff` measures that difference.
template <class R, class Eval, class Diff>
R adapt(const QuadratureSpec& spec, int n, std::int64_t cap, Eval&& eval, Diff&& diff, QuadratureInfo& info) {
    int M = spec.nodes;
    if (grid_points(M, n) > cap)
        throw SizeLimitExceeded(std::to_string(M) + " nodes per variable exceed the grid limit for N=" + std::to_string(n));
    R cur = eval(M);
    info.nodes = M;
    info.change = 0.0;
    if (!spec.adaptive) return cur;
    double change = 0.0;
    for (;;) {
        const int M2 = 2 * M;
        if (M2 > spec.max_nodes || grid_points(M2, n) > cap)
            throw NonConvergence("quadrature did not settle: change " + std::to_string(change) + " at M=" + std::to_string(M) +
                                 " exceeds tolerance " + std::to_string(spec.tolerance) + " and M cannot double further");
        R next = eval(M2);
        change = diff(cur, next);
        cur = std::move(next);
        M = M2;
        info.nodes = M;
        info.change = change;
        if (change <= spec.tolerance) return cur;
    }
}

}  // namespace

ProbabilityResult transition_probability(const ParticleState& initial, const ParticleState& final_state,
                                         const QuadratureSpec& spec) {
    check_spec(spec);
    initial.validate();
    final_state.validate();
    if (initial.size() != final_state.size()) throw InvalidArgument("initial and final states have different particle counts");
    const int n = initial.size();
    const Integrand integrand(initial, spec.path, spec.p, spec.t);
    ProbabilityResult res;
    res.info.radius = resolve_radius(spec, n);
    res.info.path = integrand.path();
    if (final_state.species.multiset() != initial.species.multiset()) return res;

    const int pi = integrand.sector().index_of(final_state.species);
    std::vector<long> x;
    for (long v : final_state.positions) x.push_back(v - integrand.base());
    const double r = res.info.radius;

    auto eval = [&](int M) {
        // xpow[i][k] = node_k^{x_i}
        std::vector<std::vector<cplx>> xpow(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(M)));
        for (int i = 0; i < n; ++i) {
            const long xi = x[static_cast<std::size_t>(i)];
            for (int k = 0; k < M; ++k) {
                const long ph = ((static_cast<long>(k) * (xi % M)) % M + M) % M;
                xpow[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    std::polar(std::pow(r, static_cast<double>(xi)), 2.0 * std::numbers::pi * static_cast<double>(ph) / M);
            }
        }
        cplx acc = 0.0;
        integrand.sweep(M, r, [&](const std::vector<int>& m, const std::vector<cplx>& f) {
            cplx v = f[static_cast<std::size_t>(pi)];
            for (int i = 0; i < n; ++i) v *= xpow[static_cast<std::size_t>(i)][static_cast<std::size_t>(m[static_cast<std::size_t>(i)])];
            acc += v;
        });
        return acc / static_cast<double>(grid_points(M, n));
    };
    const cplx v = adapt<cplx>(spec, n, kMaxGridPoints, eval, [](cplx a, cplx b) { return std::abs(a.real() - b.real()); }, res.info);
    res.value = v.real();
    res.imag = v.imag();
    return res;
}

Distribution transition_distribution(const ParticleState& initial, const QuadratureSpec& spec, int window) {
    check_spec(spec);
    initial.validate();
    if (window < 0) throw InvalidArgument("window must be nonnegative");
    const int n = initial.size();
    const Integrand integrand(initial, spec.path, spec.p, spec.t);
    Distribution dist;
    dist.info.radius = resolve_radius(spec, n);
    dist.info.path = integrand.path();
    const double r = dist.info.radius;
    const int lo = -window, width = integrand.span() + 2 * window + 1;
    const int dim = integrand.sector().dim();

    // Returns raw[pi][x_1..x_N offsets] for all offsets in [lo, lo+width). The grid is
    // streamed one slab (fixed first node) at a time, so memory stays at M^{N-1}.
    auto eval = [&](int M) {
        const std::int64_t g = grid_points(M, n);
        const std::int64_t slab = g / M;
        std::int64_t cells_rest = 1;
        for (int i = 1; i < n; ++i) cells_rest *= width;

        // pw[x][k] = node_k^{lo + x}
        std::vector<cplx> pw(static_cast<std::size_t>(width) * static_cast<std::size_t>(M));
        for (int x = 0; x < width; ++x)
            for (int k = 0; k < M; ++k) {
                const long e = lo + x;
                const long ph = ((static_cast<long>(k) * (e % M)) % M + M) % M;
                pw[static_cast<std::size_t>(x) * static_cast<std::size_t>(M) + static_cast<std::size_t>(k)] =
                    std::polar(std::pow(r, static_cast<double>(e)), 2.0 * std::numbers::pi * static_cast<double>(ph) / M);
            }

        std::vector<std::vector<cplx>> out(static_cast<std::size_t>(dim),
                                           std::vector<cplx>(static_cast<std::size_t>(width * cells_rest), cplx(0.0)));
        std::vector<std::vector<cplx>> buf(static_cast<std::size_t>(dim), std::vector<cplx>(static_cast<std::size_t>(slab)));

        // contract dimensions 2..N of a slab, then fold it into the output with node m0
        auto flush = [&](int m0) {
            for (int pi = 0; pi < dim; ++pi) {
                std::vector<cplx> arr = buf[static_cast<std::size_t>(pi)];
                std::vector<std::int64_t> shape(static_cast<std::size_t>(n - 1), M);
                for (int d = 0; d < n - 1; ++d) {
                    std::int64_t outer = 1, inner = 1;
                    for (int j = 0; j < d; ++j) outer *= shape[static_cast<std::size_t>(j)];
                    for (int j = d + 1; j < n - 1; ++j) inner *= shape[static_cast<std::size_t>(j)];
                    std::vector<cplx> next(static_cast<std::size_t>(outer * width * inner), cplx(0.0));
                    for (std::int64_t o = 0; o < outer; ++o)
                        for (int x = 0; x < width; ++x) {
                            cplx* dst = &next[static_cast<std::size_t>((o * width + x) * inner)];
                            for (int k = 0; k < M; ++k) {
                                const cplx w = pw[static_cast<std::size_t>(x) * static_cast<std::size_t>(M) + static_cast<std::size_t>(k)];
                                const cplx* src = &arr[static_cast<std::size_t>((o * M + k) * inner)];
                                for (std::int64_t in = 0; in < inner; ++in) dst[in] += w * src[in];
                            }
                        }
                    arr = std::move(next);
                    shape[static_cast<std::size_t>(d)] = width;
                }
                auto& o = out[static_cast<std::size_t>(pi)];
                for (int x = 0; x < width; ++x) {
                    const cplx w = pw[static_cast<std::size_t>(x) * static_cast<std::size_t>(M) + static_cast<std::size_t>(m0)];
                    cplx* dst = &o[static_cast<std::size_t>(x * cells_rest)];
                    for (std::int64_t c = 0; c < cells_rest; ++c) dst[c] += w * arr[static_cast<std::size_t>(c)];
                }
            }
        };

        std::int64_t pos = 0;
        integrand.sweep(M, r, [&](const std::vector<int>& m, const std::vector<cplx>& f) {
            for (int pi = 0; pi < dim; ++pi) buf[static_cast<std::size_t>(pi)][static_cast<std::size_t>(pos)] = f[static_cast<std::size_t>(pi)];
            if (++pos == slab) {
                flush(m[0]);
                pos = 0;
            }
        });
        const double scale = 1.0 / static_cast<double>(g);
        for (auto& arr : out)
            for (auto& v : arr) v *= scale;
        return out;
    };
    auto diff = [](const std::vector<std::vector<cplx>>& a, const std::vector<std::vector<cplx>>& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j].real() - b[i][j].real()));
        return d;
    };
    const auto raw = adapt<std::vector<std::vector<cplx>>>(spec, n, kMaxGridPoints, eval, diff, dist.info);

    // keep strictly increasing position tuples
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::int64_t cells = 1;
    for (int i = 0; i < n; ++i) cells *= width;
    for (std::int64_t c = 0; c < cells; ++c) {
        std::int64_t rem = c;
        for (int i = n - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % width);
            rem /= width;
        }
        bool increasing = true;
        for (int i = 1; i < n; ++i)
            if (idx[static_cast<std::size_t>(i)] <= idx[static_cast<std::size_t>(i - 1)]) increasing = false;
        if (!increasing) continue;
        ParticleState s;
        for (int i = 0; i < n; ++i) s.positions.push_back(integrand.base() + lo + idx[static_cast<std::size_t>(i)]);
        for (int pi = 0; pi < dim; ++pi) {
            s.species = integrand.sector().word(pi);
            const cplx v = raw[static_cast<std::size_t>(pi)][static_cast<std::size_t>(c)];
            dist.entries.push_back({s, v.real(), v.imag()});
            dist.max_imag = std::max(dist.max_imag, std::abs(v.imag()));
        }
    }
    std::sort(dist.entries.begin(), dist.entries.end(), [](const DistributionEntry& a, const DistributionEntry& b) { return a.state < b.state; });
    return dist;
}

double normalization_check(const ParticleState& initial, const QuadratureSpec& spec, int window) {
    return transition_distribution(initial, spec, window).total();
}

}  // namespace asep
