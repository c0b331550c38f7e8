#include "asep/factorized.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

#include "asep/errors.hpp"
#include "asep/operator_calculus.hpp"

namespace asep {

AmplitudeProduct diagonal_amplitude(const Permutation& sigma, const MultisetWord& nu) {
    const InitialOrder order = require_order(nu);
    if (sigma.size() != nu.size()) throw InvalidArgument("sigma and nu sizes differ");
    const SchemeSegmentation seg = decompose(sigma, scheme_for(order));
    const int special = distinguished_slot(order, nu.size());
    AmplitudeProduct out;
    for (const auto& t : seg.word.factors)
        out *= AmplitudeFactor{t.slot == special ? diagonal_kind(order) : FactorKind::S, t.beta, t.alpha};
    return out;
}

AmplitudeProduct amplitude_twos_one(const SchemeSegmentation& seg, int i) {
    const int n = seg.word.target.size();
    if (i < 1 || i > n) throw InvalidArgument("target index out of range");
    AmplitudeProduct out;
    for (int k = 1; k <= n - 1; ++k) {
        auto fs = seg.factors_of(k);
        if (fs.empty()) {
            if (k >= i) return AmplitudeProduct::zero();
            continue;
        }
        // the leading printed factor of w_k acts at slot k
        FactorKind lead = FactorKind::S;
        if (k >= i) lead = FactorKind::PT;
        else if (i == k + 1) lead = FactorKind::Q;
        out *= AmplitudeFactor{lead, fs.front().beta, fs.front().alpha};
        for (std::size_t j = 1; j < fs.size(); ++j) out *= AmplitudeFactor{FactorKind::S, fs[j].beta, fs[j].alpha};
    }
    return out;
}

AmplitudeProduct amplitude(const Permutation& sigma, const MultisetWord& pi, const MultisetWord& nu) {
    const InitialOrder order = require_order(nu);
    if (sigma.size() != nu.size() || pi.size() != nu.size()) throw InvalidArgument("sizes of sigma, pi and nu differ");
    if (pi.multiset() != nu.multiset()) return AmplitudeProduct::zero();
    if (order == InitialOrder::TwosOne) {
        const int i = static_cast<int>(std::find(pi.letters.begin(), pi.letters.end(), 1) - pi.letters.begin()) + 1;
        return amplitude_twos_one(decompose(sigma, Scheme::Sigma), i);
    }
    return amplitude_via_operators(sigma, pi, nu).product;
}

std::vector<int> support(const Permutation& sigma, const MultisetWord& nu) {
    if (classify(nu) != InitialOrder::TwosOne)
        throw UnsupportedOrder("a closed-form support rule is only available for 2...21");
    if (sigma.size() != nu.size()) throw InvalidArgument("sigma and nu sizes differ");
    const int n = sigma.size();
    const SchemeSegmentation seg = decompose(sigma, Scheme::Sigma);
    int l = 0;
    for (int k = n - 1; k >= 1; --k)
        if (seg.segment(k).empty()) {
            l = k;
            break;
        }
    std::vector<int> out;
    for (int i = l + 1; i <= n; ++i) out.push_back(i);
    return out;
}

std::vector<int> empirical_support(const Permutation& sigma, const MultisetWord& nu,
                                   const std::vector<EvalPoint>& points, double threshold) {
    const InitialOrder order = require_order(nu);
    const Sector sector = sector_for(order, nu.size());
    const int col = sector.index_of(nu);
    const LabelledWord word = decompose(sigma, scheme_for(order)).word;
    std::vector<bool> hit(static_cast<std::size_t>(sector.dim()), false);
    for (const auto& pt : points) {
        const Eigen::VectorXcd v = a_sigma_column(word, sector, col, pt);
        for (int r = 0; r < sector.dim(); ++r)
            if (std::abs(v(r)) > threshold) hit[static_cast<std::size_t>(r)] = true;
    }
    std::vector<int> out;
    for (int r = 0; r < sector.dim(); ++r)
        if (hit[static_cast<std::size_t>(r)]) out.push_back(r + 1);
    return out;
}

EvalPoint random_eval_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mod(0.05, 0.5), phase(0.0, 2.0 * std::numbers::pi), pd(0.1, 0.9);
    EvalPoint pt;
    pt.p = pd(rng);
    std::vector<double> radii;
    while (static_cast<int>(radii.size()) < n) {
        const double r = mod(rng);
        if (std::all_of(radii.begin(), radii.end(), [r](double o) { return std::abs(o - r) > 1e-3; })) radii.push_back(r);
    }
    for (double r : radii) pt.xi.push_back(std::polar(r, phase(rng)));
    return pt;
}

std::vector<TableRow> amplitude_table(int n, const MultisetWord& nu) {
    const InitialOrder order = require_order(nu);
    if (nu.size() != n) throw InvalidArgument("nu has the wrong length");
    const Sector sector = sector_for(order, n);
    std::vector<TableRow> rows;
    for (const auto& sigma : all_permutations(n))
        for (const auto& pi : sector.words()) rows.push_back({sigma, pi, nu, amplitude(sigma, pi, nu)});
    return rows;
}

void write_table(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "sigma,pi,nu,canonical_product\n";
    for (const auto& r : rows)
        out << r.sigma.to_string() << ',' << r.pi.to_string() << ',' << r.nu.to_string() << ',' << canonical_form(r.product) << '\n';
}

std::vector<TableRow> read_table(std::istream& in) {
    std::vector<TableRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("sigma", 0) == 0) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 4) throw InvalidArgument("table line " + std::to_string(lineno) + ": expected 4 columns");
        try {
            rows.push_back({Permutation::parse(cells[0]), MultisetWord::parse(cells[1]), MultisetWord::parse(cells[2]),
                            parse_product(cells[3])});
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("table line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<TableRow> read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return read_table(in);
}

std::vector<TableMismatch> compare_tables(const std::vector<TableRow>& expected, const std::vector<TableRow>& actual) {
    using Key = std::tuple<std::string, std::string, std::string>;
    auto key = [](const TableRow& r) { return Key{r.sigma.to_string(), r.pi.to_string(), r.nu.to_string()}; };
    std::map<Key, const TableRow*> act;
    for (const auto& r : actual) act[key(r)] = &r;

    std::vector<TableMismatch> out;
    std::map<Key, bool> seen;
    for (const auto& e : expected) {
        const Key k = key(e);
        seen[k] = true;
        auto it = act.find(k);
        if (it == act.end()) {
            out.push_back({e.sigma.to_string(), e.pi.to_string(), e.nu.to_string(), canonical_form(e.product), "(missing)"});
        } else if (!(it->second->product == e.product)) {
            out.push_back({e.sigma.to_string(), e.pi.to_string(), e.nu.to_string(), canonical_form(e.product),
                           canonical_form(it->second->product)});
        }
    }
    for (const auto& r : actual)
        if (!seen.count(key(r)))
            out.push_back({r.sigma.to_string(), r.pi.to_string(), r.nu.to_string(), "(missing)", canonical_form(r.product)});
    return out;
}

}  // namespace asep
