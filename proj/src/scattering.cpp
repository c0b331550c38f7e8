#include "asep/scattering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "asep/errors.hpp"

namespace asep {

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0,1), got " + std::to_string(p));
}

std::string to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::S: return "S";
        case FactorKind::P: return "P";
        case FactorKind::Q: return "Q";
        case FactorKind::PT: return "pT";
        case FactorKind::QT: return "qT";
    }
    return "?";
}

std::string AmplitudeFactor::to_string() const {
    return asep::to_string(kind) + std::to_string(beta) + std::to_string(alpha);
}

AmplitudeProduct::AmplitudeProduct(std::vector<AmplitudeFactor> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
}

AmplitudeProduct AmplitudeProduct::zero() {
    AmplitudeProduct z;
    z.zero_ = true;
    return z;
}

AmplitudeProduct& AmplitudeProduct::operator*=(const AmplitudeFactor& f) {
    if (zero_) return *this;
    factors_.insert(std::upper_bound(factors_.begin(), factors_.end(), f), f);
    return *this;
}

bool denominator_vanishes(cplx d, double p, cplx xa, cplx xb) {
    // squared moduli; std::abs on complex goes through hypot, which is slow in hot loops
    const double bound = 1e-9 * (1.0 + std::abs(p) + std::sqrt(std::norm(xa * xb)));
    return std::norm(d) < bound * bound;
}

FactorValues factor_values(cplx xb, cplx xa, double p) {
    const double q = 1.0 - p;
    const cplx d = p + q * xa * xb - xa;
    if (denominator_vanishes(d, p, xa, xb)) throw DenominatorVanishes("scattering denominator vanishes");
    const cplx inv = std::conj(d) / std::norm(d);
    FactorValues out;
    out.v[0] = -(p + q * xa * xb - xb) * inv;
    out.v[1] = (p - q * xa) * (xb - 1.0) * inv;
    out.v[2] = (p - q * xb) * (xa - 1.0) * inv;
    out.v[3] = p * (xb - xa) * inv;
    out.v[4] = q * (xb - xa) * inv;
    return out;
}

cplx factor_value(FactorKind kind, cplx xi_beta, cplx xi_alpha, double p) {
    return factor_values(xi_beta, xi_alpha, p)[kind];
}

cplx eval_factor(const AmplitudeFactor& f, const EvalPoint& pt) {
    if (f.beta < 1 || f.alpha < 1 || f.beta > pt.size() || f.alpha > pt.size() || f.beta == f.alpha)
        throw InvalidArgument("factor " + f.to_string() + " does not fit an evaluation point of size " + std::to_string(pt.size()));
    return factor_value(f.kind, pt[f.beta], pt[f.alpha], pt.p);
}

cplx eval_product(const AmplitudeProduct& prod, const EvalPoint& pt) {
    if (prod.is_zero()) return 0.0;
    cplx v = 1.0;
    for (const auto& f : prod.factors()) v *= eval_factor(f, pt);
    return v;
}

double relative_error(cplx a, cplx b, double floor) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < floor) return 0.0;
    return std::abs(a - b) / scale;
}

std::string canonical_form(const AmplitudeProduct& prod) {
    if (prod.is_zero()) return "0";
    if (prod.is_one()) return "1";
    std::string out;
    for (const auto& f : prod.factors()) {
        if (!out.empty()) out += '.';
        out += f.to_string();
    }
    return out;
}

AmplitudeProduct parse_product(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == '.' || c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.empty()) throw InvalidArgument("empty product text");
    if (tokens.size() == 1 && tokens[0] == "0") return AmplitudeProduct::zero();
    if (tokens.size() == 1 && tokens[0] == "1") return AmplitudeProduct::one();

    std::vector<AmplitudeFactor> fs;
    for (const auto& t : tokens) {
        if (t.size() < 3) throw InvalidArgument("bad factor '" + t + "'");
        const std::string head = t.substr(0, t.size() - 2);
        FactorKind k;
        if (head == "S") k = FactorKind::S;
        else if (head == "P") k = FactorKind::P;
        else if (head == "Q") k = FactorKind::Q;
        else if (head == "pT") k = FactorKind::PT;
        else if (head == "qT") k = FactorKind::QT;
        else throw InvalidArgument("bad factor kind in '" + t + "'");
        const char b = t[t.size() - 2], a = t[t.size() - 1];
        if (!std::isdigit(static_cast<unsigned char>(b)) || !std::isdigit(static_cast<unsigned char>(a)) || a == b)
            throw InvalidArgument("bad factor labels in '" + t + "'");
        fs.push_back({k, b - '0', a - '0'});
    }
    return AmplitudeProduct(std::move(fs));
}

}  // namespace asep
