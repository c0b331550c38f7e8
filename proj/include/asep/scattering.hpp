#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asep {

using cplx = std::complex<double>;

// Bethe variables xi_1..xi_N and the right-jump probability p (q = 1 - p).
struct EvalPoint {
    std::vector<cplx> xi;
    double p = 0.5;

    double q() const { return 1.0 - p; }
    int size() const { return static_cast<int>(xi.size()); }
    const cplx& operator[](int label) const { return xi[static_cast<std::size_t>(label - 1)]; }
};

// Throws InvalidArgument unless 0 < p < 1.
void check_probability(double p);

enum class FactorKind { S, P, Q, PT, QT };

std::string to_string(FactorKind kind);

struct AmplitudeFactor {
    FactorKind kind = FactorKind::S;
    int beta = 0;
    int alpha = 0;

    auto operator<=>(const AmplitudeFactor& o) const {
        if (auto c = beta <=> o.beta; c != 0) return c;
        if (auto c = alpha <=> o.alpha; c != 0) return c;
        return kind <=> o.kind;
    }
    bool operator==(const AmplitudeFactor&) const = default;

    // "pT43"
    std::string to_string() const;
};

// A formal product of commuting scalar factors, or the distinguished Zero.
// The empty non-zero product is One.
class AmplitudeProduct {
public:
    AmplitudeProduct() = default;  // One
    explicit AmplitudeProduct(std::vector<AmplitudeFactor> factors);

    static AmplitudeProduct zero();
    static AmplitudeProduct one() { return {}; }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && factors_.empty(); }
    // Sorted by (beta, alpha, kind).
    const std::vector<AmplitudeFactor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    AmplitudeProduct& operator*=(const AmplitudeFactor& f);
    bool operator==(const AmplitudeProduct&) const = default;

private:
    std::vector<AmplitudeFactor> factors_;
    bool zero_ = false;
};

// Scale-aware guard on D = p + q xi_a xi_b - xi_a.
bool denominator_vanishes(cplx d, double p, cplx xa, cplx xb);

// Value of a factor kind with explicit xi_beta, xi_alpha. Throws DenominatorVanishes.
cplx factor_value(FactorKind kind, cplx xi_beta, cplx xi_alpha, double p);

// All five kinds at once, indexed by FactorKind; shares the denominator.
struct FactorValues {
    cplx v[5];
    const cplx& operator[](FactorKind k) const { return v[static_cast<int>(k)]; }
};
FactorValues factor_values(cplx xi_beta, cplx xi_alpha, double p);

cplx eval_factor(const AmplitudeFactor& f, const EvalPoint& pt);
cplx eval_product(const AmplitudeProduct& prod, const EvalPoint& pt);

// |a - b| / max(|a|, |b|); 0 when both moduli are below `floor` (numerical zeros).
double relative_error(cplx a, cplx b, double floor = 1e-14);

// "0", "1", or factors joined with '.', sorted by (beta, alpha, kind).
std::string canonical_form(const AmplitudeProduct& prod);

// Accepts any order and '.', '*' or whitespace separators; labels are single digits.
AmplitudeProduct parse_product(std::string_view text);

}  // namespace asep
