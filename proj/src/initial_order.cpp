#include "asep/initial_order.hpp"

#include <algorithm>

#include "asep/errors.hpp"

namespace asep {

std::string to_string(InitialOrder order) {
    switch (order) {
        case InitialOrder::TwosOne: return "2...21";
        case InitialOrder::OneTwos: return "12...2";
        case InitialOrder::TwoOnes: return "21...1";
        case InitialOrder::OnesTwo: return "1...12";
    }
    return "?";
}

MultisetWord initial_word(InitialOrder order, int n) {
    if (n < 2) throw InvalidArgument("initial orders need N >= 2");
    MultisetWord w;
    w.letters.assign(static_cast<std::size_t>(n), 0);
    switch (order) {
        case InitialOrder::TwosOne:
            std::fill(w.letters.begin(), w.letters.end(), 2);
            w.letters.back() = 1;
            break;
        case InitialOrder::OneTwos:
            std::fill(w.letters.begin(), w.letters.end(), 2);
            w.letters.front() = 1;
            break;
        case InitialOrder::TwoOnes:
            std::fill(w.letters.begin(), w.letters.end(), 1);
            w.letters.front() = 2;
            break;
        case InitialOrder::OnesTwo:
            std::fill(w.letters.begin(), w.letters.end(), 1);
            w.letters.back() = 2;
            break;
    }
    return w;
}

std::optional<InitialOrder> classify(const MultisetWord& nu) {
    const int n = nu.size();
    if (n < 2) return std::nullopt;
    for (auto o : {InitialOrder::TwosOne, InitialOrder::OneTwos, InitialOrder::TwoOnes, InitialOrder::OnesTwo})
        if (initial_word(o, n) == nu) return o;
    return std::nullopt;
}

InitialOrder require_order(const MultisetWord& nu) {
    if (auto o = classify(nu)) return *o;
    throw UnsupportedOrder("species order " + nu.to_string() + " has no factorized form; use 2...21, 12...2, 21...1 or 1...12");
}

Scheme scheme_for(InitialOrder order) {
    switch (order) {
        case InitialOrder::TwosOne: return Scheme::Sigma;
        case InitialOrder::OneTwos: return Scheme::Omega;
        case InitialOrder::TwoOnes: return Scheme::Gamma;
        case InitialOrder::OnesTwo: return Scheme::Xi;
    }
    throw InvalidArgument("unknown order");
}

Sector sector_for(InitialOrder order, int n) {
    if (order == InitialOrder::TwosOne || order == InitialOrder::OneTwos) return Sector::minority_first(n);
    return Sector::minority_last(n);
}

int distinguished_slot(InitialOrder order, int n) {
    return (order == InitialOrder::TwosOne || order == InitialOrder::OnesTwo) ? n - 1 : 1;
}

FactorKind diagonal_kind(InitialOrder order) {
    return (order == InitialOrder::TwosOne || order == InitialOrder::TwoOnes) ? FactorKind::Q : FactorKind::P;
}

}  // namespace asep
