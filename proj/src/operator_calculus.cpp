#include "asep/operator_calculus.hpp"

#include <iomanip>
#include <sstream>

#include "asep/errors.hpp"

namespace asep {

TwoRowState TwoRowState::start(const MultisetWord& nu) {
    return {Permutation::identity(nu.size()), nu, AmplitudeProduct::one()};
}

namespace {

void check_slot(const TwoRowState& s, int i) {
    if (i < 1 || i >= s.top.size()) throw InvalidArgument("operator slot " + std::to_string(i) + " out of range");
    if (s.bottom.size() != s.top.size()) throw InvalidArgument("rows of different length");
}

FactorKind star_kind(int x, int y) { return x == y ? FactorKind::S : (x > y ? FactorKind::Q : FactorKind::P); }
FactorKind hat_kind(int x, int y) { return x == y ? FactorKind::S : (x > y ? FactorKind::PT : FactorKind::QT); }

AmplitudeFactor step_factor(FactorKind kind, const TwoRowState& s, int i) {
    // labels read from the top row before the swap: (sigma(i+1), sigma(i))
    return {kind, s.top(i + 1), s.top(i)};
}

}  // namespace

TwoRowState apply_tstar(const TwoRowState& state, int i) {
    check_slot(state, i);
    const int x = state.bottom(i), y = state.bottom(i + 1);
    TwoRowState out = state;
    out.acc *= step_factor(star_kind(x, y), state, i);
    out.top.swap_slots(i);
    return out;
}

TwoRowState apply_that(const TwoRowState& state, int i) {
    check_slot(state, i);
    const int x = state.bottom(i), y = state.bottom(i + 1);
    TwoRowState out = state;
    out.acc *= step_factor(hat_kind(x, y), state, i);
    out.top.swap_slots(i);
    if (x != y) std::swap(out.bottom.letters[static_cast<std::size_t>(i - 1)], out.bottom.letters[static_cast<std::size_t>(i)]);
    return out;
}

OperatorRun run_operators(const LabelledWord& word, const MultisetWord& nu, std::size_t hat_count) {
    if (word.target.size() != nu.size()) throw InvalidArgument("word and species row sizes differ");
    OperatorRun run;
    TwoRowState s = TwoRowState::start(nu);
    std::size_t j = 0;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it, ++j) {
        const bool hat = j < hat_count;
        const int x = s.bottom(it->slot), y = s.bottom(it->slot + 1);
        const AmplitudeFactor gained = step_factor(hat ? hat_kind(x, y) : star_kind(x, y), s, it->slot);
        TwoRowState next = hat ? apply_that(s, it->slot) : apply_tstar(s, it->slot);
        run.steps.push_back({hat ? OperatorKind::Hat : OperatorKind::Star, it->slot, gained, next});
        s = std::move(next);
    }
    run.final_state = std::move(s);
    return run;
}

OperatorResult amplitude_via_operators(const Permutation& sigma, const MultisetWord& pi, const MultisetWord& nu) {
    const InitialOrder order = require_order(nu);
    if (pi.size() != nu.size() || sigma.size() != nu.size()) throw InvalidArgument("sizes of sigma, pi and nu differ");
    if (pi.multiset() != nu.multiset()) return {AmplitudeProduct::zero(), 0, false};

    const LabelledWord word = decompose(sigma, scheme_for(order)).word;
    OperatorResult found{AmplitudeProduct::zero(), 0, false};
    for (std::size_t h = 0; h <= word.length(); ++h) {
        OperatorRun run = run_operators(word, nu, h);
        if (run.final_state.bottom != pi) continue;
        if (!found.reached) {
            found = {run.final_state.acc, h, true};
        } else if (!(found.product == run.final_state.acc)) {
            throw NotFactorized("operator runs for sigma=" + sigma.to_string() + ", pi=" + pi.to_string() +
                                " give different products: " + canonical_form(found.product) + " and " +
                                canonical_form(run.final_state.acc));
        }
    }
    return found;
}

AmplitudeProduct segment_split_amplitude(const Permutation& sigma, int i) {
    const int n = sigma.size();
    if (n < 2) throw InvalidArgument("N >= 2 required");
    if (i < 1 || i > n) throw InvalidArgument("target index out of range");
    const SchemeSegmentation seg = decompose(sigma, Scheme::Sigma);
    for (int l = i; l <= n - 1; ++l)
        if (seg.segment(l).empty()) return AmplitudeProduct::zero();

    // Application runs w_{N-1} first; the hat range is w_i ... w_{N-1}, the factors
    // at the end of the printed word.
    const std::size_t hat_begin = i <= n - 1 ? seg.segment(i).begin : seg.word.length();
    const std::size_t hats = seg.word.length() - hat_begin;
    const MultisetWord nu = initial_word(InitialOrder::TwosOne, n);
    OperatorRun run = run_operators(seg.word, nu, hats);
    MultisetWord target{std::vector<int>(static_cast<std::size_t>(n), 2)};
    target.letters[static_cast<std::size_t>(i - 1)] = 1;
    if (run.final_state.bottom != target) return AmplitudeProduct::zero();
    return run.final_state.acc;
}

std::string render_trace(const OperatorRun& run, const MultisetWord& nu) {
    std::ostringstream os;
    const int n = nu.size();
    os << std::left << std::setw(12) << "start" << "  " << Permutation::identity(n).to_string() << '\n'
       << std::setw(12) << "" << "  " << nu.to_string() << '\n';
    for (const auto& st : run.steps) {
        std::string op = (st.kind == OperatorKind::Hat ? "T^" : "T*") + std::to_string(st.slot);
        os << std::setw(5) << op << ' ' << std::setw(6) << st.gained.to_string() << "  " << st.after.top.to_string() << '\n';
        // mark the slots the operator acted on under the species row
        std::string marks(static_cast<std::size_t>(n), ' ');
        marks[static_cast<std::size_t>(st.slot - 1)] = '^';
        marks[static_cast<std::size_t>(st.slot)] = '^';
        os << std::setw(12) << "" << "  " << st.after.bottom.to_string() << '\n'
           << std::setw(12) << "" << "  " << marks << '\n';
    }
    os << "product " << canonical_form(run.final_state.acc) << '\n';
    return os.str();
}

}  // namespace asep
