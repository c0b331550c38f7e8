#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "asep/errors.hpp"
#include "asep/factorized.hpp"
#include "test_util.hpp"

using namespace asep;
using asep::testing::eval_points;
using asep::testing::perm;
using asep::testing::word;

namespace {

std::vector<TableRow> golden(const char* name) { return read_table_file(std::string(ASEP_DATA_DIR "/golden/") + name); }

}  // namespace

TEST_CASE("initial orders") {
    CHECK(classify(word("2221")) == InitialOrder::TwosOne);
    CHECK(classify(word("1222")) == InitialOrder::OneTwos);
    CHECK(classify(word("2111")) == InitialOrder::TwoOnes);
    CHECK(classify(word("1112")) == InitialOrder::OnesTwo);
    CHECK(classify(word("21")) == InitialOrder::TwosOne);
    CHECK(classify(word("12")) == InitialOrder::OneTwos);
    CHECK_FALSE(classify(word("2121")).has_value());
    CHECK_FALSE(classify(word("1")).has_value());
    CHECK_THROWS_AS(require_order(word("1211")), UnsupportedOrder);
    CHECK(initial_word(InitialOrder::OnesTwo, 3) == word("112"));
    CHECK(scheme_for(InitialOrder::TwoOnes) == Scheme::Gamma);
    CHECK(distinguished_slot(InitialOrder::TwosOne, 5) == 4);
    CHECK(diagonal_kind(InitialOrder::OneTwos) == FactorKind::P);
}

TEST_CASE("diagonal amplitudes") {
    CHECK(diagonal_amplitude(perm("1243"), word("2221")) == parse_product("Q43"));
    CHECK(diagonal_amplitude(perm("1243"), word("1112")) == parse_product("P43"));
    CHECK(diagonal_amplitude(perm("3214"), word("2221")) == parse_product("S32 S31 S21"));
    for (const auto& nu : {word("2221"), word("1222"), word("2111"), word("1112")})
        CHECK(diagonal_amplitude(Permutation::identity(4), nu).is_one());
    for (const auto& sigma : all_permutations(4))
        for (const auto& nu : {word("2221"), word("1222"), word("2111"), word("1112")})
            CHECK(diagonal_amplitude(sigma, nu) == amplitude(sigma, nu, nu));
}

TEST_CASE("amplitude examples") {
    CHECK(amplitude(perm("4123"), word("2122"), word("2221")) == parse_product("pT43 pT42 Q41"));
    CHECK(amplitude(perm("1324"), word("2212"), word("2221")).is_zero());
    CHECK(amplitude(perm("4321"), word("2111"), word("1112")) == parse_product("qT43 qT42 qT41 S32 S31 S21"));
    CHECK(amplitude(Permutation::identity(4), word("2221"), word("2221")).is_one());
    CHECK(amplitude(Permutation::identity(4), word("2212"), word("2221")).is_zero());
    // different multisets
    CHECK(amplitude(perm("4321"), word("1122"), word("2221")).is_zero());
    CHECK_THROWS_AS(amplitude(perm("4321"), word("2121"), word("2121")), UnsupportedOrder);
    CHECK_THROWS_AS(amplitude(perm("321"), word("2221"), word("2221")), InvalidArgument);
}

TEST_CASE("support examples") {
    CHECK(support(Permutation::identity(4), word("2221")) == std::vector<int>{4});
    CHECK(support(perm("1423"), word("2221")) == std::vector<int>{2, 3, 4});
    CHECK(support(perm("4123"), word("2221")) == std::vector<int>{1, 2, 3, 4});
    CHECK_THROWS_AS(support(perm("4123"), word("1112")), UnsupportedOrder);
}

TEST_CASE("support matches the oracle's nonzero entries for N <= 5") {
    for (int n = 2; n <= 5; ++n) {
        const auto pts = eval_points(n, 3, 31 + static_cast<std::uint64_t>(n));
        const MultisetWord nu = initial_word(InitialOrder::TwosOne, n);
        for (const auto& sigma : all_permutations(n)) {
            REQUIRE(support(sigma, nu) == empirical_support(sigma, nu, pts));
            // and matches the closed form's nonzero cells
            std::vector<int> nonzero;
            const Sector s = Sector::minority_first(n);
            for (int i = 1; i <= n; ++i)
                if (!amplitude(sigma, s.word(i - 1), nu).is_zero()) nonzero.push_back(i);
            REQUIRE(nonzero == support(sigma, nu));
        }
    }
}

TEST_CASE("factorized amplitudes equal the oracle for N <= 4, all orders") {
    for (int n = 2; n <= 4; ++n) {
        const auto pts = eval_points(n, 20, 41 + static_cast<std::uint64_t>(n));
        for (auto order : {InitialOrder::TwosOne, InitialOrder::OneTwos, InitialOrder::TwoOnes, InitialOrder::OnesTwo}) {
            const MultisetWord nu = initial_word(order, n);
            const Sector s = sector_for(order, n);
            for (const auto& sigma : all_permutations(n)) {
                const LabelledWord w = decompose(sigma, scheme_for(order)).word;
                for (const auto& pi : s.words()) {
                    const AmplitudeProduct a = amplitude(sigma, pi, nu);
                    if (!a.is_zero()) {
                        std::vector<Inversion> labels;
                        for (const auto& f : a.factors()) labels.push_back({f.beta, f.alpha});
                        std::sort(labels.begin(), labels.end());
                        REQUIRE(labels == inversions(sigma));
                    }
                }
                for (const auto& pt : pts) {
                    const Eigen::VectorXcd col = a_sigma_column(w, s, s.index_of(nu), pt);
                    for (int r = 0; r < s.dim(); ++r)
                        REQUIRE(relative_error(eval_product(amplitude(sigma, s.word(r), nu), pt), col(r)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("column structure of a single top segment") {
    // sigma = T_{N-1} ... T_l: the 2...21 column is Q S...S on row N, pT S...S on row N-1,
    // and zero elsewhere
    for (int n = 3; n <= 6; ++n) {
        const auto pts = eval_points(n, 3, 51);
        const Sector s = Sector::minority_first(n);
        const MultisetWord nu = initial_word(InitialOrder::TwosOne, n);
        for (int l = 1; l <= n - 1; ++l) {
            std::vector<int> slots;
            for (int k = n - 1; k >= l; --k) slots.push_back(k);
            const LabelledWord w = label_word(slots, n);
            AmplitudeProduct row_n, row_n1;
            for (std::size_t j = 0; j < w.factors.size(); ++j) {
                const auto& f = w.factors[j];
                row_n *= AmplitudeFactor{j == 0 ? FactorKind::Q : FactorKind::S, f.beta, f.alpha};
                row_n1 *= AmplitudeFactor{j == 0 ? FactorKind::PT : FactorKind::S, f.beta, f.alpha};
            }
            CHECK(amplitude(w.target, s.word(n - 1), nu) == row_n);
            CHECK(amplitude(w.target, s.word(n - 2), nu) == row_n1);
            for (const auto& pt : pts) {
                const Eigen::VectorXcd col = a_sigma_column(w, s, s.index_of(nu), pt);
                CHECK(relative_error(col(n - 1), eval_product(row_n, pt)) < 1e-12);
                CHECK(relative_error(col(n - 2), eval_product(row_n1, pt)) < 1e-12);
                for (int r = 0; r < n - 2; ++r) CHECK(std::abs(col(r)) < 1e-14);
            }
        }
    }
}

TEST_CASE("empirical support for the other orders") {
    const auto pts = eval_points(4, 3, 61);
    for (auto order : {InitialOrder::OneTwos, InitialOrder::TwoOnes, InitialOrder::OnesTwo}) {
        const MultisetWord nu = initial_word(order, 4);
        const Sector s = sector_for(order, 4);
        for (const auto& sigma : all_permutations(4)) {
            std::vector<int> nonzero;
            for (int i = 1; i <= 4; ++i)
                if (!amplitude(sigma, s.word(i - 1), nu).is_zero()) nonzero.push_back(i);
            CHECK(nonzero == empirical_support(sigma, nu, pts));
        }
    }
}

TEST_CASE("generated tables") {
    const auto t2 = amplitude_table(2, word("21"));
    REQUIRE(t2.size() == 4);
    CHECK(t2[0].sigma == perm("12"));
    CHECK(t2[0].pi == word("12"));
    CHECK(t2[0].product.is_zero());
    CHECK(t2[1].product.is_one());
    CHECK(t2[2].product == parse_product("pT21"));
    CHECK(t2[3].product == parse_product("Q21"));

    const auto rows = amplitude_table(4, word("2221"));
    CHECK(rows.size() == 96);
    CHECK(compare_tables(golden("table_n4_2221.csv"), rows).empty());

    std::stringstream ss;
    write_table(ss, rows);
    CHECK(ss.str().rfind("sigma,pi,nu,canonical_product\n", 0) == 0);
    const auto back = read_table(ss);
    CHECK(compare_tables(rows, back).empty());

    auto broken = rows;
    broken[10].product = parse_product("S21");
    const auto diff = compare_tables(rows, broken);
    REQUIRE(diff.size() == 1);
    CHECK(diff[0].sigma == rows[10].sigma.to_string());

    broken.pop_back();
    CHECK(compare_tables(rows, broken).size() == 2);

    std::stringstream bad("sigma,pi,nu,canonical_product\n12,12,21\n");
    CHECK_THROWS_AS(read_table(bad), InvalidArgument);
    CHECK_THROWS_AS(read_table_file("/nonexistent/table.csv"), InvalidArgument);
}

TEST_CASE("1112 golden table against generated products and the oracle") {
    const auto file = golden("table_n4_1112.csv");
    const auto rows = amplitude_table(4, word("1112"));
    REQUIRE(file.size() == 96);
    // The transcribed file carries two cells of row 1432 whose (4,3) and (3,2) labels
    // are exchanged; the oracle sides with the generated products there.
    const auto diff = compare_tables(file, rows);
    CHECK(diff.size() == 2);
    for (const auto& d : diff) CHECK(d.sigma == "1432");

    const Sector s = Sector::minority_last(4);
    for (const auto& pt : eval_points(4, 5, 71)) {
        for (const auto& r : rows) {
            const LabelledWord w = decompose(r.sigma, Scheme::Xi).word;
            const cplx oracle = a_sigma_column(w, s, s.index_of(word("1112")), pt)(s.index_of(r.pi));
            REQUIRE(relative_error(eval_product(r.product, pt), oracle) < 1e-10);
        }
    }
}

TEST_CASE("random evaluation points stay in range") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const EvalPoint pt = random_eval_point(6, rng);
        CHECK(pt.p >= 0.1);
        CHECK(pt.p <= 0.9);
        for (const auto& x : pt.xi) {
            CHECK(std::abs(x) >= 0.05);
            CHECK(std::abs(x) <= 0.5);
        }
    }
}
