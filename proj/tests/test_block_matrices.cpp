#include <doctest.h>

#include "asep/errors.hpp"
#include "asep/factorized.hpp"
#include "test_util.hpp"

using namespace asep;
using asep::testing::eval_points;
using asep::testing::max_abs_diff;
using asep::testing::perm;
using asep::testing::word;

namespace {

cplx fv(FactorKind k, int b, int a, const EvalPoint& pt) { return eval_factor({k, b, a}, pt); }

}  // namespace

TEST_CASE("multiset words and sectors") {
    CHECK(word("2212").to_string() == "2212");
    CHECK(word("2212").multiset() == std::vector<int>{1, 2, 2, 2});
    CHECK_THROWS_AS(word(""), InvalidArgument);
    CHECK_THROWS_AS(word("2a"), InvalidArgument);

    const Sector m4 = Sector::minority_first(4);
    CHECK(m4.dim() == 4);
    CHECK(m4.word(0) == word("1222"));
    CHECK(m4.word(3) == word("2221"));
    CHECK(m4.index_of(word("2122")) == 1);
    CHECK_FALSE(m4.contains(word("1122")));
    CHECK_THROWS_AS(m4.index_of(word("1122")), InvalidArgument);
    CHECK(m4.swapped_index(0, 1) == 1);

    const Sector n4 = Sector::minority_last(4);
    CHECK(n4.word(0) == word("1112"));
    CHECK(n4.word(3) == word("2111"));

    CHECK(Sector({1, 1, 2, 2}).dim() == 6);
}

TEST_CASE("R matrix entries") {
    const EvalPoint pt = eval_points(3, 1, 9)[0];
    const Eigen::MatrixXcd r = build_R(3, 1, pt, 3);
    REQUIRE(r.rows() == 9);
    auto idx = [](int i, int j) { return (i - 1) * 3 + (j - 1); };
    CHECK(std::abs(r(idx(1, 1), idx(1, 1)) - fv(FactorKind::S, 3, 1, pt)) < 1e-14);
    CHECK(std::abs(r(idx(1, 2), idx(2, 1)) - fv(FactorKind::PT, 3, 1, pt)) < 1e-14);
    CHECK(std::abs(r(idx(2, 1), idx(1, 2)) - fv(FactorKind::QT, 3, 1, pt)) < 1e-14);
    CHECK(std::abs(r(idx(1, 2), idx(1, 2)) - fv(FactorKind::P, 3, 1, pt)) < 1e-14);
    CHECK(std::abs(r(idx(2, 1), idx(2, 1)) - fv(FactorKind::Q, 3, 1, pt)) < 1e-14);
    CHECK(r(idx(1, 2), idx(1, 3)) == cplx(0.0));
}

TEST_CASE("sector T matrices") {
    const EvalPoint pt = eval_points(4, 1, 10)[0];

    const SectorMatrix t2 = build_T_sector(1, 2, 1, Sector::minority_first(2), pt);
    Eigen::Matrix2cd want2;
    want2 << fv(FactorKind::P, 2, 1, pt), fv(FactorKind::PT, 2, 1, pt), fv(FactorKind::QT, 2, 1, pt), fv(FactorKind::Q, 2, 1, pt);
    CHECK(max_abs_diff(t2.m, want2) < 1e-14);

    const SectorMatrix t3 = build_T_sector(1, 2, 1, Sector::minority_first(3), pt);
    Eigen::Matrix3cd want3 = Eigen::Matrix3cd::Zero();
    want3.topLeftCorner<2, 2>() = want2;
    want3(2, 2) = fv(FactorKind::S, 2, 1, pt);
    CHECK(max_abs_diff(t3.m, want3) < 1e-14);

    // T_3 on [1,1,1,2] has the same matrix as T_1 on [1,2,2,2]
    const SectorMatrix n = build_T_sector(3, 4, 2, Sector::minority_last(4), pt);
    const SectorMatrix m = build_T_sector(1, 4, 2, Sector::minority_first(4), pt);
    CHECK(max_abs_diff(n.m, m.m) < 1e-14);

    for (int l = 1; l <= 3; ++l) {
        for (const Sector& s : {Sector::minority_first(4), Sector::minority_last(4), Sector({1, 1, 2, 2})}) {
            const Eigen::MatrixXcd a = build_T_sector(l, 3, 1, s, pt).m * build_T_sector(l, 1, 3, s, pt).m;
            CHECK(max_abs_diff(a, Eigen::MatrixXcd::Identity(s.dim(), s.dim())) < 1e-12);
        }
    }
}

TEST_CASE("A_sigma on sectors") {
    const auto pts = eval_points(4, 5, 11);
    for (const auto& pt : pts) {
        const Sector s = Sector::minority_first(4);
        CHECK(max_abs_diff(a_sigma_sector(Permutation::identity(4), Scheme::Sigma, s, pt).m, Eigen::MatrixXcd::Identity(4, 4)) == 0.0);

        // 321 on [1,1,2]: the Sigma word gives a two-term sum, the Gamma word one product
        const Sector n3({1, 1, 2});
        const AmplitudeProduct want({{FactorKind::Q, 2, 1}, {FactorKind::PT, 3, 1}, {FactorKind::S, 3, 2}});
        const EvalPoint p3{{pt.xi[0], pt.xi[1], pt.xi[2]}, pt.p};
        for (Scheme sc : {Scheme::Sigma, Scheme::Gamma}) {
            const SectorMatrix a = a_sigma_sector(perm("321"), sc, n3, p3);
            CHECK(relative_error(a.at(word("121"), word("211")), eval_product(want, p3)) < 1e-12);
        }

        // 4321, last column, against the 2221 golden products
        const SectorMatrix a = a_sigma_sector(perm("4321"), Scheme::Sigma, s, pt);
        for (const auto& row : read_table_file(ASEP_DATA_DIR "/golden/table_n4_2221.csv")) {
            if (row.sigma != perm("4321")) continue;
            CHECK(relative_error(a.at(row.pi, word("2221")), eval_product(row.product, pt)) < 1e-12);
        }
    }
}

TEST_CASE("braid relation for the two reduced words of 321") {
    const LabelledWord w121 = label_word(std::vector<int>{1, 2, 1}, 3);
    const LabelledWord w212 = label_word(std::vector<int>{2, 1, 2}, 3);
    REQUIRE(w121.target == w212.target);
    for (const auto& pt : eval_points(3, 20, 12)) {
        for (const Sector& s : {Sector::minority_first(3), Sector::minority_last(3), Sector({1, 2, 3})}) {
            CHECK(max_abs_diff(a_sigma_sector(w121, s, pt).m, a_sigma_sector(w212, s, pt).m) < 1e-12);
        }
        CHECK(max_abs_diff(a_sigma_full(w121, pt, 3), a_sigma_full(w212, pt, 3)) < 1e-12);
    }
}

TEST_CASE("full tensor matrices") {
    const auto pts = eval_points(4, 3, 13);

    const EvalPoint p2{{pts[0].xi[0], pts[0].xi[1]}, pts[0].p};
    const LabelledWord w21 = decompose(perm("21"), Scheme::Sigma).word;
    CHECK(max_abs_diff(a_sigma_full(w21, p2, 2), build_R(2, 1, p2, 2)) < 1e-14);

    const EvalPoint p3{{pts[0].xi[0], pts[0].xi[1], pts[0].xi[2]}, pts[0].p};
    const LabelledWord w321 = decompose(perm("321"), Scheme::Sigma).word;
    const Eigen::MatrixXcd full3 = a_sigma_full(w321, p3, 3);
    const Sector m3 = Sector::minority_first(3);
    CHECK(max_abs_diff(extract_block(full3, m3).m, a_sigma_sector(w321, m3, p3).m) < 1e-14);
    CHECK(off_block_norm(full3, 3) == 0.0);

    // structured product against the literal Kronecker construction
    for (const char* s : {"4321", "2413", "3142", "1243"}) {
        const LabelledWord w = decompose(perm(s), Scheme::Omega).word;
        const Eigen::MatrixXcd a = a_sigma_full(w, pts[1], 4);
        CHECK(max_abs_diff(a, a_sigma_full_kron(w, pts[1], 4)) < 1e-12);
        CHECK(off_block_norm(a, 4) < 1e-14);
    }

    // the singleton block of one repeated species is the product of S over inversions
    for (const auto& sigma : all_permutations(4)) {
        const LabelledWord w = decompose(sigma, Scheme::Sigma).word;
        const Eigen::MatrixXcd a = a_sigma_full(w, pts[2], 4);
        AmplitudeProduct ss;
        for (const auto& inv : inversions(sigma)) ss *= AmplitudeFactor{FactorKind::S, inv.beta, inv.alpha};
        const cplx want = eval_product(ss, pts[2]);
        for (int letter = 1; letter <= 4; ++letter) {
            const int i = full_index(MultisetWord{std::vector<int>(4, letter)}, 4);
            CHECK(relative_error(a(i, i), want) < 1e-12);
        }
    }

    CHECK_THROWS_AS(a_sigma_full(label_word(std::vector<int>{}, 5), eval_points(5, 1, 1)[0], 5), SizeLimitExceeded);

    const SectorOrdering ord = sector_ordering(3);
    CHECK(ord.order.size() == 27);
    CHECK(ord.blocks.size() == 10);
}

TEST_CASE("schemes give the same sector matrices on S_4") {
    const auto pts = eval_points(4, 20, 14);
    const std::vector<Sector> sectors{Sector::minority_first(4), Sector::minority_last(4), Sector({1, 1, 2, 2}),
                                      Sector({1, 2, 3, 4})};
    for (const auto& sigma : all_permutations(4)) {
        for (const auto& s : sectors) {
            for (const auto& pt : pts) {
                const Eigen::MatrixXcd ref = a_sigma_sector(sigma, Scheme::Sigma, s, pt).m;
                for (Scheme sc : {Scheme::Omega, Scheme::Gamma, Scheme::Xi})
                    REQUIRE(max_abs_diff(ref, a_sigma_sector(sigma, sc, s, pt).m) < 1e-10);
            }
        }
    }
}

TEST_CASE("column propagation matches the sector matrix") {
    const Sector s = Sector::minority_last(4);
    const EvalPoint pt = eval_points(4, 1, 15)[0];
    for (const auto& sigma : all_permutations(4)) {
        const LabelledWord w = decompose(sigma, Scheme::Xi).word;
        const Eigen::MatrixXcd a = a_sigma_sector(w, s, pt).m;
        for (int c = 0; c < s.dim(); ++c) CHECK(max_abs_diff(a_sigma_column(w, s, c, pt), a.col(c)) < 1e-14);
    }
}
