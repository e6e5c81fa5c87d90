#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"
#include "wg/code.hpp"

using namespace wg;
using namespace wgtest;

static const FieldTower& F9() {
    static FieldTower F(3, 2);
    return F;
}

TEST_CASE("canonical form: scrambled generators of one subspace store identically") {
    const FieldTower& F = F9();
    CounterRng rng(5);
    for (int it = 0; it < 50; ++it) {
        std::size_t n = 6 + rng.below(6), k = 1 + rng.below(n - 1);
        LinearCode C = random_code(F, Level::mid, n, k, rng);
        // random invertible recombination of the rows
        Mat M(k, n);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                elem c = static_cast<elem>(rng.below(F.q));
                if (i == j && c == 0) c = 1;
                if (c != 0)
                    for (std::size_t col = 0; col < n; ++col)
                        M.at(i, col) = F.add(M.at(i, col), F.mul(c, C.generator().at(j, col)));
            }
        }
        LinearCode D = LinearCode::from_rows(F, Level::mid, n, std::move(M));
        if (D.dim() == k) CHECK(C == D);
    }
}

TEST_CASE("dual: involution, dimensions, orthogonality, extremes") {
    const FieldTower& F = F9();
    CounterRng rng(7);
    CHECK(dual(LinearCode::full(F, Level::mid, 6)) == LinearCode::zero(F, Level::mid, 6));
    CHECK(dual(LinearCode::zero(F, Level::mid, 6)) == LinearCode::full(F, Level::mid, 6));
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 4 + rng.below(9), k = 1 + rng.below(n - 1);
        LinearCode C = random_code(F, Level::mid, n, k, rng);
        LinearCode D = dual(C);
        CHECK(D.dim() == n - k);
        CHECK(dual(D) == C);
        for (std::size_t i = 0; i < C.dim(); ++i)
            for (std::size_t j = 0; j < D.dim(); ++j) {
                elem s = 0;
                for (std::size_t c = 0; c < n; ++c) s = F.add(s, F.mul(C.generator().at(i, c), D.generator().at(j, c)));
                CHECK(s == 0);
            }
    }
}

TEST_CASE("shorten and puncture basics") {
    const FieldTower& F = F9();
    CHECK(shorten(LinearCode::full(F, Level::mid, 7), {0}) == LinearCode::full(F, Level::mid, 6));
    CHECK(puncture(LinearCode::zero(F, Level::mid, 7), {1, 3}) == LinearCode::zero(F, Level::mid, 5));
    CounterRng rng(9);
    LinearCode C = random_code(F, Level::mid, 10, 4, rng);
    CHECK_THROWS_AS(puncture(C, {10}), std::invalid_argument);
    CHECK_THROWS_AS(shorten(C, {3, 3}), std::invalid_argument);
    // shorten then reinsert the dropped columns as zeros stays inside C
    auto I = std::vector<std::size_t>{2, 5};
    LinearCode S = embed_zeros(shorten(C, I), I);
    CHECK(is_subcode(S, C));
    for (std::size_t i = 0; i < S.dim(); ++i) {
        CHECK(S.generator().at(i, 2) == 0);
        CHECK(S.generator().at(i, 5) == 0);
    }
}

TEST_CASE("subfield subcode of a one-dimensional irrational line is zero") {
    const FieldTower& F = F9();
    const elem alpha = F.gen_ext();
    Mat R(1, 2);
    R.at(0, 0) = 1;
    R.at(0, 1) = alpha;
    LinearCode C = LinearCode::from_rows(F, Level::ext, 2, std::move(R));
    CHECK(subfield_subcode(C).is_zero());
    CHECK(subfield_subcode(LinearCode::full(F, Level::ext, 3)) == LinearCode::full(F, Level::mid, 3));
    CHECK(trace_code(LinearCode::full(F, Level::ext, 3)) == LinearCode::full(F, Level::mid, 3));
}

TEST_CASE("star product: identity, commutativity, dimension bounds") {
    const FieldTower& F = F9();
    CounterRng rng(13);
    Mat ones(1, 8);
    for (std::size_t c = 0; c < 8; ++c) ones.at(0, c) = 1;
    LinearCode One = LinearCode::from_rows(F, Level::mid, 8, std::move(ones));
    CHECK(square_code(One) == One);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 5 + rng.below(10);
        LinearCode A = random_code(F, Level::mid, n, 1 + rng.below(4), rng);
        LinearCode B = random_code(F, Level::mid, n, 1 + rng.below(4), rng);
        LinearCode P = star_product(A, B);
        CHECK(star_product(B, A) == P);
        CHECK(P.dim() <= std::min(n, A.dim() * B.dim()));
        CHECK(square_code(A).dim() <= std::min(n, A.dim() * (A.dim() + 1) / 2));
        CHECK(is_subcode(A, star_product(LinearCode::full(F, Level::mid, n), A)));
    }
}

TEST_CASE("sum and intersection are lattice operations") {
    const FieldTower& F = F9();
    CounterRng rng(17);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 5 + rng.below(8);
        LinearCode A = random_code(F, Level::mid, n, 1 + rng.below(n - 1), rng);
        LinearCode B = random_code(F, Level::mid, n, 1 + rng.below(n - 1), rng);
        CHECK(sum_codes(A, A) == A);
        CHECK(intersect_codes(A, A) == A);
        LinearCode S = sum_codes(A, B), I = intersect_codes(A, B);
        CHECK(is_subcode(A, S));
        CHECK(is_subcode(I, A));
        CHECK(S.dim() + I.dim() == A.dim() + B.dim()); // modular law for dimensions
    }
}

TEST_CASE("conductor with full target is the ambient constraint code") {
    const FieldTower& F = F9();
    CounterRng rng(19);
    for (int it = 0; it < 50; ++it) {
        std::size_t n = 5 + rng.below(6);
        LinearCode A = random_code(F, Level::mid, n, 1 + rng.below(3), rng);
        LinearCode D = random_code(F, Level::mid, n, 1 + rng.below(3), rng);
        CHECK(conductor(A, LinearCode::full(F, Level::mid, n), D) == D);
    }
}

TEST_CASE("level and length mismatches are rejected") {
    const FieldTower& F = F9();
    CounterRng rng(23);
    LinearCode A = random_code(F, Level::mid, 6, 2, rng);
    LinearCode B = random_code(F, Level::mid, 7, 2, rng);
    LinearCode E = random_code(F, Level::ext, 6, 2, rng);
    CHECK_THROWS_AS(star_product(A, B), std::invalid_argument);
    CHECK_THROWS_AS(sum_codes(A, E), std::invalid_argument);
    CHECK_THROWS_AS(subfield_subcode(A), std::invalid_argument);
    CHECK_THROWS_AS(trace_code(A), std::invalid_argument);
}

static void report(const wgtest::SuiteResult& r) {
    INFO(r.name << ": " << r.cases << " cases, " << r.failures << " failures");
    for (const auto& n : r.notes) {
        INFO(n);
    }
    CHECK(r.failures == 0);
    CHECK(r.cases >= 200);
}

TEST_CASE("property suite: Delsarte duality") { report(suite_delsarte(101)); }
TEST_CASE("property suite: shorten/dual exchange") { report(suite_shorten_dual(102)); }
TEST_CASE("property suite: trace/subcode commutation") { report(suite_commutation(103)); }
TEST_CASE("property suite: conductor vs exhaustive search") { report(suite_conductor_bruteforce(104)); }
