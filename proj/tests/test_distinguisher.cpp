#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wg/algcode.hpp"
#include "wg/distinguisher.hpp"

using namespace wg;

TEST_CASE("binomials: clamped for counts, polynomial for inequality scans") {
    CHECK(binom2(36) == 630);
    CHECK(binom2(10) == 45);
    CHECK(binom2(1) == 0);
    CHECK(binom2(-3) == 0);
    CHECK(binom2_poly(-3) == 6); // stays quadratic below zero
    CHECK(binom2_poly(5) == 10);
}

TEST_CASE("strict interval at the reference parameters") {
    auto iv = interval_strict(29, 794, 5);
    REQUIRE(iv.has_value());
    CHECK(iv->lo == 794 - 2 * 5 * 30); // 494
    CHECK(iv->lo == 494);
    CHECK(iv->hi == 506);
    CHECK(!interval_strict(29, 794, 2).has_value()); // C(9,2) = 36 <= 2r(q+1) - 2
}

TEST_CASE("experimental interval at the reference parameters") {
    auto iv = interval_experimental(29, 794, 5);
    REQUIRE(iv.has_value());
    CHECK(iv->lo == 493);
    CHECK(iv->hi == 506);
}

TEST_CASE("the strict interval is contained in the experimental one") {
    for (long long q : {4, 5, 7, 8, 9, 11, 13, 16, 29}) {
        for (long long r = 2; r < q && r <= 6; ++r) {
            for (long long n : {2 * q + 10, q * q - 1, q * q}) {
                if (n > q * q) continue;
                auto s = interval_strict(q, n, r);
                auto e = interval_experimental(q, n, r);
                if (s) {
                    REQUIRE(e.has_value());
                    CHECK(e->lo <= s->lo);
                    CHECK(s->hi <= e->hi);
                }
            }
        }
    }
}

TEST_CASE("filtration shortening intervals") {
    auto iv = filtration_intervals(29, 794, 5, 2);
    REQUIRE(iv.has_value());
    CHECK(iv->lo == 492); // n - 2r(q+1) - t
    // even-case nonemptiness: C(r(r+2)+2, 2) > 2r(q+1) + t - 2
    CHECK(binom2(37) == 666);
    auto odd = filtration_intervals(29, 794, 5, 3);
    REQUIRE(odd.has_value());
    CHECK(odd->lo == 491);
    for (long long t = 2; t <= 10; ++t) {
        auto f = filtration_intervals(9, 81, 3, t);
        REQUIRE(f.has_value());
        CHECK(f->lo <= f->hi);
        CHECK(f->lo >= 0);
        CHECK(f->hi <= 79);
    }
}

TEST_CASE("feasibility rows: both inequality variants") {
    std::vector<long long> strict_row, exp_row;
    for (long long r = 2; r <= 5; ++r) {
        strict_row.push_back(max_q_strict(r));
        exp_row.push_back(max_q_experimental(r));
    }
    CHECK(exp_row == std::vector<long long>{9, 19, 37, 64});
    // the variants disagree for r in {2, 4, 5}; the strict variant's row is
    // reported alongside, never silently merged
    CHECK(strict_row == std::vector<long long>{8, 19, 32, 61});
}

TEST_CASE("prime power recognition") {
    for (long long v : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 81}) CHECK(is_prime_power(v));
    for (long long v : {0, 1, 6, 10, 12, 15, 36, 100}) CHECK(!is_prime_power(v));
}

TEST_CASE("dimension profile separates a wild key from the baseline inside the interval") {
    FieldTower F(3, 2);
    CounterRng rng(71);
    WildKeyPair key = keygen(F, 81, 3, rng);
    auto iv = interval_experimental(9, 81, 3);
    REQUIRE(iv.has_value());
    CHECK(iv->lo == 20);
    CHECK(iv->hi == 27);
    std::vector<std::size_t> sizes;
    for (long long a = iv->lo; a <= iv->hi; ++a) sizes.push_back(static_cast<std::size_t>(a));
    sizes.push_back(29); // past the interval the square looks generic
    sizes.push_back(30);
    auto rows = dimension_profile(key.pub, sizes, 5, rng);
    REQUIRE(rows.size() == sizes.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].size == sizes[i]);
        long long k = static_cast<long long>(key.pub.dim());
        long long base = std::min<long long>(81 - static_cast<long long>(rows[i].size),
                                             binom2(k - static_cast<long long>(rows[i].size) + 1));
        CHECK(rows[i].random_dim == base);
        if (rows[i].size <= static_cast<std::size_t>(iv->hi))
            CHECK(rows[i].goppa_dim < rows[i].random_dim);
        else if (rows[i].size >= 29)
            CHECK(rows[i].goppa_dim == rows[i].random_dim);
    }
}
