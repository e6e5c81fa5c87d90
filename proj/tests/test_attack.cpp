#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wg/attack.hpp"
#include "wg/filtration.hpp"

using namespace wg;

namespace {

// first two positions where shortening loses a dimension, as the attack picks them
std::pair<std::size_t, std::size_t> attack_anchors(const LinearCode& pub, long long q, long long r) {
    std::vector<std::size_t> found;
    for (std::size_t a = 0; a < pub.length() && found.size() < 2; ++a) {
        try {
            seed_filtration(pub, a, q, r);
            found.push_back(a);
        } catch (const std::runtime_error&) {
        }
    }
    REQUIRE(found.size() == 2);
    return {found[0], found[1]};
}

void check_recovery(const FieldTower& F, const WildKeyPair& key, const AttackResult& res) {
    REQUIRE(res.key.has_value());
    const auto& rk = *res.key;
    CHECK(rk.degree == static_cast<long long>(key.r) * (F.q + 1));
    // exact code equality of the recovered representation
    LinearCode A = alternant(F, static_cast<std::size_t>(rk.degree), rk.xhat, std::vector<elem>(rk.xhat.size(), 1));
    Mat scaled(A.dim(), A.length());
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t c = 0; c < A.length(); ++c) scaled.at(i, c) = F.mul(A.generator().at(i, c), rk.uhat[c]);
    CHECK(LinearCode::from_rows(F, Level::mid, A.length(), std::move(scaled)) == key.pub);
    // the support is the secret one, or its conjugate, moved by the anchor-pinning affine map
    auto [a0, a1] = attack_anchors(key.pub, F.q, key.r);
    auto [xn, psi] = normalize_support(F, key.x, a0, a1);
    (void)psi;
    bool plain = true, conj = true;
    for (std::size_t i = 0; i < xn.size(); ++i) {
        if (rk.xhat[i] != xn[i]) plain = false;
        if (rk.xhat[i] != F.frob(xn[i])) conj = false;
    }
    CHECK((plain || conj));
}

} // namespace

TEST_CASE("full-support instance: recovery on the first candidate pair") {
    FieldTower F(3, 2);
    CounterRng rng(1);
    WildKeyPair key = keygen(F, 81, 3, rng);
    AttackResult res = run_attack(F, key.pub, 3, 99);
    check_recovery(F, key, res);
    CHECK(res.pairs_tried == 1); // full support leaves a single full-weight candidate per anchor
    CHECK(!res.transcript.stages.empty());
    CHECK(res.transcript.stages.front().name == "anchors");
}

TEST_CASE("punctured-support instance over GF(13): recovery among q^2 - n + 1 candidates") {
    FieldTower F(13, 1);
    CounterRng rng(4);
    WildKeyPair key = keygen(F, 160, 4, rng);
    AttackResult res = run_attack(F, key.pub, 4, 7);
    check_recovery(F, key, res);
    CHECK(res.pairs_tried <= 10); // q^2 - n + 1 = 10
}

TEST_CASE("shortcut solver: random equation subset recovers the same key") {
    FieldTower F(3, 2);
    CounterRng rng(2);
    WildKeyPair key = keygen(F, 81, 3, rng);
    AttackOptions opts;
    opts.shortcut = true;
    AttackResult res = run_attack(F, key.pub, 3, 123, opts);
    check_recovery(F, key, res);
    AttackResult full = run_attack(F, key.pub, 3, 123);
    REQUIRE(full.key.has_value());
    CHECK(full.key->xhat == res.key->xhat);
    CHECK(full.key->uhat == res.key->uhat);
}

TEST_CASE("pair cap: zero trials exhausts immediately") {
    FieldTower F(3, 2);
    CounterRng rng(3);
    WildKeyPair key = keygen(F, 81, 3, rng);
    AttackOptions opts;
    opts.max_pairs = 0;
    AttackResult res = run_attack(F, key.pub, 3, 5, opts);
    CHECK(!res.key.has_value());
    CHECK(res.pairs_tried == 0);
}

TEST_CASE("preconditions: infeasible parameters are refused up front") {
    FieldTower F29(29, 1);
    CounterRng rng(5);
    LinearCode C = random_code(F29, Level::mid, 70, 10, rng);
    CHECK_THROWS_AS(run_attack(F29, C, 2, 1), std::invalid_argument); // distinguisher inequality fails for r = 2
    FieldTower F9(3, 2);
    LinearCode S = random_code(F9, Level::mid, 20, 5, rng);
    CHECK_THROWS_AS(run_attack(F9, S, 3, 1), std::invalid_argument); // n <= 2q + 4
}

TEST_CASE("transcript: stages carry the expected pipeline order") {
    FieldTower F(3, 2);
    CounterRng rng(6);
    WildKeyPair key = keygen(F, 81, 3, rng);
    AttackResult res = run_attack(F, key.pub, 3, 11);
    REQUIRE(res.key.has_value());
    std::vector<std::string> names;
    for (const auto& s : res.transcript.stages) names.push_back(s.name);
    auto pos = [&](const std::string& n) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return static_cast<long long>(i);
        return static_cast<long long>(-1);
    };
    CHECK(pos("anchors") == 0);
    CHECK(pos("filtration") > pos("anchors"));
    CHECK(pos("pairing") > pos("filtration"));
    CHECK(pos("verify") > pos("pairing"));
}
