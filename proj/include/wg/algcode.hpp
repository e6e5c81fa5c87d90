#ifndef WG_ALGCODE_HPP
#define WG_ALGCODE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "code.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace wg {

// (x, y) with x distinct over GF(q^2) and y nonzero over GF(q^2), n <= q^2.
struct SupportMultiplier {
    std::vector<elem> x, y;

    void validate(const FieldTower& F) const {
        if (x.size() != y.size()) throw std::invalid_argument("SupportMultiplier: size mismatch");
        if (x.size() > static_cast<std::size_t>(F.q2)) throw std::invalid_argument("SupportMultiplier: n > q^2");
        std::vector<bool> seen(F.q2, false);
        for (elem xi : x) {
            if (seen[xi]) throw std::invalid_argument("SupportMultiplier: repeated support entry");
            seen[xi] = true;
        }
        for (elem yi : y)
            if (yi == 0) throw std::invalid_argument("SupportMultiplier: zero multiplier entry");
    }
};

// GRS_k(x, y) = {y * p(x) : deg p < k}, dimension exactly k.
inline LinearCode grs(const FieldTower& F, std::size_t k, const std::vector<elem>& x, const std::vector<elem>& y) {
    SupportMultiplier{x, y}.validate(F);
    const std::size_t n = x.size();
    if (k < 1 || k >= n) throw std::invalid_argument("grs: need 1 <= k < n");
    Mat R(k, n);
    for (std::size_t c = 0; c < n; ++c) {
        elem v = y[c];
        for (std::size_t r = 0; r < k; ++r) {
            R.at(r, c) = v;
            v = F.mul(v, x[c]);
        }
    }
    return LinearCode::from_rows(F, Level::ext, n, std::move(R));
}

// Multiplier of the dual: dual(GRS_k(x,y)) = GRS_{n-k}(x, y^{-1} * pi_x'(x)^{-1}).
inline std::vector<elem> grs_dual_multiplier(const FieldTower& F, const std::vector<elem>& x,
                                             const std::vector<elem>& y) {
    std::vector<elem> d = locator_derivative_at(F, x);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = F.inv(F.mul(y[i], d[i]));
    return d;
}

// Alternant code A_ell(x, y) = dual(GRS_ell(x,y)) cap GF(q)^n, built from the
// GRS parity rows split into 2*ell GF(q) constraints. ell = 0 gives the full
// space (no constraints).
inline LinearCode alternant(const FieldTower& F, std::size_t ell, const std::vector<elem>& x,
                            const std::vector<elem>& y) {
    SupportMultiplier{x, y}.validate(F);
    const std::size_t n = x.size();
    if (ell == 0) return LinearCode::full(F, Level::mid, n);
    Mat E(2 * ell, n);
    for (std::size_t c = 0; c < n; ++c) {
        elem v = y[c];
        for (std::size_t r = 0; r < ell; ++r) {
            E.at(2 * r, c) = F.lo(v);
            E.at(2 * r + 1, c) = F.hi(v);
            v = F.mul(v, x[c]);
        }
    }
    Mat N = nullspace(F, std::move(E));
    return LinearCode::from_rows(F, Level::mid, n, std::move(N));
}

// Goppa code G(x, Gamma) = A_{deg Gamma}(x, Gamma(x)^{-1}).
inline LinearCode goppa(const FieldTower& F, const std::vector<elem>& x, const Poly& Gamma) {
    if (Gamma.deg() < 1) throw std::invalid_argument("goppa: Gamma must have positive degree");
    std::vector<elem> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        elem g = poly_eval(F, Gamma, x[i]);
        if (g == 0) throw std::invalid_argument("goppa: Gamma vanishes on the support");
        y[i] = F.inv(g);
    }
    return alternant(F, static_cast<std::size_t>(Gamma.deg()), x, y);
}

struct WildKeyPair {
    int q, n, r;
    std::vector<elem> x; // secret support
    Poly gamma;          // secret irreducible of degree r over GF(q^2)
    LinearCode pub;      // RREF of G(x, gamma^{q-1})
    Mat pub_scrambled;   // row-scrambled generator as published in key files
};

// Wild Goppa key: public code G(x, gamma^{q-1}) = A_{r(q-1)}(x, gamma(x)^{-(q-1)}).
inline WildKeyPair keygen(const FieldTower& F, int n, int r, CounterRng& rng) {
    if (r < 2) throw std::invalid_argument("keygen: r must be >= 2");
    if (n > F.q2) throw std::invalid_argument("keygen: n > q^2");
    const long long ell = static_cast<long long>(r) * (F.q - 1);
    if (n <= 2 * static_cast<long long>(r) * (F.q + 1) - static_cast<long long>(r) * (r + 2))
        throw std::invalid_argument("keygen: parameters give a dimension-zero public code");
    std::vector<elem> all(F.q2);
    for (int i = 0; i < F.q2; ++i) all[i] = static_cast<elem>(i);
    rng.shuffle(all);
    std::vector<elem> x(all.begin(), all.begin() + n);
    Poly gamma = random_monic_irreducible(F, r, rng);
    std::vector<elem> y(n);
    for (int i = 0; i < n; ++i) {
        elem g = poly_eval(F, gamma, x[i]);
        if (g == 0) throw std::logic_error("keygen: irreducible gamma vanished on the support");
        y[i] = F.pow(g, -(static_cast<long long>(F.q) - 1));
    }
    LinearCode pub = alternant(F, static_cast<std::size_t>(ell), x, y);
    // Row scrambling: random invertible k x k left factor; no column
    // permutation (support randomness already plays that role).
    const std::size_t k = pub.dim();
    Mat S;
    for (;;) {
        S = Mat(k, k);
        for (auto& v : S.a) v = static_cast<elem>(rng.below(F.q));
        Mat T = S;
        if (rref(F, T).size() == k) break;
    }
    Mat SG(k, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (S.at(i, j) != 0) {
                const elem* m = F.mul_row(S.at(i, j));
                const elem* g = pub.generator().row(j);
                elem* d = SG.row(i);
                for (int c = 0; c < n; ++c) d[c] = F.add(d[c], m[g[c]]);
            }
    return WildKeyPair{F.q, n, r, std::move(x), std::move(gamma), std::move(pub), std::move(SG)};
}

// psi(z) = a z + b with psi(x_{i0}) = 0, psi(x_{i1}) = 1; the alternant/Goppa
// code is invariant under applying psi to the support.
struct AffineMap {
    elem a, b;
};

inline std::pair<std::vector<elem>, AffineMap> normalize_support(const FieldTower& F, const std::vector<elem>& x,
                                                                 std::size_t i0, std::size_t i1) {
    if (i0 == i1 || i0 >= x.size() || i1 >= x.size()) throw std::invalid_argument("normalize_support: bad anchors");
    elem a = F.inv(F.sub(x[i1], x[i0]));
    elem b = F.neg(F.mul(a, x[i0]));
    std::vector<elem> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = F.add(F.mul(a, x[i]), b);
    return {std::move(out), AffineMap{a, b}};
}

inline elem affine_apply(const FieldTower& F, AffineMap psi, elem v) { return F.add(F.mul(psi.a, v), psi.b); }
inline elem affine_unapply(const FieldTower& F, AffineMap psi, elem v) {
    return F.mul(F.inv(psi.a), F.sub(v, psi.b));
}

// message * G + random weight-t error over GF(q).
inline std::vector<elem> encrypt(const FieldTower& F, const Mat& G, const std::vector<elem>& message, std::size_t t,
                                 CounterRng& rng) {
    if (message.size() != G.rows) throw std::invalid_argument("encrypt: message length != k");
    std::vector<elem> c(G.cols, 0);
    for (std::size_t i = 0; i < G.rows; ++i)
        if (message[i] != 0) {
            const elem* m = F.mul_row(message[i]);
            const elem* g = G.row(i);
            for (std::size_t j = 0; j < G.cols; ++j) c[j] = F.add(c[j], m[g[j]]);
        }
    auto pos = rng.subset(G.cols, t);
    for (auto pposition : pos) c[pposition] = F.add(c[pposition], static_cast<elem>(1 + rng.below(F.q - 1)));
    return c;
}

struct DecodeResult {
    std::vector<elem> codeword, error;
};

// Decoder for A_ell(x, y) with known (x, y): syndrome key equation solved by
// the extended Euclidean algorithm, correcting up to floor(ell/2) errors.
// Error positions with x_i = 0 do not show up as roots of the locator, so the
// zero-support position (if any) is always carried as a candidate and the
// error values are recovered by solving the full syndrome system; the result
// is verified by re-checking every syndrome. Failures are reported, never
// silent.
inline std::optional<DecodeResult> alternant_decode(const FieldTower& F, const std::vector<elem>& x,
                                                    const std::vector<elem>& y, std::size_t ell,
                                                    const std::vector<elem>& received) {
    const std::size_t n = x.size();
    if (received.size() != n) throw std::invalid_argument("alternant_decode: length mismatch");
    const std::size_t t = ell / 2;
    // syndromes S_j = sum_i r_i y_i x_i^j, j < ell
    std::vector<elem> S(ell, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (received[i] == 0) continue;
        elem v = F.mul(received[i], y[i]);
        for (std::size_t j = 0; j < ell; ++j) {
            S[j] = F.add(S[j], v);
            v = F.mul(v, x[i]);
        }
    }
    bool clean = true;
    for (elem s : S)
        if (s != 0) clean = false;
    if (clean) return DecodeResult{received, std::vector<elem>(n, 0)};
    if (t == 0) return std::nullopt;

    // Key equation sigma(z) S(z) = omega(z) mod z^{2t} with
    // sigma(z) = prod over errors with x_i != 0 of (1 - x_i z).
    Poly r0;
    r0.c.assign(2 * t + 1, 0);
    r0.c[2 * t] = 1;
    Poly r1(std::vector<elem>(S.begin(), S.begin() + 2 * t));
    Poly v0, v1({1});
    while (!r1.is_zero() && r1.deg() >= static_cast<int>(t)) {
        auto [quo, rem] = poly_divmod(F, r0, r1);
        Poly v2 = poly_sub(F, v0, poly_mul(F, quo, v1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r1.is_zero()) return std::nullopt;
    const Poly& sigma = v1;
    if (sigma.is_zero()) return std::nullopt;

    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0)
            cand.push_back(i);
        else if (poly_eval(F, sigma, F.inv(x[i])) == 0)
            cand.push_back(i);
    }
    if (cand.empty() || cand.size() > ell) return std::nullopt;

    // Solve the ell x |cand| syndrome system for the error values.
    Mat A(ell, cand.size() + 1);
    for (std::size_t c = 0; c < cand.size(); ++c) {
        elem v = y[cand[c]];
        for (std::size_t j = 0; j < ell; ++j) {
            A.at(j, c) = v;
            v = F.mul(v, x[cand[c]]);
        }
    }
    for (std::size_t j = 0; j < ell; ++j) A.at(j, cand.size()) = S[j];
    auto piv = rref(F, A);
    // need a unique consistent solution: every candidate column a pivot, no
    // pivot in the last column
    if (piv.size() != cand.size()) return std::nullopt;
    for (auto pcol : piv)
        if (pcol == cand.size()) return std::nullopt;
    std::vector<elem> e(n, 0);
    std::size_t weight = 0;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        elem val = A.at(r, cand.size());
        if (!F.in_mid(val)) return std::nullopt; // error must live over GF(q)
        if (val != 0) ++weight;
        e[cand[piv[r]]] = val;
    }
    if (weight > t) return std::nullopt;
    std::vector<elem> cw(n);
    for (std::size_t i = 0; i < n; ++i) cw[i] = F.sub(received[i], e[i]);
    // verification: all ell syndromes of the corrected word vanish
    for (std::size_t j = 0; j < ell; ++j) {
        elem s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (cw[i] != 0) s = F.add(s, F.mul(F.mul(cw[i], y[i]), F.pow(x[i], static_cast<long long>(j))));
        if (s != 0) return std::nullopt;
    }
    return DecodeResult{std::move(cw), std::move(e)};
}

} // namespace wg

#endif
