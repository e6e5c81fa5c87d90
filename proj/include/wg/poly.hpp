#ifndef WG_POLY_HPP
#define WG_POLY_HPP

#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "rng.hpp"

namespace wg {

// Coefficients low-to-high as canonical encodings, trimmed; empty = zero
// polynomial. The same routines serve GF(q)- and GF(q^2)-coefficient
// polynomials since both levels are closed under the tower operations;
// callers track the level.
struct Poly {
    std::vector<elem> c;

    Poly() = default;
    explicit Poly(std::vector<elem> coeffs) : c(std::move(coeffs)) { trim(); }

    int deg() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    bool is_zero() const { return c.empty(); }
    elem lead() const { return c.back(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

inline Poly poly_x() { return Poly({0, 1}); }

inline Poly poly_add(const FieldTower& F, const Poly& f, const Poly& g) {
    Poly h;
    h.c.resize(std::max(f.c.size(), g.c.size()), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) h.c[i] = f.c[i];
    for (std::size_t i = 0; i < g.c.size(); ++i) h.c[i] = F.add(h.c[i], g.c[i]);
    h.trim();
    return h;
}

inline Poly poly_sub(const FieldTower& F, const Poly& f, const Poly& g) {
    Poly h;
    h.c.resize(std::max(f.c.size(), g.c.size()), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) h.c[i] = f.c[i];
    for (std::size_t i = 0; i < g.c.size(); ++i) h.c[i] = F.sub(h.c[i], g.c[i]);
    h.trim();
    return h;
}

inline Poly poly_scale(const FieldTower& F, elem s, const Poly& f) {
    if (s == 0) return Poly();
    Poly h = f;
    for (auto& v : h.c) v = F.mul(s, v);
    return h;
}

inline Poly poly_mul(const FieldTower& F, const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly();
    Poly h;
    h.c.assign(f.c.size() + g.c.size() - 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        const elem* m = F.mul_row(f.c[i]);
        for (std::size_t j = 0; j < g.c.size(); ++j) h.c[i + j] = F.add(h.c[i + j], m[g.c[j]]);
    }
    h.trim();
    return h;
}

inline std::pair<Poly, Poly> poly_divmod(const FieldTower& F, Poly f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    Poly quo;
    if (f.deg() >= g.deg()) quo.c.assign(f.deg() - g.deg() + 1, 0);
    const elem linv = F.inv(g.lead());
    while (!f.is_zero() && f.deg() >= g.deg()) {
        elem c = F.mul(f.lead(), linv);
        std::size_t off = f.c.size() - g.c.size();
        quo.c[off] = c;
        const elem* m = F.mul_row(c);
        for (std::size_t i = 0; i < g.c.size(); ++i) f.c[off + i] = F.sub(f.c[off + i], m[g.c[i]]);
        f.trim();
    }
    quo.trim();
    return {quo, f};
}

inline Poly poly_mod(const FieldTower& F, Poly f, const Poly& g) { return poly_divmod(F, std::move(f), g).second; }

inline Poly poly_monic(const FieldTower& F, const Poly& f) {
    if (f.is_zero() || f.lead() == 1) return f;
    return poly_scale(F, F.inv(f.lead()), f);
}

inline Poly poly_gcd(const FieldTower& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(F, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

inline elem poly_eval(const FieldTower& F, const Poly& f, elem x) {
    elem r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = F.add(F.mul(r, x), f.c[i]);
    return r;
}

inline Poly poly_derivative(const FieldTower& F, const Poly& f) {
    Poly h;
    if (f.c.size() < 2) return h;
    h.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) {
        elem k = static_cast<elem>(i % F.p); // i as a prime-subfield scalar
        h.c[i - 1] = F.mul(k, f.c[i]);
    }
    h.trim();
    return h;
}

inline Poly poly_pow(const FieldTower& F, Poly base, long long n) {
    Poly r({1});
    while (n) {
        if (n & 1) r = poly_mul(F, r, base);
        base = poly_mul(F, base, base);
        n >>= 1;
    }
    return r;
}

inline Poly poly_powmod(const FieldTower& F, Poly base, long long n, const Poly& m) {
    Poly r({1});
    base = poly_mod(F, std::move(base), m);
    while (n) {
        if (n & 1) r = poly_mod(F, poly_mul(F, r, base), m);
        base = poly_mod(F, poly_mul(F, base, base), m);
        n >>= 1;
    }
    return r;
}

// Irreducibility of monic f over the field with `field_size` elements
// (q or q^2): z^(S^d) = z mod f, and gcd(z^(S^(d/s)) - z, f) = 1 for every
// prime s dividing d = deg f.
inline bool poly_irreducible(const FieldTower& F, const Poly& f, long long field_size) {
    const int d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    auto power = [](long long b, int k) {
        long long r = 1;
        while (k--) r *= b;
        return r;
    };
    Poly x = poly_x();
    Poly xs = poly_powmod(F, x, power(field_size, d), f);
    if (!poly_sub(F, xs, x).is_zero()) return false;
    for (int s = 2; s <= d; ++s) {
        if (d % s != 0) continue;
        bool sprime = true;
        for (int t = 2; t * t <= s; ++t)
            if (s % t == 0) sprime = false;
        if (!sprime) continue;
        Poly g = poly_sub(F, poly_powmod(F, x, power(field_size, d / s), f), x);
        if (poly_gcd(F, f, g).deg() != 0) return false;
    }
    return true;
}

inline Poly random_monic_irreducible(const FieldTower& F, int d, CounterRng& rng) {
    for (;;) {
        Poly f;
        f.c.resize(d + 1);
        for (int i = 0; i < d; ++i) f.c[i] = static_cast<elem>(rng.below(F.q2));
        f.c[d] = 1;
        if (poly_irreducible(F, f, F.q2)) return f;
    }
}

// P_t(z) = z^2 - Tr(t) z + N(t) with Tr(t) = N(t) - N(t-1) + 1; equals
// (z - t)^2 exactly when t is rational over GF(q).
inline Poly minimal_poly_from_norms(const FieldTower& F, elem na, elem na1) {
    elem tr = F.add(F.sub(na, na1), 1);
    return Poly({na, F.neg(tr), 1});
}

inline Poly locator_poly(const FieldTower& F, const std::vector<elem>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) throw std::invalid_argument("locator_poly: repeated support entries");
    Poly f({1});
    for (elem xi : x) f = poly_mul(F, f, Poly({F.neg(xi), 1}));
    return f;
}

// (pi_x'(x_0), ..., pi_x'(x_{n-1})) = (prod_{j != i} (x_i - x_j))_i, all nonzero.
inline std::vector<elem> locator_derivative_at(const FieldTower& F, const std::vector<elem>& x) {
    std::vector<elem> out(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i == j) continue;
            if (x[i] == x[j]) throw std::invalid_argument("locator_derivative_at: repeated support entries");
            out[i] = F.mul(out[i], F.sub(x[i], x[j]));
        }
    return out;
}

} // namespace wg

#endif
