#ifndef WG_FIELD_HPP
#define WG_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wg {

// Canonical integer encoding of a field element; see FieldTower.
using elem = std::uint16_t;

enum class Level { base, mid, ext };

struct Elem {
    elem v;
    Level level;
};

// Arithmetic context for the tower GF(p) c GF(q) c GF(q^2), q = p^e.
//
// Encodings: an element of GF(q^2) is c0 + c1*Z with c0, c1 in GF(q) and is
// encoded as c0 + c1*q; an element of GF(q) is d0 + d1*w + ... and is encoded
// as sum d_j p^j. GF(q) sits inside GF(q^2) as the encodings < q, GF(p)
// inside GF(q) as the encodings < p.
//
// Moduli are the lexicographically smallest monic irreducibles per step,
// "smallest" meaning smallest canonical integer encoding of the non-leading
// coefficient string. Immutable after construction; all operations pure.
class FieldTower {
public:
    int p, e, q, q2;
    std::vector<elem> modulus_base; // e+1 coeffs over GF(p), low-to-high, monic
    std::vector<elem> modulus_ext;  // 3 coeffs over GF(q), low-to-high, monic

    FieldTower(int p_, int e_) : p(p_), e(e_) {
        if (p < 2 || !is_prime(p)) throw std::invalid_argument("FieldTower: p must be prime");
        if (e < 1) throw std::invalid_argument("FieldTower: e must be >= 1");
        long long qq = 1;
        for (int i = 0; i < e; ++i) qq *= p;
        if (qq * qq > 4096) throw std::invalid_argument("FieldTower: q^2 too large for this workbench");
        q = static_cast<int>(qq);
        q2 = q * q;
        build();
    }

    static FieldTower from_q(int q_) {
        if (q_ < 2) throw std::invalid_argument("FieldTower::from_q: q must be >= 2");
        int pp = smallest_prime_factor(q_), ee = 0, v = q_;
        while (v % pp == 0) { v /= pp; ++ee; }
        if (v != 1) throw std::invalid_argument("FieldTower::from_q: q is not a prime power");
        return FieldTower(pp, ee);
    }

    // Raw operations on canonical encodings; total on [0, q2).
    elem add(elem a, elem b) const { return add_t_[static_cast<std::size_t>(a) * q2 + b]; }
    elem sub(elem a, elem b) const { return add(a, neg(b)); }
    elem neg(elem a) const { return neg_t_[a]; }
    elem mul(elem a, elem b) const { return mul_t_[static_cast<std::size_t>(a) * q2 + b]; }
    elem inv(elem a) const {
        if (a == 0) throw std::domain_error("FieldTower::inv: zero");
        return inv_t_[a];
    }
    elem div(elem a, elem b) const { return mul(a, inv(b)); }
    elem pow(elem a, long long n) const {
        if (a == 0) return n == 0 ? elem{1} : elem{0};
        long long m = n % (q2 - 1);
        if (m < 0) m += q2 - 1;
        elem r = 1, base = a;
        while (m) {
            if (m & 1) r = mul(r, base);
            base = mul(base, base);
            m >>= 1;
        }
        return r;
    }
    const elem* mul_row(elem a) const { return &mul_t_[static_cast<std::size_t>(a) * q2]; }
    const elem* add_row(elem a) const { return &add_t_[static_cast<std::size_t>(a) * q2]; }

    elem frob(elem a) const { return frob_t_[a]; }                 // a^q
    elem norm_raw(elem a) const { return mul(frob(a), a); }        // a^(q+1), lands in GF(q)
    elem trace_raw(elem a) const { return add(frob(a), a); }       // a^q + a, lands in GF(q)

    bool in_base(elem a) const { return a < static_cast<elem>(p); }
    bool in_mid(elem a) const { return a < static_cast<elem>(q); }
    Level level_of(elem a) const { return in_base(a) ? Level::base : (in_mid(a) ? Level::mid : Level::ext); }

    Elem make(elem v, Level lvl) const {
        if (v >= q2) throw std::invalid_argument("FieldTower::make: encoding out of range");
        if (lvl == Level::base && !in_base(v)) throw std::invalid_argument("FieldTower::make: not a GF(p) encoding");
        if (lvl == Level::mid && !in_mid(v)) throw std::invalid_argument("FieldTower::make: not a GF(q) encoding");
        return Elem{v, lvl};
    }

    // Checked tower maps GF(q^2) -> GF(q).
    Elem norm(Elem a) const {
        require_ext(a, "norm");
        return Elem{norm_raw(a.v), Level::mid};
    }
    Elem trace(Elem a) const {
        require_ext(a, "trace");
        return Elem{trace_raw(a.v), Level::mid};
    }

    // GF(q^2) coordinates over GF(q) in the basis {1, Z}.
    elem lo(elem a) const { return static_cast<elem>(a % q); }
    elem hi(elem a) const { return static_cast<elem>(a / q); }
    elem from_coords(elem c0, elem c1) const { return static_cast<elem>(c0 + c1 * q); }
    // The basis element Z itself.
    elem gen_ext() const { return static_cast<elem>(q); }

private:
    std::vector<elem> add_t_, mul_t_, neg_t_, inv_t_, frob_t_;

    void require_ext(Elem a, const char* op) const {
        if (a.level != Level::ext) throw std::invalid_argument(std::string("FieldTower::") + op + ": level mismatch, want ext");
        if (a.v >= q2) throw std::invalid_argument(std::string("FieldTower::") + op + ": encoding out of range");
    }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
    static int smallest_prime_factor(int n) {
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }

    // --- construction-time polynomial arithmetic over GF(p) ---
    using ppoly = std::vector<int>; // coeffs mod p, low-to-high, trimmed

    static void ptrim(ppoly& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    ppoly pmul(const ppoly& f, const ppoly& g) const {
        if (f.empty() || g.empty()) return {};
        ppoly h(f.size() + g.size() - 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
        ptrim(h);
        return h;
    }
    ppoly pmod(ppoly f, const ppoly& m) const {
        const int linv = mod_inv(m.back());
        while (f.size() >= m.size()) {
            int c = f.back() * linv % p;
            std::size_t off = f.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) f[off + i] = ((f[off + i] - c * m[i]) % p + p) % p;
            ptrim(f);
            if (f.empty()) break;
        }
        return f;
    }
    ppoly pgcd(ppoly a, ppoly b) const {
        while (!b.empty()) {
            ppoly r = pmod(a, b);
            a = b;
            b = r;
        }
        return a;
    }
    ppoly ppowmod(ppoly base, long long n, const ppoly& m) const {
        ppoly r{1};
        base = pmod(std::move(base), m);
        while (n) {
            if (n & 1) r = pmod(pmul(r, base), m);
            base = pmod(pmul(base, base), m);
            n >>= 1;
        }
        return r;
    }
    int mod_inv(int a) const { // a != 0 mod p
        int r = 1, b = a % p, n = p - 2;
        while (n) {
            if (n & 1) r = r * b % p;
            b = b * b % p;
            n >>= 1;
        }
        return r;
    }

    // f monic of degree d over GF(p) is irreducible iff x^(p^d) = x mod f and
    // gcd(x^(p^(d/s)) - x, f) = 1 for every prime s | d.
    bool irreducible_over_p(const ppoly& f) const {
        const int d = static_cast<int>(f.size()) - 1;
        long long pd = 1;
        for (int i = 0; i < d; ++i) pd *= p;
        ppoly x{0, 1};
        ppoly xp = ppowmod(x, pd, f);
        ppoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        ptrim(diff);
        if (!diff.empty()) return false;
        for (int s = 2; s <= d; ++s) {
            if (d % s != 0) continue;
            bool sprime = true;
            for (int t = 2; t * t <= s; ++t)
                if (s % t == 0) sprime = false;
            if (!sprime) continue;
            long long pe2 = 1;
            for (int i = 0; i < d / s; ++i) pe2 *= p;
            ppoly g = ppowmod(x, pe2, f);
            g.resize(std::max<std::size_t>(g.size(), 2), 0);
            g[1] = ((g[1] - 1) % p + p) % p;
            ptrim(g);
            if (pgcd(f, g).size() != 1) return false;
        }
        return true;
    }

    void build() {
        // GF(q) digit helpers.
        auto digits = [&](int a) {
            std::vector<int> d(e);
            for (int i = 0; i < e; ++i) {
                d[i] = a % p;
                a /= p;
            }
            return d;
        };
        auto undigits = [&](const std::vector<int>& d) {
            int a = 0;
            for (int i = e - 1; i >= 0; --i) a = a * p + d[i];
            return a;
        };

        // Base modulus: smallest monic irreducible of degree e over GF(p).
        if (e == 1) {
            modulus_base = {0, 1};
        } else {
            for (int v = 0; v < q; ++v) {
                auto dv = digits(v);
                ppoly f(dv.begin(), dv.end());
                f.resize(e + 1, 0);
                f[e] = 1;
                if (irreducible_over_p(f)) {
                    modulus_base.assign(f.begin(), f.end());
                    break;
                }
            }
            if (modulus_base.empty()) throw std::logic_error("FieldTower: no base modulus found");
        }

        // GF(q) tables.
        std::vector<elem> qadd(static_cast<std::size_t>(q) * q), qmul(static_cast<std::size_t>(q) * q);
        std::vector<elem> qneg(q), qinv(q, 0);
        ppoly mbase(modulus_base.begin(), modulus_base.end());
        for (int a = 0; a < q; ++a) {
            auto da = digits(a);
            std::vector<int> nd(e);
            for (int i = 0; i < e; ++i) nd[i] = (p - da[i]) % p;
            qneg[a] = static_cast<elem>(undigits(nd));
            for (int b = 0; b <= a; ++b) {
                auto db = digits(b);
                std::vector<int> sd(e);
                for (int i = 0; i < e; ++i) sd[i] = (da[i] + db[i]) % p;
                qadd[static_cast<std::size_t>(a) * q + b] = qadd[static_cast<std::size_t>(b) * q + a] =
                    static_cast<elem>(undigits(sd));
                ppoly fa(da.begin(), da.end()), fb(db.begin(), db.end());
                ptrim(fa);
                ptrim(fb);
                ppoly prod = pmod(pmul(fa, fb), mbase);
                std::vector<int> pd(prod.begin(), prod.end());
                pd.resize(e, 0);
                qmul[static_cast<std::size_t>(a) * q + b] = qmul[static_cast<std::size_t>(b) * q + a] =
                    static_cast<elem>(undigits(pd));
            }
        }
        // GF(q) inverses by extended Euclid on (a, modulus_base) over GF(p).
        for (int a = 1; a < q; ++a) {
            auto da = digits(a);
            ppoly r0 = mbase, r1(da.begin(), da.end());
            ptrim(r1);
            ppoly t0{}, t1{1};
            while (r1.size() > 1) {
                // divide r0 by r1
                ppoly quo;
                ppoly rem = r0;
                const int linv = mod_inv(r1.back());
                if (rem.size() >= r1.size()) {
                    quo.assign(rem.size() - r1.size() + 1, 0);
                    while (rem.size() >= r1.size() && !rem.empty()) {
                        int c = rem.back() * linv % p;
                        std::size_t off = rem.size() - r1.size();
                        quo[off] = c;
                        for (std::size_t i = 0; i < r1.size(); ++i)
                            rem[off + i] = ((rem[off + i] - c * r1[i]) % p + p) % p;
                        ptrim(rem);
                        if (rem.empty()) break;
                    }
                }
                ppoly t2 = t0; // t2 = t0 - quo*t1
                ppoly qt = pmul(quo, t1);
                t2.resize(std::max(t2.size(), qt.size()), 0);
                for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
                ptrim(t2);
                r0 = r1;
                r1 = rem;
                t0 = t1;
                t1 = t2;
                if (r1.empty()) throw std::logic_error("FieldTower: gcd(a, modulus) != 1");
            }
            // r1 is a nonzero constant; inverse = t1 / r1
            int c = mod_inv(r1[0]);
            ppoly res;
            for (int x : t1) res.push_back(x * c % p);
            std::vector<int> rd(res.begin(), res.end());
            rd.resize(e, 0);
            qinv[a] = static_cast<elem>(undigits(rd));
        }

        // Ext modulus: smallest monic irreducible z^2 + c1 z + c0 over GF(q)
        // (degree 2: irreducible iff no root in GF(q)).
        modulus_ext.clear();
        for (int v = 0; v < q2 && modulus_ext.empty(); ++v) {
            elem c0 = static_cast<elem>(v % q), c1 = static_cast<elem>(v / q);
            bool has_root = false;
            for (int t = 0; t < q && !has_root; ++t) {
                elem tt = static_cast<elem>(t);
                elem val = qadd[static_cast<std::size_t>(qmul[static_cast<std::size_t>(tt) * q + tt]) * q +
                                qadd[static_cast<std::size_t>(qmul[static_cast<std::size_t>(c1) * q + tt]) * q + c0]];
                if (val == 0) has_root = true;
            }
            if (!has_root) modulus_ext = {c0, c1, 1};
        }
        if (modulus_ext.empty()) throw std::logic_error("FieldTower: no ext modulus found");

        // GF(q^2) tables. (a0 + a1 Z)(b0 + b1 Z) with Z^2 = -(m1 Z + m0).
        const elem m0 = modulus_ext[0], m1 = modulus_ext[1];
        add_t_.assign(static_cast<std::size_t>(q2) * q2, 0);
        mul_t_.assign(static_cast<std::size_t>(q2) * q2, 0);
        neg_t_.assign(q2, 0);
        inv_t_.assign(q2, 0);
        frob_t_.assign(q2, 0);
        auto QM = [&](elem a, elem b) { return qmul[static_cast<std::size_t>(a) * q + b]; };
        auto QA = [&](elem a, elem b) { return qadd[static_cast<std::size_t>(a) * q + b]; };
        auto QS = [&](elem a, elem b) { return qadd[static_cast<std::size_t>(a) * q + qneg[b]]; };
        for (int a = 0; a < q2; ++a) {
            elem a0 = static_cast<elem>(a % q), a1 = static_cast<elem>(a / q);
            neg_t_[a] = static_cast<elem>(qneg[a0] + qneg[a1] * q);
            for (int b = 0; b < q2; ++b) {
                elem b0 = static_cast<elem>(b % q), b1 = static_cast<elem>(b / q);
                add_t_[static_cast<std::size_t>(a) * q2 + b] = static_cast<elem>(QA(a0, b0) + QA(a1, b1) * q);
                elem t = QM(a1, b1);
                elem c0 = QS(QM(a0, b0), QM(t, m0));
                elem c1 = QS(QA(QM(a0, b1), QM(a1, b0)), QM(t, m1));
                mul_t_[static_cast<std::size_t>(a) * q2 + b] = static_cast<elem>(c0 + c1 * q);
            }
        }
        // Inverses by extended Euclid of (a1 Z + a0) against the ext modulus:
        // one division step since deg = 1. For a1 != 0:
        //   modulus = (a1 Z + a0) * u + r  with r constant,
        //   u = a1^{-1} Z + a1^{-1}(m1 - a0 a1^{-1}), r = m0 - a0 a1^{-1}(m1 - a0 a1^{-1}).
        for (int a = 1; a < q2; ++a) {
            elem a0 = static_cast<elem>(a % q), a1 = static_cast<elem>(a / q);
            if (a1 == 0) {
                inv_t_[a] = qinv[a0];
            } else {
                elem ai = qinv[a1];
                elem w = QS(m1, QM(a0, ai)); // m1 - a0/a1
                elem r = QS(m0, QM(QM(a0, ai), w));
                if (r == 0) throw std::logic_error("FieldTower: ext modulus not irreducible");
                // inverse = -u / r with u = ai Z + ai*w
                elem ri = qinv[r];
                elem u0 = QM(QM(ai, w), ri), u1 = QM(ai, ri);
                inv_t_[a] = static_cast<elem>(qneg[u0] + qneg[u1] * q);
            }
        }
        // Sanity: a * a^{-1} = 1.
        for (int a = 1; a < q2; ++a)
            if (mul(static_cast<elem>(a), inv_t_[a]) != 1) throw std::logic_error("FieldTower: inversion table broken");
        for (int a = 0; a < q2; ++a) frob_t_[a] = pow(static_cast<elem>(a), q);
    }
};

} // namespace wg

#endif
