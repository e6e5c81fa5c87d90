#ifndef WG_ATTACK_HPP
#define WG_ATTACK_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algcode.hpp"
#include "code.hpp"
#include "distinguisher.hpp"
#include "field.hpp"
#include "filtration.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace wg {

struct StageRecord {
    std::string name;
    std::string detail;
    double millis = 0.0;
};

struct AttackTranscript {
    std::vector<StageRecord> stages;
    void add(std::string name, std::string detail, double ms = 0.0) {
        stages.push_back(StageRecord{std::move(name), std::move(detail), ms});
    }
};

// Recovered alternant representation: public code = uhat * Alt_degree(xhat, 1).
struct RecoveredKey {
    std::vector<elem> xhat; // support over GF(q^2)
    std::vector<elem> uhat; // nonzero column scaler over GF(q)
    long long degree = 0;   // r(q+1)
};

struct AttackOptions {
    bool shortcut = false;    // random equation subset in the final linear problem
    long long max_pairs = -1; // cap on candidate pairs tried (-1: all)
};

namespace detail_attack {

class StageTimer {
public:
    StageTimer() : t0_(std::chrono::steady_clock::now()) {}
    double lap() {
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0_).count();
        t0_ = t1;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

} // namespace detail_attack

// Candidate norm vectors at an anchor: enumerate the projective space of the
// conductor of Coi(a, q+1) into Coi(a, 0), keep full-weight vectors,
// normalize the second-anchor coordinate to 1, discard the all-ones vector,
// invert componentwise. The true candidate is the normalized x^(q+1) (with
// the anchor treated as support point 0 and the other anchor as 1).
inline std::vector<std::vector<elem>> recover_norm_candidates(FiltrationState& st, std::size_t other_frame_idx,
                                                              AttackTranscript& tr) {
    const FieldTower& F = *st.F;
    const long long q = st.q;
    LinearCode D = conductor(st.terms.at(q + 1), st.terms.at(0),
                             LinearCode::full(F, Level::mid, st.terms.at(0).length()));
    const std::size_t d = D.dim();
    tr.add("norm-conductor", "anchor " + std::to_string(st.anchor) + ": dim " + std::to_string(d) +
                                 (d == 4 ? "" : " (expected 4)"));
    if (d == 0 || d > 6) return {};
    const std::size_t L = D.length();
    std::set<std::vector<elem>> out;
    std::vector<elem> w(L), lambda(d);
    // projective representatives: first nonzero coefficient = 1
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::vector<std::size_t> tail; // free coefficient indices after `lead`
        for (std::size_t j = lead + 1; j < d; ++j) tail.push_back(j);
        std::vector<std::size_t> digits(tail.size(), 0);
        bool done = false;
        while (!done) {
            std::fill(lambda.begin(), lambda.end(), 0);
            lambda[lead] = 1;
            for (std::size_t j = 0; j < tail.size(); ++j) lambda[tail[j]] = static_cast<elem>(digits[j]);
            std::fill(w.begin(), w.end(), 0);
            for (std::size_t j = lead; j < d; ++j)
                if (lambda[j] != 0) {
                    const elem* m = F.mul_row(lambda[j]);
                    const elem* g = D.generator().row(j);
                    for (std::size_t c = 0; c < L; ++c) w[c] = F.add(w[c], m[g[c]]);
                }
            bool full = true;
            for (std::size_t c = 0; c < L; ++c)
                if (w[c] == 0) {
                    full = false;
                    break;
                }
            if (full) {
                elem s = w[other_frame_idx];
                std::vector<elem> u(L);
                bool ones = true;
                for (std::size_t c = 0; c < L; ++c) {
                    u[c] = F.div(s, w[c]); // (w/s)^{-1}
                    if (u[c] != 1) ones = false;
                }
                if (!ones) out.insert(std::move(u));
            }
            // odometer over the free coefficients
            done = true;
            for (std::size_t j = 0; j < digits.size(); ++j) {
                if (++digits[j] < static_cast<std::size_t>(F.q)) {
                    done = false;
                    break;
                }
                digits[j] = 0;
            }
            if (digits.empty()) done = true;
        }
    }
    tr.add("norm-candidates", "anchor " + std::to_string(st.anchor) + ": " + std::to_string(out.size()) +
                                  " full-weight survivors");
    return std::vector<std::vector<elem>>(out.begin(), out.end());
}

namespace detail_attack {

inline std::vector<elem> canon_scale(const FieldTower& F, std::vector<elem> v) {
    elem lead = 0;
    for (elem x : v)
        if (x != 0) {
            lead = x;
            break;
        }
    if (lead != 0 && lead != 1) {
        const elem* m = F.mul_row(F.inv(lead));
        for (auto& x : v) x = m[x];
    }
    return v;
}

} // namespace detail_attack

// Match candidates across the two anchors: (u0, u1) is a pair exactly when
// {u0 * c : c in L1} and {c' * u1 : c' in L0} agree as sets up to scalars
// (restricted to the positions away from both anchors).
inline std::vector<std::pair<std::size_t, std::size_t>> pair_candidates(
    const FieldTower& F, const std::vector<std::vector<elem>>& L0, const std::vector<std::vector<elem>>& L1,
    std::size_t drop0, std::size_t drop1, AttackTranscript& tr) {
    auto restrict_at = [](const std::vector<elem>& v, std::size_t drop) {
        std::vector<elem> r;
        r.reserve(v.size() - 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != drop) r.push_back(v[i]);
        return r;
    };
    std::vector<std::vector<elem>> R0, R1;
    for (auto& v : L0) R0.push_back(restrict_at(v, drop0));
    for (auto& v : L1) R1.push_back(restrict_at(v, drop1));

    auto star_set = [&](const std::vector<elem>& a, const std::vector<std::vector<elem>>& others) {
        std::vector<std::vector<elem>> s;
        s.reserve(others.size());
        for (auto& b : others) {
            std::vector<elem> p(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) p[i] = F.mul(a[i], b[i]);
            s.push_back(detail_attack::canon_scale(F, std::move(p)));
        }
        std::sort(s.begin(), s.end());
        return s;
    };

    std::map<std::vector<std::vector<elem>>, std::vector<std::size_t>> by_set;
    for (std::size_t j = 0; j < R1.size(); ++j) by_set[star_set(R1[j], R0)].push_back(j);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t unmatched = 0;
    for (std::size_t i = 0; i < R0.size(); ++i) {
        auto it = by_set.find(star_set(R0[i], R1));
        if (it == by_set.end()) {
            ++unmatched;
            continue;
        }
        for (auto j : it->second) pairs.emplace_back(i, j);
    }
    tr.add("pairing", std::to_string(pairs.size()) + " pairs, " + std::to_string(unmatched) + " unmatched");
    return pairs;
}

// Position classes and the extended support built from one candidate pair.
struct ExtendedSupportLayout {
    std::size_t l1 = 0, l2 = 0, l3 = 0;
    std::vector<elem> x_prime_ext;          // length n + l3, pairwise distinct
    std::vector<std::ptrdiff_t> orig_of_ext; // original position, -1 for inserted columns
    std::vector<std::pair<std::size_t, int>> blocks; // (start in ext frame, 1 or 2)
    std::vector<Poly> minpolys;              // per original position
};

// Minimal polynomial per position from the two norm vectors, root
// classification, and the sorted/extended support. Returns nothing when the
// pair is inconsistent (signals a wrong pair).
inline std::optional<ExtendedSupportLayout> support_from_pair(const FieldTower& F, const std::vector<elem>& na,
                                                              const std::vector<elem>& nb, AttackTranscript& tr) {
    const std::size_t n = na.size();
    struct Info {
        elem root_lo, root_hi; // root_lo == root_hi for rational positions
        bool rational;
        std::pair<elem, elem> key; // minimal polynomial (constant, linear) coefficients
    };
    std::vector<Info> info(n);
    ExtendedSupportLayout lay;
    lay.minpolys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly P = minimal_poly_from_norms(F, na[i], nb[i]);
        lay.minpolys.push_back(P);
        std::vector<elem> roots;
        for (int v = 0; v < F.q2 && roots.size() < 2; ++v)
            if (poly_eval(F, P, static_cast<elem>(v)) == 0) roots.push_back(static_cast<elem>(v));
        if (roots.empty()) {
            tr.add("support", "position " + std::to_string(i) + ": rootless minimal polynomial, rejecting pair");
            return std::nullopt;
        }
        if (roots.size() == 1) {
            if (!F.in_mid(roots[0])) return std::nullopt;
            info[i] = Info{roots[0], roots[0], true, {P.c[0], P.c[1]}};
        } else {
            if (F.in_mid(roots[0]) || F.frob(roots[0]) != roots[1]) {
                tr.add("support", "position " + std::to_string(i) + ": split minimal polynomial, rejecting pair");
                return std::nullopt;
            }
            info[i] = Info{roots[0], roots[1], false, {P.c[0], P.c[1]}};
        }
    }
    // group positions sharing a minimal polynomial
    std::map<std::pair<elem, elem>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[info[i].key].push_back(i);
    std::vector<std::size_t> singles, lone;
    std::vector<std::pair<std::size_t, std::size_t>> conj_pairs;
    for (auto& [key, pos] : groups) {
        (void)key;
        const bool rational = info[pos[0]].rational;
        if (rational) {
            if (pos.size() > 1) return std::nullopt; // distinct support forbids repeats
            singles.push_back(pos[0]);
        } else if (pos.size() == 1) {
            lone.push_back(pos[0]);
        } else if (pos.size() == 2) {
            conj_pairs.emplace_back(pos[0], pos[1]);
        } else {
            return std::nullopt; // an irreducible covers at most two positions
        }
    }
    std::sort(singles.begin(), singles.end());
    std::sort(lone.begin(), lone.end());
    std::sort(conj_pairs.begin(), conj_pairs.end());
    lay.l1 = singles.size();
    lay.l2 = conj_pairs.size();
    lay.l3 = lone.size();
    for (auto i : singles) {
        lay.blocks.emplace_back(lay.x_prime_ext.size(), 1);
        lay.x_prime_ext.push_back(info[i].root_lo);
        lay.orig_of_ext.push_back(static_cast<std::ptrdiff_t>(i));
    }
    for (auto [i, j] : conj_pairs) {
        lay.blocks.emplace_back(lay.x_prime_ext.size(), 2);
        lay.x_prime_ext.push_back(info[i].root_lo); // lexicographically smaller root first
        lay.x_prime_ext.push_back(info[i].root_hi);
        lay.orig_of_ext.push_back(static_cast<std::ptrdiff_t>(i));
        lay.orig_of_ext.push_back(static_cast<std::ptrdiff_t>(j));
    }
    for (auto i : lone) {
        lay.blocks.emplace_back(lay.x_prime_ext.size(), 2);
        lay.x_prime_ext.push_back(info[i].root_lo);
        lay.x_prime_ext.push_back(info[i].root_hi);
        lay.orig_of_ext.push_back(static_cast<std::ptrdiff_t>(i));
        lay.orig_of_ext.push_back(-1);
    }
    // distinctness of the extended support
    std::vector<bool> seen(F.q2, false);
    for (elem v : lay.x_prime_ext) {
        if (seen[v]) return std::nullopt;
        seen[v] = true;
    }
    tr.add("support", "classes l1/l2/l3 = " + std::to_string(lay.l1) + "/" + std::to_string(lay.l2) + "/" +
                          std::to_string(lay.l3));
    return lay;
}

// Solve H (G_ext M)^T = 0 for the block-constrained M (diagonal singles,
// full 2x2 blocks elsewhere) and search the solution space for M = R_tau * D
// with invertible diagonal D.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<elem>>> final_linear_problem(
    const FieldTower& F, const Mat& G_ext, const ExtendedSupportLayout& lay, long long ell, const AttackOptions& opts,
    CounterRng& rng, AttackTranscript& tr) {
    const std::size_t N = lay.x_prime_ext.size();
    const std::size_t k = G_ext.rows;
    // unknown offsets per block; lone blocks (real column + inserted zero
    // column) only carry the first row of their 2x2 block, the second row
    // multiplies a zero generator column and would be unconstrained
    enum class Kind { single, pair, lone };
    std::vector<Kind> kind(lay.blocks.size());
    std::vector<std::size_t> offset(lay.blocks.size());
    std::size_t U = 0;
    for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
        auto [s, sz] = lay.blocks[b];
        kind[b] = sz == 1 ? Kind::single : (lay.orig_of_ext[s + 1] < 0 ? Kind::lone : Kind::pair);
        offset[b] = U;
        U += kind[b] == Kind::single ? 1 : (kind[b] == Kind::lone ? 2 : 4);
    }
    // parity rows of Alt(ell, x', 1) over GF(q): lo/hi parts of the ext rows (x'_c)^j
    const std::size_t hrows = 2 * static_cast<std::size_t>(ell);
    Mat H(hrows, N);
    {
        std::vector<elem> pw(N, 1);
        for (long long j = 0; j < ell; ++j) {
            for (std::size_t c = 0; c < N; ++c) {
                H.at(2 * j, c) = F.lo(pw[c]);
                H.at(2 * j + 1, c) = F.hi(pw[c]);
                pw[c] = F.mul(pw[c], lay.x_prime_ext[c]);
            }
        }
    }
    auto equation = [&](std::size_t hi, std::size_t gi, elem* out) {
        const elem* h = H.row(hi);
        const elem* g = G_ext.row(gi);
        std::fill(out, out + U, 0);
        for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
            auto [s, sz] = lay.blocks[b];
            (void)sz;
            if (kind[b] == Kind::single) {
                out[offset[b]] = F.mul(h[s], g[s]);
            } else if (kind[b] == Kind::lone) {
                out[offset[b] + 0] = F.mul(h[s], g[s]);     // m11
                out[offset[b] + 1] = F.mul(h[s + 1], g[s]); // m12
            } else {
                out[offset[b] + 0] = F.mul(h[s], g[s]);         // m11
                out[offset[b] + 1] = F.mul(h[s + 1], g[s]);     // m12
                out[offset[b] + 2] = F.mul(h[s], g[s + 1]);     // m21
                out[offset[b] + 3] = F.mul(h[s + 1], g[s + 1]); // m22
            }
        }
    };
    RrefBuilder acc(F, U);
    std::vector<elem> eq(U);
    if (opts.shortcut) {
        // random combinations of parity and generator rows: individual basis
        // pairs are too structured for a near-minimal sample to reach full rank
        const std::size_t want = U + 20;
        std::vector<elem> h(N), g(N);
        for (std::size_t s = 0; s < want; ++s) {
            std::fill(h.begin(), h.end(), 0);
            std::fill(g.begin(), g.end(), 0);
            for (std::size_t i = 0; i < hrows; ++i) {
                elem c = static_cast<elem>(rng.below(F.q));
                if (c != 0) {
                    const elem* mr = F.mul_row(c);
                    const elem* src = H.row(i);
                    for (std::size_t j = 0; j < N; ++j) h[j] = F.add(h[j], mr[src[j]]);
                }
            }
            for (std::size_t i = 0; i < k; ++i) {
                elem c = static_cast<elem>(rng.below(F.q));
                if (c != 0) {
                    const elem* mr = F.mul_row(c);
                    const elem* src = G_ext.row(i);
                    for (std::size_t j = 0; j < N; ++j) g[j] = F.add(g[j], mr[src[j]]);
                }
            }
            std::fill(eq.begin(), eq.end(), 0);
            for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
                auto [ss, sz] = lay.blocks[b];
                (void)sz;
                eq[offset[b] + 0] = F.mul(h[ss], g[ss]);
                if (kind[b] != Kind::single) eq[offset[b] + 1] = F.mul(h[ss + 1], g[ss]);
                if (kind[b] == Kind::pair) {
                    eq[offset[b] + 2] = F.mul(h[ss], g[ss + 1]);
                    eq[offset[b] + 3] = F.mul(h[ss + 1], g[ss + 1]);
                }
            }
            acc.insert(eq);
        }
    } else {
        for (std::size_t hi = 0; hi < hrows && acc.rank() < U; ++hi)
            for (std::size_t gi = 0; gi < k; ++gi) {
                equation(hi, gi, eq.data());
                acc.insert(eq);
            }
    }
    Mat R = acc.take();
    auto piv = acc.pivots();
    Mat S = nullspace_from_rref(F, R, piv);
    tr.add("final-problem", "solution space dim " + std::to_string(S.rows) +
                                (S.rows == 2 ? "" : " (expected 2)") + (opts.shortcut ? ", shortcut" : ""));
    if (S.rows == 0 || S.rows > 4) return std::nullopt;

    std::vector<elem> m(U), lambda(S.rows);
    for (std::size_t lead = 0; lead < S.rows; ++lead) {
        std::vector<std::size_t> digits(S.rows - lead - 1, 0);
        bool done = false;
        while (!done) {
            std::fill(m.begin(), m.end(), 0);
            {
                const elem* g = S.row(lead);
                for (std::size_t c = 0; c < U; ++c) m[c] = g[c];
            }
            for (std::size_t j = 0; j < digits.size(); ++j)
                if (digits[j] != 0) {
                    const elem* mr = F.mul_row(static_cast<elem>(digits[j]));
                    const elem* g = S.row(lead + 1 + j);
                    for (std::size_t c = 0; c < U; ++c) m[c] = F.add(m[c], mr[g[c]]);
                }
            // validate block structure
            bool ok = true;
            for (std::size_t b = 0; b < lay.blocks.size() && ok; ++b) {
                if (kind[b] == Kind::single) {
                    ok = m[offset[b]] != 0;
                } else if (kind[b] == Kind::lone) {
                    ok = (m[offset[b]] != 0) != (m[offset[b] + 1] != 0); // exactly one nonzero
                } else {
                    elem m11 = m[offset[b]], m12 = m[offset[b] + 1], m21 = m[offset[b] + 2], m22 = m[offset[b] + 3];
                    bool diag = m12 == 0 && m21 == 0 && m11 != 0 && m22 != 0;
                    bool anti = m11 == 0 && m22 == 0 && m12 != 0 && m21 != 0;
                    ok = diag || anti;
                }
            }
            if (ok) {
                std::vector<std::size_t> tau(N);
                std::vector<elem> dvec(N);
                for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
                    auto [s, sz] = lay.blocks[b];
                    (void)sz;
                    if (kind[b] == Kind::single) {
                        tau[s] = s;
                        dvec[s] = m[offset[b]];
                    } else if (kind[b] == Kind::lone) {
                        elem m11 = m[offset[b]], m12 = m[offset[b] + 1];
                        if (m12 == 0) {
                            tau[s] = s;
                            dvec[s] = m11;
                            tau[s + 1] = s + 1;
                            dvec[s + 1] = 1; // inserted column, never read back
                        } else {
                            tau[s] = s + 1;
                            dvec[s + 1] = m12;
                            tau[s + 1] = s;
                            dvec[s] = 1;
                        }
                    } else {
                        elem m11 = m[offset[b]], m12 = m[offset[b] + 1], m21 = m[offset[b] + 2],
                             m22 = m[offset[b] + 3];
                        if (m12 == 0) { // diagonal block
                            tau[s] = s;
                            tau[s + 1] = s + 1;
                            dvec[s] = m11;
                            dvec[s + 1] = m22;
                        } else { // antidiagonal: tau swaps, M = R_tau D
                            tau[s] = s + 1;
                            tau[s + 1] = s;
                            dvec[s] = m21;
                            dvec[s + 1] = m12;
                        }
                    }
                }
                return std::make_pair(std::move(tau), std::move(dvec));
            }
            done = true;
            for (std::size_t j = 0; j < digits.size(); ++j) {
                if (++digits[j] < static_cast<std::size_t>(F.q)) {
                    done = false;
                    break;
                }
                digits[j] = 0;
            }
            if (digits.empty()) done = true;
        }
    }
    return std::nullopt;
}

struct AttackResult {
    std::optional<RecoveredKey> key;
    AttackTranscript transcript;
    std::size_t pairs_tried = 0;
};

inline AttackResult run_attack(const FieldTower& F, const LinearCode& pub, long long r, std::uint64_t seed,
                               const AttackOptions& opts = {}) {
    const long long q = F.q, n = static_cast<long long>(pub.length());
    AttackResult res;
    AttackTranscript& tr = res.transcript;
    detail_attack::StageTimer timer;
    if (n <= 2 * q + 4)
        throw std::invalid_argument("run_attack: n <= 2q + 4, candidate pairing is not applicable");
    if (binom2(r * (r + 2) + 2) <= 2 * r * (q + 1) - 2)
        throw std::invalid_argument("run_attack: distinguisher feasibility inequality fails for (q, r)");
    CounterRng rng(seed);

    // anchors: first two positions where shortening loses a dimension
    std::optional<std::size_t> a0, a1;
    std::optional<FiltrationState> st0, st1;
    for (std::size_t a = 0; a < pub.length() && !st1; ++a) {
        try {
            FiltrationState st = seed_filtration(pub, a, q, r);
            if (!st0) {
                a0 = a;
                st0 = std::move(st);
            } else {
                a1 = a;
                st1 = std::move(st);
            }
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    if (!st1) {
        tr.add("anchors", "fewer than two usable anchors", timer.lap());
        return res;
    }
    tr.add("anchors", "a0 = " + std::to_string(*a0) + ", a1 = " + std::to_string(*a1), timer.lap());

    CounterRng rng_f0 = rng.fork(1), rng_f1 = rng.fork(2);
    climb_to(*st0, q + 1, rng_f0);
    climb_to(*st1, q + 1, rng_f1);
    std::string dims0, dims1;
    for (auto& [s, c] : st0->terms) dims0 += std::to_string(s) + ":" + std::to_string(c.dim()) + " ";
    for (auto& [s, c] : st1->terms) dims1 += std::to_string(s) + ":" + std::to_string(c.dim()) + " ";
    tr.add("filtration", "anchor " + std::to_string(*a0) + " [" + dims0 + "] anchor " + std::to_string(*a1) + " [" +
                             dims1 + "]",
           timer.lap());

    const std::size_t f0_other = *a1 - (*a1 > *a0 ? 1 : 0); // a1 in the frame without a0
    const std::size_t f1_other = *a0 - (*a0 > *a1 ? 1 : 0); // a0 in the frame without a1
    auto L0 = recover_norm_candidates(*st0, f0_other, tr);
    auto L1 = recover_norm_candidates(*st1, f1_other, tr);
    tr.add("candidates", "|L0| = " + std::to_string(L0.size()) + ", |L1| = " + std::to_string(L1.size()),
           timer.lap());
    if (L0.empty() || L1.empty()) return res;

    auto pairs = pair_candidates(F, L0, L1, f0_other, f1_other, tr);
    rng.shuffle(pairs);
    if (opts.max_pairs >= 0 && pairs.size() > static_cast<std::size_t>(opts.max_pairs))
        pairs.resize(static_cast<std::size_t>(opts.max_pairs));
    timer.lap();

    const long long ell = r * (q + 1);
    for (auto [i0, i1] : pairs) {
        ++res.pairs_tried;
        // norm vectors at full length: N(x) with x_{a0} = 0, x_{a1} = 1
        std::vector<elem> na(n), nb(n);
        {
            std::size_t c = 0;
            for (long long p = 0; p < n; ++p)
                if (static_cast<std::size_t>(p) != *a0) na[p] = L0[i0][c++];
            na[*a0] = 0;
            c = 0;
            for (long long p = 0; p < n; ++p)
                if (static_cast<std::size_t>(p) != *a1) nb[p] = L1[i1][c++];
            nb[*a1] = 0;
        }
        auto lay = support_from_pair(F, na, nb, tr);
        if (!lay) continue;
        // permuted generator with the l3 virtual zero columns
        const std::size_t N = lay->x_prime_ext.size();
        Mat G_ext(pub.dim(), N);
        for (std::size_t c = 0; c < N; ++c) {
            if (lay->orig_of_ext[c] < 0) continue;
            std::size_t oc = static_cast<std::size_t>(lay->orig_of_ext[c]);
            for (std::size_t rrow = 0; rrow < pub.dim(); ++rrow) G_ext.at(rrow, c) = pub.generator().at(rrow, oc);
        }
        auto sol = final_linear_problem(F, G_ext, *lay, ell, opts, rng, tr);
        if (!sol) continue;
        auto& [tau, dvec] = *sol;
        std::vector<elem> xhat(n), uhat(n);
        bool consistent = true;
        for (std::size_t c = 0; c < N; ++c) {
            if (lay->orig_of_ext[c] < 0) continue;
            std::size_t oc = static_cast<std::size_t>(lay->orig_of_ext[c]);
            xhat[oc] = lay->x_prime_ext[tau[c]];
            elem dv = dvec[tau[c]];
            if (dv == 0 || !F.in_mid(dv)) {
                consistent = false;
                break;
            }
            uhat[oc] = F.inv(dv);
        }
        if (!consistent) continue;
        // verification: exact code equality of u * Alt(ell, x, 1) with the public code
        LinearCode A = alternant(F, static_cast<std::size_t>(ell), xhat, std::vector<elem>(n, 1));
        Mat scaled(A.dim(), A.length());
        for (std::size_t rrow = 0; rrow < A.dim(); ++rrow)
            for (std::size_t c = 0; c < A.length(); ++c) scaled.at(rrow, c) = F.mul(A.generator().at(rrow, c), uhat[c]);
        LinearCode recon = LinearCode::from_rows(F, Level::mid, A.length(), std::move(scaled));
        if (recon != pub) {
            tr.add("verify", "pair (" + std::to_string(i0) + "," + std::to_string(i1) + "): code mismatch",
                   timer.lap());
            continue;
        }
        // decode round trip with a fresh random error of weight floor(ell/2)
        bool decoded = false;
        {
            std::vector<elem> msg(pub.dim());
            for (auto& v : msg) v = static_cast<elem>(rng.below(F.q));
            std::vector<elem> cw(n, 0);
            for (std::size_t rrow = 0; rrow < pub.dim(); ++rrow)
                if (msg[rrow] != 0) {
                    const elem* mr = F.mul_row(msg[rrow]);
                    const elem* g = pub.generator().row(rrow);
                    for (long long c = 0; c < n; ++c) cw[c] = F.add(cw[c], mr[g[c]]);
                }
            std::vector<elem> noisy = cw;
            auto epos = rng.subset(n, static_cast<std::size_t>(ell / 2));
            for (auto p : epos) noisy[p] = F.add(noisy[p], static_cast<elem>(1 + rng.below(F.q - 1)));
            std::vector<elem> work(n);
            for (long long c = 0; c < n; ++c) work[c] = F.div(noisy[c], uhat[c]);
            auto dec = alternant_decode(F, xhat, std::vector<elem>(n, 1), static_cast<std::size_t>(ell), work);
            if (dec) {
                std::vector<elem> back(n);
                for (long long c = 0; c < n; ++c) back[c] = F.mul(dec->codeword[c], uhat[c]);
                decoded = back == cw;
            }
        }
        tr.add("verify", "pair (" + std::to_string(i0) + "," + std::to_string(i1) + "): code equality ok, decode " +
                             (decoded ? "ok" : "FAILED"),
               timer.lap());
        if (!decoded) continue;
        res.key = RecoveredKey{std::move(xhat), std::move(uhat), ell};
        return res;
    }
    tr.add("exhausted", "no candidate pair yielded the key", timer.lap());
    return res;
}

} // namespace wg

#endif
