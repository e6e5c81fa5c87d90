#ifndef WG_FILTRATION_HPP
#define WG_FILTRATION_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algcode.hpp"
#include "code.hpp"
#include "distinguisher.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace wg {

// Nested codes Coi(a, s) of length n-1 computed from the public code alone;
// s = 1 and s = 0 come from shortening/puncturing at the anchor, larger s
// from conductor accumulation, negative s from the conductor against the
// ambient space.
struct FiltrationState {
    const FieldTower* F = nullptr;
    long long q = 0, n = 0, r = 0;
    std::size_t anchor = 0;
    std::map<long long, LinearCode> terms;
    std::vector<std::string> notes; // underfill/overfill and fallback events
};

inline long long filtration_target_dim(const FiltrationState& st, long long t) {
    return (st.n - 1) - 2 * st.r * (st.q + 1) - 2 * t + 2 + st.r * (st.r + 2);
}

inline FiltrationState seed_filtration(const LinearCode& C, std::size_t a, long long q, long long r) {
    FiltrationState st;
    st.F = &C.tower();
    st.q = q;
    st.n = static_cast<long long>(C.length());
    st.r = r;
    st.anchor = a;
    LinearCode s1 = shorten(C, {a});
    LinearCode s0 = puncture(C, {a});
    if (s1.dim() == s0.dim())
        throw std::runtime_error("seed_filtration: degenerate anchor (shortening equals puncturing)");
    st.terms.emplace(1, std::move(s1));
    st.terms.emplace(0, std::move(s0));
    return st;
}

namespace detail {

// One conductor-accumulation pass producing Coi(a, t), assuming every term
// between 0 and t (exclusive, same sign side) is already present. A draw
// shortens at a random I inside the admissible size interval and computes
// conductor(Sh(Coi(0)), B, D) with
//   B = sum over decompositions t = s + s' of Sh(Coi(s)) * Sh(Coi(s'))
//   D = Sh(Coi(t-1)) for t >= 2, the ambient space for t < 0.
// The single floor/ceil product is not reliably large enough at small q, so
// every available decomposition goes into B. Success: target dimension k(t)
// reached, or (past the stagnation index q - r) the previous term's dimension,
// or no growth over 10 consecutive draws.
inline std::optional<LinearCode> accumulate_term(FiltrationState& st, long long t, CounterRng& rng) {
    const FieldTower& F = *st.F;
    const LinearCode& A0 = st.terms.at(0);

    // decompositions t = s + s' with both terms available and neither equal t
    std::vector<std::pair<long long, long long>> parts;
    for (auto& [s, code] : st.terms) {
        (void)code;
        const long long s2 = t - s;
        if (s > s2) break;
        if (s == t || s2 == t) continue;
        if (st.terms.count(s2)) parts.emplace_back(s, s2);
    }
    if (parts.empty()) return std::nullopt;

    auto iv = filtration_intervals(st.q, st.n, st.r, t);
    if (!iv) return std::nullopt;
    long long lo = iv->lo, hi = iv->hi;
    // Exactness of the conductor needs the shortened length strictly below
    // 2r(q+1) + t (degree count with the containing term Coi(t-1)), i.e.
    // |I| >= n - 2r(q+1) - t + 1; one tighter than the published endpoint.
    lo = std::max<long long>(std::max(lo, st.n - 2 * st.r * (st.q + 1) - t + 1), 0);
    // shortened factors must stay nonzero
    long long min_dim = static_cast<long long>(A0.dim());
    for (auto [s1, s2] : parts)
        min_dim = std::min({min_dim, static_cast<long long>(st.terms.at(s1).dim()),
                            static_cast<long long>(st.terms.at(s2).dim())});
    if (t >= 2) min_dim = std::min(min_dim, static_cast<long long>(st.terms.at(t - 1).dim()));
    hi = std::min({hi, min_dim - 1, st.n - 2});
    if (lo > hi) return std::nullopt;

    const long long target = filtration_target_dim(st, t);
    const long long prev_dim = t >= 2 ? static_cast<long long>(st.terms.at(t - 1).dim()) : -1;
    LinearCode acc = t < 0 ? st.terms.at(0) : LinearCode::zero(F, Level::mid, st.n - 1);
    const long long span = hi - lo + 1;
    const long long maxit = 50 * ((st.n - 1) / span + 1);
    int stagnant = 0;
    for (long long it = 0; it < maxit; ++it) {
        std::size_t size = static_cast<std::size_t>(lo + static_cast<long long>(rng.below(span)));
        auto I = rng.subset(st.n - 1, size);
        LinearCode A = shorten(A0, I);
        if (A.is_zero()) continue;
        LinearCode B = LinearCode::zero(F, Level::mid, A.length());
        for (auto [s1, s2] : parts) {
            LinearCode H1 = shorten(st.terms.at(s1), I);
            LinearCode H2 = s2 == s1 ? H1 : shorten(st.terms.at(s2), I);
            B = sum_codes(B, star_product(H1, H2));
            if (B.is_full()) break;
        }
        LinearCode D = t >= 2 ? shorten(st.terms.at(t - 1), I) : LinearCode::full(F, Level::mid, st.n - 1 - size);
        LinearCode S = conductor(A, B, D);
        std::size_t before = acc.dim();
        if (!S.is_zero()) acc = sum_codes(acc, embed_zeros(S, I));
        const long long d = static_cast<long long>(acc.dim());
        if (t >= 2 && t <= st.q - st.r && d >= target) {
            if (d > target)
                st.notes.push_back("term " + std::to_string(t) + ": dimension exceeded the lower-bound target");
            return acc;
        }
        // past the stagnation index the lower-bound target is unreachable;
        // matching the previous term is the expected fixed point
        if (t > st.q - st.r && d == prev_dim) return acc;
        stagnant = d == static_cast<long long>(before) ? stagnant + 1 : 0;
        if (stagnant >= 10 && d > 0) {
            if (t >= 2 && t <= st.q - st.r)
                st.notes.push_back("term " + std::to_string(t) + ": stagnated at dim " + std::to_string(d) +
                                   " below target " + std::to_string(target));
            return acc;
        }
    }
    st.notes.push_back("term " + std::to_string(t) + ": iteration cap reached at dim " + std::to_string(acc.dim()));
    return acc.dim() > 0 ? std::optional<LinearCode>(acc) : std::nullopt;
}

// Sequential computation: every term between the seeds and t is materialized.
inline const LinearCode& ensure_term(FiltrationState& st, long long t, CounterRng& rng) {
    auto it = st.terms.find(t);
    if (it != st.terms.end()) return it->second;
    if (t < 0) {
        for (long long tt = -1; tt >= t; --tt) {
            if (st.terms.count(tt)) continue;
            if (tt >= -st.r) {
                // the steps from 0 down to -r are equalities; the ambient-space
                // conductor has no containing code to cap it and can overshoot
                st.terms.emplace(tt, st.terms.at(0));
                continue;
            }
            auto res = accumulate_term(st, tt, rng);
            if (!res) throw std::runtime_error("filtration: could not compute term " + std::to_string(tt));
            st.terms.emplace(tt, std::move(*res));
        }
        return st.terms.at(t);
    }
    if (t == 0 || t == 1) throw std::logic_error("filtration: state not seeded");
    for (long long tt = 2; tt <= t; ++tt) {
        if (st.terms.count(tt)) continue;
        auto res = accumulate_term(st, tt, rng);
        if (!res) throw std::runtime_error("filtration: could not compute term " + std::to_string(tt));
        st.terms.emplace(tt, std::move(*res));
    }
    return st.terms.at(t);
}

} // namespace detail

inline const LinearCode& next_term(FiltrationState& st, long long t, CounterRng& rng) {
    if (t < 2) throw std::invalid_argument("next_term: t must be >= 2");
    return detail::ensure_term(st, t, rng);
}

inline const LinearCode& negative_term(FiltrationState& st, long long ell, CounterRng& rng) {
    if (ell < 1) throw std::invalid_argument("negative_term: ell must be >= 1");
    return detail::ensure_term(st, -ell, rng);
}

// Compute every term up to target_s; indices past q + 1 are undefined.
inline FiltrationState& climb_to(FiltrationState& st, long long target_s, CounterRng& rng) {
    if (target_s < 2) return st;
    if (target_s > st.q + 1)
        throw std::invalid_argument("climb_to: targets beyond q + 1 are not defined");
    detail::ensure_term(st, target_s, rng);
    return st;
}

// Secret-side description of Coi(a, s):
// Alt(r(q+1)+s-1, x minus anchor, gamma(x)^{-(q+1)} * (x - x_a)^{-(s-1)}).
inline LinearCode coi_white_box(const FieldTower& F, const std::vector<elem>& x, const Poly& gamma,
                                std::size_t anchor, long long r, long long s) {
    const long long q = F.q;
    const long long ell = r * (q + 1) + s - 1;
    std::vector<elem> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == anchor) continue;
        elem xi = x[i];
        elem y = F.pow(poly_eval(F, gamma, xi), -(q + 1));
        y = F.mul(y, F.pow(F.sub(xi, x[anchor]), -(s - 1)));
        xs.push_back(xi);
        ys.push_back(y);
    }
    if (ell <= 0) return LinearCode::full(F, Level::mid, xs.size());
    return alternant(F, static_cast<std::size_t>(ell), xs, ys);
}

} // namespace wg

#endif
