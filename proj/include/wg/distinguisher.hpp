#ifndef WG_DISTINGUISHER_HPP
#define WG_DISTINGUISHER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "code.hpp"
#include "rng.hpp"

namespace wg {

inline long long binom2(long long m) { return m < 2 ? 0 : m * (m - 1) / 2; }

// Quadratic extension of C(m, 2) used inside the interval inequalities; the
// clamped version would make them vacuously true once m goes negative.
inline long long binom2_poly(long long m) { return m * (m - 1) / 2; }

struct Interval {
    long long lo, hi; // [a_-, a_+]
};

// Strict distinguisher interval: a_- = n - 2r(q+1); a_+ the largest a with
// C(n-a-2r(q+1)+r(r+2)+1, 2) > 3(n-a) - 4r(q+1) - 2; nonempty exactly when
// C(r(r+2)+1, 2) > 2r(q+1) - 2.
inline std::optional<Interval> interval_strict(long long q, long long n, long long r) {
    const long long R = r * (q + 1), W = r * (r + 2);
    if (binom2(W + 1) <= 2 * R - 2) return std::nullopt;
    const long long lo = std::max<long long>(n - 2 * R, 0);
    long long hi = lo - 1;
    for (long long a = lo; a <= n - 2; ++a) {
        if (binom2_poly(n - a - 2 * R + W + 1) <= 3 * (n - a) - 4 * R - 2) break;
        hi = a;
    }
    if (hi < lo) return std::nullopt;
    return Interval{lo, hi};
}

// Experimental variant (squares of shortened wild Goppa codes sit at
// codimension 1 inside the alternant bound): a_- drops by 1 and the right
// side of the scan inequality relaxes by 1.
inline std::optional<Interval> interval_experimental(long long q, long long n, long long r) {
    const long long R = r * (q + 1), W = r * (r + 2);
    if (binom2(W + 2) <= 2 * R) return std::nullopt;
    const long long lo = std::max<long long>(n - 2 * R - 1, 0);
    long long hi = lo - 1;
    for (long long a = lo; a <= n - 2; ++a) {
        if (binom2_poly(n - a - 2 * R + W + 1) <= 3 * (n - a) - 4 * R - 3) break;
        hi = a;
    }
    if (hi < lo) return std::nullopt;
    return Interval{lo, hi};
}

// Shortening-size interval for computing the filtration term with index t
// (t = s + s', s = floor(t/2), s' = ceil(t/2)); symmetric (even t) and
// asymmetric (odd t) inequalities. t < 2 is accepted for the negative
// filtration, evaluating the same formulas.
inline std::optional<Interval> filtration_intervals(long long q, long long n, long long r, long long t) {
    const long long R = r * (q + 1), W = r * (r + 2);
    const bool even = ((t % 2) + 2) % 2 == 0;
    if (even) {
        if (binom2(W + 2) <= 2 * R + t - 2) return std::nullopt;
    } else {
        if (W * (W + 5) <= 2 * (2 * R + t - 2)) return std::nullopt;
    }
    const long long lo = std::max<long long>(n - 2 * R - t, 0);
    // mathematical floor(t/2), valid for negative t as well
    const long long sfloor = t >= 0 ? t / 2 : -((-t + 1) / 2);
    long long hi = lo - 1;
    for (long long b = lo; b <= n - 2; ++b) {
        bool ok;
        if (even) {
            ok = binom2_poly(n - b - 2 * R - t + 2 + W) > 3 * (n - 1 - b) - 4 * R - 2 * t + 1;
        } else {
            const long long d = (n - 1 - b) - 2 * R - 2 * sfloor + W;
            ok = d * (d + 5) > 2 * (3 * (n - 1 - b) - 4 * R - 2 * t + 1);
        }
        if (!ok) break;
        hi = b;
    }
    if (hi < lo) return std::nullopt;
    return Interval{lo, hi};
}

struct ProfileRow {
    std::size_t size;       // |I|
    long long goppa_dim;    // modal dim of square(shorten(C, I)) over the trials
    long long random_dim;   // analytic baseline min{n - |I|, C(k - |I| + 1, 2)}
    bool unanimous;         // all trials agreed (deviations are logged by callers)
};

struct DistinguisherReport {
    long long q = 0, n = 0, k = 0, r = 0;
    std::optional<Interval> interval; // experimental by default
    std::vector<ProfileRow> rows;
    bool distinguishable = false;
};

// dim square(shorten(C, I)) for random |I| = a, modal over `trials` draws,
// against the analytic random-code baseline.
inline std::vector<ProfileRow> dimension_profile(const LinearCode& C, const std::vector<std::size_t>& sizes,
                                                 std::size_t trials, CounterRng& rng) {
    const std::size_t n = C.length(), k = C.dim();
    LinearCode Cd = dual(C); // shorten via the dual: the cheap direction for high-rate C
    std::vector<ProfileRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t a : sizes) {
        std::map<long long, std::size_t> counts;
        for (std::size_t tr = 0; tr < std::max<std::size_t>(trials, 1); ++tr) {
            auto I = rng.subset(n, a);
            LinearCode S = shorten_from_dual(Cd, I);
            counts[static_cast<long long>(square_code(S).dim())]++;
        }
        long long modal = 0;
        std::size_t best = 0;
        for (auto& [d, c] : counts)
            if (c > best) {
                best = c;
                modal = d;
            }
        long long baseline = std::min<long long>(static_cast<long long>(n - a),
                                                 binom2(static_cast<long long>(k) - static_cast<long long>(a) + 1));
        if (baseline < 0) baseline = 0;
        rows.push_back(ProfileRow{a, modal, baseline, counts.size() == 1});
    }
    return rows;
}

// Feasibility: largest prime power q (with r < q) for which the interval is
// nonempty, per variant.
inline bool is_prime_power(long long v) {
    if (v < 2) return false;
    for (long long p = 2; p * p <= v; ++p)
        if (v % p == 0) {
            while (v % p == 0) v /= p;
            return v == 1;
        }
    return true; // prime
}

inline long long max_q_strict(long long r) {
    // nonempty iff C(r(r+2)+1, 2) > 2r(q+1) - 2
    long long best = 0;
    for (long long q = 2; q <= 4 * r * r * r + 16; ++q)
        if (is_prime_power(q) && q > r && binom2(r * (r + 2) + 1) > 2 * r * (q + 1) - 2) best = q;
    return best;
}

inline long long max_q_experimental(long long r) {
    long long best = 0;
    for (long long q = 2; q <= 4 * r * r * r + 16; ++q)
        if (is_prime_power(q) && q > r && binom2(r * (r + 2) + 2) > 2 * r * (q + 1)) best = q;
    return best;
}

} // namespace wg

#endif
