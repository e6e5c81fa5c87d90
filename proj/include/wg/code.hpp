#ifndef WG_CODE_HPP
#define WG_CODE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace wg {

// A subspace of GF(q)^n (level mid) or GF(q^2)^n (level ext), stored as the
// canonical RREF generator matrix (leftmost-pivot convention), so equality of
// values is equality of subspaces. Immutable; zero code and full space are
// ordinary values.
class LinearCode {
public:
    static LinearCode from_rows(const FieldTower& F, Level level, std::size_t n, Mat rows) {
        check_entries(F, level, rows);
        if (rows.cols != n) throw std::invalid_argument("LinearCode: row width != n");
        auto piv = rref(F, rows);
        return LinearCode(F, level, n, std::move(rows), std::move(piv));
    }
    // For callers that already hold a canonical RREF (nullspace pipelines do not).
    static LinearCode from_rref(const FieldTower& F, Level level, std::size_t n, Mat rref_rows,
                                std::vector<std::size_t> pivots) {
        return LinearCode(F, level, n, std::move(rref_rows), std::move(pivots));
    }
    static LinearCode zero(const FieldTower& F, Level level, std::size_t n) {
        return LinearCode(F, level, n, Mat(0, n), {});
    }
    static LinearCode full(const FieldTower& F, Level level, std::size_t n) {
        Mat I(n, n);
        std::vector<std::size_t> piv(n);
        for (std::size_t i = 0; i < n; ++i) {
            I.at(i, i) = 1;
            piv[i] = i;
        }
        return LinearCode(F, level, n, std::move(I), std::move(piv));
    }

    const FieldTower& tower() const { return *F_; }
    Level level() const { return level_; }
    std::size_t length() const { return n_; }
    std::size_t dim() const { return G_.rows; }
    const Mat& generator() const { return G_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == n_; }

    std::vector<elem> row(std::size_t i) const {
        return std::vector<elem>(G_.row(i), G_.row(i) + n_);
    }

    bool contains(std::vector<elem> w) const {
        if (w.size() != n_) throw std::invalid_argument("LinearCode::contains: length mismatch");
        for (std::size_t i = 0; i < G_.rows; ++i) {
            elem v = w[pivots_[i]];
            if (v != 0) row_submul(*F_, v, G_.row(i), w.data(), n_);
        }
        for (elem v : w)
            if (v != 0) return false;
        return true;
    }

    bool operator==(const LinearCode& o) const {
        return F_ == o.F_ && level_ == o.level_ && n_ == o.n_ && G_ == o.G_;
    }
    bool operator!=(const LinearCode& o) const { return !(*this == o); }

private:
    LinearCode(const FieldTower& F, Level level, std::size_t n, Mat G, std::vector<std::size_t> piv)
        : F_(&F), level_(level), n_(n), G_(std::move(G)), pivots_(std::move(piv)) {
        if (level_ == Level::base) throw std::invalid_argument("LinearCode: codes live at level mid or ext");
    }

    static void check_entries(const FieldTower& F, Level level, const Mat& M) {
        if (level == Level::mid)
            for (elem v : M.a)
                if (!F.in_mid(v)) throw std::invalid_argument("LinearCode: entry not in GF(q) for a mid-level code");
    }

    const FieldTower* F_;
    Level level_;
    std::size_t n_;
    Mat G_;
    std::vector<std::size_t> pivots_;
};

inline void require_compatible(const LinearCode& A, const LinearCode& B, const char* op) {
    if (&A.tower() != &B.tower() || A.level() != B.level() || A.length() != B.length())
        throw std::invalid_argument(std::string(op) + ": length/level mismatch");
}

inline bool is_subcode(const LinearCode& A, const LinearCode& B) {
    require_compatible(A, B, "is_subcode");
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!B.contains(A.row(i))) return false;
    return true;
}

inline LinearCode dual(const LinearCode& C) {
    const FieldTower& F = C.tower();
    Mat N = nullspace_from_rref(F, C.generator(), C.pivots());
    return LinearCode::from_rows(F, C.level(), C.length(), std::move(N));
}

inline void check_positions(const LinearCode& C, const std::vector<std::size_t>& I) {
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] >= C.length()) throw std::invalid_argument("position set out of range");
        if (i > 0 && I[i] <= I[i - 1]) throw std::invalid_argument("position set not sorted/unique");
    }
}

inline Mat drop_columns(const Mat& M, const std::vector<std::size_t>& I, std::size_t n) {
    std::vector<bool> dropped(n, false);
    for (auto i : I) dropped[i] = true;
    Mat R(M.rows, n - I.size());
    for (std::size_t r = 0; r < M.rows; ++r) {
        std::size_t c2 = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (!dropped[c]) R.at(r, c2++) = M.at(r, c);
    }
    return R;
}

inline LinearCode puncture(const LinearCode& C, const std::vector<std::size_t>& I) {
    check_positions(C, I);
    Mat R = drop_columns(C.generator(), I, C.length());
    return LinearCode::from_rows(C.tower(), C.level(), C.length() - I.size(), std::move(R));
}

inline LinearCode shorten(const LinearCode& C, const std::vector<std::size_t>& I) {
    check_positions(C, I);
    const FieldTower& F = C.tower();
    const std::size_t k = C.dim();
    // coefficient vectors lambda with lambda * G zero on I: right-nullspace of
    // the I-columns of G, transposed
    Mat B(I.size(), k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < I.size(); ++j) B.at(j, r) = C.generator().at(r, I[j]);
    Mat L = nullspace(F, std::move(B));
    // words lambda * G, then drop I
    Mat W(L.rows, C.length());
    for (std::size_t r = 0; r < L.rows; ++r)
        for (std::size_t j = 0; j < k; ++j)
            if (L.at(r, j) != 0) {
                const elem* m = F.mul_row(L.at(r, j));
                const elem* g = C.generator().row(j);
                elem* w = W.row(r);
                for (std::size_t c = 0; c < C.length(); ++c) w[c] = F.add(w[c], m[g[c]]);
            }
    Mat R = drop_columns(W, I, C.length());
    return LinearCode::from_rows(F, C.level(), C.length() - I.size(), std::move(R));
}

// shorten(C, I) computed from a precomputed dual of C; the cheap direction
// when dim C > n/2 (dual(shorten(C,I)) = puncture(dual(C),I)).
inline LinearCode shorten_from_dual(const LinearCode& Cdual, const std::vector<std::size_t>& I) {
    return dual(puncture(Cdual, I));
}

// C cap GF(q)^n for C over GF(q^2): each parity row of C splits into two
// GF(q) constraints via the {1, Z} coordinates.
inline LinearCode subfield_subcode(const LinearCode& C) {
    if (C.level() != Level::ext) throw std::invalid_argument("subfield_subcode: level mismatch, want ext");
    const FieldTower& F = C.tower();
    LinearCode H = dual(C);
    Mat E(2 * H.dim(), C.length());
    for (std::size_t r = 0; r < H.dim(); ++r)
        for (std::size_t c = 0; c < C.length(); ++c) {
            elem h = H.generator().at(r, c);
            E.at(2 * r, c) = F.lo(h);
            E.at(2 * r + 1, c) = F.hi(h);
        }
    Mat N = nullspace(F, std::move(E));
    return LinearCode::from_rows(F, Level::mid, C.length(), std::move(N));
}

// Componentwise trace image Tr(C), spanned by Tr(g) and Tr(Z*g) over the rows.
inline LinearCode trace_code(const LinearCode& C) {
    if (C.level() != Level::ext) throw std::invalid_argument("trace_code: level mismatch, want ext");
    const FieldTower& F = C.tower();
    const elem alpha = F.gen_ext();
    Mat R(2 * C.dim(), C.length());
    for (std::size_t r = 0; r < C.dim(); ++r)
        for (std::size_t c = 0; c < C.length(); ++c) {
            elem g = C.generator().at(r, c);
            R.at(2 * r, c) = F.trace_raw(g);
            R.at(2 * r + 1, c) = F.trace_raw(F.mul(alpha, g));
        }
    return LinearCode::from_rows(F, Level::mid, C.length(), std::move(R));
}

inline LinearCode star_product(const LinearCode& A, const LinearCode& B) {
    require_compatible(A, B, "star_product");
    const FieldTower& F = A.tower();
    const std::size_t n = A.length();
    const bool same = &A == &B || A == B;
    RrefBuilder acc(F, n);
    std::vector<elem> prod(n);
    for (std::size_t i = 0; i < A.dim() && acc.rank() < n; ++i) {
        const elem* ga = A.generator().row(i);
        for (std::size_t j = same ? i : 0; j < B.dim() && acc.rank() < n; ++j) {
            const elem* gb = B.generator().row(j);
            for (std::size_t c = 0; c < n; ++c) prod[c] = F.mul(ga[c], gb[c]);
            acc.insert(prod);
        }
    }
    auto piv = acc.pivots();
    return LinearCode::from_rref(F, A.level(), n, acc.take(), std::move(piv));
}

inline LinearCode square_code(const LinearCode& A) { return star_product(A, A); }

inline LinearCode sum_codes(const LinearCode& A, const LinearCode& B) {
    require_compatible(A, B, "sum_codes");
    RrefBuilder acc(A.tower(), A.length());
    for (std::size_t i = 0; i < A.dim(); ++i) acc.insert(A.row(i));
    for (std::size_t i = 0; i < B.dim(); ++i) acc.insert(B.row(i));
    auto piv = acc.pivots();
    return LinearCode::from_rref(A.tower(), A.level(), A.length(), acc.take(), std::move(piv));
}

inline LinearCode intersect_codes(const LinearCode& A, const LinearCode& B) {
    require_compatible(A, B, "intersect_codes");
    return dual(sum_codes(dual(A), dual(B)));
}

// {s in D : s * A subseteq B} = (A * B^perp)^perp cap D.
inline LinearCode conductor(const LinearCode& A, const LinearCode& B, const LinearCode& D) {
    require_compatible(A, B, "conductor");
    require_compatible(A, D, "conductor");
    LinearCode P = star_product(A, dual(B));
    return intersect_codes(dual(P), D);
}

// Reinsert |I| zero columns so that the result has length n + |I| and its
// restriction away from I is C; I indexes positions of the result frame.
inline LinearCode embed_zeros(const LinearCode& C, const std::vector<std::size_t>& I) {
    const std::size_t N = C.length() + I.size();
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] >= N) throw std::invalid_argument("embed_zeros: position out of range");
        if (i > 0 && I[i] <= I[i - 1]) throw std::invalid_argument("embed_zeros: positions not sorted/unique");
    }
    std::vector<bool> inserted(N, false);
    for (auto i : I) inserted[i] = true;
    Mat R(C.dim(), N);
    std::vector<std::size_t> map(C.length());
    {
        std::size_t c2 = 0;
        for (std::size_t c = 0; c < N; ++c)
            if (!inserted[c]) map[c2++] = c;
    }
    for (std::size_t r = 0; r < C.dim(); ++r)
        for (std::size_t c = 0; c < C.length(); ++c) R.at(r, map[c]) = C.generator().at(r, c);
    // zero columns keep RREF intact; pivots just shift
    std::vector<std::size_t> piv;
    piv.reserve(C.dim());
    for (auto pcol : C.pivots()) piv.push_back(map[pcol]);
    return LinearCode::from_rref(C.tower(), C.level(), N, std::move(R), std::move(piv));
}

inline LinearCode random_code(const FieldTower& F, Level level, std::size_t n, std::size_t k, CounterRng& rng) {
    const std::size_t S = level == Level::mid ? static_cast<std::size_t>(F.q) : static_cast<std::size_t>(F.q2);
    for (;;) {
        Mat R(k, n);
        for (auto& v : R.a) v = static_cast<elem>(rng.below(S));
        LinearCode C = LinearCode::from_rows(F, level, n, std::move(R));
        if (C.dim() == k) return C;
    }
}

} // namespace wg

#endif
