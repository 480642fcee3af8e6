#ifndef LOGCONN_BIRKHOFF_HPP
#define LOGCONN_BIRKHOFF_HPP

#include "logconn/laurent.hpp"
#include "logconn/matrix.hpp"
#include "logconn/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

struct UnitDeterminant {
    Rational coefficient;
    int exponent = 0;
};

/// det T = c z^k with c != 0, or throws.
inline UnitDeterminant unit_determinant(const LaurentMatrix& t) {
    if (!t.is_square() || t.rows() == 0) throw AlgebraError("transition must be a nonempty square matrix");
    LaurentPoly d = det(t);
    if (!d.is_monomial()) throw AlgebraError("transition determinant " + d.to_string() + " is not a unit c*z^k");
    return {d.terms().begin()->second, d.terms().begin()->first};
}

inline int min_exponent(const LaurentMatrix& t) {
    bool any = false;
    int lo = 0;
    for (const auto& e : t.data())
        if (!e.is_zero()) {
            lo = any ? std::min(lo, e.min_degree()) : e.min_degree();
            any = true;
        }
    return lo;
}

inline int max_exponent(const LaurentMatrix& t) {
    bool any = false;
    int hi = 0;
    for (const auto& e : t.data())
        if (!e.is_zero()) {
            hi = any ? std::max(hi, e.max_degree()) : e.max_degree();
            any = true;
        }
    return hi;
}

/// T = minus * diag(z^n) * plus with plus in GL(Q[z]), minus in GL(Q[z^-1]),
/// exponents sorted descending.
struct BirkhoffFactors {
    LaurentMatrix minus;
    LaurentMatrix diag;
    LaurentMatrix plus;
    std::vector<int> exponents;
};

struct ColumnReduction {
    LaurentMatrix reduced;  // W U, column reduced
    LaurentMatrix U, Uinv;  // unimodular over Q[z]
    std::vector<int> degrees;
};

inline std::vector<int> column_degrees(const LaurentMatrix& w) {
    std::vector<int> d(w.cols());
    for (std::size_t j = 0; j < w.cols(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < w.rows(); ++i)
            if (!w(i, j).is_zero()) {
                d[j] = any ? std::max(d[j], w(i, j).max_degree()) : w(i, j).max_degree();
                any = true;
            }
        if (!any) throw AlgebraError("zero column in a transition with unit determinant");
    }
    return d;
}

/// Column reduction of a polynomial matrix W with nonzero determinant by
/// unimodular column operations. An operation only combines columns whose
/// degrees agree modulo `modulus`, so congruence classes of entry exponents
/// are preserved (modulus 1 is the plain algorithm).
inline ColumnReduction column_reduce(LaurentMatrix w, long modulus = 1) {
    if (modulus < 1) throw AlgebraError("modulus must be positive");
    std::size_t m = w.rows();
    ColumnReduction r;
    r.U = LaurentMatrix::identity(m);
    r.Uinv = LaurentMatrix::identity(m);
    for (std::size_t guard = 0;; ++guard) {
        auto d = column_degrees(w);
        QMatrix gamma(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) gamma(i, j) = w(i, j).coefficient(d[j]);
        if (rank(gamma) == m) {
            r.reduced = std::move(w);
            r.degrees = std::move(d);
            return r;
        }
        if (guard > 100000) throw AlgebraError("column reduction did not terminate");
        std::vector<std::pair<std::size_t, Rational>> support;
        for (long cls = 0; cls < modulus && support.empty(); ++cls) {
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < m; ++j)
                if (mod_floor(d[j], modulus) == cls) cols.push_back(j);
            if (cols.empty()) continue;
            QMatrix sub(m, cols.size());
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t k = 0; k < cols.size(); ++k) sub(i, k) = gamma(i, cols[k]);
            QMatrix ker = kernel(sub);
            if (ker.cols() == 0) continue;
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (ker(k, 0) != 0) support.emplace_back(cols[k], ker(k, 0));
        }
        if (support.empty()) throw AlgebraError("leading matrix singular with no class-compatible kernel vector");
        auto top = std::max_element(support.begin(), support.end(), [&](const auto& a, const auto& b) {
            return d[a.first] < d[b.first];
        });
        std::size_t j0 = top->first;
        Rational a0 = top->second;
        for (const auto& [j, aj] : support) {
            if (j == j0) continue;
            LaurentPoly mono = LaurentPoly::monomial(d[j0] - d[j], aj / a0);
            for (std::size_t i = 0; i < m; ++i) {
                w(i, j0) += mono * w(i, j);
                r.U(i, j0) += mono * r.U(i, j);
            }
            for (std::size_t k = 0; k < m; ++k) r.Uinv(j, k) -= mono * r.Uinv(j0, k);
        }
    }
}

inline BirkhoffFactors birkhoff_factorize(const LaurentMatrix& t, long modulus = 1) {
    unit_determinant(t);
    std::size_t m = t.rows();
    int s = std::max(0, -min_exponent(t));
    LaurentMatrix w = t.map([s](const LaurentPoly& e) { return e.shifted(s); });
    ColumnReduction cr = column_reduce(std::move(w), modulus);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return cr.degrees[a] > cr.degrees[b]; });

    BirkhoffFactors f;
    f.minus = LaurentMatrix(m, m);
    f.diag = LaurentMatrix(m, m);
    f.plus = LaurentMatrix(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t src = perm[k];
        int dk = cr.degrees[src];
        for (std::size_t i = 0; i < m; ++i) f.minus(i, k) = cr.reduced(i, src).shifted(-dk);
        for (std::size_t j = 0; j < m; ++j) f.plus(k, j) = cr.Uinv(src, j);
        f.exponents.push_back(dk - s);
        f.diag(k, k) = LaurentPoly::monomial(dk - s);
    }
    return f;
}

/// Checks the factorization identity and the holomorphy/unimodularity of both factors.
inline bool verify_birkhoff(const LaurentMatrix& t, const BirkhoffFactors& f) {
    std::size_t m = t.rows();
    if (!(f.minus * f.diag * f.plus == t)) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (!f.plus(i, j).is_zero() && f.plus(i, j).min_degree() < 0) return false;
            if (!f.minus(i, j).is_zero() && f.minus(i, j).max_degree() > 0) return false;
            if (i != j && !f.diag(i, j).is_zero()) return false;
        }
    for (std::size_t k = 0; k < m; ++k) {
        if (!(f.diag(k, k) == LaurentPoly::monomial(f.exponents[k]))) return false;
        if (k > 0 && f.exponents[k] > f.exponents[k - 1]) return false;
    }
    LaurentPoly dp = det(f.plus), dm = det(f.minus);
    return dp.is_constant() && !dp.is_zero() && dm.is_constant() && !dm.is_zero();
}

/// dim of global sections of the bundle twisted by O(j): pairs with
/// s0 = z^j T^T s_inf, s0 over Q[z] and s_inf over Q[z^-1].
inline std::size_t h0(const LaurentMatrix& t, int j) {
    std::size_t m = t.rows();
    int lo = min_exponent(t);
    int k = unit_determinant(t).exponent;
    // s_inf = (T^T)^{-1} z^{-j} s0 with deg s0 <= j + hi; adj entries have
    // exponents >= (m-1) lo, so s_inf has degree at most A in z^-1.
    int a = std::max(0, j - static_cast<int>(m - 1) * lo + k);
    LaurentMatrix tt = t.transpose();
    // Unknowns: coefficient of z^-e in component c, e = 0..a.
    std::size_t nunk = m * static_cast<std::size_t>(a + 1);
    // Equations: negative-power coefficients of z^j T^T s_inf.
    int most_negative = j + lo - a;
    if (most_negative >= 0) return nunk;
    std::size_t neq_per = static_cast<std::size_t>(-most_negative);
    QMatrix sys(m * neq_per, nunk);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t c = 0; c < m; ++c)
            for (const auto& [ex, coef] : tt(row, c).terms())
                for (int e = 0; e <= a; ++e) {
                    int power = j + ex - e;
                    if (power >= 0) continue;
                    std::size_t eq = row * neq_per + static_cast<std::size_t>(-power - 1);
                    sys(eq, c * static_cast<std::size_t>(a + 1) + static_cast<std::size_t>(e)) += coef;
                }
    return nunk - rank(sys);
}

/// Splitting type from the jumps of j -> h0(j), descending. Independent of
/// the factorization.
inline std::vector<int> splitting_type_rank_oracle(const LaurentMatrix& t) {
    auto ud = unit_determinant(t);
    int m = static_cast<int>(t.rows());
    int lo = min_exponent(t), hi = max_exponent(t);
    int lower = std::min(lo, ud.exponent - (m - 1) * hi);
    // h0(j) = sum max(0, n_i + j + 1); g(j) = h0(j) - h0(j-1) = #{n_i >= -j}.
    std::vector<int> out;
    std::size_t prev_h = h0(t, -hi - 2);
    std::size_t cur_h = h0(t, -hi - 1);
    long prev_g = static_cast<long>(cur_h) - static_cast<long>(prev_h);
    prev_h = cur_h;
    for (int j = -hi; j <= -lower; ++j) {
        cur_h = h0(t, j);
        long g = static_cast<long>(cur_h) - static_cast<long>(prev_h);
        for (long c = 0; c < g - prev_g; ++c) out.push_back(-j);
        prev_g = g;
        prev_h = cur_h;
    }
    if (static_cast<int>(out.size()) != m) throw AlgebraError("rank oracle did not recover a full splitting type");
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Transition of a C*-equivariant bundle on the football P_{p,q}: every
/// exponent of entry (i, j) is congruent to isotropy0[i] mod p and to
/// isotropy_inf[j] mod q.
struct EquivariantTransition {
    LaurentMatrix T;
    long p = 1, q = 1;
    std::vector<long> isotropy0, isotropy_inf;
};

inline void check_equivariance(const EquivariantTransition& et) {
    std::size_t m = et.T.rows();
    if (et.p < 1 || et.q < 1) throw AlgebraError("weights p, q must be positive");
    if (et.isotropy0.size() != m || et.isotropy_inf.size() != m)
        throw AlgebraError("one isotropy character per frame vector expected");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& [e, c] : et.T(i, j).terms())
                if (mod_floor(e - et.isotropy0[i], et.p) != 0 || mod_floor(e - et.isotropy_inf[j], et.q) != 0)
                    throw AlgebraError("equivariance violated at entry (" + std::to_string(i) + ", " +
                                       std::to_string(j) + "), exponent " + std::to_string(e));
}

struct FootballSplit {
    std::vector<int> classes;  // multiples of O(1), descending
    BirkhoffFactors factors;
    bool consistent_p = false;  // classes mod p reproduce isotropy0
    bool consistent_q = false;  // classes mod q reproduce isotropy_inf
};

inline bool same_residues(std::vector<int> a, const std::vector<long>& b, long mod) {
    if (a.size() != b.size()) return false;
    std::vector<long> ra, rb;
    for (int v : a) ra.push_back(mod_floor(v, mod));
    for (long v : b) rb.push_back(mod_floor(v, mod));
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
}

inline FootballSplit football_split(const EquivariantTransition& et) {
    check_equivariance(et);
    FootballSplit r;
    r.factors = birkhoff_factorize(et.T, et.p);
    r.classes = r.factors.exponents;
    r.consistent_p = same_residues(r.classes, et.isotropy0, et.p);
    r.consistent_q = same_residues(r.classes, et.isotropy_inf, et.q);
    return r;
}

}  // namespace logconn

#endif  // LOGCONN_BIRKHOFF_HPP
