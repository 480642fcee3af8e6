#ifndef LOGCONN_MATRIX_HPP
#define LOGCONN_MATRIX_HPP

#include "logconn/cyclotomic.hpp"
#include "logconn/laurent.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/rational.hpp"
#include "logconn/upoly.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

/// Dense row-major matrix over a commutative ring R. R must be constructible
/// from long (0 and 1 act as ring constants) and provide + - * ==.
template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, R(0L)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<R> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw AlgebraError("matrix data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<R>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw AlgebraError("ragged matrix literal");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1L);
        return m;
    }
    static Matrix diagonal(const std::vector<R>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<R>& data() const { return data_; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] + b.data_[k];
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] - b.data_[k];
        return out;
    }
    Matrix operator-() const {
        Matrix out = *this;
        for (auto& v : out.data_) v = R(0L) - v;
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw AlgebraError("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const R& aik = a(i, k);
                if (aik == R(0L)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
            }
        return out;
    }
    friend Matrix operator*(const R& s, const Matrix& m) {
        Matrix out = m;
        for (auto& v : out.data_) v = s * v;
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!(v == R(0L))) return false;
        return true;
    }

    Matrix pow(unsigned k) const {
        Matrix out = identity(rows_), b = *this;
        while (k) {
            if (k & 1U) out = out * b;
            k >>= 1U;
            if (k) b = b * b;
        }
        return out;
    }

    /// Deletes row r and column c.
    Matrix minor_matrix(std::size_t r, std::size_t c) const {
        Matrix out(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
                if (j == c) continue;
                out(oi, oj++) = (*this)(i, j);
            }
            ++oi;
        }
        return out;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const R&>()))> {
        using S = decltype(f(std::declval<const R&>()));
        std::vector<S> d;
        d.reserve(data_.size());
        for (const auto& v : data_) d.push_back(f(v));
        return Matrix<S>(rows_, cols_, std::move(d));
    }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw AlgebraError("matrix shape mismatch");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> data_;
};

using QMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<MultiPoly>;
using LaurentMatrix = Matrix<LaurentPoly>;
using Laurent2Matrix = Matrix<LaurentMultiPoly>;
using CycloMatrix = Matrix<CycloNumber>;

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b) {
    return a * b - b * a;
}

// ---------------------------------------------------------------------------
// Exact division hooks used by fraction-free elimination.

inline Rational ring_exact_div(const Rational& a, const Rational& b) { return a / b; }
inline MultiPoly ring_exact_div(const MultiPoly& a, const MultiPoly& b) { return exact_quotient(a, b); }
inline LaurentMultiPoly ring_exact_div(const LaurentMultiPoly& a, const LaurentMultiPoly& b) {
    return exact_quotient(a, b);
}
inline LaurentPoly ring_exact_div(const LaurentPoly& a, const LaurentPoly& b) { return exact_quotient(a, b); }
inline CycloNumber ring_exact_div(const CycloNumber& a, const CycloNumber& b) { return a / b; }

template <class R>
bool ring_is_zero(const R& v) {
    return v == R(0L);
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
template <class R>
R det(const Matrix<R>& m) {
    if (!m.is_square()) throw AlgebraError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return R(1L);
    Matrix<R> a = m;
    R prev(1L);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring_is_zero(a(k, k))) {
            std::size_t p = k + 1;
            while (p < n && ring_is_zero(a(p, k))) ++p;
            if (p == n) return R(0L);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = ring_exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
            a(i, k) = R(0L);
        }
        prev = a(k, k);
    }
    R d = a(n - 1, n - 1);
    return negate ? R(0L) - d : d;
}

/// Determinant by Laplace expansion along the first row. Exponential; used as
/// an independent cross-check for small matrices.
template <class R>
R det_cofactor(const Matrix<R>& m) {
    if (!m.is_square()) throw AlgebraError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return R(1L);
    if (n == 1) return m(0, 0);
    if (n == 2) return R(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    R total(0L);
    for (std::size_t j = 0; j < n; ++j) {
        if (ring_is_zero(m(0, j))) continue;
        R term = m(0, j) * det_cofactor(m.minor_matrix(0, j));
        total = (j % 2 == 0) ? R(total + term) : R(total - term);
    }
    return total;
}

/// Adjugate: adj(M) M = M adj(M) = det(M) I.
template <class R>
Matrix<R> adjugate(const Matrix<R>& m) {
    std::size_t n = m.rows();
    Matrix<R> out(n, n);
    if (n == 1) {
        out(0, 0) = R(1L);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            R c = det(m.minor_matrix(j, i));
            out(i, j) = ((i + j) % 2 == 0) ? c : R(0L) - c;
        }
    return out;
}

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1) of det(tI - M), by
/// Faddeev-LeVerrier. Works over any Q-algebra.
template <class R>
std::vector<R> charpoly_coefficients(const Matrix<R>& m) {
    std::size_t n = m.rows();
    std::vector<R> c(n + 1, R(0L));
    c[n] = R(1L);
    Matrix<R> mk(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<R> next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) = next(i, i) + c[n - k + 1];
        mk = std::move(next);
        Matrix<R> am = m * mk;
        R tr(0L);
        for (std::size_t i = 0; i < n; ++i) tr = tr + am(i, i);
        c[n - k] = Rational(-1, static_cast<long>(k)) * tr;
    }
    return c;
}

inline UPoly charpoly(const QMatrix& m) { return UPoly(charpoly_coefficients(m)); }

// ---------------------------------------------------------------------------
// Linear algebra over a field F (Rational or CycloNumber).

template <class F>
struct RowEchelon {
    Matrix<F> reduced;                // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
    std::size_t rank() const { return pivots.size(); }
};

template <class F>
RowEchelon<F> rref(Matrix<F> a) {
    RowEchelon<F> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && ring_is_zero(a(p, c))) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
        F inv = F(1L) / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || ring_is_zero(a(i, c))) continue;
            F f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(a);
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
    return rref(a).rank();
}

/// Basis of the right kernel {v : A v = 0}, as columns of the result.
template <class F>
Matrix<F> kernel(const Matrix<F>& a) {
    auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix<F> out(a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        out(free_cols[k], k) = F(1L);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            out(e.pivots[r], k) = F(0L) - e.reduced(r, free_cols[k]);
    }
    return out;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    if (!a.is_square()) throw AlgebraError("inverse of a non-square matrix");
    std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F(1L);
    }
    auto e = rref(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<F> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = e.reduced(i, n + j);
    return out;
}

/// Some solution x of A x = b, or nullopt.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    auto e = rref(aug);
    Matrix<F> x(a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
    }
    return x;
}

/// Evaluates p(M) by Horner's rule.
inline QMatrix evaluate(const UPoly& p, const QMatrix& m) {
    std::size_t n = m.rows();
    QMatrix acc(n, n);
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p[static_cast<std::size_t>(k)];
    }
    return acc;
}

/// Minimal polynomial (monic) from the first linear dependency among I, M, M^2, ...
inline UPoly minimal_polynomial(const QMatrix& m) {
    std::size_t n = m.rows();
    std::vector<QMatrix> powers{QMatrix::identity(n)};
    for (std::size_t k = 1; k <= n; ++k) {
        powers.push_back(powers.back() * m);
        QMatrix sys(n * n, k);
        QMatrix rhs(n * n, 1);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t e = 0; e < n * n; ++e) sys(e, j) = powers[j].data()[e];
        for (std::size_t e = 0; e < n * n; ++e) rhs(e, 0) = powers[k].data()[e];
        if (auto x = solve(sys, rhs)) {
            std::vector<Rational> c(k + 1);
            for (std::size_t j = 0; j < k; ++j) c[j] = -(*x)(j, 0);
            c[k] = 1;
            return UPoly(std::move(c));
        }
    }
    throw AlgebraError("minimal polynomial search exceeded the dimension");
}

/// True when X lies in span{I, M, ..., M^(n-1)} (X is a polynomial in M).
inline bool is_polynomial_in(const QMatrix& x, const QMatrix& m) {
    std::size_t n = m.rows();
    QMatrix sys(n * n, n), rhs(n * n, 1);
    QMatrix pw = QMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t e = 0; e < n * n; ++e) sys(e, j) = pw.data()[e];
        pw = pw * m;
    }
    for (std::size_t e = 0; e < n * n; ++e) rhs(e, 0) = x.data()[e];
    return solve(sys, rhs).has_value();
}

inline std::string to_string(const QMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace logconn

#endif  // LOGCONN_MATRIX_HPP
