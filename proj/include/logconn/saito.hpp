#ifndef LOGCONN_SAITO_HPP
#define LOGCONN_SAITO_HPP

#include "logconn/matrix.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/upoly.hpp"
#include "logconn/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

/// Polynomial vector field sum_i a_i d/dx_i.
struct VectorField {
    std::vector<MultiPoly> coeffs;

    std::size_t dim() const { return coeffs.size(); }

    /// V(f).
    MultiPoly apply(const MultiPoly& f) const {
        MultiPoly out(Rational(0), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            if (!coeffs[i].is_zero()) out += coeffs[i] * f.derivative(i);
        return out;
    }

    PolyMatrix apply(const PolyMatrix& m) const {
        return m.map([this](const MultiPoly& e) { return apply(e); });
    }

    friend bool operator==(const VectorField& a, const VectorField& b) { return a.coeffs == b.coeffs; }

    /// Euler field sum_i w_i x_i d/dx_i.
    static VectorField euler(const std::vector<long>& weights) {
        VectorField e;
        std::size_t n = weights.size();
        for (std::size_t i = 0; i < n; ++i)
            e.coeffs.push_back(MultiPoly::variable(i, n).scaled(Rational(weights[i])));
        return e;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        std::string s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (coeffs[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string v = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            s += "(" + coeffs[i].to_string(names) + ")*d" + v;
        }
        return s.empty() ? "0" : s;
    }
};

inline VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    if (v.dim() != w.dim()) throw AlgebraError("vector fields on different ambient spaces");
    VectorField out;
    for (std::size_t i = 0; i < v.dim(); ++i) out.coeffs.push_back(v.apply(w.coeffs[i]) - w.apply(v.coeffs[i]));
    return out;
}

/// n such that E(f) = n f for E = sum w_i x_i d_i; nullopt when f is not
/// weighted homogeneous for these weights.
inline std::optional<Rational> euler_check(const MultiPoly& f, const std::vector<long>& weights) {
    if (f.is_zero()) throw AlgebraError("euler check of the zero polynomial");
    if (weights.size() < f.nvars()) throw AlgebraError("too few weights for the polynomial");
    for (long w : weights)
        if (w <= 0) throw AlgebraError("weights must be positive");
    MultiPoly ef = VectorField::euler(weights).apply(f.widened(weights.size()));
    if (ef.is_zero()) return Rational(0);
    return constant_ratio(ef, f);
}

struct SaitoSystem {
    std::vector<VectorField> fields;
    MultiPoly divisor;
    std::vector<std::string> names;  // optional variable names for printing

    std::size_t dim() const { return fields.size(); }

    /// Row i holds the coefficients of field i.
    PolyMatrix saito_matrix() const {
        std::size_t n = dim();
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (fields[i].dim() != n) throw AlgebraError("Saito system needs n fields on n variables");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = fields[i].coeffs[j].widened(n);
        }
        return m;
    }
};

struct SaitoResult {
    bool free = false;
    Rational unit;  // det = unit * f; zero when det is not a constant multiple
    bool reduced = false;
    bool logarithmic = false;     // every field is tangent: f | delta_i(f)
    MultiPoly determinant;
    MultiPoly squarefree;         // reduced equation of the divisor
    int non_tangent_field = -1;   // first field with f not dividing delta(f)
};

inline SaitoResult saito_check(const SaitoSystem& sys) {
    SaitoResult r;
    std::size_t n = sys.dim();
    if (n == 0) throw AlgebraError("empty Saito system");
    if (sys.divisor.is_zero()) throw AlgebraError("divisor equation is zero");
    MultiPoly f = sys.divisor.widened(n);
    r.determinant = det(sys.saito_matrix());
    auto sq = squarefree_part(f);
    r.squarefree = sq.part;
    r.reduced = sq.is_reduced;
    r.logarithmic = true;
    for (std::size_t i = 0; i < n && r.logarithmic; ++i)
        if (!divide_exact(sys.fields[i].apply(f), f)) {
            r.logarithmic = false;
            r.non_tangent_field = static_cast<int>(i);
        }
    auto c = constant_ratio(r.determinant, f);
    r.unit = c.value_or(Rational(0));
    r.free = c.has_value() && r.reduced && r.logarithmic;
    return r;
}

/// Connection matrices Omega_i = Omega(delta_i) in a Saito frame.
struct LogConnection {
    SaitoSystem system;
    std::vector<PolyMatrix> omegas;

    std::size_t rank() const { return omegas.empty() ? 0 : omegas.front().rows(); }

    void validate() const {
        if (omegas.size() != system.dim()) throw AlgebraError("one connection matrix per Saito field expected");
        for (const auto& o : omegas)
            if (!o.is_square() || o.rows() != rank()) throw AlgebraError("connection matrices must be square of equal size");
    }
};

/// Structure constants c[i][j][k] with [delta_i, delta_j] = sum_k c_ijk delta_k.
/// Throws when the fields do not close under bracket over the polynomial ring.
using StructureConstants = std::vector<std::vector<std::vector<MultiPoly>>>;

inline StructureConstants structure_constants(const SaitoSystem& sys) {
    std::size_t n = sys.dim();
    PolyMatrix a = sys.saito_matrix();
    MultiPoly d = det(a);
    if (d.is_zero()) throw AlgebraError("Saito matrix is singular");
    PolyMatrix adj = adjugate(a);
    StructureConstants c(n, std::vector<std::vector<MultiPoly>>(n, std::vector<MultiPoly>(n, MultiPoly(Rational(0), n))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            VectorField b = lie_bracket(sys.fields[i], sys.fields[j]);
            // Row vector b = c A, so c = b adj(A) / det(A).
            for (std::size_t k = 0; k < n; ++k) {
                MultiPoly num(Rational(0), n);
                for (std::size_t l = 0; l < n; ++l) num += b.coeffs[l] * adj(l, k);
                auto q = divide_exact(num, d);
                if (!q)
                    throw AlgebraError("fields " + std::to_string(i) + " and " + std::to_string(j) +
                                       " do not close under bracket");
                c[i][j][k] = *q;
                c[j][i][k] = -*q;
            }
        }
    return c;
}

/// delta_i(Omega_j) - delta_j(Omega_i) + [Omega_i, Omega_j] - sum_k c_ijk Omega_k.
inline PolyMatrix curvature(const LogConnection& conn, const StructureConstants& c, std::size_t i, std::size_t j) {
    const auto& f = conn.system.fields;
    const auto& om = conn.omegas;
    PolyMatrix k = f[i].apply(om[j]) - f[j].apply(om[i]) + commutator(om[i], om[j]);
    for (std::size_t l = 0; l < om.size(); ++l)
        if (!c[i][j][l].is_zero()) k = k - c[i][j][l] * om[l];
    return k;
}

struct FlatnessResult {
    bool flat = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // first pair with nonzero curvature
};

inline FlatnessResult flatness_check(const LogConnection& conn) {
    conn.validate();
    auto c = structure_constants(conn.system);
    FlatnessResult r;
    std::size_t n = conn.omegas.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!curvature(conn, c, i, j).is_zero()) {
                r.flat = false;
                r.witness = std::make_pair(i, j);
                return r;
            }
    return r;
}

inline QMatrix residue_at_origin(const LogConnection& conn, std::size_t field_index) {
    if (field_index >= conn.omegas.size()) throw AlgebraError("field index out of range");
    std::vector<Rational> zero(conn.system.dim(), Rational(0));
    return conn.omegas[field_index].map([&](const MultiPoly& p) { return p.evaluate(zero); });
}

}  // namespace logconn

#endif  // LOGCONN_SAITO_HPP
