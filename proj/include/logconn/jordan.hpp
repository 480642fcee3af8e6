#ifndef LOGCONN_JORDAN_HPP
#define LOGCONN_JORDAN_HPP

#include "logconn/cyclotomic.hpp"
#include "logconn/matrix.hpp"
#include "logconn/rational.hpp"
#include "logconn/upoly.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace logconn {

/// Multiplicative Jordan-Chevalley factors M = S U = U S.
struct JCPair {
    QMatrix S;
    QMatrix U;
};

inline bool is_unipotent(const QMatrix& u) {
    QMatrix n = u - QMatrix::identity(u.rows());
    return n.pow(static_cast<unsigned>(u.rows())).is_zero();
}

inline bool is_semisimple(const QMatrix& s) { return is_squarefree(minimal_polynomial(s)); }

/// Additive split M = S + N by Newton iteration on the squarefree part of the
/// characteristic polynomial.
inline QMatrix semisimple_part(const QMatrix& m) {
    UPoly p = squarefree_part(charpoly(m));
    UPoly dp = p.derivative();
    QMatrix s = m;
    for (std::size_t iter = 0; iter <= 2 * m.rows() + 2; ++iter) {
        QMatrix ps = evaluate(p, s);
        if (ps.is_zero()) return s;
        auto inv = inverse(evaluate(dp, s));
        if (!inv) throw AlgebraError("Newton step hit a singular derivative");
        s = s - ps * *inv;
    }
    throw AlgebraError("Newton iteration for the semisimple part did not converge");
}

inline JCPair jordan_chevalley(const QMatrix& m) {
    if (!m.is_square()) throw AlgebraError("Jordan-Chevalley needs a square matrix");
    if (det(m) == 0) throw AlgebraError("Jordan-Chevalley needs an invertible matrix");
    QMatrix s = semisimple_part(m);
    auto sinv = inverse(s);
    if (!sinv) throw AlgebraError("semisimple part is singular");
    return {s, *sinv * m};
}

/// One eigenvalue class exp(2 pi i k/d), gcd(k, d) = 1.
struct WeightEntry {
    long order = 1;
    long exponent = 0;
    int multiplicity = 0;
    Rational weight;  // k/d in [0, 1)
    friend bool operator==(const WeightEntry&, const WeightEntry&) = default;
};

struct WeightData {
    std::vector<WeightEntry> entries;
    long field_order = 1;  // lcm of orders

    /// Exponent of zeta_{field_order} for entry e.
    long zeta_exponent(const WeightEntry& e) const { return e.exponent * (field_order / e.order); }
};

struct WeightResult {
    std::optional<WeightData> weights;
    UPoly failing_factor;  // non-cyclotomic part of the minimal polynomial on failure
    bool ok() const { return weights.has_value(); }
};

inline WeightResult quasi_unipotent_weights(const QMatrix& s) {
    UPoly mp = minimal_polynomial(s);
    if (!is_squarefree(mp)) throw AlgebraError("matrix is not semisimple");
    WeightResult r;
    auto msplit = cyclotomic_split(mp);
    if (msplit.remainder.degree() > 0) {
        r.failing_factor = msplit.remainder;
        return r;
    }
    auto csplit = cyclotomic_split(charpoly(s));
    WeightData w;
    for (const auto& f : csplit.factors) {
        w.field_order = lcm_long(w.field_order, f.order);
        for (long k = 0; k < f.order; ++k)
            if (gcd_long(k, f.order) == 1)
                w.entries.push_back({f.order, k, f.multiplicity, make_rational(k, f.order)});
    }
    std::sort(w.entries.begin(), w.entries.end(), [](const WeightEntry& a, const WeightEntry& b) {
        return a.weight < b.weight;
    });
    r.weights = std::move(w);
    return r;
}

/// Spectral logarithm A = sum_j q_j P_j with exp(2 pi i A) = S.
struct CentralLog {
    WeightData weights;
    std::vector<CycloMatrix> projectors;  // parallel to weights.entries
    CycloMatrix A;
};

inline CycloMatrix to_cyclo(const QMatrix& m, long order) {
    return m.map([order](const Rational& v) { return CycloNumber(UPoly(v), order); });
}

inline CentralLog central_log(const QMatrix& s) {
    auto wr = quasi_unipotent_weights(s);
    if (!wr.ok()) throw AlgebraError("not quasi-unipotent: factor " + wr.failing_factor.to_string());
    CentralLog out;
    out.weights = *wr.weights;
    long m = out.weights.field_order;
    std::size_t n = s.rows();
    CycloMatrix sc = to_cyclo(s, m);
    CycloMatrix id = to_cyclo(QMatrix::identity(n), m);
    std::vector<CycloNumber> eig;
    for (const auto& e : out.weights.entries) eig.push_back(CycloNumber::zeta_power(m, out.weights.zeta_exponent(e)));
    out.A = to_cyclo(QMatrix(n, n), m);
    for (std::size_t j = 0; j < eig.size(); ++j) {
        CycloMatrix p = id;
        for (std::size_t l = 0; l < eig.size(); ++l) {
            if (l == j) continue;
            CycloNumber c = (eig[j] - eig[l]).inverse();
            p = c * (p * (sc - eig[l] * id));
        }
        out.A = out.A + CycloNumber(out.weights.entries[j].weight) * p;
        out.projectors.push_back(std::move(p));
    }
    return out;
}

struct ProjectorCheck {
    bool resolution = false;     // sum P = I
    bool orthogonal = false;     // P_j P_k = 0, j != k
    bool eigen = false;          // S P_j = zeta^k_j P_j
    bool idempotent = false;     // P_j^2 = P_j
    bool ok() const { return resolution && orthogonal && eigen && idempotent; }
};

inline ProjectorCheck verify_central_log(const QMatrix& s, const CentralLog& cl) {
    ProjectorCheck r;
    long m = cl.weights.field_order;
    std::size_t n = s.rows();
    CycloMatrix sc = to_cyclo(s, m);
    CycloMatrix id = to_cyclo(QMatrix::identity(n), m);
    CycloMatrix zero = to_cyclo(QMatrix(n, n), m);
    CycloMatrix sum = zero;
    r.orthogonal = r.eigen = r.idempotent = true;
    for (std::size_t j = 0; j < cl.projectors.size(); ++j) {
        const auto& p = cl.projectors[j];
        sum = sum + p;
        if (!(p * p == p)) r.idempotent = false;
        CycloNumber z = CycloNumber::zeta_power(m, cl.weights.zeta_exponent(cl.weights.entries[j]));
        if (!(sc * p == z * p)) r.eigen = false;
        for (std::size_t k = 0; k < cl.projectors.size(); ++k)
            if (k != j && !(p * cl.projectors[k] == zero)) r.orthogonal = false;
    }
    r.resolution = sum == id;
    return r;
}

enum class GroupKind { GL, SL };

/// Whether S admits a logarithm in the Lie algebra of the centre of its
/// centralizer in the group. For SL the eigenvalue weights q_j (multiplicity
/// mu_j) may be shifted by integers n_j; we need sum mu_j (q_j + n_j) = 0, which
/// is solvable iff gcd(mu_j) divides sum mu_j q_j.
inline bool well_behaved_check(const QMatrix& s, GroupKind group) {
    auto wr = quasi_unipotent_weights(s);
    if (!wr.ok()) throw AlgebraError("not quasi-unipotent: factor " + wr.failing_factor.to_string());
    if (group == GroupKind::GL) return true;
    if (det(s) != 1) throw AlgebraError("matrix is not in SL");
    Rational total(0);
    long g = 0;
    for (const auto& e : wr.weights->entries) {
        total += e.weight * e.multiplicity;
        g = gcd_long(g, e.multiplicity);
    }
    if (!is_integer(total)) throw AlgebraError("weights of an SL element must sum to an integer");
    return mod_floor(total.get_num().get_si(), g) == 0;
}

enum class Branch { ZeroToOne, MinusOneToZero };

/// Residue data of a monodromy matrix: weights on the chosen branch plus the
/// nilpotent logarithm of the unipotent part.
struct ResiduePair {
    WeightData weights;
    QMatrix nilpotent;
    Branch branch = Branch::ZeroToOne;
};

/// log U for unipotent U: sum_{k>=1} (-1)^{k+1} (U - I)^k / k.
inline QMatrix unipotent_log(const QMatrix& u) {
    std::size_t n = u.rows();
    QMatrix x = u - QMatrix::identity(n);
    QMatrix pw = x, out(n, n);
    for (std::size_t k = 1; k <= n && !pw.is_zero(); ++k) {
        Rational c = make_rational(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
        out = out + c * pw;
        pw = pw * x;
    }
    return out;
}

/// exp of a nilpotent matrix (finite series).
inline QMatrix nilpotent_exp(const QMatrix& nmat) {
    std::size_t n = nmat.rows();
    QMatrix out = QMatrix::identity(n), pw = QMatrix::identity(n);
    Rational fact(1);
    for (std::size_t k = 1; k <= n; ++k) {
        pw = pw * nmat;
        if (pw.is_zero()) break;
        fact *= static_cast<long>(k);
        out = out + (Rational(1) / fact) * pw;
    }
    return out;
}

inline ResiduePair deligne_residue(const QMatrix& m, Branch branch = Branch::ZeroToOne) {
    JCPair jc = jordan_chevalley(m);
    auto wr = quasi_unipotent_weights(jc.S);
    if (!wr.ok()) throw AlgebraError("not quasi-unipotent: factor " + wr.failing_factor.to_string());
    ResiduePair r;
    r.weights = *wr.weights;
    r.branch = branch;
    if (branch == Branch::MinusOneToZero)
        for (auto& e : r.weights.entries)
            if (e.weight > 0) e.weight -= 1;
    r.nilpotent = unipotent_log(jc.U);
    return r;
}

inline std::string to_string(const CycloMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
        s += "]";
    }
    return s + "]";
}

}  // namespace logconn

#endif  // LOGCONN_JORDAN_HPP
