#ifndef LOGCONN_CASTLING_HPP
#define LOGCONN_CASTLING_HPP

#include "logconn/matrix.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/rational.hpp"
#include "logconn/saito.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace logconn {

struct GroupFactor {
    enum class Kind { Torus, SL, Abstract };
    Kind kind = Kind::Torus;
    long size = 1;     // torus rank, SL size, or abstract dimension
    std::string name;  // abstract factors only

    static GroupFactor torus(long rank) { return {Kind::Torus, rank, {}}; }
    static GroupFactor sl(long n) { return {Kind::SL, n, {}}; }
    static GroupFactor abstract(std::string name, long dim) { return {Kind::Abstract, dim, std::move(name)}; }

    long dim() const { return kind == Kind::SL ? size * size - 1 : size; }
    std::string to_string() const {
        switch (kind) {
            case Kind::Torus: return "Torus(" + std::to_string(size) + ")";
            case Kind::SL: return "SL(" + std::to_string(size) + ")";
            default: return name + "[" + std::to_string(size) + "]";
        }
    }
    friend bool operator==(const GroupFactor&, const GroupFactor&) = default;
};

enum class Side { Primal, Dual };

/// (G x SL(r), Hom(C^r, V)) with dim V = n on the primal side and
/// (G x SL(r), Hom(C^r, V*)) on the dual side. `factors` lists G only; the
/// SL(r) factor is implied by r.
struct PrehomDescriptor {
    long n = 2;
    long r = 1;
    std::vector<GroupFactor> factors;
    Side side = Side::Primal;

    void validate() const {
        if (r < 1 || r >= n) throw AlgebraError("descriptor needs 1 <= r < n");
        for (const auto& f : factors)
            if (f.size < 1) throw AlgebraError("group factor sizes must be positive");
    }
    long ambient_dim() const { return r * n; }

    /// Full group G x SL(r); SL(1) is trivial and omitted.
    std::vector<GroupFactor> group() const {
        auto g = factors;
        if (r >= 2) g.push_back(GroupFactor::sl(r));
        return g;
    }
    long group_dim() const {
        long d = 0;
        for (const auto& f : group()) d += f.dim();
        return d;
    }
    friend bool operator==(const PrehomDescriptor&, const PrehomDescriptor&) = default;
};

inline PrehomDescriptor castling_transform(const PrehomDescriptor& d) {
    d.validate();
    PrehomDescriptor out = d;
    out.r = d.n - d.r;
    out.side = d.side == Side::Primal ? Side::Dual : Side::Primal;
    return out;
}

/// Takes the ambient space of d as the new V with r = 1.
inline PrehomDescriptor rebase(const PrehomDescriptor& d) {
    d.validate();
    PrehomDescriptor out;
    out.n = d.ambient_dim();
    out.r = 1;
    out.factors = d.group();
    out.side = Side::Primal;
    return out;
}

/// Ambient dimensions along d, castle(d), castle(rebase(castle(d))), ...
inline std::vector<long> castling_chain(const PrehomDescriptor& d, int steps) {
    d.validate();
    std::vector<long> dims{d.ambient_dim()};
    PrehomDescriptor cur = d;
    for (int s = 0; s < steps; ++s) {
        if (s > 0) cur = rebase(cur);
        cur = castling_transform(cur);
        dims.push_back(cur.ambient_dim());
    }
    return dims;
}

/// Variable names of the generic n x (n-1) matrix, row-major: row k uses the
/// k-th letter of "uvwxyz..." and columns are numbered from 1.
inline std::vector<std::string> minor_product_names(long n) {
    static const std::string letters = "uvwxyzabcdefghijklmnopqrst";
    if (n < 2 || n > static_cast<long>(letters.size())) throw AlgebraError("minor product needs 2 <= n <= 26");
    std::vector<std::string> names;
    for (long k = 0; k < n; ++k)
        for (long c = 1; c < n; ++c) names.push_back(std::string(1, letters[k]) + std::to_string(c));
    return names;
}

/// Product of the n maximal minors of the generic n x (n-1) matrix. The minor
/// omitting row k takes the remaining rows in cyclic order starting after k;
/// for n = 3 this is (u1 v2 - u2 v1)(v1 w2 - v2 w1)(w1 u2 - w2 u1).
inline MultiPoly minor_product_divisor(long n) {
    auto names = minor_product_names(n);
    std::size_t nv = names.size();
    auto var = [&](long row, long col) { return MultiPoly::variable(static_cast<std::size_t>(row * (n - 1) + col), nv); };
    MultiPoly f(Rational(1), nv);
    for (long k = 0; k < n; ++k) {
        PolyMatrix m(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
        for (long i = 0; i < n - 1; ++i) {
            long row = (k + 1 + i) % n;
            for (long c = 0; c < n - 1; ++c) m(static_cast<std::size_t>(c), static_cast<std::size_t>(i)) = var(row, c);
        }
        f = f * det(m);
    }
    return f;
}

/// Infinitesimal action of (C*)^n x SL(n-1) on n x (n-1) matrices: n row
/// scalings, then E_ij = sum_rows a_i d a_j (i != j) and h_i = a_i d a_i -
/// a_{i+1} d a_{i+1}, summed over rows.
inline SaitoSystem castled_saito_system(long n) {
    auto names = minor_product_names(n);
    std::size_t nv = names.size();
    long c = n - 1;
    auto idx = [&](long row, long col) { return static_cast<std::size_t>(row * c + col); };
    auto zero_field = [&] { return VectorField{std::vector<MultiPoly>(nv, MultiPoly(Rational(0), nv))}; };
    SaitoSystem sys;
    sys.names = names;
    for (long k = 0; k < n; ++k) {
        VectorField v = zero_field();
        for (long col = 0; col < c; ++col) v.coeffs[idx(k, col)] = MultiPoly::variable(idx(k, col), nv);
        sys.fields.push_back(v);
    }
    for (long i = 0; i < c; ++i)
        for (long j = 0; j < c; ++j) {
            if (i == j) continue;
            VectorField v = zero_field();
            for (long row = 0; row < n; ++row) v.coeffs[idx(row, j)] = MultiPoly::variable(idx(row, i), nv);
            sys.fields.push_back(v);
        }
    for (long i = 0; i + 1 < c; ++i) {
        VectorField v = zero_field();
        for (long row = 0; row < n; ++row) {
            v.coeffs[idx(row, i)] = MultiPoly::variable(idx(row, i), nv);
            v.coeffs[idx(row, i + 1)] = -MultiPoly::variable(idx(row, i + 1), nv);
        }
        sys.fields.push_back(v);
    }
    sys.divisor = minor_product_divisor(n);
    return sys;
}

/// Weight rescaling r/(r-n) * w carried by the Morita equivalence across a castling.
inline Rational morita_rescale(long r, long n, const Rational& w) {
    if (r == n) throw AlgebraError("rescaling undefined for r = n");
    if (r < 1 || r > n) throw AlgebraError("rescaling needs 1 <= r < n");
    return make_rational(r, r - n) * w;
}

/// Residue-level representation of G~ x SL(n-1): generators for the torus and
/// a Chevalley basis (e_i, f_i, h_i per simple root of sl(n-1)).
struct ResidueRep {
    std::size_t rank = 0;
    long n = 3;  // the SL factor is SL(n-1)
    std::vector<QMatrix> torus_gens;
    std::vector<QMatrix> sl_gens;  // e_1, f_1, h_1, e_2, f_2, h_2, ...
    Rational weight_on_scaling;
};

inline std::string chevalley_name(std::size_t index) {
    static const char* kinds[] = {"e", "f", "h"};
    return std::string(kinds[index % 3]) + std::to_string(index / 3 + 1);
}

/// Empty when the Chevalley relations hold; otherwise a description of the first failure.
inline std::optional<std::string> chevalley_violation(const std::vector<QMatrix>& gens, long n, std::size_t m) {
    if (n < 3) return "SL(n-1) factor needs n >= 3";
    std::size_t l = static_cast<std::size_t>(n - 2);
    if (gens.size() != 3 * l) return "expected " + std::to_string(3 * l) + " Chevalley generators";
    for (const auto& g : gens)
        if (g.rows() != m || g.cols() != m) return "generator has the wrong size";
    auto e = [&](std::size_t i) { return gens[3 * i]; };
    auto f = [&](std::size_t i) { return gens[3 * i + 1]; };
    auto h = [&](std::size_t i) { return gens[3 * i + 2]; };
    auto cartan = [&](std::size_t i, std::size_t j) -> long {
        if (i == j) return 2;
        return (i + 1 == j || j + 1 == i) ? -1 : 0;
    };
    QMatrix zero(m, m);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            std::string tag = " for (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
            if (!commutator(h(i), h(j)).is_zero()) return "[h, h] != 0" + tag;
            if (!(commutator(e(i), f(j)) == (i == j ? h(i) : zero))) return "[e, f] relation fails" + tag;
            Rational a(cartan(i, j));
            if (!(commutator(h(i), e(j)) == a * e(j))) return "[h, e] relation fails" + tag;
            if (!(commutator(h(i), f(j)) == Rational(-a) * f(j))) return "[h, f] relation fails" + tag;
            if (i != j) {
                QMatrix se = e(j), sf = f(j);
                for (long k = 0; k < 1 - cartan(i, j); ++k) {
                    se = commutator(e(i), se);
                    sf = commutator(f(i), sf);
                }
                if (!se.is_zero() || !sf.is_zero()) return "Serre relation fails" + tag;
            }
        }
    return std::nullopt;
}

inline void validate(const ResidueRep& rep) {
    if (auto v = chevalley_violation(rep.sl_gens, rep.n, rep.rank)) throw AlgebraError(*v);
    for (std::size_t i = 0; i < rep.torus_gens.size(); ++i) {
        const auto& t = rep.torus_gens[i];
        if (t.rows() != rep.rank || t.cols() != rep.rank) throw AlgebraError("torus generator has the wrong size");
        for (std::size_t j = 0; j < rep.torus_gens.size(); ++j)
            if (!commutator(t, rep.torus_gens[j]).is_zero()) throw AlgebraError("torus generators do not commute");
        for (const auto& s : rep.sl_gens)
            if (!commutator(t, s).is_zero()) throw AlgebraError("torus generators do not commute with the SL part");
    }
}

inline bool residual_sl_trivial(const ResidueRep& rep) {
    validate(rep);
    for (const auto& s : rep.sl_gens)
        if (!s.is_zero()) return false;
    return true;
}

/// Residue of a representation pulled back from the other side of the
/// castling: it factors through the torus, so the SL part acts trivially.
inline ResidueRep pullback_residue(const std::vector<QMatrix>& torus_gens, long n, std::size_t rank,
                                   const Rational& weight = Rational(0)) {
    ResidueRep rep;
    rep.rank = rank;
    rep.n = n;
    rep.torus_gens = torus_gens;
    rep.sl_gens.assign(3 * static_cast<std::size_t>(n - 2), QMatrix(rank, rank));
    rep.weight_on_scaling = weight;
    validate(rep);
    return rep;
}

struct NonExtendableCertificate {
    bool residual_trivial = false;
    std::size_t generator_index = 0;  // first nonzero SL generator
    std::string generator_name;
    QMatrix generator;
};

struct NonExtendable {
    ResidueRep rep;
    NonExtendableCertificate certificate;
};

/// Residue rep phi(g, s, v) = psi(s) with zero torus part; its residual SL
/// action is nontrivial, so the connection does not extend.
inline NonExtendable gen_nonextendable(const std::vector<QMatrix>& psi, long n, std::size_t m) {
    if (auto v = chevalley_violation(psi, n, m)) throw AlgebraError("psi violates the Chevalley relations: " + *v);
    NonExtendable out;
    out.rep.rank = m;
    out.rep.n = n;
    out.rep.sl_gens = psi;
    out.rep.torus_gens.assign(static_cast<std::size_t>(n), QMatrix(m, m));
    out.rep.weight_on_scaling = 0;
    bool found = false;
    for (std::size_t i = 0; i < psi.size() && !found; ++i)
        if (!psi[i].is_zero()) {
            found = true;
            out.certificate.generator_index = i;
            out.certificate.generator_name = chevalley_name(i);
            out.certificate.generator = psi[i];
        }
    if (!found) throw AlgebraError("psi is identically zero; the connection would extend");
    out.certificate.residual_trivial = residual_sl_trivial(out.rep);
    return out;
}

inline std::vector<QMatrix> sl2_fundamental() {
    return {QMatrix{{0, 1}, {0, 0}}, QMatrix{{0, 0}, {1, 0}}, QMatrix{{1, 0}, {0, -1}}};
}

/// Adjoint representation of sl(2) in the basis (e, h, f).
inline std::vector<QMatrix> sl2_adjoint() {
    return {QMatrix{{0, -2, 0}, {0, 0, 1}, {0, 0, 0}}, QMatrix{{0, 0, 0}, {-1, 0, 0}, {0, 2, 0}},
            QMatrix{{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}};
}

}  // namespace logconn

#endif  // LOGCONN_CASTLING_HPP
