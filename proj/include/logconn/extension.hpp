#ifndef LOGCONN_EXTENSION_HPP
#define LOGCONN_EXTENSION_HPP

#include "logconn/birkhoff.hpp"
#include "logconn/matrix.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/saito.hpp"
#include "logconn/upoly.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace logconn {

// Geometry: C^2 \ {0} with coordinates (x, y), C* acting with weights (p, q),
// D = {f = 0} weighted homogeneous. chart0 = {x != 0} has functions
// Q[x^+-1, y]; chart_inf = {y != 0} has Q[x, y^+-1]. Frames are row vectors
// of weight-homogeneous sections, e_inf = e_0 G, and a connection in a frame e
// is given by nabla_X e = e Omega_X for the Saito fields X in {E, H}.

struct ChartData {
    std::vector<long> characters;       // weight of each frame vector
    std::vector<Laurent2Matrix> omegas;  // {Omega_E, Omega_H}
};

struct ConnectionData {
    long p = 1, q = 1;
    MultiPoly f;
    std::size_t rank = 0;
    ChartData chart0, chart_inf;
    Laurent2Matrix transition;  // G
};

/// Saito frame {E, H}: E = p x dx + q y dy, H = f_y dx - f_x dy.
inline SaitoSystem weighted_saito_system(long p, long q, const MultiPoly& f) {
    MultiPoly g = f.widened(2);
    SaitoSystem s;
    s.fields.push_back(VectorField::euler({p, q}));
    s.fields.push_back(VectorField{{g.derivative(1), -g.derivative(0)}});
    s.divisor = g;
    s.names = {"x", "y"};
    return s;
}

inline LaurentMultiPoly apply_field(const VectorField& v, const LaurentMultiPoly& g) {
    LaurentMultiPoly out(Rational(0), 2);
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (!v.coeffs[i].is_zero()) out += to_laurent(v.coeffs[i]) * g.derivative(i);
    return out;
}

inline Laurent2Matrix apply_field(const VectorField& v, const Laurent2Matrix& m) {
    return m.map([&](const LaurentMultiPoly& e) { return apply_field(v, e); });
}

inline Laurent2Matrix to_laurent(const PolyMatrix& m) {
    return m.map([](const MultiPoly& e) { return to_laurent(e); });
}

inline long weight_of(const Exponents& e, long p, long q) {
    long a = e.size() > 0 ? e[0] : 0, b = e.size() > 1 ? e[1] : 0;
    return p * a + q * b;
}

/// Entry (i, k) must be homogeneous of weight cols[k] - rows[i] + extra.
inline void check_weights(const Laurent2Matrix& m, const std::vector<long>& rows, const std::vector<long>& cols,
                          long extra, long p, long q, const std::string& what) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            for (const auto& [e, c] : m(i, k).terms())
                if (weight_of(e, p, q) != cols[k] - rows[i] + extra)
                    throw AlgebraError(what + " entry (" + std::to_string(i) + ", " + std::to_string(k) +
                                       ") is not homogeneous of the required weight");
}

/// var must not appear with a negative exponent.
inline bool regular_in(const Laurent2Matrix& m, std::size_t var) {
    for (const auto& e : m.data())
        if (!e.is_zero() && e.min_degree_in(var) < 0) return false;
    return true;
}

inline std::optional<PolyMatrix> to_polynomial(const Laurent2Matrix& m) {
    std::vector<MultiPoly> out;
    for (const auto& e : m.data()) {
        auto p = to_polynomial(e);
        if (!p) return std::nullopt;
        out.push_back(p->widened(2));
    }
    return PolyMatrix(m.rows(), m.cols(), std::move(out));
}

/// Gauge transform Phi^{-1}(Omega Phi + X(Phi)); det Phi must be a monomial.
inline Laurent2Matrix gauge(const Laurent2Matrix& omega, const Laurent2Matrix& phi, const VectorField& x) {
    LaurentMultiPoly d = det(phi);
    if (!d.is_monomial()) throw AlgebraError("gauge matrix is not invertible over the chart");
    Laurent2Matrix num = adjugate(phi) * (omega * phi + apply_field(x, phi));
    return num.map([&](const LaurentMultiPoly& e) { return exact_quotient(e, d); });
}

struct ExtendedConnection {
    LogConnection global;
    Laurent2Matrix phi0, phi_inf;    // e_global = e_0 phi0 = e_inf phi_inf
    std::vector<int> twists;         // splitting exponents n_k
    std::vector<long> frame_weights;  // weights of the global frame, -n_k
    std::vector<std::pair<Rational, int>> eigenvalues;  // of Omega_E - diag(a) on chart0
};

struct ConnectionCheck {
    Rational bracket;                 // [E, H] = bracket * H
    std::vector<std::pair<Rational, int>> eigenvalues;
};

/// Validates the chart data: shapes, weights, chart regularity, per-chart
/// flatness, exact and sampled compatibility, quasi-unipotent monodromy.
inline ConnectionCheck check_connection_data(const ConnectionData& data) {
    std::size_t m = data.rank;
    long p = data.p, q = data.q;
    if (p < 1 || q < 1) throw AlgebraError("weights p, q must be positive");
    if (m == 0) throw AlgebraError("rank must be positive");
    auto n = euler_check(data.f, {p, q});
    if (!n) throw AlgebraError("divisor is not weighted homogeneous for the given weights");
    ConnectionCheck out;
    out.bracket = *n - Rational(p + q);
    SaitoSystem sys = weighted_saito_system(p, q, data.f);
    long hw = n->get_num().get_si() - p - q;  // weight of H

    for (const ChartData* ch : {&data.chart0, &data.chart_inf}) {
        if (ch->characters.size() != m) throw AlgebraError("one character per frame vector expected");
        if (ch->omegas.size() != 2) throw AlgebraError("each chart needs Omega_E and Omega_H");
        for (const auto& o : ch->omegas)
            if (o.rows() != m || o.cols() != m) throw AlgebraError("connection matrix has the wrong size");
    }
    const auto& a = data.chart0.characters;
    const auto& b = data.chart_inf.characters;
    const auto& g = data.transition;
    if (g.rows() != m || g.cols() != m) throw AlgebraError("transition has the wrong size");
    check_weights(g, a, b, 0, p, q, "transition");
    if (!det(g).is_monomial()) throw AlgebraError("transition is not invertible on the overlap");
    for (int c = 0; c < 2; ++c) {
        const ChartData& ch = c == 0 ? data.chart0 : data.chart_inf;
        std::string name = c == 0 ? "chart0" : "chartInf";
        check_weights(ch.omegas[0], ch.characters, ch.characters, 0, p, q, name + " Omega_E");
        check_weights(ch.omegas[1], ch.characters, ch.characters, hw, p, q, name + " Omega_H");
        for (const auto& o : ch.omegas)
            if (!regular_in(o, c == 0 ? 1 : 0)) throw AlgebraError(name + " connection matrix has a pole in the chart");
        const auto& oe = ch.omegas[0];
        const auto& oh = ch.omegas[1];
        Laurent2Matrix curv = apply_field(sys.fields[0], oh) - apply_field(sys.fields[1], oe) + commutator(oe, oh) -
                              LaurentMultiPoly(out.bracket, 2) * oh;
        if (!curv.is_zero()) throw AlgebraError(name + " connection is not flat");
    }

    // Compatibility G Omega_inf = Omega_0 G + X(G), sampled then exact.
    for (int k = 0; k < 25; ++k) {
        std::vector<Rational> pt{make_rational(k + 2, k % 3 + 1), make_rational(-(2 * k + 3), k % 4 + 2)};
        auto ev = [&](const Laurent2Matrix& mm) { return mm.map([&](const LaurentMultiPoly& e) { return e.evaluate(pt); }); };
        for (int x = 0; x < 2; ++x) {
            QMatrix lhs = ev(g) * ev(data.chart_inf.omegas[x]);
            QMatrix rhs = ev(data.chart0.omegas[x]) * ev(g) + ev(apply_field(sys.fields[x], g));
            if (!(lhs == rhs)) throw AlgebraError("charts are incompatible at a sample point");
        }
    }
    for (int x = 0; x < 2; ++x)
        if (!(g * data.chart_inf.omegas[x] == data.chart0.omegas[x] * g + apply_field(sys.fields[x], g)))
            throw AlgebraError("charts are incompatible across the transition");

    // Monodromy: Omega_E - diag(a) has constant characteristic polynomial
    // with rational roots exactly when the monodromy is quasi-unipotent.
    Laurent2Matrix phi = data.chart0.omegas[0];
    for (std::size_t i = 0; i < m; ++i) phi(i, i) -= LaurentMultiPoly(Rational(a[i]), 2);
    auto cp = charpoly_coefficients(phi);
    std::vector<Rational> coeffs;
    for (const auto& c : cp) {
        if (!c.is_constant()) throw AlgebraError("monodromy eigenvalues are not constant: charts incompatible");
        coeffs.push_back(c.constant_term());
    }
    out.eigenvalues = rational_roots(UPoly(coeffs));
    int found = 0;
    for (const auto& r : out.eigenvalues) found += r.second;
    if (found != static_cast<int>(m))
        throw AlgebraError("monodromy is not quasi-unipotent: residue eigenvalues are not rational");
    return out;
}

/// Extends a chart-wise logarithmic connection on C^2 \ {0} to C^2: an
/// equivariant Birkhoff factorization of the transition produces gauges phi0,
/// phi_inf into a global frame in which both charts give the same polynomial
/// connection matrices.
inline ExtendedConnection extend_connection(const ConnectionData& data) {
    ConnectionCheck chk = check_connection_data(data);
    std::size_t m = data.rank;
    long p = data.p, q = data.q;
    const auto& a = data.chart0.characters;
    const auto& b = data.chart_inf.characters;
    const auto& g = data.transition;

    // T_ij(z) = z^{-b_j} G_ij(1, z^q).
    LaurentMatrix t(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& [e, c] : g(i, j).terms()) {
                long beta = e.size() > 1 ? e[1] : 0;
                t(i, j) += LaurentPoly::monomial(static_cast<int>(q * beta - b[j]), c);
            }
    // Rows of T^T are congruent mod q; combining columns of equal degree mod q
    // keeps the factors equivariant.
    BirkhoffFactors bf = birkhoff_factorize(t.transpose(), q);
    LaurentMatrix l = bf.plus.transpose();

    ExtendedConnection out;
    out.twists = bf.exponents;
    out.eigenvalues = chk.eigenvalues;
    for (int nk : bf.exponents) out.frame_weights.push_back(-nk);

    out.phi0 = Laurent2Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (const auto& [e, c] : l(i, k).terms()) {
                long num = -a[i] - bf.exponents[k] - e;
                if (mod_floor(e, q) != 0 || mod_floor(num, p) != 0)
                    throw AlgebraError("internal error: factorization left the equivariant class");
                out.phi0(i, k) += LaurentMultiPoly::monomial({static_cast<int>(num / p), static_cast<int>(e / q)}, c);
            }

    LaurentMultiPoly dg = det(g);
    out.phi_inf = (adjugate(g) * out.phi0).map([&](const LaurentMultiPoly& e) { return exact_quotient(e, dg); });

    LaurentMultiPoly d0 = det(out.phi0), dinf = det(out.phi_inf);
    if (!regular_in(out.phi0, 1) || !d0.is_monomial() || weight_of(d0.leading_exponents(), 0, 1) != 0)
        throw AlgebraError("internal error: chart0 gauge is not invertible on its chart");
    if (!regular_in(out.phi_inf, 0) || !dinf.is_monomial() || weight_of(dinf.leading_exponents(), 1, 0) != 0)
        throw AlgebraError("internal error: chartInf gauge is not invertible on its chart");

    SaitoSystem sys = weighted_saito_system(p, q, data.f);
    out.global.system = sys;
    for (int x = 0; x < 2; ++x) {
        Laurent2Matrix w0 = gauge(data.chart0.omegas[x], out.phi0, sys.fields[x]);
        Laurent2Matrix winf = gauge(data.chart_inf.omegas[x], out.phi_inf, sys.fields[x]);
        if (!(w0 == winf)) throw AlgebraError("internal error: charts disagree in the global frame");
        auto poly = to_polynomial(w0);
        if (!poly) throw AlgebraError("internal error: global connection matrix is not polynomial");
        out.global.omegas.push_back(*poly);
    }
    if (!flatness_check(out.global).flat) throw AlgebraError("internal error: extended connection is not flat");
    return out;
}

/// Exact restriction identities: phi0 = G phi_inf and
/// phi Omega = Omega_chart phi + X(phi) on both charts.
inline bool verify_extension(const ConnectionData& data, const ExtendedConnection& ext) {
    if (!(data.transition * ext.phi_inf == ext.phi0)) return false;
    const auto& sys = ext.global.system;
    for (int x = 0; x < 2; ++x) {
        Laurent2Matrix om = to_laurent(ext.global.omegas[x]);
        if (!(ext.phi0 * om == data.chart0.omegas[x] * ext.phi0 + apply_field(sys.fields[x], ext.phi0))) return false;
        if (!(ext.phi_inf * om == data.chart_inf.omegas[x] * ext.phi_inf + apply_field(sys.fields[x], ext.phi_inf)))
            return false;
    }
    return true;
}

}  // namespace logconn

#endif  // LOGCONN_EXTENSION_HPP
