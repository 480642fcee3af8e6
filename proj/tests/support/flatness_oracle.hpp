#ifndef LOGCONN_TESTS_FLATNESS_ORACLE_HPP
#define LOGCONN_TESTS_FLATNESS_ORACLE_HPP

// Point-evaluation curvature: derivatives come from dual numbers and the
// bracket coefficients from a linear solve at the point, so nothing here
// goes through the symbolic Lie bracket or structure constants.

#include "logconn/saito.hpp"

#include <optional>

namespace oracle {

using namespace logconn;

struct Dual {
    Rational a, b;  // a + b eps, eps^2 = 0
};

inline Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }

/// p(point + eps * dir) as a dual number.
inline Dual eval_dual(const MultiPoly& p, const std::vector<Rational>& point, const std::vector<Rational>& dir) {
    Dual total{0, 0};
    for (const auto& [e, c] : p.terms()) {
        Dual term{c, 0};
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int r = 0; r < e[k]; ++r) term = term * Dual{point[k], dir[k]};
        total.a += term.a;
        total.b += term.b;
    }
    return total;
}

/// Curvature matrix K_ij at the point, or nullopt when the Saito matrix is
/// singular there.
inline std::optional<QMatrix> curvature_at(const LogConnection& conn, std::size_t i, std::size_t j,
                                           const std::vector<Rational>& pt) {
    const auto& fields = conn.system.fields;
    std::size_t n = fields.size();
    std::size_t m = conn.omegas.front().rows();
    QMatrix a(n, n);
    std::vector<std::vector<Rational>> dirs(n, std::vector<Rational>(n));
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t k = 0; k < n; ++k) {
            a(f, k) = eval_dual(fields[f].coeffs[k], pt, dirs[f]).a;
            dirs[f][k] = a(f, k);
        }
    // bracket [d_i, d_j] as a vector at the point
    QMatrix b(n, 1);
    for (std::size_t c = 0; c < n; ++c)
        b(c, 0) = eval_dual(fields[j].coeffs[c], pt, dirs[i]).b - eval_dual(fields[i].coeffs[c], pt, dirs[j]).b;
    auto coeff = solve(a.transpose(), b);
    if (!coeff) return std::nullopt;

    auto omega_at = [&](std::size_t l, const std::vector<Rational>& dir, bool derivative) {
        QMatrix out(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) {
                Dual d = eval_dual(conn.omegas[l](r, s), pt, dir);
                out(r, s) = derivative ? d.b : d.a;
            }
        return out;
    };
    std::vector<Rational> zero(n);
    QMatrix oi = omega_at(i, zero, false), oj = omega_at(j, zero, false);
    QMatrix k = omega_at(j, dirs[i], true) - omega_at(i, dirs[j], true) + oi * oj - oj * oi;
    for (std::size_t l = 0; l < n; ++l) k = k - (*coeff)(l, 0) * omega_at(l, zero, false);
    return k;
}

/// True when every curvature vanishes at `samples` random points off the divisor.
template <class Rng>
bool flat_at_points(const LogConnection& conn, Rng& rng, int samples = 6) {
    std::size_t n = conn.system.dim();
    std::uniform_int_distribution<int> dist(-7, 7);
    int done = 0;
    for (int guard = 0; done < samples && guard < 50 * samples; ++guard) {
        std::vector<Rational> pt(n);
        for (auto& x : pt) x = Rational(dist(rng), 1 + (guard % 3));
        bool singular = false;
        for (std::size_t i = 0; i < n && !singular; ++i)
            for (std::size_t j = i + 1; j < n && !singular; ++j) {
                auto k = curvature_at(conn, i, j, pt);
                if (!k) singular = true;
                else if (!k->is_zero()) return false;
            }
        if (!singular) ++done;
    }
    return done == samples;
}

}  // namespace oracle

#endif  // LOGCONN_TESTS_FLATNESS_ORACLE_HPP
