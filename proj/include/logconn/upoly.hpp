#ifndef LOGCONN_UPOLY_HPP
#define LOGCONN_UPOLY_HPP

#include "logconn/polynomial.hpp"
#include "logconn/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

/// Dense univariate polynomial over Q, coefficients from the constant term up.
class UPoly {
public:
    UPoly() = default;
    UPoly(long c) : UPoly(Rational(c)) {}  // NOLINT(implicit)
    UPoly(const Rational& c) {             // NOLINT(implicit)
        if (c != 0) c_.push_back(c);
    }
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }
    static UPoly monomial(std::size_t k, const Rational& c = Rational(1)) {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly out = *this;
        Rational l = leading();
        for (auto& v : out.c_) v /= l;
        return out;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return UPoly(std::move(v));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    UPoly operator-() const {
        UPoly out = *this;
        for (auto& v : out.c_) v = -v;
        return out;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw AlgebraError("division by zero polynomial");
        std::vector<Rational> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {UPoly(), a};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
        for (int k = a.degree(); k >= db; --k) {
            Rational f = r[static_cast<std::size_t>(k)] / b.leading();
            q[static_cast<std::size_t>(k - db)] = f;
            if (f == 0) continue;
            for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
        return UPoly(std::move(v));
    }

    Rational evaluate(const Rational& t) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    std::string to_string(const std::string& var = "t") const {
        MultiPoly p(Rational(0), 1);
        for (std::size_t k = 0; k < c_.size(); ++k)
            p += MultiPoly::monomial({static_cast<int>(k)}, c_[k]);
        return p.to_string({var});
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic gcd.
inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
struct BezoutResult {
    UPoly g, s, t;
};
inline BezoutResult extended_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rational l = r0.leading();
    if (l == 0) return {r0, s0, t0};
    UPoly inv(Rational(1) / l);
    return {r0 * inv, s0 * inv, t0 * inv};
}

inline UPoly squarefree_part(const UPoly& p) {
    if (p.is_zero()) throw AlgebraError("squarefree part of the zero polynomial");
    UPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

inline bool is_squarefree(const UPoly& p) { return gcd(p, p.derivative()).degree() == 0; }

/// f restricted to the line x_i = c_i t + d_i.
inline UPoly restrict_to_line(const MultiPoly& f, const std::vector<Rational>& c, const std::vector<Rational>& d) {
    UPoly out;
    for (const auto& [e, coef] : f.terms()) {
        UPoly term(coef);
        for (std::size_t i = 0; i < e.size(); ++i) {
            UPoly lin(std::vector<Rational>{d[i], c[i]});
            for (int k = 0; k < e[i]; ++k) term = term * lin;
        }
        out = out + term;
    }
    return out;
}

struct SquarefreeResult {
    MultiPoly part;
    bool is_reduced = false;
};

/// Reduced equation of f. A line on which f keeps its degree and restricts to
/// a squarefree polynomial certifies reducedness without multivariate gcds.
inline SquarefreeResult squarefree_part(const MultiPoly& f) {
    if (f.is_zero()) throw AlgebraError("squarefree part of the zero polynomial");
    std::size_t n = f.nvars();
    long deg = f.total_degree();
    for (long attempt = 1; attempt <= 3 && deg > 0; ++attempt) {
        std::vector<Rational> c(n), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = Rational(static_cast<long>((i * i + 3 * i) % 7) + attempt);
            d[i] = Rational(static_cast<long>((5 * i + 2 * attempt) % 11) - 5);
        }
        UPoly r = restrict_to_line(f, c, d);
        if (r.degree() == deg && is_squarefree(r)) return {normalize(f), true};
    }
    MultiPoly g = f;
    for (std::size_t i = 0; i < n && !g.is_constant(); ++i) g = gcd(g, f.derivative(i));
    MultiPoly part = g.is_constant() ? normalize(f) : normalize(exact_quotient(f, g));
    bool reduced = g.is_constant();
    return {part, reduced};
}

/// Cyclotomic polynomial Phi_d, memoised per thread.
inline const UPoly& cyclotomic(long d) {
    if (d < 1) throw AlgebraError("cyclotomic order must be positive");
    thread_local std::map<long, UPoly> cache;
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    UPoly p = UPoly::monomial(static_cast<std::size_t>(d)) - UPoly(1);
    for (long e = 1; e < d; ++e)
        if (d % e == 0) p = divmod(p, cyclotomic(e)).first;
    return cache.emplace(d, p).first->second;
}

struct CyclotomicFactor {
    long order = 0;
    int multiplicity = 0;
    friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct CyclotomicSplit {
    std::vector<CyclotomicFactor> factors;  // ascending order d
    UPoly remainder;                        // monic, no Phi_d factor in the tested range
};

/// Candidate orders: phi(d) <= deg p and d <= 2 deg(p)^2.
inline std::vector<long> cyclotomic_candidates(int degree) {
    std::vector<long> out;
    long bound = 2L * degree * degree;
    for (long d = 1; d <= std::max(bound, 1L); ++d)
        if (euler_phi(d) <= degree) out.push_back(d);
    return out;
}

/// Peels off cyclotomic factors by trial division.
inline CyclotomicSplit cyclotomic_split(const UPoly& p) {
    if (p.is_zero()) throw AlgebraError("cyclotomic split of the zero polynomial");
    CyclotomicSplit out;
    UPoly rest = p.monic();
    for (long d : cyclotomic_candidates(p.degree())) {
        const UPoly& phi = cyclotomic(d);
        if (phi.degree() > rest.degree()) continue;
        int mult = 0;
        while (rest.degree() >= phi.degree()) {
            auto [q, r] = divmod(rest, phi);
            if (!r.is_zero()) break;
            rest = std::move(q);
            ++mult;
        }
        if (mult > 0) out.factors.push_back({d, mult});
    }
    out.remainder = rest;
    return out;
}

/// Univariate MultiPoly (one variable) to dense form.
inline UPoly to_upoly(const MultiPoly& p) {
    std::vector<Rational> v;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 1; i < e.size(); ++i)
            if (e[i] != 0) throw AlgebraError("polynomial is not univariate");
        int k = e.empty() ? 0 : e[0];
        if (v.size() <= static_cast<std::size_t>(k)) v.resize(static_cast<std::size_t>(k) + 1, Rational(0));
        v[static_cast<std::size_t>(k)] = c;
    }
    return UPoly(std::move(v));
}

inline MultiPoly to_multipoly(const UPoly& p) {
    MultiPoly out(Rational(0), 1);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        out += MultiPoly::monomial({static_cast<int>(k)}, p.coeffs()[k]);
    return out;
}

/// Rational roots with multiplicities (rational root theorem on the integer-scaled polynomial).
inline std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p) {
    if (p.is_zero()) throw AlgebraError("roots of the zero polynomial");
    std::vector<std::pair<Rational, int>> out;
    UPoly rest = p.monic();
    // Zero roots first.
    int zeros = 0;
    while (rest.degree() > 0 && rest[0] == 0) {
        rest = divmod(rest, UPoly::x()).first;
        ++zeros;
    }
    if (zeros) out.emplace_back(Rational(0), zeros);
    if (rest.degree() <= 0) return out;
    Integer den_lcm(1);
    for (const auto& c : rest.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer a0 = Integer(rest[0] * den_lcm);
    Integer an = Integer(rest.leading() * den_lcm);
    auto divisors = [](Integer v) {
        std::vector<Integer> ds;
        v = abs(v);
        for (Integer d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                ds.push_back(d);
                if (d * d != v) ds.push_back(v / d);
            }
        }
        return ds;
    };
    for (const auto& num : divisors(a0)) {
        for (const auto& den : divisors(an)) {
            for (int s : {1, -1}) {
                Rational cand(num * s, den);
                cand.canonicalize();
                bool seen = false;
                for (const auto& [r, m] : out)
                    if (r == cand) seen = true;
                if (seen) continue;
                UPoly lin(std::vector<Rational>{-cand, Rational(1)});
                int mult = 0;
                while (rest.degree() >= 1) {
                    auto [q, r] = divmod(rest, lin);
                    if (!r.is_zero()) break;
                    rest = std::move(q);
                    ++mult;
                }
                if (mult) out.emplace_back(cand, mult);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace logconn

#endif  // LOGCONN_UPOLY_HPP
