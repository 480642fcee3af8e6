#ifndef LOGCONN_POLYNOMIAL_HPP
#define LOGCONN_POLYNOMIAL_HPP

#include "logconn/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

using Exponents = std::vector<int>;

/// Graded lexicographic order; variables compare in declaration order
/// (x1 > x2 > ... ). Ascending in the map, so the leading term is the last one.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        // Same total degree: a < b iff at the first differing slot a has the smaller exponent.
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            int ea = i < a.size() ? a[i] : 0;
            int eb = i < b.size() ? b[i] : 0;
            if (ea != eb) return ea < eb;
        }
        return false;
    }
};

/// Sparse multivariate polynomial over Q. With Laurent = true exponents may be
/// negative (regular functions on a torus chart).
///
/// A polynomial with zero variables is a constant and is promoted to any
/// variable count on contact, so scalar identities like Poly(0), Poly(1) work
/// as ring constants in generic code.
template <bool Laurent>
class BasicPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    BasicPoly() = default;
    BasicPoly(long c) : BasicPoly(Rational(c)) {}  // NOLINT(implicit)
    BasicPoly(const Rational& c, std::size_t nvars = 0) : nvars_(nvars) {  // NOLINT(implicit)
        if (c != 0) terms_.emplace(Exponents(nvars, 0), c);
    }

    static BasicPoly variable(std::size_t index, std::size_t nvars) {
        Exponents e(nvars, 0);
        e.at(index) = 1;
        return monomial(std::move(e), Rational(1));
    }

    static BasicPoly monomial(Exponents e, const Rational& c) {
        BasicPoly p;
        p.nvars_ = e.size();
        if constexpr (!Laurent) {
            for (int v : e)
                if (v < 0) throw AlgebraError("negative exponent in a polynomial");
        }
        if (c != 0) p.terms_.emplace(std::move(e), c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }

    /// Coefficient of the zero exponent.
    Rational constant_term() const {
        auto it = terms_.find(Exponents(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(padded(e, nvars_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const Exponents& leading_exponents() const {
        if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
        return terms_.rbegin()->first;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
        return terms_.rbegin()->second;
    }

    /// Largest total degree; -1 for the zero polynomial of a polynomial ring.
    long total_degree() const {
        if (terms_.empty()) return -1;
        long d = 0;
        for (int e : terms_.rbegin()->first) d += e;
        return d;
    }

    int degree_in(std::size_t var) const {
        int d = terms_.empty() ? -1 : std::numeric_limits<int>::min();
        for (const auto& [e, c] : terms_) d = std::max(d, var < e.size() ? e[var] : 0);
        return d;
    }
    int min_degree_in(std::size_t var) const {
        int d = terms_.empty() ? 0 : std::numeric_limits<int>::max();
        for (const auto& [e, c] : terms_) d = std::min(d, var < e.size() ? e[var] : 0);
        return d;
    }

    /// Smallest exponent appearing anywhere; used to test polynomiality.
    bool has_negative_exponent() const {
        for (const auto& [e, c] : terms_)
            for (int v : e)
                if (v < 0) return true;
        return false;
    }

    BasicPoly widened(std::size_t n) const {
        if (n == nvars_) return *this;
        if (n < nvars_) {
            for (const auto& [e, c] : terms_)
                for (std::size_t i = n; i < e.size(); ++i)
                    if (e[i] != 0) throw AlgebraError("cannot narrow polynomial in use");
        }
        BasicPoly out;
        out.nvars_ = n;
        for (const auto& [e, c] : terms_) out.terms_.emplace(padded(e, n), c);
        return out;
    }

    BasicPoly operator-() const {
        BasicPoly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    BasicPoly& operator+=(const BasicPoly& o) { return accumulate(o, Rational(1)); }
    BasicPoly& operator-=(const BasicPoly& o) { return accumulate(o, Rational(-1)); }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        std::size_t n = std::max(a.nvars_, b.nvars_);
        BasicPoly out;
        out.nvars_ = n;
        if (a.is_zero() || b.is_zero()) return out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(n, 0);
                for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                auto [it, inserted] = out.terms_.try_emplace(std::move(e), ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                    if (it->second == 0) out.terms_.erase(it);
                }
            }
        }
        return out;
    }
    BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

    BasicPoly scaled(const Rational& s) const {
        if (s == 0) return BasicPoly(Rational(0), nvars_);
        BasicPoly out = *this;
        for (auto& [e, c] : out.terms_) c *= s;
        return out;
    }
    friend BasicPoly operator*(const Rational& s, const BasicPoly& p) { return p.scaled(s); }

    BasicPoly pow(unsigned k) const {
        BasicPoly out(Rational(1), nvars_);
        BasicPoly b = *this;
        while (k) {
            if (k & 1U) out *= b;
            k >>= 1U;
            if (k) b *= b;
        }
        return out;
    }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
        if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
        std::size_t n = std::max(a.nvars_, b.nvars_);
        return a.widened(n).terms_ == b.widened(n).terms_;
    }

    /// Partial derivative d/dx_var.
    BasicPoly derivative(std::size_t var) const {
        BasicPoly out;
        out.nvars_ = std::max(nvars_, var + 1);
        for (const auto& [e, c] : terms_) {
            int k = var < e.size() ? e[var] : 0;
            if (k == 0) continue;
            Exponents d = padded(e, out.nvars_);
            d[var] -= 1;
            out.terms_.emplace(std::move(d), c * k);
        }
        return out;
    }

    Rational evaluate(std::span<const Rational> point) const {
        Rational total(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (i >= point.size()) throw AlgebraError("evaluation point too short");
                if (e[i] > 0) {
                    t *= logconn::pow(point[i], static_cast<unsigned>(e[i]));
                } else {
                    if (point[i] == 0) throw AlgebraError("Laurent monomial evaluated at zero");
                    t /= logconn::pow(point[i], static_cast<unsigned>(-e[i]));
                }
            }
            total += t;
        }
        return total;
    }

    /// Multiply by the monomial x^shift.
    BasicPoly shifted(const Exponents& shift) const {
        std::size_t n = std::max(nvars_, shift.size());
        BasicPoly out;
        out.nvars_ = n;
        for (const auto& [e, c] : terms_) {
            Exponents d = padded(e, n);
            for (std::size_t i = 0; i < shift.size(); ++i) d[i] += shift[i];
            if constexpr (!Laurent) {
                for (int v : d)
                    if (v < 0) throw AlgebraError("shift leaves the polynomial ring");
            }
            out.terms_.emplace(std::move(d), c);
        }
        return out;
    }

    /// True when the polynomial is c * x^e for a single term.
    bool is_monomial() const { return terms_.size() == 1; }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            bool unit_monomial = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
            Rational mag = abs(c);
            if (!first) s += sgn(c) < 0 ? " - " : " + ";
            else if (sgn(c) < 0) s += "-";
            first = false;
            bool need_coeff = unit_monomial || mag != 1;
            if (need_coeff) s += logconn::to_string(mag);
            bool wrote = need_coeff;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (wrote) s += "*";
                s += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
                if (e[i] != 1) s += "^" + std::to_string(e[i]);
                wrote = true;
            }
        }
        return s;
    }

private:
    static Exponents padded(const Exponents& e, std::size_t n) {
        if (e.size() == n) return e;
        Exponents out(n, 0);
        for (std::size_t i = 0; i < std::min(n, e.size()); ++i) out[i] = e[i];
        return out;
    }

    BasicPoly& accumulate(const BasicPoly& o, const Rational& s) {
        if (o.nvars_ > nvars_) *this = widened(o.nvars_);
        for (const auto& [e, c] : o.terms_) {
            Exponents key = padded(e, nvars_);
            auto [it, inserted] = terms_.try_emplace(std::move(key), s * c);
            if (!inserted) {
                it->second += s * c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

using MultiPoly = BasicPoly<false>;
using LaurentMultiPoly = BasicPoly<true>;

inline LaurentMultiPoly to_laurent(const MultiPoly& p) {
    LaurentMultiPoly out(Rational(0), p.nvars());
    for (const auto& [e, c] : p.terms()) out += LaurentMultiPoly::monomial(e, c);
    return out;
}

/// Back to the polynomial ring; nullopt if some exponent is negative.
inline std::optional<MultiPoly> to_polynomial(const LaurentMultiPoly& p) {
    if (p.has_negative_exponent()) return std::nullopt;
    MultiPoly out(Rational(0), p.nvars());
    for (const auto& [e, c] : p.terms()) out += MultiPoly::monomial(e, c);
    return out;
}

// ---------------------------------------------------------------------------
// Division, gcd, squarefree part (polynomial ring only).

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw AlgebraError("division by zero polynomial");
    std::size_t n = std::max(a.nvars(), b.nvars());
    MultiPoly rem = a.widened(n);
    MultiPoly den = b.widened(n);
    MultiPoly quot(Rational(0), n);
    const Exponents& lb = den.leading_exponents();
    const Rational& lcb = den.leading_coefficient();
    while (!rem.is_zero()) {
        const Exponents& lr = rem.leading_exponents();
        Exponents shift(n);
        for (std::size_t i = 0; i < n; ++i) {
            shift[i] = lr[i] - lb[i];
            if (shift[i] < 0) return std::nullopt;
        }
        MultiPoly t = MultiPoly::monomial(shift, rem.leading_coefficient() / lcb);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

/// Exact Laurent division: clear monomial denominators, divide, shift back.
inline std::optional<LaurentMultiPoly> divide_exact(const LaurentMultiPoly& a,
                                                    const LaurentMultiPoly& b) {
    if (b.is_zero()) throw AlgebraError("division by zero polynomial");
    std::size_t n = std::max(a.nvars(), b.nvars());
    if (a.is_zero()) return LaurentMultiPoly(Rational(0), n);
    Exponents sa(n), sb(n);
    for (std::size_t i = 0; i < n; ++i) {
        sa[i] = -std::min(0, a.min_degree_in(i));
        sb[i] = -b.min_degree_in(i);  // strip all monomial content of b
    }
    auto pa = to_polynomial(a.shifted(sa));
    auto pb = to_polynomial(b.shifted(sb));
    auto q = divide_exact(*pa, *pb);
    if (!q) return std::nullopt;
    Exponents back(n);
    for (std::size_t i = 0; i < n; ++i) back[i] = sb[i] - sa[i];
    return to_laurent(*q).shifted(back);
}

template <bool L>
BasicPoly<L> exact_quotient(const BasicPoly<L>& a, const BasicPoly<L>& b) {
    auto q = divide_exact(a, b);
    if (!q) throw AlgebraError("polynomial division is not exact");
    return *q;
}

/// Scales to integer coefficients with content 1 and positive leading coefficient.
inline MultiPoly normalize(const MultiPoly& p) {
    if (p.is_zero()) return p;
    Integer den_lcm(1), num_gcd(0);
    for (const auto& [e, c] : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational s(den_lcm, num_gcd);
    s.canonicalize();
    if (sgn(p.leading_coefficient()) < 0) s = -s;
    return p.scaled(s);
}

namespace detail {

/// Coefficients of p as a polynomial in x_var; entry k is the coefficient of x_var^k.
inline std::vector<MultiPoly> split_in(const MultiPoly& p, std::size_t var) {
    std::size_t n = p.nvars();
    int d = p.degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, 0) + 1), MultiPoly(Rational(0), n));
    for (const auto& [e, c] : p.terms()) {
        Exponents r = e;
        int k = r[var];
        r[var] = 0;
        out[static_cast<std::size_t>(k)] += MultiPoly::monomial(std::move(r), c);
    }
    return out;
}

inline MultiPoly join_in(const std::vector<MultiPoly>& coeffs, std::size_t var, std::size_t n) {
    MultiPoly out(Rational(0), n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        Exponents s(n, 0);
        s[var] = static_cast<int>(k);
        out += coeffs[k].widened(n).shifted(s);
    }
    return out;
}

inline int udeg(const std::vector<MultiPoly>& a) {
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k)
        if (!a[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

inline void trim(std::vector<MultiPoly>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

/// Pseudo-remainder prem(A, B) = lc(B)^(degA - degB + 1) A mod B.
inline std::vector<MultiPoly> prem(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b) {
    int db = udeg(b);
    int da = udeg(a);
    const MultiPoly& lb = b[static_cast<std::size_t>(db)];
    int steps = da - db + 1;
    trim(a);
    while (udeg(a) >= db) {
        int dr = udeg(a);
        MultiPoly lr = a[static_cast<std::size_t>(dr)];
        for (auto& c : a) c = c * lb;
        for (int k = 0; k <= db; ++k)
            a[static_cast<std::size_t>(k + dr - db)] -= lr * b[static_cast<std::size_t>(k)];
        trim(a);
        --steps;
    }
    if (steps > 0) {
        MultiPoly f = lb.pow(static_cast<unsigned>(steps));
        for (auto& c : a) c = c * f;
    }
    return a;
}

inline int highest_var(const MultiPoly& p) {
    int v = -1;
    for (const auto& [e, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) v = std::max(v, static_cast<int>(i));
    return v;
}

inline MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g);

/// gcd of the coefficients of p viewed in x_var.
inline MultiPoly content_in(const std::vector<MultiPoly>& coeffs) {
    MultiPoly c(Rational(0));
    for (const auto& k : coeffs) {
        if (k.is_zero()) continue;
        c = c.is_zero() ? normalize(k) : gcd_rec(c, k);
        if (c.is_constant()) return MultiPoly(Rational(1), k.nvars());
    }
    return c;
}

inline MultiPoly gcd_rec(const MultiPoly& f0, const MultiPoly& g0) {
    std::size_t n = std::max(f0.nvars(), g0.nvars());
    MultiPoly f = f0.widened(n), g = g0.widened(n);
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    if (f.is_constant() || g.is_constant()) return MultiPoly(Rational(1), n);
    int v = std::max(highest_var(f), highest_var(g));
    auto var = static_cast<std::size_t>(v);
    auto fc = split_in(f, var);
    auto gc = split_in(g, var);
    if (udeg(fc) == 0) return gcd_rec(content_in(gc), f);
    if (udeg(gc) == 0) return gcd_rec(content_in(fc), g);

    MultiPoly cf = content_in(fc), cg = content_in(gc);
    MultiPoly cont = gcd_rec(cf, cg);
    for (auto& c : fc) c = exact_quotient(c, cf);
    for (auto& c : gc) c = exact_quotient(c, cg);
    trim(fc);
    trim(gc);
    if (udeg(fc) < udeg(gc)) std::swap(fc, gc);

    // Subresultant polynomial remainder sequence.
    std::vector<MultiPoly> a = fc, b = gc;
    MultiPoly gs(Rational(1), n), hs(Rational(1), n);
    while (true) {
        int delta = udeg(a) - udeg(b);
        auto r = prem(a, b);
        if (udeg(r) < 0) break;
        if (udeg(r) == 0) {
            b = {MultiPoly(Rational(1), n)};
            break;
        }
        MultiPoly divisor = gs * hs.pow(static_cast<unsigned>(delta));
        for (auto& c : r) c = exact_quotient(c, divisor);
        a = std::move(b);
        b = std::move(r);
        gs = a[static_cast<std::size_t>(udeg(a))];
        if (delta == 0) {
            // h stays
        } else if (delta == 1) {
            hs = gs;
        } else {
            hs = exact_quotient(gs.pow(static_cast<unsigned>(delta)),
                                hs.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    auto pb = b;
    MultiPoly pc = content_in(pb);
    for (auto& c : pb) c = exact_quotient(c, pc);
    return normalize(join_in(pb, var, n) * cont);
}

}  // namespace detail

/// Greatest common divisor, normalized (integer primitive, positive leading
/// coefficient). Subresultant PRS with content extraction, recursing on variables.
inline MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
    if (f.is_zero() && g.is_zero()) return MultiPoly(Rational(0), std::max(f.nvars(), g.nvars()));
    return detail::gcd_rec(f, g);
}

/// f / g when the quotient is a nonzero constant.
inline std::optional<Rational> constant_ratio(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero() || f.is_zero()) return std::nullopt;
    Rational c = f.leading_coefficient() / g.leading_coefficient();
    if (f == g.scaled(c)) return c;
    return std::nullopt;
}

}  // namespace logconn

#endif  // LOGCONN_POLYNOMIAL_HPP
