#ifndef LOGCONN_LAURENT_HPP
#define LOGCONN_LAURENT_HPP

#include "logconn/polynomial.hpp"
#include "logconn/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace logconn {

/// Univariate Laurent polynomial in z over Q: finite support, no zero coefficients.
class LaurentPoly {
public:
    using TermMap = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT(implicit)
    LaurentPoly(const Rational& c) {                   // NOLINT(implicit)
        if (c != 0) terms_.emplace(0, c);
    }
    static LaurentPoly monomial(int k, const Rational& c = Rational(1)) {
        LaurentPoly p;
        if (c != 0) p.terms_.emplace(k, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    Rational coefficient(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly out = *this;
        for (auto& [k, c] : out.terms_) c = -c;
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
        return out;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly scaled(const Rational& s) const {
        if (s == 0) return {};
        LaurentPoly out = *this;
        for (auto& [k, c] : out.terms_) c *= s;
        return out;
    }
    LaurentPoly shifted(int k) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
        return out;
    }
    /// z -> z^-1.
    LaurentPoly inverted() const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
        return out;
    }

    Rational evaluate(const Rational& z) const {
        Rational total(0);
        for (const auto& [k, c] : terms_) {
            if (k >= 0) total += c * pow(z, static_cast<unsigned>(k));
            else {
                if (z == 0) throw AlgebraError("Laurent polynomial evaluated at zero");
                total += c / pow(z, static_cast<unsigned>(-k));
            }
        }
        return total;
    }

    std::string to_string(const std::string& var = "z") const {
        LaurentMultiPoly p(Rational(0), 1);
        for (const auto& [k, c] : terms_) p += LaurentMultiPoly::monomial({k}, c);
        return p.to_string({var});
    }

private:
    void add_term(int k, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    TermMap terms_;
};

/// Exact division in Q[z, z^-1]; nullopt when not exact.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw AlgebraError("division by zero Laurent polynomial");
    if (a.is_zero()) return LaurentPoly();
    // Long division from the top; quotient exponents bounded below by a.min - b.min.
    LaurentPoly rem = a, quot;
    int bmax = b.max_degree();
    int qmin = a.min_degree() - b.min_degree();
    Rational lb = b.coefficient(bmax);
    while (!rem.is_zero()) {
        int k = rem.max_degree() - bmax;
        if (k < qmin) return std::nullopt;
        LaurentPoly t = LaurentPoly::monomial(k, rem.coefficient(rem.max_degree()) / lb);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

inline LaurentPoly exact_quotient(const LaurentPoly& a, const LaurentPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw AlgebraError("Laurent division is not exact");
    return *q;
}

}  // namespace logconn

#endif  // LOGCONN_LAURENT_HPP
