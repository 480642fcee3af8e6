#ifndef LOGCONN_RATIONAL_HPP
#define LOGCONN_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logconn {

/// Exact rational number. gmp keeps the canonical form (gcd(num, den) = 1, den > 0)
/// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for any violated precondition in the algebra layer.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw AlgebraError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a", "-a/b" (whitespace not allowed).
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw AlgebraError("empty rational literal");
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw AlgebraError("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw AlgebraError("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Canonical text: "n" for integers, otherwise "n/d".
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline int sign(const Rational& r) { return sgn(r); }

/// Floor of a rational as a machine integer; throws if it does not fit.
inline long floor_long(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    if (!q.fits_slong_p()) throw AlgebraError("integer overflow in floor");
    return q.get_si();
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor_long(r)); }

inline Rational pow(const Rational& base, unsigned e) {
    Rational out(1);
    Rational b = base;
    while (e) {
        if (e & 1U) out *= b;
        b *= b;
        e >>= 1U;
    }
    return out;
}

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return (a / gcd_long(a, b)) * (b < 0 ? -b : b);
}

/// Mathematical modulus in [0, m).
inline long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace logconn

#endif  // LOGCONN_RATIONAL_HPP
