#ifndef LOGCONN_CYCLOTOMIC_HPP
#define LOGCONN_CYCLOTOMIC_HPP

#include "logconn/rational.hpp"
#include "logconn/upoly.hpp"

#include <string>

namespace logconn {

/// Element of Q(zeta_m) = Q[t]/Phi_m(t), stored as its reduced residue.
///
/// Order 0 marks a plain rational that has not met a field yet; it adopts the
/// order of the first nonzero-order operand it is combined with.
class CycloNumber {
public:
    CycloNumber() = default;
    CycloNumber(long c) : CycloNumber(Rational(c)) {}        // NOLINT(implicit)
    CycloNumber(const Rational& c) : residue_(UPoly(c)) {}   // NOLINT(implicit)
    CycloNumber(UPoly residue, long order) : order_(order), residue_(std::move(residue)) { reduce(); }

    /// zeta_m^k.
    static CycloNumber zeta_power(long m, long k) {
        return CycloNumber(UPoly::monomial(static_cast<std::size_t>(mod_floor(k, m))), m);
    }

    long order() const { return order_; }
    const UPoly& residue() const { return residue_; }
    bool is_zero() const { return residue_.is_zero(); }
    bool is_rational() const { return residue_.degree() <= 0; }
    Rational rational_value() const { return residue_[0]; }

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
        long m = common(a, b);
        return CycloNumber(a.residue_ + b.residue_, m);
    }
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
        long m = common(a, b);
        return CycloNumber(a.residue_ - b.residue_, m);
    }
    CycloNumber operator-() const { return CycloNumber(-residue_, order_); }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
        long m = common(a, b);
        return CycloNumber(a.residue_ * b.residue_, m);
    }
    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

    CycloNumber inverse() const {
        if (is_zero()) throw AlgebraError("inverse of zero in cyclotomic field");
        if (order_ == 0 || is_rational()) return CycloNumber(UPoly(Rational(1) / residue_[0]), order_);
        auto bz = extended_gcd(residue_, cyclotomic(order_));
        if (bz.g.degree() != 0) throw AlgebraError("non-invertible cyclotomic residue");
        return CycloNumber(bz.s, order_);
    }
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }

    friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
        return a.residue_ == b.residue_ && (a.order_ == b.order_ || a.is_rational());
    }

    std::string to_string() const { return residue_.to_string("zeta"); }

private:
    static long common(const CycloNumber& a, const CycloNumber& b) {
        if (a.order_ == 0) return b.order_;
        if (b.order_ == 0 || a.order_ == b.order_) return a.order_;
        throw AlgebraError("mixing cyclotomic fields of orders " + std::to_string(a.order_) + " and " +
                           std::to_string(b.order_));
    }
    void reduce() {
        if (order_ > 0 && residue_.degree() >= static_cast<int>(euler_phi(order_)))
            residue_ = residue_ % cyclotomic(order_);
    }

    long order_ = 0;
    UPoly residue_;
};

}  // namespace logconn

#endif  // LOGCONN_CYCLOTOMIC_HPP
