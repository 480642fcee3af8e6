#include "logconn/cyclotomic.hpp"
#include "logconn/laurent.hpp"
#include "logconn/matrix.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/upoly.hpp"
#include "support/corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace logconn;

namespace {

// Leibniz expansion: independent of elimination.
Rational leibniz_det(const QMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rational term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

MultiPoly x() { return MultiPoly::variable(0, 2); }
MultiPoly y() { return MultiPoly::variable(1, 2); }

}  // namespace

TEST(Rational, ParsesCanonically) {
    EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
    EXPECT_THROW(parse_rational("10/-4"), AlgebraError);
    EXPECT_THROW(parse_rational("1/0"), AlgebraError);
    EXPECT_THROW(parse_rational("abc"), AlgebraError);
    EXPECT_THROW(parse_rational(""), AlgebraError);
}

TEST(Rational, IntegerHelpers) {
    EXPECT_EQ(floor_long(make_rational(-3, 2)), -2);
    EXPECT_EQ(frac(make_rational(-3, 2)), make_rational(1, 2));
    EXPECT_EQ(mod_floor(-7, 3), 2);
    EXPECT_EQ(lcm_long(4, 6), 12);
    EXPECT_EQ(euler_phi(12), 4);
    EXPECT_EQ(pow(make_rational(2, 3), 3), make_rational(8, 27));
}

TEST(MultiPoly, ArithmeticAndPrinting) {
    MultiPoly p = x() * x() - y();
    EXPECT_EQ(p.to_string({"x", "y"}), "x^2 - y");
    EXPECT_EQ((p * p - p * p).is_zero(), true);
    EXPECT_EQ(p.derivative(0), Rational(2) * x());
    Rational pt[] = {3, 4};
    EXPECT_EQ(p.evaluate(pt), Rational(5));
}

TEST(MultiPoly, ExactDivisionAndGcd) {
    MultiPoly a = x() * x() - y() * y();
    MultiPoly b = x() + y();
    auto q = divide_exact(a, b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, x() - y());
    EXPECT_FALSE(divide_exact(a, x() + Rational(2) * y()));
    MultiPoly g = gcd(a * (x() + MultiPoly(Rational(1), 2)), b * b);
    EXPECT_EQ(normalize(g), normalize(b));
}

TEST(MultiPoly, SquarefreePart) {
    MultiPoly f = x() * x() * y();
    auto sq = squarefree_part(f);
    EXPECT_FALSE(sq.is_reduced);
    EXPECT_EQ(normalize(sq.part), normalize(x() * y()));
    EXPECT_TRUE(squarefree_part(x() * y()).is_reduced);
}

TEST(MultiPoly, RandomGcdDividesBoth) {
    corpus::Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        MultiPoly c = corpus::random_poly(rng, 2, 2, 3);
        if (c.is_zero()) continue;
        MultiPoly a = c * corpus::random_poly(rng, 2, 2, 2);
        MultiPoly b = c * corpus::random_poly(rng, 2, 2, 2);
        if (a.is_zero() || b.is_zero()) continue;
        MultiPoly g = gcd(a, b);
        EXPECT_TRUE(divide_exact(a, g));
        EXPECT_TRUE(divide_exact(b, g));
        EXPECT_TRUE(divide_exact(g, c)) << "common factor lost";
    }
}

TEST(UPoly, CyclotomicSplit) {
    UPoly p = cyclotomic(3) * cyclotomic(3) * cyclotomic(4) * (UPoly::x() - UPoly(2));
    auto s = cyclotomic_split(p);
    EXPECT_EQ(s.remainder.monic(), (UPoly::x() - UPoly(2)).monic());
    ASSERT_EQ(s.factors.size(), 2u);
    EXPECT_EQ(cyclotomic(6), UPoly(std::vector<Rational>{1, -1, 1}));
    EXPECT_EQ(cyclotomic(12).degree(), 4);
}

TEST(UPoly, RationalRoots) {
    UPoly p = (UPoly::x() - UPoly(make_rational(1, 2))) * (UPoly::x() + UPoly(3)) * (UPoly::x() + UPoly(3));
    auto r = rational_roots(p);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].first, Rational(-3));
    EXPECT_EQ(r[0].second, 2);
    EXPECT_EQ(r[1].first, make_rational(1, 2));
}

TEST(Laurent, ArithmeticAndDivision) {
    LaurentPoly z = LaurentPoly::monomial(1);
    LaurentPoly a = z * z - LaurentPoly::monomial(-2);
    EXPECT_EQ(a.min_degree(), -2);
    EXPECT_EQ(a.max_degree(), 2);
    auto q = divide_exact(a, z - LaurentPoly::monomial(-1));
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, z + LaurentPoly::monomial(-1));
    EXPECT_EQ(a.evaluate(Rational(2)), make_rational(15, 4));
}

TEST(Cyclo, ZetaArithmetic) {
    CycloNumber w = CycloNumber::zeta_power(3, 1);
    EXPECT_EQ(w * w * w, CycloNumber(1));
    EXPECT_EQ(w * w + w + CycloNumber(1), CycloNumber(0));
    EXPECT_EQ(w * w.inverse(), CycloNumber(1));
    CycloNumber i = CycloNumber::zeta_power(4, 1);
    EXPECT_EQ(i * i, CycloNumber(-1));
}

TEST(Matrix, DeterminantAgreesWithLeibniz) {
    corpus::Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 1 + t % 5;
        QMatrix m = corpus::random_matrix(rng, n);
        Rational d = leibniz_det(m);
        EXPECT_EQ(det(m), d);
        EXPECT_EQ(det_cofactor(m), d);
    }
}

TEST(Matrix, PolynomialDeterminantAgreesWithCofactor) {
    corpus::Rng rng(6);
    for (int t = 0; t < 10; ++t) {
        PolyMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = corpus::random_poly(rng, 2, 2, 2);
        EXPECT_EQ(det(m), det_cofactor(m));
        MultiPoly d = det(m);
        EXPECT_EQ(m * adjugate(m), PolyMatrix::diagonal(std::vector<MultiPoly>(3, d)));
    }
}

TEST(Matrix, CharpolyMatchesDeterminantAtPoints) {
    corpus::Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 1 + t % 4;
        QMatrix m = corpus::random_matrix(rng, n);
        UPoly cp = charpoly(m);
        EXPECT_EQ(cp.degree(), static_cast<int>(n));
        for (long s = -2; s <= 2; ++s) {
            QMatrix shifted = Rational(s) * QMatrix::identity(n) - m;
            EXPECT_EQ(cp.evaluate(Rational(s)), leibniz_det(shifted));
        }
        EXPECT_TRUE(evaluate(cp, m).is_zero()) << "Cayley-Hamilton";
        EXPECT_TRUE(evaluate(minimal_polynomial(m), m).is_zero());
    }
}

TEST(Matrix, InverseKernelSolve) {
    corpus::Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 1 + t % 5;
        QMatrix m = corpus::random_invertible(rng, n);
        auto inv = inverse(m);
        ASSERT_TRUE(inv);
        EXPECT_EQ(m * *inv, QMatrix::identity(n));
        QMatrix b = corpus::random_matrix(rng, n);
        auto sol = solve(m, b);
        ASSERT_TRUE(sol);
        EXPECT_EQ(m * *sol, b);
    }
    QMatrix sing{{1, 2}, {2, 4}};
    EXPECT_FALSE(inverse(sing));
    EXPECT_EQ(rank(sing), 1u);
    QMatrix k = kernel(sing);
    EXPECT_EQ(k.cols(), 1u);
    EXPECT_TRUE((sing * k).is_zero());
}

TEST(MultiPoly, ReducednessFastPathAgreesWithGcd) {
    corpus::Rng rng(12);
    for (int t = 0; t < 25; ++t) {
        MultiPoly a = corpus::random_poly(rng, 3, 2, 3), b = corpus::random_poly(rng, 3, 2, 2);
        if (a.total_degree() < 1 || b.total_degree() < 1) continue;
        MultiPoly f = t % 2 ? a * b : a * a * b;
        MultiPoly g = f;
        for (std::size_t i = 0; i < 3; ++i) g = gcd(g, f.derivative(i));
        EXPECT_EQ(squarefree_part(f).is_reduced, g.is_constant());
        if (t % 2 == 0) EXPECT_FALSE(squarefree_part(f).is_reduced);
    }
}
