#include "logconn/castling.hpp"

#include <gtest/gtest.h>

using namespace logconn;

namespace {

PrehomDescriptor xyz() { return {3, 1, {GroupFactor::torus(3)}, Side::Primal}; }

}  // namespace

TEST(Castling, TransformOfCoordinateHyperplanes) {
    PrehomDescriptor c = castling_transform(xyz());
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.r, 2);
    EXPECT_EQ(c.side, Side::Dual);
    EXPECT_EQ(c.ambient_dim(), 6);
    ASSERT_EQ(c.group().size(), 2u);
    EXPECT_EQ(c.group()[1], GroupFactor::sl(2));
    // (C*)^3 x SL(2) has dimension 6 = dim Hom(C^2, C^3)
    EXPECT_EQ(c.group_dim(), 6);
}

TEST(Castling, Involution) {
    std::vector<PrehomDescriptor> ds = {xyz(),
                                        {5, 2, {GroupFactor::abstract("H", 7)}, Side::Dual},
                                        {4, 3, {GroupFactor::torus(1), GroupFactor::sl(2)}, Side::Primal}};
    for (const auto& d : ds) EXPECT_EQ(castling_transform(castling_transform(d)), d);
}

TEST(Castling, DimensionChain) {
    EXPECT_EQ(castling_chain(xyz(), 2), (std::vector<long>{3, 6, 30}));
    EXPECT_EQ(castling_chain(xyz(), 3), (std::vector<long>{3, 6, 30, 870}));
    PrehomDescriptor bad = xyz();
    bad.r = 3;
    EXPECT_THROW(castling_transform(bad), AlgebraError);
}

TEST(Castling, MoritaRescale) {
    EXPECT_EQ(morita_rescale(1, 3, Rational(1)), make_rational(-1, 2));
    EXPECT_EQ(morita_rescale(2, 7, Rational(0)), Rational(0));
    EXPECT_THROW(morita_rescale(3, 3, Rational(1)), AlgebraError);
    for (long n = 2; n <= 9; ++n)
        for (long r = 1; r < n; ++r) {
            Rational w = make_rational(r + 2, n);
            EXPECT_EQ(morita_rescale(n - r, n, morita_rescale(r, n, w)), w) << r << "," << n;
            EXPECT_EQ(morita_rescale(r, n, w + w), morita_rescale(r, n, w) + morita_rescale(r, n, w));
        }
}

TEST(MinorProduct, SmallCases) {
    EXPECT_EQ(minor_product_divisor(2).to_string(minor_product_names(2)), "u1*v1");
    EXPECT_THROW(minor_product_divisor(1), AlgebraError);

    MultiPoly f3 = minor_product_divisor(3);
    auto names = minor_product_names(3);
    EXPECT_EQ(names, (std::vector<std::string>{"u1", "u2", "v1", "v2", "w1", "w2"}));
    // (u1 v2 - u2 v1)(v1 w2 - v2 w1)(w1 u2 - w2 u1)
    auto v = [](std::size_t i) { return MultiPoly::variable(i, 6); };
    MultiPoly expected = (v(0) * v(3) - v(1) * v(2)) * (v(2) * v(5) - v(3) * v(4)) * (v(4) * v(1) - v(5) * v(0));
    EXPECT_EQ(f3, expected);
    auto deg = euler_check(f3, std::vector<long>(6, 1));
    ASSERT_TRUE(deg);
    EXPECT_EQ(*deg, Rational(6));

    MultiPoly f4 = minor_product_divisor(4);
    EXPECT_EQ(*euler_check(f4, std::vector<long>(12, 1)), Rational(12));
    EXPECT_TRUE(squarefree_part(f4).is_reduced);
}

TEST(MinorProduct, CastledSystemFree) {
    SaitoSystem s = castled_saito_system(3);
    EXPECT_EQ(s.fields.size(), 6u);
    SaitoResult r = saito_check(s);
    EXPECT_TRUE(r.free);
    EXPECT_EQ(r.unit, Rational(-2));
    EXPECT_TRUE(saito_check(castled_saito_system(2)).free);
}

TEST(Residue, FundamentalAndAdjointAreNonExtendable) {
    NonExtendable a = gen_nonextendable(sl2_fundamental(), 3, 2);
    EXPECT_FALSE(a.certificate.residual_trivial);
    EXPECT_EQ(a.certificate.generator_name, "e1");
    EXPECT_FALSE(a.certificate.generator.is_zero());
    EXPECT_FALSE(residual_sl_trivial(a.rep));

    NonExtendable b = gen_nonextendable(sl2_adjoint(), 3, 3);
    EXPECT_FALSE(b.certificate.residual_trivial);
    EXPECT_FALSE(chevalley_violation(sl2_adjoint(), 3, 3));
    EXPECT_NO_THROW(validate(b.rep));
}

TEST(Residue, PulledBackRepsAreTrivial) {
    std::vector<QMatrix> torus = {QMatrix{{1, 0}, {0, 2}}, QMatrix{{0, 0}, {0, 1}}, QMatrix{{3, 0}, {0, 0}}};
    ResidueRep rep = pullback_residue(torus, 3, 2, make_rational(1, 2));
    EXPECT_TRUE(residual_sl_trivial(rep));
}

TEST(Residue, RejectsBadPsi) {
    auto zero = std::vector<QMatrix>(3, QMatrix(2, 2));
    EXPECT_THROW(gen_nonextendable(zero, 3, 2), AlgebraError);
    auto broken = sl2_fundamental();
    broken[2] = QMatrix{{2, 0}, {0, -2}};  // [e, f] != h
    EXPECT_TRUE(chevalley_violation(broken, 3, 2));
    EXPECT_THROW(gen_nonextendable(broken, 3, 2), AlgebraError);
}

TEST(Residue, ChevalleyRelationsForSl3) {
    // Standard representation of sl(3) for n = 4.
    auto E = [](std::size_t i, std::size_t j) {
        QMatrix m(3, 3);
        m(i, j) = 1;
        return m;
    };
    std::vector<QMatrix> psi = {E(0, 1), E(1, 0), E(0, 0) - E(1, 1), E(1, 2), E(2, 1), E(1, 1) - E(2, 2)};
    EXPECT_FALSE(chevalley_violation(psi, 4, 3));
    NonExtendable ne = gen_nonextendable(psi, 4, 3);
    EXPECT_FALSE(ne.certificate.residual_trivial);
    std::swap(psi[0], psi[3]);
    psi[5] = psi[2];
    EXPECT_TRUE(chevalley_violation(psi, 4, 3));
}
