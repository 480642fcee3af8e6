#include "logconn/extension.hpp"
#include "support/corpus.hpp"
#include "support/flatness_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace logconn;

namespace {

std::vector<long> sorted(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
}

ConnectionData rank_one_twist(long c) {
    corpus::Rng rng(static_cast<corpus::Rng::result_type>(100 + c));
    PolyMatrix oe{{MultiPoly(make_rational(1, 3), 2)}}, oh{{MultiPoly(Rational(0), 2)}};
    return corpus::chart_data_from_global(rng, 1, 1, corpus::X() * corpus::Y(), {oe, oh}, {c});
}

}  // namespace

TEST(Extension, RankOneTwistsRecovered) {
    for (long c : {0L, 2L, -3L}) {
        ConnectionData d = rank_one_twist(c);
        ExtendedConnection ext = extend_connection(d);
        ASSERT_EQ(ext.frame_weights.size(), 1u);
        EXPECT_EQ(ext.frame_weights[0], c);
        EXPECT_TRUE(verify_extension(d, ext));
    }
}

TEST(Extension, RandomCrossAndCuspConnections) {
    corpus::Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        std::size_t rank = 1 + t % 2;
        ConnectionData d = t % 3 == 2 ? corpus::random_cusp_connection(rng, rank)
                                      : corpus::random_cross_connection(rng, rank);
        ExtendedConnection ext = extend_connection(d);
        EXPECT_TRUE(verify_extension(d, ext));
        EXPECT_TRUE(flatness_check(ext.global).flat);
        EXPECT_TRUE(oracle::flat_at_points(ext.global, rng, 3));
        EXPECT_EQ(ext.twists.size(), rank);
    }
}

TEST(Extension, PlantedFrameWeightsRecovered) {
    corpus::Rng rng(62);
    for (int t = 0; t < 10; ++t) {
        MultiPoly g = corpus::X() * corpus::Y();
        std::vector<long> weights = {corpus::uniform(rng, -2, 2), corpus::uniform(rng, -2, 2)};
        PolyMatrix zero(2, 2);
        PolyMatrix oe = PolyMatrix::diagonal({MultiPoly(Rational(weights[0]), 2), MultiPoly(Rational(weights[1]), 2)});
        ConnectionData d = corpus::chart_data_from_global(rng, 1, 1, g, {oe, zero}, weights);
        ExtendedConnection ext = extend_connection(d);
        EXPECT_EQ(sorted(ext.frame_weights), sorted(weights));
    }
}

TEST(Extension, FiltrationConnectionsExtend) {
    corpus::Rng rng(63);
    for (int t = 0; t < 12; ++t) {
        std::size_t m = 1 + t % 3;
        auto fc = corpus::filtration_connection(corpus::random_filtration(rng, m), corpus::random_filtration(rng, m));
        ExtendedConnection ext = extend_connection(fc.data);
        EXPECT_TRUE(verify_extension(fc.data, ext));
        AdaptedBasis b = split_pair(fc.f1, fc.f2);
        std::vector<long> expected;
        for (const auto& d : b.depths) expected.push_back(-(d[0] + d[1]));
        EXPECT_EQ(sorted(ext.frame_weights), sorted(expected));
    }
}

TEST(Extension, RejectsNonQuasiUnipotent) {
    try {
        extend_connection(corpus::non_quasi_unipotent_connection());
        FAIL() << "expected rejection";
    } catch (const AlgebraError& e) {
        EXPECT_NE(std::string(e.what()).find("quasi-unipotent"), std::string::npos);
    }
}

TEST(Extension, RejectsIncompatibleCharts) {
    ConnectionData d = rank_one_twist(1);
    d.chart_inf.omegas[0](0, 0) += LaurentMultiPoly(Rational(1), 2);
    EXPECT_THROW(extend_connection(d), AlgebraError);
}

TEST(Extension, WeightedSaitoSystemBracket) {
    MultiPoly f = corpus::X() * corpus::X() - corpus::Y() * corpus::Y() * corpus::Y();
    SaitoSystem s = weighted_saito_system(3, 2, f);
    VectorField br = lie_bracket(s.fields[0], s.fields[1]);
    // [E, H] = (deg f - p - q) H
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(br.coeffs[k], s.fields[1].coeffs[k]);
    EXPECT_TRUE(saito_check(s).free);
}

TEST(Extension, GlobalInputIsReturnedUnchanged) {
    MultiPoly x = corpus::X(), y = corpus::Y();
    PolyMatrix oe{{MultiPoly(make_rational(1, 2), 2), x}, {MultiPoly(Rational(0), 2), MultiPoly(make_rational(-1, 2), 2)}};
    PolyMatrix oh{{MultiPoly(Rational(0), 2), x.scaled(make_rational(1, 2))}, {MultiPoly(Rational(0), 2), MultiPoly(Rational(0), 2)}};
    ConnectionData d;
    d.p = d.q = 1;
    d.f = x * y;
    d.rank = 2;
    d.chart0 = {{0, 1}, {to_laurent(oe), to_laurent(oh)}};
    d.chart_inf = d.chart0;
    d.transition = Laurent2Matrix::identity(2);
    ExtendedConnection ext = extend_connection(d);
    EXPECT_EQ(ext.global.omegas[0], oe);
    EXPECT_EQ(ext.global.omegas[1], oh);
    EXPECT_TRUE(verify_extension(d, ext));
}
