#include "logconn/filtrations.hpp"
#include "support/corpus.hpp"
#include "support/filtration_census.hpp"
#include "support/lattice_oracle.hpp"

#include <gtest/gtest.h>

using namespace logconn;

namespace {

Filtration one_step(std::size_t m, const std::vector<QVector>& vs, long j = 1) {
    return Filtration(m, {{j, Subspace::span(vs, m)}});
}

}  // namespace

TEST(Subspace, SumAndIntersection) {
    Subspace a = Subspace::span({{1, 0, 0}, {0, 1, 0}}, 3);
    Subspace b = Subspace::span({{0, 1, 0}, {0, 0, 1}}, 3);
    EXPECT_EQ((a + b).dim(), 3u);
    Subspace c = intersect(a, b);
    EXPECT_EQ(c.dim(), 1u);
    EXPECT_TRUE(c.contains(QVector{0, 5, 0}));
    EXPECT_FALSE(c.contains(QVector{1, 0, 0}));
}

TEST(Filtration, RejectsNonDecreasingSteps) {
    Subspace line = Subspace::span({{1, 0}}, 2);
    Subspace other = Subspace::span({{0, 1}}, 2);
    EXPECT_THROW(Filtration(2, {{0, line}, {1, other}}), AlgebraError);
    EXPECT_THROW(Filtration(2, {{0, line}, {0, line}}), AlgebraError);
    EXPECT_THROW(Filtration(2, {{0, Subspace(2)}}), AlgebraError);
}

TEST(Filtration, DepthAndLevels) {
    Filtration f(2, {{-1, Subspace::full(2)}, {3, Subspace::span({{1, 1}}, 2)}});
    EXPECT_EQ(f.depth(QVector{1, 1}), 3);
    EXPECT_EQ(f.depth(QVector{1, 0}), 2);
    EXPECT_EQ(f.at(-5).dim(), 2u);
    EXPECT_EQ(f.at(4).dim(), 0u);
}

TEST(Split, ThreeLinesNotSplittable) {
    std::vector<Filtration> fs = {one_step(2, {{1, 0}}), one_step(2, {{0, 1}}), one_step(2, {{1, 1}})};
    SplitResult r = simultaneous_split(fs);
    ASSERT_FALSE(r.splittable());
    ASSERT_TRUE(r.certificate);
    EXPECT_GT(r.certificate->total, 2u);
    EXPECT_FALSE(r.certificate->table.empty());
    EXPECT_FALSE(oracle::splittable_by_lattice(fs));
    EXPECT_FALSE(toric_extendability(fs).extends);
}

TEST(Split, RepeatedLineSplits) {
    std::vector<Filtration> fs = {one_step(2, {{1, 0}}), one_step(2, {{0, 1}}), one_step(2, {{2, 0}})};
    SplitResult r = simultaneous_split(fs);
    ASSERT_TRUE(r.splittable());
    EXPECT_TRUE(verify_adapted(*r.basis, fs));
    EXPECT_TRUE(census::independently_adapted(r.basis->vectors, fs));
}

TEST(Split, RandomPairsAlwaysSplit) {
    corpus::Rng rng(41);
    for (int t = 0; t < 100; ++t) {
        std::size_t m = 1 + t % 5;
        Filtration f1 = corpus::random_filtration(rng, m), f2 = corpus::random_filtration(rng, m);
        AdaptedBasis b = split_pair(f1, f2);
        EXPECT_TRUE(census::independently_adapted(b.vectors, {f1, f2}));
        for (std::size_t i = 0; i < b.vectors.size(); ++i) {
            EXPECT_EQ(b.depths[i][0], f1.depth(b.vectors[i]));
            EXPECT_EQ(b.depths[i][1], f2.depth(b.vectors[i]));
        }
    }
}

TEST(Split, SmallGridCensusMatchesLatticeOracle) {
    std::size_t checked = 0, negatives = 0;
    for (std::size_t m = 1; m <= 3; ++m) {
        auto chains = census::grid_chains(m);
        std::size_t c = chains.size();
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = a; b < c; ++b)
                for (std::size_t d = b; d < c; ++d) {
                    std::vector<Filtration> fs = {census::from_chain(m, chains[a]), census::from_chain(m, chains[b]),
                                                  census::from_chain(m, chains[d])};
                    SplitResult r = simultaneous_split(fs);
                    bool expected = oracle::splittable_by_lattice(fs);
                    ASSERT_EQ(r.splittable(), expected) << "m=" << m << " chains " << a << "," << b << "," << d;
                    if (r.splittable()) ASSERT_TRUE(census::independently_adapted(r.basis->vectors, fs));
                    ++checked;
                    negatives += !expected;
                }
    }
    EXPECT_GT(checked, 1000u);
    EXPECT_GT(negatives, 0u);
}
