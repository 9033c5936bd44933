#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "kmatch/certificates.hpp"
#include "kmatch/generators.hpp"

using namespace kmatch;

namespace {

const PointSet kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const Matching kDiagonals{{0, 2}, {1, 3}};

Matching random_matching(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; i += 2) edges.push_back(make_edge(perm[i], perm[i + 1]));
    return Matching(std::move(edges));
}

// Grid oracle for min over x of the largest disk excess.
double grid_excess(const DiskFamily& df, double lo, double hi, double step) {
    double best = 1e300;
    for (double x = lo; x <= hi; x += step) {
        for (double y = lo; y <= hi; y += step) best = std::min(best, disk_excess(df, {x, y}));
    }
    return best;
}

} // namespace

TEST(Constants, Values) {
    EXPECT_DOUBLE_EQ(constants::enlargement, 1.1547005383792515);
    EXPECT_DOUBLE_EQ(constants::beta_local2, std::sqrt(7.0 / 3.0));
    EXPECT_DOUBLE_EQ(certificate_beta(CertificateKind::local3_sqrt2), std::sqrt(2.0));
    EXPECT_EQ(certificate_locality(CertificateKind::local2), 2u);
    EXPECT_EQ(certificate_locality(CertificateKind::local3_fingerhut), 3u);
    EXPECT_EQ(to_string(CertificateKind::local3_sqrt2), "local3-sqrt2");
}

TEST(CommonPoint, SingleDiskHasSlackMinusRadius) {
    DiskFamily df{{{{1.0, 2.0}, 0.75}}, 1.0};
    const CenterWitness w = common_point(df);
    EXPECT_NEAR(w.slack, -0.75, 1e-9);
    EXPECT_EQ(w.kind, WitnessKind::diametral);
}

TEST(CommonPoint, TwoDisjointDisks) {
    // Centers 5 apart, unit radii: best point is the midpoint, excess 1.5.
    DiskFamily df{{{{0, 0}, 1.0}, {{5, 0}, 1.0}}, 1.0};
    const CenterWitness w = common_point(df);
    EXPECT_NEAR(w.slack, 1.5, 1e-7);
    EXPECT_NEAR(w.point.x, 2.5, 1e-6);
}

TEST(CommonPoint, TangentDisksNeedTheEnlargement) {
    const DiskFamily df = gen_tangent_disks();
    EXPECT_NEAR(common_point(df).slack, 2.0 / std::sqrt(3.0) - 1.0, 1e-7);

    const CenterWitness grown = common_point(df.scaled(constants::enlargement));
    EXPECT_LE(grown.slack, 1e-7);
    EXPECT_EQ(grown.kind, WitnessKind::enlarged);
    EXPECT_NEAR(grown.point.x, 1.0, 1e-6);
    EXPECT_NEAR(grown.point.y, 1.0 / std::sqrt(3.0), 1e-6);

    EXPECT_GT(common_point(df.scaled(constants::enlargement - 1e-3)).slack, 1e-4);
}

TEST(CommonPoint, EmptyFamilyThrows) { EXPECT_THROW(common_point(DiskFamily{}), DomainError); }

TEST(CommonPoint, MatchesGridOracle) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const DiskFamily df = gen_pairwise_intersecting_disks(5, seed);
        const double solved = common_point(df).slack;
        const double grid = grid_excess(df, -2.0, 5.0, 0.01);
        EXPECT_LE(solved, grid + 1e-7);
        // The grid point nearest the optimum is within 0.01 * sqrt(2) / 2 of it.
        EXPECT_GE(solved, grid - 0.01);
    }
}

TEST(CommonPoint, PairwiseIntersectingEnlargedFamiliesMeet) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        const DiskFamily df = gen_pairwise_intersecting_disks(3 + rng.index(8), rng.next());
        for (std::size_t i = 0; i < df.size(); ++i) {
            for (std::size_t j = i + 1; j < df.size(); ++j) ASSERT_TRUE(disks_intersect(df.disk(i), df.disk(j)));
        }
        EXPECT_LE(common_point(df.scaled(constants::enlargement)).slack, 1e-7) << "seed " << seed;
    }
}

TEST(DiametralFamily, ScaleBelowOneThrows) {
    EXPECT_THROW(diametral_family(kDiagonals, kSquare, 0.9), DomainError);
    const DiskFamily df = diametral_family(kDiagonals, kSquare);
    ASSERT_EQ(df.size(), 2u);
    EXPECT_NEAR(df.disk(0).radius, std::sqrt(2.0) / 2, 1e-15);
}

TEST(Fingerhut, SquareDiagonalsMeetAtCenter) {
    const CenterWitness w = fingerhut_center(kDiagonals, kSquare);
    EXPECT_NEAR(w.point.x, 0.5, 1e-6);
    EXPECT_NEAR(w.point.y, 0.5, 1e-6);
    // Objective 1 at the center, so slack is 1 - 2/sqrt(3).
    EXPECT_NEAR(w.slack, 1.0 - 2.0 / std::sqrt(3.0), 1e-7);
    EXPECT_EQ(w.kind, WitnessKind::fingerhut);
}

TEST(Fingerhut, ObjectiveExamples) {
    const PointSet ps{{0, 0}, {2, 0}};
    const Matching m{{0, 1}};
    EXPECT_DOUBLE_EQ(fingerhut_objective(m, ps, {1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(fingerhut_objective(m, ps, {3, 0}), 2.0);
    EXPECT_THROW(fingerhut_center(Matching{}, ps), DomainError);
}

TEST(StarWeight, Examples) {
    EXPECT_NEAR(star_weight({0.5, 0.5}, kSquare), 4.0 * std::sqrt(0.5), 1e-15);
    const PointSet far{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_NEAR(star_weight({1, 1}, far), 4.0 * std::sqrt(2.0), 1e-15);
}

TEST(StarWeight, BoundsEveryPerfectMatching) {
    Rng rng(10);
    for (int t = 0; t < 40; ++t) {
        const PointSet ps = gen_random(8, rng.next());
        const Point c{rng.uniform(-1, 2), rng.uniform(-1, 2)};
        const double s = star_weight(c, ps);
        for (const auto& m : enumerate_matchings(ps)) EXPECT_LE(weight(m, ps), s + 1e-12);
    }
}

TEST(Certify, SquareDiagonalsAllKinds) {
    const Certificate c2 = certify(kSquare, kDiagonals, CertificateKind::local2);
    EXPECT_NEAR(c2.matching_weight, 2 * std::sqrt(2.0), 1e-15);
    ASSERT_TRUE(c2.oracle_weight.has_value());
    EXPECT_NEAR(*c2.oracle_weight, 2 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(c2.per_edge_checks.size(), 2u);
    EXPECT_NEAR(c2.ratio_lower_bound(), std::sqrt(3.0 / 7.0), 1e-15);

    // The locality premise is k = min(3, |M|) = 2 here.
    const Certificate cf = certify(kSquare, kDiagonals, CertificateKind::local3_fingerhut);
    EXPECT_NEAR(cf.star_weight, 2 * std::sqrt(2.0), 1e-6);
    EXPECT_NO_THROW(certify(kSquare, kDiagonals, CertificateKind::local3_sqrt2));
}

TEST(Certify, RejectsNonLocalMatching) {
    const Matching sides{{0, 1}, {2, 3}};
    try {
        certify(kSquare, sides, CertificateKind::local2);
        FAIL() << "expected a locality violation";
    } catch (const LocalityViolation& v) {
        EXPECT_FALSE(v.check().holds);
        EXPECT_TRUE(v.check().violating_subset.has_value());
    }
}

TEST(Certify, SkipsOracleAboveCap) {
    const PointSet ps = gen_random(26, 5);
    Rng rng(1);
    const Matching m = k_local_search(ps, 2, random_matching(26, rng)).matching;
    const Certificate c = certify(ps, m, CertificateKind::local2);
    EXPECT_FALSE(c.oracle_weight.has_value());
}

TEST(Certify, LocalMaximaCarryCertificates) {
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 6 + 2 * rng.index(4);
        const PointSet ps = gen_random(n, rng.next());
        const Matching m2 = k_local_search(ps, 2, random_matching(n, rng)).matching;
        const Certificate c2 = certify(ps, m2, CertificateKind::local2);
        EXPECT_GE(c2.matching_weight, std::sqrt(3.0 / 7.0) * *c2.oracle_weight - 1e-9);

        const Matching m3 = k_local_search(ps, 3, random_matching(n, rng)).matching;
        const Certificate c3 = certify(ps, m3, CertificateKind::local3_fingerhut);
        EXPECT_GE(c3.matching_weight, std::sqrt(3.0) / 2 * *c3.oracle_weight - 1e-9);
        for (const EdgeCheck& row : c3.per_edge_checks) EXPECT_TRUE(row.ok);
        const Certificate s3 = certify(ps, m3, CertificateKind::local3_sqrt2);
        EXPECT_LE(s3.star_weight, std::sqrt(2.0) * s3.matching_weight + 1e-7);
    }
}

TEST(Certify, DiametralDisksOfThreeLocalMaximaMeet) {
    Rng rng(31);
    for (int t = 0; t < 60; ++t) {
        const PointSet ps = gen_random(10, rng.next());
        const Matching m = k_local_search(ps, 3, random_matching(10, rng)).matching;
        EXPECT_LE(common_point(diametral_family(m, ps)).slack, 1e-7);
    }
}
