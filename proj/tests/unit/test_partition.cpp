#include <gtest/gtest.h>

#include <cmath>

#include "glab/partition.hpp"
#include "glab/random.hpp"

using namespace glab;

namespace {

Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

// dense matrix of P_sigma
Mat average_matrix(const OrderedPartition& sigma) {
    const auto n = static_cast<Eigen::Index>(sigma.dim());
    Mat p = Mat::Zero(n, n);
    for (std::size_t b = 0; b < sigma.block_count(); ++b) {
        const Block blk = sigma.block(b);
        p.block(static_cast<Eigen::Index>(blk.start), static_cast<Eigen::Index>(blk.start), static_cast<Eigen::Index>(blk.length),
                static_cast<Eigen::Index>(blk.length))
            .setConstant(1.0 / static_cast<double>(blk.length));
    }
    return p;
}

}  // namespace

TEST(Partition, Layout) {
    const OrderedPartition s({2, 3, 1});
    EXPECT_EQ(s.dim(), 6u);
    EXPECT_EQ(s.block(1).start, 2u);
    EXPECT_EQ(s.cumulative(2), 5u);
    EXPECT_EQ(s.block_of(4), 1u);
    EXPECT_EQ(OrderedPartition::paired({1, 2}).sizes(), (std::vector<std::size_t>{1, 1, 2, 2}));
    EXPECT_THROW(OrderedPartition({2, 0}), std::invalid_argument);
}

TEST(Partition, JsonRoundTrip) {
    const OrderedPartition s({4, 1, 7});
    EXPECT_EQ(OrderedPartition::from_json(s.to_json()), s);
}

TEST(AverageProject, BlockMeans) {
    const OrderedPartition s({2, 2});
    const Vec f = vec({1, 2, 3, 4});
    EXPECT_TRUE(average_project(s, as_span(f)).isApprox(vec({1.5, 1.5, 3.5, 3.5})));
    EXPECT_TRUE(complement_project(s, as_span(f)).isApprox(vec({-0.5, 0.5, -0.5, 0.5})));
    const Vec z = vec({1, -1, 0, 0});
    EXPECT_EQ(average_project(s, as_span(z)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(AverageProject, IdempotentAndComplementary) {
    const OrderedPartition s({1, 3, 5, 2});
    Rng rng = make_rng(7, 0);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        Vec f(11);
        for (auto& x : f) x = g(rng);
        const Vec p = average_project(s, as_span(f));
        EXPECT_LE((average_project(s, as_span(p)) - p).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LE((p + complement_project(s, as_span(f)) - f).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LE(complement_project(s, as_span(f)).norm(), f.norm() * (1.0 + 1e-15));
        EXPECT_LE(complement_project(s, as_span(p)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(BlockSystem, EuclideanFunctionalValue) {
    const OrderedPartition s({2, 2, 3});
    const BlockSystem bs(s, fundamental_function(SeqNorm::lp(2.0, 7)));
    const Vec f = vec({1, 1, 0, 0, 0, 0, 0});
    EXPECT_NEAR(bs.apply(0, as_span(f)), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(bs.apply(0, as_span(bs.vector(0))), 1.0, 1e-15);
    EXPECT_EQ(bs.apply(0, as_span(bs.vector(1))), 0.0);
    EXPECT_NEAR(SeqNorm::lp(2.0, 7).eval(as_span(bs.vector(2))), 1.0, 1e-15);
    const Vec c = vec({0.5, -2.0, 3.0});
    EXPECT_TRUE(bs.coefficients(as_span(bs.expand(as_span(c)))).isApprox(c, 1e-14));
}

TEST(ProjectionBound, EuclideanMaximumIsOne) {
    const OrderedPartition s({3, 1, 4, 4});
    // spectral oracle: P_sigma is an orthogonal projection
    Eigen::JacobiSVD<Mat> svd(average_matrix(s));
    EXPECT_NEAR(svd.singularValues()(0), 1.0, 1e-12);
    const auto r = projection_norm_bound_check(s, SeqNorm::lp(2.0, 12), 500, 8);
    EXPECT_LE(r.p_ratio, 1.0 + 1e-12);
    EXPECT_GE(r.p_ratio, 1.0 - 1e-12);  // block-constant vectors
}

TEST(ProjectionBound, L1AtMostTwo) {
    const OrderedPartition s({2, 2, 2, 2, 2});
    const auto r = projection_norm_bound_check(s, SeqNorm::lp(1.0, 10), 2000, 9);
    EXPECT_LE(r.p_ratio, 2.0 + 1e-10);
    EXPECT_NEAR(r.p_ratio, 1.0, 1e-12);  // P is an l1 contraction; indicators attain 1
    EXPECT_LE(r.q_ratio, 2.0 + 1e-10);
}

TEST(ProjectionBound, SharedSamplesMatchSingleHost) {
    const OrderedPartition s({1, 2, 4, 8});
    const std::vector<SeqNorm> hosts{SeqNorm::lp(1.0, 15), SeqNorm::lp(2.0, 15)};
    const auto both = projection_norm_bound_check(s, hosts, 300, 11);
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        const auto one = projection_norm_bound_check(s, hosts[h], 300, 11);
        EXPECT_EQ(one.p_ratio, both[h].p_ratio);
        EXPECT_EQ(one.q_ratio, both[h].q_ratio);
    }
}
