#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "glab/estimators.hpp"
#include "glab/random.hpp"

using namespace glab;

namespace {

SpacePtr lp(double p, std::size_t n) { return std::make_shared<SequenceSpace>(SeqNorm::lp(p, n)); }

Basis random_basis(std::size_t n, std::uint64_t seed, bool orthonormal = false) {
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> g;
    Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (auto& x : m.reshaped()) x = g(rng);
    if (orthonormal) m = Eigen::HouseholderQR<Mat>(m).householderQ() * Mat::Identity(m.rows(), m.cols());
    return Basis::from_synthesis(lp(2.0, n), m);
}

Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

std::vector<IndexSet> all_subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<IndexSet> out;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        IndexSet a;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) a.push_back(i);
        out.push_back(a);
    }
    return out;
}

}  // namespace

TEST(ProjectionNorm, TwoVectorClosedForm) {
    Mat s(2, 2);
    s << 1, 1, 0, 1;
    const Basis b = Basis::from_synthesis(lp(2.0, 2), s);
    EXPECT_NEAR(projection_norm_hilbert(b, {0}), std::sqrt(2.0), 1e-14);
    // oracle: SVD of the dense projection
    const Mat p = b.vector(0) * b.dual(0).transpose();
    EXPECT_NEAR(Eigen::JacobiSVD<Mat>(p).singularValues()(0), std::sqrt(2.0), 1e-14);
    EXPECT_EQ(projection_norm_hilbert(b, {}), 0.0);
}

TEST(ProjectionNorm, MatchesSvdOnRandomBases) {
    const Basis b = random_basis(7, 3);
    for (const IndexSet& a : {IndexSet{0}, IndexSet{1, 4}, IndexSet{0, 2, 3, 6}}) {
        Mat p = Mat::Zero(7, 7);
        for (std::size_t i : a) p += b.vector(i) * b.dual(i).transpose();
        const double svd = Eigen::JacobiSVD<Mat>(p).singularValues()(0);
        EXPECT_NEAR(projection_norm_hilbert(b, a), svd, 1e-10 * svd);
        const Witness w = km_hilbert_witness(b, a);
        EXPECT_NEAR(coordinate_projection(b, a, as_span(w.f)).norm() / w.f.norm(), svd, 1e-10 * svd);
    }
}

TEST(Km, OrthonormalIsOne) {
    const Basis b = random_basis(6, 4, true);
    for (std::size_t m = 1; m <= 6; ++m) {
        const Bound k = km_exact_hilbert(b, m);
        EXPECT_EQ(k.kind, BoundKind::exact);
        EXPECT_NEAR(k.value, 1.0, 1e-12);
    }
}

TEST(Km, MonotoneAndLowerBoundConsistent) {
    const Basis b = random_basis(8, 5);
    double prev = 0.0;
    SearchOptions opt;
    opt.trials = 30;
    for (std::size_t m = 1; m <= 8; ++m) {
        const double ex = km_exact_hilbert(b, m).value;
        EXPECT_GE(ex, prev - 1e-12);
        prev = ex;
        opt.seed = m;
        const Bound lo = km_lower(b, m, {}, opt);
        EXPECT_GE(lo.value, 1.0);
        EXPECT_LE(lo.value, ex + 1e-10);
        const Bound kt = ktilde_lower(b, m, {}, opt);
        EXPECT_LE(kt.value, ex + 1e-10);
    }
}

TEST(Km, WitnessesAreUsed) {
    const Basis b = random_basis(5, 6);
    const Witness w = km_hilbert_witness(b, {1, 3});
    const Bound lo = km_lower(b, 2, {w}, SearchOptions{0, 0, 0, 0});
    EXPECT_NEAR(lo.value, projection_norm_hilbert(b, {1, 3}), 1e-10);
    EXPECT_EQ(lo.witness, w.label);
    EXPECT_EQ(km_lower(b, 1, {w}, SearchOptions{0, 0, 0, 0}).value, 1.0);
}

TEST(Ktilde, IdentityIsOne) {
    const Basis u = Basis::unit(lp(2.0, 6));
    SearchOptions opt;
    opt.trials = 20;
    EXPECT_NEAR(ktilde_lower(u, 4, {}, opt).value, 1.0, 1e-12);
}

TEST(Democracy, LpUnitSystem) {
    const Basis u = Basis::unit(lp(3.0, 6));
    for (std::size_t m = 1; m <= 6; ++m) {
        const auto d = democracy_functions(u, m, DemocracyMode::exhaustive, {}, 0, 1);
        EXPECT_TRUE(d.exhaustive);
        const double want = std::cbrt(static_cast<double>(m));
        EXPECT_NEAR(d.phi_u, want, 1e-12);
        EXPECT_NEAR(d.phi_l, want, 1e-12);
        EXPECT_NEAR(d.phi_us, want, 1e-12);
        EXPECT_NEAR(d.phi_ls, want, 1e-12);
    }
}

TEST(Democracy, SingletonsGiveLargestVector) {
    const Basis b = random_basis(5, 7);
    double mx = 0.0;
    for (std::size_t n = 0; n < 5; ++n) mx = std::max(mx, b.vector(n).norm());
    EXPECT_NEAR(democracy_functions(b, 1, DemocracyMode::exhaustive, {}, 0, 1).phi_u, mx, 1e-12);
}

TEST(Tqg, EuclideanUnitSystemIsOne) {
    const Bound t = tqg_constant_lower(Basis::unit(lp(2.0, 16)), {}, 200, 3);
    EXPECT_GE(t.value, 1.0);
    EXPECT_LE(t.value, 1.0 + 1e-12);
}

TEST(QuasiGreedy, SingleVectorWitness) {
    const Basis b = random_basis(4, 8);
    const Witness w{b.vector(2), {2}, "x3", "structured"};
    EXPECT_NEAR(quasi_greedy_lower(b, {w}).value, 1.0, 1e-12);
    const Witness bad{b.vector(2) + 0.5 * b.vector(1), {1}, "not greedy", "structured"};
    const auto ratios = greedy_witness_ratios(b, {bad});
    EXPECT_FALSE(ratios.front().greedy);
}

TEST(Lebesgue, OrthonormalExhaustive) {
    const Basis b = random_basis(8, 9, true);
    Rng rng = make_rng(1, 0);
    std::normal_distribution<double> g;
    for (int t = 0; t < 5; ++t) {
        Vec f(8);
        for (auto& x : f) x = g(rng);
        for (std::size_t m = 1; m < 8; ++m) EXPECT_NEAR(lebesgue_lower(b, f, m, all_subsets_of_size(8, m)).value, 1.0, 1e-12);
    }
}

TEST(Lebesgue, ExactRecovery) {
    const Basis u = Basis::unit(lp(2.0, 5));
    const Vec f = vec({0, 2, 0, -1, 0});
    EXPECT_EQ(lebesgue_lower(u, f, 2, {{1, 3}}).value, 1.0);
}

TEST(Phi, OrthonormalIsOneAndCurveMonotone) {
    const PhiPool p(random_basis(6, 10, true), {}, 100, 2);
    for (double a : {1.0, 0.3, 0.01}) EXPECT_NEAR(p(a).value, 1.0, 1e-12);
    const PhiPool q(random_basis(6, 11), {}, 100, 2);
    double prev = std::numeric_limits<double>::infinity();
    for (double a : {0.01, 0.05, 0.1, 0.3, 0.6, 1.0}) {
        const double v = q(a).value;
        EXPECT_LE(v, prev);
        EXPECT_GE(v, 1.0);
        prev = v;
    }
}

TEST(KmPhi, IdentityTransfer) {
    const Basis u = Basis::unit(lp(2.0, 4));
    const PhiPool p(u, {}, 20, 1);
    const TransferCheck tc = kmphi_transfer_check(u, 1.0, {1.0}, {1.0, 0.5, 0.1}, p, 0, 1);
    EXPECT_TRUE(tc.alpha2_exact);
    EXPECT_FALSE(tc.any_flag());
    for (const auto& r : tc.rows) {
        EXPECT_NEAR(r.rhs, 0.25, 1e-15);
        EXPECT_GE(r.lhs, 1.0);
    }
}

TEST(KmPhi, WitnessesLandInQ) {
    const Basis b = random_basis(6, 12);
    const auto ws = kmphi_witnesses(b, {km_hilbert_witness(b, {0, 1, 2})}, 1.0);
    for (const auto& w : ws) EXPECT_LE(b.analyze(w.f).cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(DyadicLayers, Example) {
    const auto layers = dyadic_layers_coeffs(vec({1, 0.6, 0.3, 0.1}), 0.25);
    ASSERT_EQ(layers.size(), 3u);
    EXPECT_EQ(layers[0], (IndexSet{0}));
    EXPECT_EQ(layers[1], (IndexSet{1}));
    EXPECT_EQ(layers[2], (IndexSet{2}));
}

TEST(DyadicLayers, SingleLayerCases) {
    const auto ones = dyadic_layers_coeffs(vec({1, -1, 1}), 0.1);
    EXPECT_EQ(ones[0], (IndexSet{0, 1, 2}));
    for (std::size_t j = 1; j < ones.size(); ++j) EXPECT_TRUE(ones[j].empty());
    EXPECT_EQ(dyadic_layers_coeffs(vec({1, 0.9}), 1.0).size(), 1u);
    EXPECT_THROW(dyadic_layers_coeffs(vec({2.0}), 0.5), std::invalid_argument);
}

TEST(Fits, LinesAndSpread) {
    const auto f = fit_linear({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 1.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    const auto g = fit_loglog({1, 10, 100}, {2, 20, 200});
    EXPECT_NEAR(g.slope, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(spread({2.0, 8.0, 4.0}), 4.0);
    EXPECT_TRUE(std::isinf(spread({0.0, 1.0})));
}
