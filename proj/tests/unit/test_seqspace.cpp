#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "glab/random.hpp"
#include "glab/seqspace.hpp"

using namespace glab;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> g;
    std::vector<double> f(n);
    for (auto& x : f) x = g(rng);
    return f;
}

// smallest b in 2..floor(sqrt N) with pred(Lambda_m, Lambda_bm, b) for every bm <= N
std::size_t oracle_b(const std::vector<double>& lam, auto pred) {
    const std::size_t n = lam.size();
    for (std::size_t b = 2; b * b <= n; ++b) {
        bool ok = true;
        for (std::size_t m = 1; b * m <= n && ok; ++m) ok = pred(lam[m - 1], lam[b * m - 1], static_cast<double>(b));
        if (ok) return b;
    }
    return 0;
}

}  // namespace

TEST(SeqNorm, EuclideanValue) {
    const std::vector<double> f{3.0, 4.0, 0.0};
    EXPECT_DOUBLE_EQ(SeqNorm::lp(2.0, 3).eval(f), 5.0);
}

TEST(SeqNorm, LorentzWithUnitWeightIsL1) {
    const auto f = random_vector(50, 1);
    const double l1 = std::accumulate(f.begin(), f.end(), 0.0, [](double s, double x) { return s + std::abs(x); });
    EXPECT_NEAR(SeqNorm::lorentz(1.0, Weight::constant(50)).eval(f), l1, 1e-12 * l1);
}

TEST(SeqNorm, WeakLorentzOfHarmonicVector) {
    std::vector<double> f(40);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = 1.0 / static_cast<double>(k + 1);
    std::reverse(f.begin(), f.end());
    EXPECT_NEAR(SeqNorm::weak_lorentz(Weight::constant(40)).eval(f), 1.0, 1e-15);
}

TEST(SeqNorm, RearrangementInvariance) {
    auto f = random_vector(64, 2);
    std::vector<double> w(64);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = 1.0 / std::sqrt(k + 1.0);
    const SeqNorm s = SeqNorm::lorentz(2.0, Weight(w));
    const double before = s.eval(f);
    std::reverse(f.begin(), f.end());
    for (std::size_t k = 0; k < f.size(); k += 3) f[k] = -f[k];
    EXPECT_NEAR(s.eval(f), before, 1e-12 * before);
}

TEST(SeqNorm, RunsMatchExpandedVector) {
    const std::vector<double> values{0.5, -2.0, 0.0, 1.25};
    const std::vector<std::size_t> lengths{3, 1, 4, 2};
    std::vector<double> full;
    for (std::size_t i = 0; i < values.size(); ++i) full.insert(full.end(), lengths[i], values[i]);
    std::vector<double> w(10);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = 1.0 / (k + 1.0);
    for (const SeqNorm& s : {SeqNorm::lp(1.0, 10), SeqNorm::lp(3.0, 10), SeqNorm::lorentz(1.0, Weight(w)), SeqNorm::lorentz(2.5, Weight(w)),
                             SeqNorm::weak_lorentz(Weight(w))})
        EXPECT_NEAR(s.eval_runs(values, lengths), s.eval(full), 1e-13) << s.describe();
}

TEST(SeqNorm, DimensionMismatchThrows) {
    const std::vector<double> f{1.0, 2.0};
    EXPECT_THROW(SeqNorm::lp(2.0, 3).eval(f), std::invalid_argument);
}

TEST(FundamentalFunction, LpIsPowerOfM) {
    const auto lam = fundamental_function(SeqNorm::lp(3.0, 100));
    for (std::size_t m : {1, 7, 64, 100}) EXPECT_NEAR(lam(m), std::cbrt(static_cast<double>(m)), 1e-12);
}

TEST(FundamentalFunction, LorentzMatchesIndicatorNorms) {
    std::vector<double> w(60);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::pow(k + 1.0, -0.3);
    const SeqNorm s = SeqNorm::lorentz(2.0, Weight(w));
    const auto lam = fundamental_function(s);
    double acc = 0.0, prim = 0.0;
    for (std::size_t m = 1; m <= 60; ++m) {
        prim += w[m - 1];
        acc += prim * w[m - 1];  // s_n^{q-1} w_n with q = 2
        std::vector<double> ind(60, 0.0);
        std::fill(ind.begin(), ind.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
        EXPECT_NEAR(lam(m), std::sqrt(acc), 1e-12 * std::sqrt(acc));
        EXPECT_NEAR(lam(m), s.eval(ind), 1e-12 * std::sqrt(acc));
    }
}

TEST(FundamentalFunction, WeakLorentzIsPrimitive) {
    std::vector<double> w{1.0, 0.5, 0.25, 0.125};
    const auto lam = fundamental_function(SeqNorm::weak_lorentz(Weight(w)));
    EXPECT_DOUBLE_EQ(lam(1), 1.0);
    EXPECT_DOUBLE_EQ(lam(4), 1.875);
}

TEST(Regularity, TableAgreesWithExhaustiveOracle) {
    const std::size_t n = 10000;
    const auto lrp = [](double lm, double lbm, double) { return 2.0 * lm <= lbm * (1.0 + 1e-12); };
    const auto urp = [](double lm, double lbm, double b) { return 2.0 * lbm <= b * lm * (1.0 + 1e-12); };
    struct Case {
        FundamentalFunction lam;
        std::size_t lrp_b, urp_b;
    };
    // frozen from the oracle: sqrt m (4, 4), m (2, fails), 1 + log m (fails, 6)
    const Case cases[] = {{FundamentalFunction::power(n, 0.5), 4, 4}, {FundamentalFunction::power(n, 1.0), 2, 0},
                          {FundamentalFunction::logarithmic(n), 0, 6}};
    for (const auto& c : cases) {
        ASSERT_EQ(oracle_b(c.lam.values(), lrp), c.lrp_b);
        ASSERT_EQ(oracle_b(c.lam.values(), urp), c.urp_b);
        const auto l = has_lrp(c.lam), u = has_urp(c.lam);
        EXPECT_EQ(l.holds ? l.witness_b : 0, c.lrp_b);
        EXPECT_EQ(u.holds ? u.witness_b : 0, c.urp_b);
    }
}

TEST(Regularity, DiniRatioForSqrt) {
    const auto r = dini_ratio(FundamentalFunction::power(10000, 0.5));
    EXPECT_DOUBLE_EQ(r.front(), 1.0);
    double acc = 0.0, worst = 0.0;
    for (std::size_t m = 1; m <= 10000; ++m) {
        acc += 1.0 / std::sqrt(static_cast<double>(m));
        worst = std::max(worst, acc / std::sqrt(static_cast<double>(m)));
        ASSERT_NEAR(r[m - 1], acc / std::sqrt(static_cast<double>(m)), 1e-12);
    }
    EXPECT_LE(worst, 2.01);
    EXPECT_NEAR(*std::max_element(r.begin(), r.end()), 1.9854465, 1e-7);
}

TEST(Regularity, DiniOfLinearIsOneAndOfConstantIsHarmonic) {
    const auto lin = dini_ratio(FundamentalFunction::power(1000, 1.0));
    for (double v : lin) EXPECT_NEAR(v, 1.0, 1e-12);
    const auto flat = dini_ratio(FundamentalFunction(std::vector<double>(1000, 1.0)));
    double h = 0.0;
    for (std::size_t m = 1; m <= 1000; ++m) h += 1.0 / static_cast<double>(m);
    EXPECT_NEAR(flat.back(), h, 1e-12);
}

TEST(Lorentz, EqualPrimitivesAreEquivalent) {
    std::vector<double> w2(256);
    for (std::size_t k = 0; k < w2.size(); ++k) w2[k] = k % 2 == 0 ? 2.0 : 0.0;
    EXPECT_LE(lorentz_equiv_check(Weight::constant(256), Weight(w2), 1.0, 1000, 3), 2.0 + 1e-12);
    EXPECT_NEAR(lorentz_equiv_check(Weight::constant(64), Weight::constant(64), 1.0, 100, 3), 1.0, 1e-12);
}

TEST(Lorentz, HarmonicGapGrowsWithDimension) {
    const auto ratio = [](std::size_t n) {
        std::vector<double> h(n);
        for (std::size_t k = 0; k < n; ++k) h[k] = 1.0 / (k + 1.0);
        return lorentz_equiv_check(Weight::constant(n), Weight(h), 1.0, 50, 4);
    };
    const double small = ratio(64), large = ratio(4096);
    EXPECT_GT(large, 4.0 * small);
    // the full indicator witnesses n / H_n
    double hn = 0.0;
    for (std::size_t k = 1; k <= 4096; ++k) hn += 1.0 / static_cast<double>(k);
    EXPECT_GE(large, 4096.0 / hn * (1.0 - 1e-12));
}

TEST(Lorentz, EmbeddingConstantIsAtLeastOneAndDimensionStable) {
    std::vector<double> consts;
    for (std::size_t n = 256; n <= 1024; n *= 2) {
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = 1.0 / std::sqrt(k + 1.0);
        consts.push_back(embedding_constant(Weight(w), 2.0, std::numeric_limits<double>::infinity(), 100, 5));
    }
    for (double c : consts) EXPECT_GE(c, 1.0);
    EXPECT_LE(*std::max_element(consts.begin(), consts.end()) / *std::min_element(consts.begin(), consts.end()), 1.05);
}
