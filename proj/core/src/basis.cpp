#include "glab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "glab/random.hpp"

namespace glab {

nlohmann::json SequenceSpace::to_json() const { return {{"kind", "sequence"}, {"norm", s_.to_json()}}; }

BlockSpanSpace::BlockSpanSpace(SeqNorm host, OrderedPartition sigma)
    : host_(std::move(host)), blocks_(std::move(sigma), fundamental_function(host_)) {
    if (host_.dim() != blocks_.partition().dim()) throw std::invalid_argument("host dimension differs from partition size");
}

double BlockSpanSpace::norm(std::span<const double> c) const {
    if (c.size() != dim()) throw std::invalid_argument("dimension mismatch in block span norm");
    const Vec v = blocks_.expand(c);
    return host_.eval(as_span(v));
}

nlohmann::json BlockSpanSpace::to_json() const {
    return {{"kind", "block_span"}, {"host", host_.to_json()}, {"partition", blocks_.partition().to_json()}};
}

double DirectSumSpace::norm(std::span<const double> f) const {
    if (f.size() != dim()) throw std::invalid_argument("dimension mismatch in direct sum norm");
    const std::size_t d = left_->dim();
    return std::max(left_->norm(f.subspan(0, d)), right_->norm(f.subspan(d)));
}

nlohmann::json DirectSumSpace::to_json() const {
    return {{"kind", "direct_sum"}, {"left", left_->to_json()}, {"right", right_->to_json()}};
}

SubspaceSpace::SubspaceSpace(SpacePtr ambient, Mat embed) : ambient_(std::move(ambient)), embed_(std::move(embed)) {
    if (static_cast<std::size_t>(embed_.rows()) != ambient_->dim()) throw std::invalid_argument("embedding rows differ from ambient dimension");
}

double SubspaceSpace::norm(std::span<const double> a) const {
    if (a.size() != dim()) throw std::invalid_argument("dimension mismatch in subspace norm");
    const Eigen::Map<const Vec> av(a.data(), static_cast<Eigen::Index>(a.size()));
    const Vec f = embed_ * av;
    return ambient_->norm(f);
}

nlohmann::json SubspaceSpace::to_json() const {
    return {{"kind", "subspace"}, {"ambient", ambient_->to_json()}, {"columns", embed_.cols()}};
}

Basis Basis::unit(SpacePtr space) { return Basis(std::move(space), std::nullopt, std::nullopt, 1.0); }

Basis Basis::from_synthesis(SpacePtr space, Mat synth) {
    const auto n = static_cast<Eigen::Index>(space->dim());
    if (synth.rows() != n || synth.cols() != n) throw std::invalid_argument("synthesis matrix must be N x N");
    Eigen::PartialPivLU<Mat> lu(synth);
    const double rc = lu.rcond();
    if (!(rc > 0.0)) throw std::invalid_argument("synthesis matrix is singular");
    Mat anal = lu.inverse();
    return Basis(std::move(space), std::move(synth), std::move(anal), rc);
}

Basis Basis::from_pair(SpacePtr space, Mat synth, Mat anal, double tol) {
    const auto n = static_cast<Eigen::Index>(space->dim());
    if (synth.rows() != n || synth.cols() != n || anal.rows() != n || anal.cols() != n)
        throw std::invalid_argument("basis matrices must be N x N");
    const double err = (anal * synth - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > tol) throw std::invalid_argument("supplied duals are not biorthogonal");
    const double rc = Eigen::PartialPivLU<Mat>(synth).rcond();
    return Basis(std::move(space), std::move(synth), std::move(anal), rc);
}

Vec Basis::analyze(std::span<const double> f) const {
    if (f.size() != dim()) throw std::invalid_argument("dimension mismatch in analysis");
    const Eigen::Map<const Vec> fv(f.data(), static_cast<Eigen::Index>(f.size()));
    if (is_unit()) return fv;
    return (*anal_) * fv;
}

Vec Basis::synthesize(std::span<const double> c) const {
    if (c.size() != dim()) throw std::invalid_argument("dimension mismatch in synthesis");
    const Eigen::Map<const Vec> cv(c.data(), static_cast<Eigen::Index>(c.size()));
    if (is_unit()) return cv;
    return (*synth_) * cv;
}

Vec Basis::vector(std::size_t n) const {
    if (n >= dim()) throw std::out_of_range("basis index out of range");
    if (is_unit()) return Vec::Unit(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(n));
    return synth_->col(static_cast<Eigen::Index>(n));
}

Vec Basis::dual(std::size_t n) const {
    if (n >= dim()) throw std::out_of_range("basis index out of range");
    if (is_unit()) return Vec::Unit(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(n));
    return anal_->row(static_cast<Eigen::Index>(n)).transpose();
}

Mat Basis::synth() const {
    const auto n = static_cast<Eigen::Index>(dim());
    return is_unit() ? Mat(Mat::Identity(n, n)) : *synth_;
}

Mat Basis::anal() const {
    const auto n = static_cast<Eigen::Index>(dim());
    return is_unit() ? Mat(Mat::Identity(n, n)) : *anal_;
}

double Basis::biorthogonality_error() const {
    if (is_unit()) return 0.0;
    const auto n = static_cast<Eigen::Index>(dim());
    return ((*anal_) * (*synth_) - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
}

Vec analyze(const Basis& b, std::span<const double> f) { return b.analyze(f); }

Vec project_coefficients(const Basis& b, const IndexSet& a, const Vec& coeffs) {
    Vec c = Vec::Zero(coeffs.size());
    for (std::size_t n : a) {
        if (n >= b.dim()) throw std::out_of_range("index set outside basis range");
        c[static_cast<Eigen::Index>(n)] = coeffs[static_cast<Eigen::Index>(n)];
    }
    return b.synthesize(c);
}

Vec coordinate_projection(const Basis& b, const IndexSet& a, std::span<const double> f) {
    return project_coefficients(b, a, b.analyze(f));
}

GreedyResult greedy_order(const Vec& coeffs, std::size_t m) {
    const auto n = static_cast<std::size_t>(coeffs.size());
    if (m > n) throw std::invalid_argument("greedy set larger than dimension");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto by_magnitude = [&coeffs](std::size_t i, std::size_t j) {
        const double a = std::abs(coeffs[static_cast<Eigen::Index>(i)]);
        const double b = std::abs(coeffs[static_cast<Eigen::Index>(j)]);
        return a != b ? a > b : i < j;
    };
    if (m < n) {
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m + 1), idx.end(), by_magnitude);
    } else {
        std::sort(idx.begin(), idx.end(), by_magnitude);
    }
    GreedyResult r;
    r.order.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
    r.set = r.order;
    std::sort(r.set.begin(), r.set.end());
    if (m > 0 && m < n) {
        const double last = std::abs(coeffs[static_cast<Eigen::Index>(idx[m - 1])]);
        const double next = std::abs(coeffs[static_cast<Eigen::Index>(idx[m])]);
        r.tie = last - next <= 1e-12 * std::max(1.0, last);
    }
    return r;
}

GreedyResult greedy_set(const Basis& b, std::span<const double> f, std::size_t m) {
    const Vec c = b.analyze(f);
    GreedyResult r = greedy_order(c, m);
    r.projection = project_coefficients(b, r.set, c);
    return r;
}

Vec tga(const Basis& b, std::span<const double> f, std::size_t m) { return greedy_set(b, f, m).projection; }

bool is_greedy_set(const Vec& coeffs, const IndexSet& a, double tol) {
    std::vector<char> in(static_cast<std::size_t>(coeffs.size()), 0);
    for (std::size_t n : a) {
        if (n >= in.size()) return false;
        in[n] = 1;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n = 0; n < in.size(); ++n) {
        const double v = std::abs(coeffs[static_cast<Eigen::Index>(n)]);
        if (in[n])
            lo = std::min(lo, v);
        else
            hi = std::max(hi, v);
    }
    return a.empty() || lo + tol * std::max(1.0, lo) >= hi;
}

Basis direct_sum(const Basis& b1, const Basis& b2) {
    auto space = std::make_shared<DirectSumSpace>(b1.space_ptr(), b2.space_ptr());
    const auto d1 = static_cast<Eigen::Index>(b1.dim());
    const auto d2 = static_cast<Eigen::Index>(b2.dim());
    const Eigen::Index n = d1 + d2;
    const Mat s1 = b1.synth(), s2 = b2.synth(), a1 = b1.anal(), a2 = b2.anal();
    Mat synth = Mat::Zero(n, n);
    Mat anal = Mat::Zero(n, n);
    // z_{2k-1} = (x_k, 0), z_{2k} = (0, y_k); the longer tail follows
    Eigen::Index col = 0;
    const Eigen::Index common = std::min(d1, d2);
    auto put_left = [&](Eigen::Index k) {
        synth.block(0, col, d1, 1) = s1.col(k);
        anal.block(col, 0, 1, d1) = a1.row(k);
        ++col;
    };
    auto put_right = [&](Eigen::Index k) {
        synth.block(d1, col, d2, 1) = s2.col(k);
        anal.block(col, d1, 1, d2) = a2.row(k);
        ++col;
    };
    for (Eigen::Index k = 0; k < common; ++k) {
        put_left(k);
        put_right(k);
    }
    for (Eigen::Index k = common; k < d1; ++k) put_left(k);
    for (Eigen::Index k = common; k < d2; ++k) put_right(k);
    return Basis::from_pair(std::move(space), std::move(synth), std::move(anal));
}

Basis affinity(const Basis& b, const Vec& lambda) {
    if (static_cast<std::size_t>(lambda.size()) != b.dim()) throw std::invalid_argument("affinity scalars differ from dimension");
    for (double l : lambda)
        if (l == 0.0 || !std::isfinite(l)) throw std::invalid_argument("affinity scalars must be nonzero");
    Mat synth = b.synth() * lambda.asDiagonal();
    Mat anal = lambda.cwiseInverse().asDiagonal() * b.anal();
    return Basis::from_pair(b.space_ptr(), std::move(synth), std::move(anal));
}

BlockSequence cc_block_sequence(const Basis& b, const std::vector<IndexSet>& blocks, const std::vector<std::vector<int>>& signs) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    const auto j = static_cast<Eigen::Index>(blocks.size());
    if (!signs.empty() && signs.size() != blocks.size()) throw std::invalid_argument("one sign list per block expected");
    std::vector<char> used(b.dim(), 0);
    Mat vectors = Mat::Zero(n, j);
    Mat duals = Mat::Zero(j, n);
    for (Eigen::Index t = 0; t < j; ++t) {
        const auto& d = blocks[static_cast<std::size_t>(t)];
        if (d.empty()) throw std::invalid_argument("empty block in block sequence");
        const auto& eps = signs.empty() ? std::vector<int>{} : signs[static_cast<std::size_t>(t)];
        if (!eps.empty() && eps.size() != d.size()) throw std::invalid_argument("sign list length differs from block");
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::size_t k = d[i];
            if (k >= b.dim() || used[k]) throw std::invalid_argument("blocks must be disjoint and in range");
            used[k] = 1;
            const double e = eps.empty() ? 1.0 : static_cast<double>(eps[i]);
            vectors.col(t) += e * b.vector(k);
            duals.row(t) += (e / static_cast<double>(d.size())) * b.dual(k).transpose();
        }
    }
    auto space = std::make_shared<SubspaceSpace>(b.space_ptr(), vectors);
    return {Basis::unit(std::move(space)), std::move(vectors), std::move(duals)};
}

DualNorm dual_norm(const Basis& b, std::size_t n, int trials, std::uint64_t seed) {
    const Vec r = b.dual(n);
    if (b.space().is_euclidean()) return {r.norm(), true};
    const auto ratio = [&](const Vec& f) {
        const double d = b.space().norm(f);
        return d > 0.0 ? std::abs(r.dot(f)) / d : 0.0;
    };
    std::vector<Vec> seeds{b.vector(n), r, r.cwiseSign()};
    double best = 0.0;
    const auto climb = [&](Vec f) {
        double cur = ratio(f);
        // line searches along the dual direction and its sign pattern
        const Vec dirs[2] = {r.normalized(), r.cwiseSign().normalized()};
        for (int round = 0; round < 20; ++round) {
            bool improved = false;
            for (const Vec& d : dirs) {
                const double scale = std::max(f.norm(), 1e-300);
                for (double t : {-1.0, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 1.0}) {
                    Vec g = f + (t * scale) * d;
                    const double v = ratio(g);
                    if (v > cur * (1.0 + 1e-12)) {
                        cur = v;
                        f = std::move(g);
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
        return cur;
    };
    for (const Vec& s : seeds) best = std::max(best, climb(s));
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        std::normal_distribution<double> g;
        Vec f(static_cast<Eigen::Index>(b.dim()));
        for (auto& x : f) x = g(rng);
        best = std::max(best, climb(f));
    }
    return {best, false};
}

Vec signed_indicator(const Basis& b, const IndexSet& a, const std::vector<int>& signs) {
    if (!signs.empty() && signs.size() != a.size()) throw std::invalid_argument("sign list length differs from set");
    Vec c = Vec::Zero(static_cast<Eigen::Index>(b.dim()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] >= b.dim()) throw std::out_of_range("index outside basis range");
        c[static_cast<Eigen::Index>(a[i])] = signs.empty() ? 1.0 : static_cast<double>(signs[i]);
    }
    return b.synthesize(c);
}

}  // namespace glab
