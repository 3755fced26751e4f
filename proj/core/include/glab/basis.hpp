#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glab/partition.hpp"
#include "glab/seqspace.hpp"

namespace glab {

using IndexSet = std::vector<std::size_t>;

class NormedSpace {
public:
    virtual ~NormedSpace() = default;
    virtual std::size_t dim() const = 0;
    virtual double norm(std::span<const double> f) const = 0;
    double norm(const Vec& f) const { return norm(as_span(f)); }
    virtual bool is_euclidean() const { return false; }
    virtual nlohmann::json to_json() const = 0;
};

using SpacePtr = std::shared_ptr<const NormedSpace>;

class SequenceSpace final : public NormedSpace {
public:
    explicit SequenceSpace(SeqNorm s) : s_(std::move(s)) {}
    std::size_t dim() const override { return s_.dim(); }
    double norm(std::span<const double> f) const override { return s_.eval(f); }
    using NormedSpace::norm;
    bool is_euclidean() const override { return s_.is_euclidean(); }
    nlohmann::json to_json() const override;
    const SeqNorm& seq_norm() const { return s_; }

private:
    SeqNorm s_;
};

// P_sigma(S) written in the coordinates of V[S, sigma]: norm(c) = ||sum c_n v_n||_S.
class BlockSpanSpace final : public NormedSpace {
public:
    BlockSpanSpace(SeqNorm host, OrderedPartition sigma);
    std::size_t dim() const override { return blocks_.block_count(); }
    double norm(std::span<const double> c) const override;
    using NormedSpace::norm;
    // V is orthonormal in l2
    bool is_euclidean() const override { return host_.is_euclidean(); }
    nlohmann::json to_json() const override;
    const BlockSystem& blocks() const { return blocks_; }
    const SeqNorm& host() const { return host_; }

private:
    SeqNorm host_;
    BlockSystem blocks_;
};

// X (+) Y with ||(f, g)|| = max(||f||, ||g||); coordinates are f followed by g.
class DirectSumSpace final : public NormedSpace {
public:
    DirectSumSpace(SpacePtr left, SpacePtr right) : left_(std::move(left)), right_(std::move(right)) {}
    std::size_t dim() const override { return left_->dim() + right_->dim(); }
    double norm(std::span<const double> f) const override;
    using NormedSpace::norm;
    nlohmann::json to_json() const override;
    const SpacePtr& left() const { return left_; }
    const SpacePtr& right() const { return right_; }

private:
    SpacePtr left_, right_;
};

// span of the columns of `embed` inside an ambient space, in the column coordinates
class SubspaceSpace final : public NormedSpace {
public:
    SubspaceSpace(SpacePtr ambient, Mat embed);
    std::size_t dim() const override { return static_cast<std::size_t>(embed_.cols()); }
    double norm(std::span<const double> a) const override;
    using NormedSpace::norm;
    nlohmann::json to_json() const override;
    const Mat& embedding() const { return embed_; }
    const SpacePtr& ambient() const { return ambient_; }

private:
    SpacePtr ambient_;
    Mat embed_;
};

// Columns of synth are the x_n, rows of anal the dual functionals x*_n; anal * synth = I.
// The unit vector system is stored implicitly.
class Basis {
public:
    static Basis unit(SpacePtr space);
    // duals by LU with partial pivoting
    static Basis from_synthesis(SpacePtr space, Mat synth);
    // duals supplied in closed form; biorthogonality is verified
    static Basis from_pair(SpacePtr space, Mat synth, Mat anal, double tol = 1e-8);

    std::size_t dim() const { return space_->dim(); }
    const NormedSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    bool is_unit() const { return !synth_.has_value(); }

    Vec analyze(std::span<const double> f) const;
    Vec analyze(const Vec& f) const { return analyze(as_span(f)); }
    Vec synthesize(std::span<const double> c) const;
    Vec synthesize(const Vec& c) const { return synthesize(as_span(c)); }
    Vec vector(std::size_t n) const;
    Vec dual(std::size_t n) const;

    // dense copies; the unit system is expanded on request
    Mat synth() const;
    Mat anal() const;

    // ||sum c_n x_n||
    double coefficient_norm(std::span<const double> c) const { return space_->norm(synthesize(c)); }
    double coefficient_norm(const Vec& c) const { return coefficient_norm(as_span(c)); }

    // reciprocal condition estimate of synth (1 for the unit system)
    double rcond() const { return rcond_; }
    bool ill_conditioned() const { return rcond_ < 1e-12; }
    // max |anal * synth - I|
    double biorthogonality_error() const;

private:
    Basis(SpacePtr space, std::optional<Mat> synth, std::optional<Mat> anal, double rcond)
        : space_(std::move(space)), synth_(std::move(synth)), anal_(std::move(anal)), rcond_(rcond) {}
    SpacePtr space_;
    std::optional<Mat> synth_;
    std::optional<Mat> anal_;
    double rcond_ = 1.0;
};

struct GreedyResult {
    IndexSet set;    // sorted
    IndexSet order;  // selection order (non-increasing magnitude, lowest index first on ties)
    Vec projection;
    bool tie = false;
};

Vec analyze(const Basis& b, std::span<const double> f);
Vec coordinate_projection(const Basis& b, const IndexSet& a, std::span<const double> f);
// same as coordinate_projection but starting from coefficients; returns a vector of the space
Vec project_coefficients(const Basis& b, const IndexSet& a, const Vec& coeffs);

GreedyResult greedy_set(const Basis& b, std::span<const double> f, std::size_t m);
// greedy set from already computed coefficients (projection left empty)
GreedyResult greedy_order(const Vec& coeffs, std::size_t m);
Vec tga(const Basis& b, std::span<const double> f, std::size_t m);
// min over A of |c_n| >= max over the complement of |c_k|, up to tol
bool is_greedy_set(const Vec& coeffs, const IndexSet& a, double tol = 1e-12);

Basis direct_sum(const Basis& b1, const Basis& b2);
Basis affinity(const Basis& b, const Vec& lambda);

struct BlockSequence {
    Basis basis;        // unit system of the reduced space
    Mat vectors;        // ambient coordinates, one column per y_j
    Mat duals;          // rows: averaged duals acting on ambient coordinates
};

BlockSequence cc_block_sequence(const Basis& b, const std::vector<IndexSet>& blocks, const std::vector<std::vector<int>>& signs);

struct DualNorm {
    double value = 0.0;
    bool exact = false;
};

// ||x*_n||: exact in Euclidean ambient, otherwise a sampled lower bound
DualNorm dual_norm(const Basis& b, std::size_t n, int trials, std::uint64_t seed);

// sign vector indicator 1_{eps, A} = sum_{n in A} eps_n x_n
Vec signed_indicator(const Basis& b, const IndexSet& a, const std::vector<int>& signs = {});

}  // namespace glab
