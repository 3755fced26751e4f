#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glab/seqspace.hpp"

namespace glab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Block {
    std::size_t start = 0;
    std::size_t length = 0;
    std::size_t end() const { return start + length; }
};

// Consecutive blocks of {0..N-1}. Block indices are 0-based throughout the library.
class OrderedPartition {
public:
    OrderedPartition() = default;
    explicit OrderedPartition(std::vector<std::size_t> sizes);

    // sizes s_1, s_1, s_2, s_2, ...
    static OrderedPartition paired(const std::vector<std::size_t>& pair_sizes);

    std::size_t dim() const { return dim_; }
    std::size_t block_count() const { return sizes_.size(); }
    Block block(std::size_t n) const { return {starts_[n], sizes_[n]}; }
    std::size_t size(std::size_t n) const { return sizes_[n]; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    // M_n = |sigma_1| + ... + |sigma_n|; cumulative(0) = 0
    std::size_t cumulative(std::size_t n) const;
    std::size_t block_of(std::size_t k) const;

    nlohmann::json to_json() const;
    static OrderedPartition from_json(const nlohmann::json& j);

    bool operator==(const OrderedPartition&) const = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> starts_;
    std::size_t dim_ = 0;
};

Vec average_project(const OrderedPartition& sigma, std::span<const double> f);
Vec complement_project(const OrderedPartition& sigma, std::span<const double> f);

inline std::span<const double> as_span(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// V[S, sigma] and V*[S, sigma]: v_n = 1_{sigma_n}/Lambda_{|sigma_n|}, v*_n = (Lambda_{|sigma_n|}/|sigma_n|) 1*_{sigma_n}.
class BlockSystem {
public:
    BlockSystem(OrderedPartition sigma, FundamentalFunction lambda);

    const OrderedPartition& partition() const { return sigma_; }
    const FundamentalFunction& lambda() const { return lambda_; }
    std::size_t block_count() const { return sigma_.block_count(); }

    double vector_scale(std::size_t n) const;      // 1 / Lambda_{|sigma_n|}
    double functional_scale(std::size_t n) const;  // Lambda_{|sigma_n|} / |sigma_n|

    Vec vector(std::size_t n) const;
    Vec functional(std::size_t n) const;
    double apply(std::size_t n, std::span<const double> f) const;
    // (v*_n(f))_n
    Vec coefficients(std::span<const double> f) const;
    // sum_n c_n v_n
    Vec expand(std::span<const double> c) const;

private:
    OrderedPartition sigma_;
    FundamentalFunction lambda_;
};

double block_functional(const BlockSystem& bs, std::size_t n, std::span<const double> f);

struct ProjectionRatios {
    double p_ratio = 0.0;  // max ||P f|| / ||f||
    double q_ratio = 0.0;  // max ||Q f|| / ||f||
};

// Random and structured (indicator, alternating-sign, single-spike) vectors.
ProjectionRatios projection_norm_bound_check(const OrderedPartition& sigma, const SeqNorm& s, int trials, std::uint64_t seed);
// the same samples shared by several hosts of dimension |sigma|
std::vector<ProjectionRatios> projection_norm_bound_check(const OrderedPartition& sigma, const std::vector<SeqNorm>& hosts, int trials,
                                                          std::uint64_t seed);

}  // namespace glab
