#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glab/basis.hpp"
#include "glab/partition.hpp"
#include "glab/seqspace.hpp"

namespace glab {

struct RotationPair {
    double R = 0.0;
    double alpha = 0.0;  // arcsin(1/R)
    Eigen::Vector2d h1, h2;
    Eigen::Vector2d h1_star, h2_star;
    // R^2 / (2 sqrt(R^2 - 1)), the Euclidean norm of both duals
    double dual_norm() const;
};

// requires R >= sqrt(2)
RotationPair rotation_pair(double R);

struct EtaPair {
    double lambda = 1.0;
    double mu = 1.0;
};

class EtaSequence {
public:
    explicit EtaSequence(std::vector<EtaPair> pairs);
    std::size_t size() const { return pairs_.size(); }
    const EtaPair& operator[](std::size_t n) const { return pairs_[n]; }

private:
    std::vector<EtaPair> pairs_;
};

// X_eta: y_{2n-1} = lambda_n L_n(h_1), y_{2n} = lambda_n L_n(h_2) with R = lambda_n mu_n.
Basis eta_transform(const Basis& b, const EtaSequence& eta);

// Y[X, S, sigma] with ||f|| = ||Q_sigma f||_S + ||sum_n v*_n(f) x_n||_X.
class DkkSpace final : public NormedSpace {
public:
    DkkSpace(Basis base, SeqNorm host, OrderedPartition sigma);

    std::size_t dim() const override { return host_.dim(); }
    double norm(std::span<const double> f) const override;
    using NormedSpace::norm;
    nlohmann::json to_json() const override;

    double q_part(std::span<const double> f) const;
    double x_part(std::span<const double> f) const;
    // T_2 f = sum v*_n(f) x_n, in the coordinates of X
    Vec x_image(std::span<const double> f) const;
    // inverse map (g, x) -> g + sum_n x^#_n(x) v_n; g must lie in Q_sigma(S)
    Vec assemble(const Vec& g, const Vec& x) const;
    // z*_k(g, x) = g_k + x*_n(x) / Lambda_{|sigma_n|}, n the block of k
    double unit_dual(std::size_t k, const Vec& g, const Vec& x) const;

    const Basis& base() const { return base_; }
    const SeqNorm& host() const { return host_; }
    const OrderedPartition& partition() const { return blocks_.partition(); }
    const BlockSystem& blocks() const { return blocks_; }

private:
    Basis base_;
    SeqNorm host_;
    BlockSystem blocks_;
};

Basis dkk_space(const Basis& base, const SeqNorm& host, const OrderedPartition& sigma);

struct Dkkw {
    std::shared_ptr<const DkkSpace> space;
    Basis basis;  // unit vector system of Y
    Basis x_eta;
    std::vector<std::size_t> pair_sizes;

    // pair index n is 0-based: blocks 2n and 2n+1
    double R(std::size_t n, double a, double b) const;
    // Lambda_{s_n} ||a y_{2n-1} + b y_{2n}||_X
    double R_formula(std::size_t n, double a, double b) const;
    Vec pair_vector(std::size_t n, double a, double b) const;
};

// eta = (s_n / Lambda_{s_n}, Lambda_{s_n}); sigma must have paired sizes s_n >= 2
Dkkw dkkw_assembly(const Basis& b, const SeqNorm& host, const OrderedPartition& sigma);

struct Witness {
    Vec f;         // vector of the space
    IndexSet set;  // projection set
    std::string label;
    std::string provenance;  // proof | random | structured
};

struct SignedSet {
    IndexSet set;
    std::vector<int> signs;  // empty means all +1
    std::string label;
};

// Per-level witness pair of the MainA argument (and the thmA analogue).
struct LevelWitness {
    std::size_t level = 0;  // n, 1-based
    std::size_t scale = 0;  // number of leading coordinates containing both vectors
    Vec f, g;
    IndexSet f_support, g_support;
    double coefficient = 0.0;  // common magnitude of the nonzero coordinates (0 if not constant)
};

struct Construction {
    std::string name;
    Basis basis;
    std::shared_ptr<const DkkSpace> space;
    std::vector<Witness> witnesses;
    std::vector<SignedSet> structured_sets;
    std::vector<LevelWitness> levels;
    std::vector<std::string> warnings;
    nlohmann::json meta;
};

struct BuildOptions {
    std::size_t max_dim = std::size_t{1} << 18;
};

// host is a prototype: SeqNorm::resized gives the member of each needed dimension
Construction build_thmA(const SeqNorm& host, std::size_t levels, const BuildOptions& opt = {});
// the pair-level assembly behind build_thmA, for the R_n(a, b) identity checks
Dkkw thmA_assembly(const SeqNorm& host, const Basis& x, std::size_t levels, const BuildOptions& opt = {});
Construction build_thmA(const SeqNorm& host, const Basis& x, std::size_t levels, const BuildOptions& opt = {});
Construction build_mainA(const SeqNorm& host, std::size_t levels, const BuildOptions& opt = {});
Construction build_dem_nonucc(const SeqNorm& host, std::size_t levels, const BuildOptions& opt = {});
// plain Y[X, S, sigma] over X = host^levels, sigma sizes 2, 4, ..., 2^levels
Construction build_dkk(const SeqNorm& host, std::size_t levels, const BuildOptions& opt = {});

Construction build_named(const std::string& name, const SeqNorm& host, std::size_t levels, const BuildOptions& opt = {});

double eq_positive_check(const Basis& u, const std::vector<double>& mu, int trials, std::uint64_t seed);

}  // namespace glab
