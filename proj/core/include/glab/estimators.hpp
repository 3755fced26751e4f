#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "glab/basis.hpp"
#include "glab/constructions.hpp"

namespace glab {

enum class BoundKind { exact, lower, upper };
const char* to_string(BoundKind k);

struct ReportRow {
    std::string quantity;
    double scale = 0.0;
    double value = 0.0;
    BoundKind bound = BoundKind::lower;
    std::string witness;
    std::uint64_t seed = 0;
};

using EstimateReport = std::vector<ReportRow>;
using WitnessFamily = std::vector<Witness>;

struct Bound {
    double value = 0.0;
    BoundKind kind = BoundKind::lower;
    std::string witness;
};

// ||S_A||_{2->2} via the Gram matrices of the selected vectors and duals.
double projection_norm_hilbert(const Basis& b, const IndexSet& a);

// f maximizing ||S_A f|| / ||f||: the leading right singular vector of S_A
Witness km_hilbert_witness(const Basis& b, const IndexSet& a);

// Exact when every A with |A| <= m is enumerated (N <= 20 or m <= 2), otherwise a lower
// bound over `candidates` plus random subsets.
Bound km_exact_hilbert(const Basis& b, std::size_t m, const std::vector<IndexSet>& candidates = {}, int trials = 0,
                       std::uint64_t seed = 0);

struct SearchOptions {
    int trials = 200;
    int rounds = 100;
    // coordinates touched per refinement round; larger bases are refined on a random subset
    std::size_t refine_coordinates = 64;
    std::uint64_t seed = 0;
};

// max ||S_A f|| / ||f|| over witnesses with |A| <= m and random (f, A), refined by coordinate ascent
Bound km_lower(const Basis& b, std::size_t m, const WitnessFamily& witnesses, const SearchOptions& opt);
// same with f in the span of the first m vectors and A unrestricted
Bound ktilde_lower(const Basis& b, std::size_t m, const WitnessFamily& witnesses, const SearchOptions& opt);

enum class DemocracyMode { exhaustive, sampled };

struct DemocracyBounds {
    double phi_u = 0.0, phi_l = 0.0, phi_us = 0.0, phi_ls = 0.0;
    bool exhaustive = false;
};

// Exhaustive mode falls back to sampling when more than 10^6 sets would be enumerated.
DemocracyBounds democracy_functions(const Basis& b, std::size_t m, DemocracyMode mode, const std::vector<SignedSet>& structured,
                                    int trials, std::uint64_t seed);

double signed_indicator_norm(const Basis& b, const IndexSet& a, const std::vector<int>& signs = {});

// max over sampled f and greedy sets A of min_{A}|x*_n(f)| ||1_{eps(f),A}|| / ||f||
Bound tqg_constant_lower(const Basis& b, const WitnessFamily& witnesses, int trials, std::uint64_t seed);

struct GreedyWitnessRatio {
    std::string label;
    double ratio = 0.0;
    bool greedy = false;
};

// ratios ||S_A f|| / ||f|| for every witness; only greedy sets count towards the bound
std::vector<GreedyWitnessRatio> greedy_witness_ratios(const Basis& b, const WitnessFamily& witnesses);
Bound quasi_greedy_lower(const Basis& b, const WitnessFamily& witnesses);

// ||f - G_m f|| / min_B ||f - S_B f||; the empty set is always a candidate
Bound lebesgue_lower(const Basis& b, const Vec& f, std::size_t m, const std::vector<IndexSet>& candidates);

// A fixed pool of pairs (g, A) with g in Q; phi(a) is the best ratio over pairs with
// min_{A}|x*_n(g)| >= a, so the curve is non-increasing in a by construction.
class PhiPool {
public:
    PhiPool(const Basis& b, const WitnessFamily& witnesses, int trials, std::uint64_t seed);
    Bound operator()(double a) const;
    std::size_t size() const { return entries_.size(); }

private:
    struct Entry {
        double threshold;
        double ratio;
        std::string label;
    };
    void add(const Basis& b, const Vec& coeffs, double norm, const IndexSet& a, const std::string& label);
    std::vector<Entry> entries_;
};

Bound phi_lower(const Basis& b, double a, const WitnessFamily& witnesses, int trials, std::uint64_t seed);

// Witnesses of k_m rewritten as elements of Q with the large-coefficient part of A.
WitnessFamily kmphi_witnesses(const Basis& b, const WitnessFamily& km_witnesses, double p);

struct TransferRow {
    double a = 0.0;
    double lhs = 0.0;  // phi lower bound
    double rhs = 0.0;  // F(a^-p) / (4^{1/p} alpha1 alpha2)
    bool flagged = false;
};

struct TransferCheck {
    double alpha1 = 0.0, alpha2 = 0.0;
    bool alpha2_exact = false;
    std::vector<TransferRow> rows;
    bool any_flag() const;
};

// F is supplied on m = 1..F.size() and extended as a step function.
TransferCheck kmphi_transfer_check(const Basis& b, double p, const std::vector<double>& F, const std::vector<double>& a_grid,
                                   const PhiPool& pool, int dual_trials, std::uint64_t seed, double tol = 1e-9);

// (A_0, ..., A_n) with 2^{-n} <= a < 2^{1-n}
std::vector<IndexSet> dyadic_layers(const Basis& b, const Vec& f, double a);
std::vector<IndexSet> dyadic_layers_coeffs(const Vec& coeffs, double a);

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
// max / min of positive values
double spread(const std::vector<double>& v);

}  // namespace glab
