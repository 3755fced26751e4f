#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace glab {

// Non-negative weight with w[0] > 0; caches the primitive s_m = w_1 + ... + w_m.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<double> w);

    static Weight constant(std::size_t n, double value = 1.0);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    // s_{i+1}, i.e. the sum of the first i+1 entries
    double primitive(std::size_t i) const { return s_[i]; }
    const std::vector<double>& values() const { return w_; }
    Weight truncated(std::size_t n) const;

private:
    std::vector<double> w_;
    std::vector<double> s_;
};

// Lambda_1..Lambda_N; value(m) is 1-based with value(0) = 0.
class FundamentalFunction {
public:
    FundamentalFunction() = default;
    explicit FundamentalFunction(std::vector<double> lambda);

    static FundamentalFunction power(std::size_t n, double exponent);
    static FundamentalFunction logarithmic(std::size_t n);

    std::size_t size() const { return lambda_.size(); }
    double operator()(std::size_t m) const;
    const std::vector<double>& values() const { return lambda_; }

    // Lambda non-decreasing and m/Lambda non-decreasing, up to tol (relative).
    bool is_regular(double tol = 1e-12) const;

    // w = (Lambda_n - Lambda_{n-1}) and u = (Lambda_n / n)
    Weight increment_weight() const;
    Weight average_weight() const;

private:
    std::vector<double> lambda_;
};

struct LpKind {
    double p = 2.0;
};
struct LorentzKind {
    double q = 1.0;
    Weight w;
};
struct WeakLorentzKind {
    Weight w;
};

class SeqNorm {
public:
    using Kind = std::variant<LpKind, LorentzKind, WeakLorentzKind>;

    static SeqNorm lp(double p, std::size_t dim);
    static SeqNorm lorentz(double q, Weight w);
    static SeqNorm weak_lorentz(Weight w);

    std::size_t dim() const { return dim_; }
    const Kind& kind() const { return kind_; }
    double eval(std::span<const double> f) const;
    // norm of the vector made of consecutive runs values[i] repeated lengths[i] times
    double eval_runs(std::span<const double> values, std::span<const std::size_t> lengths) const;

    // same kind, dimension n (weights truncated; error if too short)
    SeqNorm resized(std::size_t n) const;

    bool is_euclidean() const;
    // triangle inequality holds
    bool is_convex() const;
    std::string describe() const;

    nlohmann::json to_json() const;
    static SeqNorm from_json(const nlohmann::json& j);

private:
    // Lorentz-type norms of non-increasing nonnegative magnitudes
    double eval_sorted(const std::vector<double>& a) const;
    SeqNorm(Kind k, std::size_t dim) : kind_(std::move(k)), dim_(dim) {}
    Kind kind_;
    std::size_t dim_ = 0;
};

FundamentalFunction fundamental_function(const SeqNorm& s);

// Truncation-relative verdict: holds within {1..N}. On failure, counterexample[i] is
// the smallest violating m for candidate b = 2 + i.
struct RegularityVerdict {
    bool holds = false;
    std::size_t witness_b = 0;
    std::vector<std::size_t> counterexamples;
};

// Candidates b range over 2..floor(sqrt(N)) so every b is tested on at least b values of m.
RegularityVerdict has_lrp(const FundamentalFunction& lambda);
RegularityVerdict has_urp(const FundamentalFunction& lambda);

std::vector<double> dini_ratio(const FundamentalFunction& lambda);

double lorentz_equiv_check(const Weight& w, const Weight& w2, double q, int trials, std::uint64_t seed);

// Largest observed ||f||_{d_q(w)} / ||f||_{d_p(w)} over structured and random vectors.
double embedding_constant(const Weight& w, double p, double q, int trials, std::uint64_t seed);

}  // namespace glab
