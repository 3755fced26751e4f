#include "glab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glab/random.hpp"

namespace glab {

OrderedPartition::OrderedPartition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    starts_.reserve(sizes_.size());
    for (std::size_t s : sizes_) {
        if (s == 0) throw std::invalid_argument("partition blocks must be non-empty");
        starts_.push_back(dim_);
        dim_ += s;
    }
}

OrderedPartition OrderedPartition::paired(const std::vector<std::size_t>& pair_sizes) {
    std::vector<std::size_t> s;
    s.reserve(2 * pair_sizes.size());
    for (std::size_t p : pair_sizes) {
        s.push_back(p);
        s.push_back(p);
    }
    return OrderedPartition(std::move(s));
}

std::size_t OrderedPartition::cumulative(std::size_t n) const {
    if (n > sizes_.size()) throw std::out_of_range("partition cumulative index");
    return n == sizes_.size() ? dim_ : starts_[n];
}

std::size_t OrderedPartition::block_of(std::size_t k) const {
    if (k >= dim_) throw std::out_of_range("coordinate outside partition");
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), k);
    return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

nlohmann::json OrderedPartition::to_json() const { return {{"sizes", sizes_}}; }

OrderedPartition OrderedPartition::from_json(const nlohmann::json& j) {
    return OrderedPartition(j.at("sizes").get<std::vector<std::size_t>>());
}

Vec average_project(const OrderedPartition& sigma, std::span<const double> f) {
    if (f.size() != sigma.dim()) throw std::invalid_argument("dimension mismatch in averaging projection");
    Vec out(static_cast<Eigen::Index>(f.size()));
    for (std::size_t n = 0; n < sigma.block_count(); ++n) {
        const Block b = sigma.block(n);
        double s = 0.0;
        for (std::size_t k = b.start; k < b.end(); ++k) s += f[k];
        const double avg = s / static_cast<double>(b.length);
        for (std::size_t k = b.start; k < b.end(); ++k) out[static_cast<Eigen::Index>(k)] = avg;
    }
    return out;
}

Vec complement_project(const OrderedPartition& sigma, std::span<const double> f) {
    Vec out = average_project(sigma, f);
    for (std::size_t k = 0; k < f.size(); ++k) out[static_cast<Eigen::Index>(k)] = f[k] - out[static_cast<Eigen::Index>(k)];
    return out;
}

BlockSystem::BlockSystem(OrderedPartition sigma, FundamentalFunction lambda)
    : sigma_(std::move(sigma)), lambda_(std::move(lambda)) {
    for (std::size_t s : sigma_.sizes())
        if (s > lambda_.size()) throw std::invalid_argument("block larger than the fundamental function truncation");
}

double BlockSystem::vector_scale(std::size_t n) const { return 1.0 / lambda_(sigma_.size(n)); }

double BlockSystem::functional_scale(std::size_t n) const {
    return lambda_(sigma_.size(n)) / static_cast<double>(sigma_.size(n));
}

Vec BlockSystem::vector(std::size_t n) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(sigma_.dim()));
    const Block b = sigma_.block(n);
    v.segment(static_cast<Eigen::Index>(b.start), static_cast<Eigen::Index>(b.length)).setConstant(vector_scale(n));
    return v;
}

Vec BlockSystem::functional(std::size_t n) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(sigma_.dim()));
    const Block b = sigma_.block(n);
    v.segment(static_cast<Eigen::Index>(b.start), static_cast<Eigen::Index>(b.length)).setConstant(functional_scale(n));
    return v;
}

double BlockSystem::apply(std::size_t n, std::span<const double> f) const {
    if (n >= block_count()) throw std::out_of_range("block index out of range");
    if (f.size() != sigma_.dim()) throw std::invalid_argument("dimension mismatch in block functional");
    const Block b = sigma_.block(n);
    double s = 0.0;
    for (std::size_t k = b.start; k < b.end(); ++k) s += f[k];
    return functional_scale(n) * s;
}

Vec BlockSystem::coefficients(std::span<const double> f) const {
    Vec c(static_cast<Eigen::Index>(block_count()));
    for (std::size_t n = 0; n < block_count(); ++n) c[static_cast<Eigen::Index>(n)] = apply(n, f);
    return c;
}

Vec BlockSystem::expand(std::span<const double> c) const {
    if (c.size() != block_count()) throw std::invalid_argument("coefficient count differs from block count");
    Vec v(static_cast<Eigen::Index>(sigma_.dim()));
    for (std::size_t n = 0; n < block_count(); ++n) {
        const Block b = sigma_.block(n);
        v.segment(static_cast<Eigen::Index>(b.start), static_cast<Eigen::Index>(b.length)).setConstant(c[n] * vector_scale(n));
    }
    return v;
}

double block_functional(const BlockSystem& bs, std::size_t n, std::span<const double> f) { return bs.apply(n, f); }

ProjectionRatios projection_norm_bound_check(const OrderedPartition& sigma, const SeqNorm& s, int trials, std::uint64_t seed) {
    return projection_norm_bound_check(sigma, std::vector<SeqNorm>{s}, trials, seed).front();
}

std::vector<ProjectionRatios> projection_norm_bound_check(const OrderedPartition& sigma, const std::vector<SeqNorm>& hosts, int trials,
                                                          std::uint64_t seed) {
    for (const auto& s : hosts)
        if (s.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch in projection check");
    const std::size_t n = sigma.dim();
    const std::size_t nh = hosts.size();
    const int structured = 4;
    const auto total = static_cast<std::size_t>(std::max(trials, 0) + structured);
    std::vector<ProjectionRatios> slots(total * nh);
    parallel_for(total, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        std::normal_distribution<double> g;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Vec f = Vec::Zero(static_cast<Eigen::Index>(n));
        switch (t < structured ? static_cast<int>(t) : 4 + static_cast<int>(t % 4)) {
            case 0: f.setOnes(); break;
            case 1:
                for (std::size_t k = 0; k < n; ++k) f[static_cast<Eigen::Index>(k)] = (k % 2) ? -1.0 : 1.0;
                break;
            case 2: f[0] = 1.0; break;
            case 3:
                // one heavy entry per block: the extremal case for averaging in d_1(w)
                for (std::size_t b = 0; b < sigma.block_count(); ++b) f[static_cast<Eigen::Index>(sigma.block(b).start)] = 1.0;
                break;
            case 4:
                for (auto& x : f) x = g(rng);
                break;
            case 5:
                for (auto& x : f) x = std::exp(3.0 * g(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
                break;
            case 6: {
                const double density = std::max(1.0 / static_cast<double>(n), 0.1 * u(rng));
                for (auto& x : f) x = u(rng) < density ? 1.0 : 0.0;
                break;
            }
            default: {
                // spikes at random positions inside random blocks
                const std::size_t hits = 1 + static_cast<std::size_t>(u(rng) * static_cast<double>(sigma.block_count()));
                for (std::size_t h = 0; h < hits; ++h) {
                    const std::size_t b = static_cast<std::size_t>(u(rng) * static_cast<double>(sigma.block_count())) % sigma.block_count();
                    const Block blk = sigma.block(b);
                    const std::size_t k = blk.start + static_cast<std::size_t>(u(rng) * static_cast<double>(blk.length)) % blk.length;
                    f[static_cast<Eigen::Index>(k)] = 1.0 + u(rng);
                }
                break;
            }
        }
        // P f is constant on blocks, so it is normed from the block averages
        std::vector<double> avg(sigma.block_count());
        for (std::size_t b = 0; b < avg.size(); ++b) {
            const Block blk = sigma.block(b);
            avg[b] = f.segment(static_cast<Eigen::Index>(blk.start), static_cast<Eigen::Index>(blk.length)).mean();
        }
        Vec q = f;
        for (std::size_t b = 0; b < avg.size(); ++b) {
            const Block blk = sigma.block(b);
            q.segment(static_cast<Eigen::Index>(blk.start), static_cast<Eigen::Index>(blk.length)).array() -= avg[b];
        }
        for (std::size_t h = 0; h < nh; ++h) {
            const double base = hosts[h].eval(as_span(f));
            if (base == 0.0) continue;
            slots[t * nh + h].p_ratio = hosts[h].eval_runs(avg, sigma.sizes()) / base;
            slots[t * nh + h].q_ratio = hosts[h].eval(as_span(q)) / base;
        }
    });
    std::vector<ProjectionRatios> out(nh);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        out[i % nh].p_ratio = std::max(out[i % nh].p_ratio, slots[i].p_ratio);
        out[i % nh].q_ratio = std::max(out[i % nh].q_ratio, slots[i].q_ratio);
    }
    return out;
}

}  // namespace glab
