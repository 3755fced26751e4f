#include "glab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "glab/random.hpp"
#include "glab/serialize.hpp"

namespace glab {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Vec indicator(std::size_t dim, const Block& b, double value = 1.0) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
    v.segment(static_cast<Eigen::Index>(b.start), static_cast<Eigen::Index>(b.length)).setConstant(value);
    return v;
}

IndexSet range_set(std::size_t start, std::size_t end) {
    IndexSet s(end - start);
    for (std::size_t k = start; k < end; ++k) s[k - start] = k;
    return s;
}

IndexSet block_set(const Block& b) { return range_set(b.start, b.end()); }

void check_dim(std::size_t dim, const BuildOptions& opt) {
    if (dim > opt.max_dim)
        throw std::length_error("construction needs " + std::to_string(dim) + " coordinates, above the cap of " +
                                std::to_string(opt.max_dim));
}

std::vector<std::size_t> dyadic_pairs(std::size_t levels) {
    std::vector<std::size_t> s(levels);
    for (std::size_t n = 1; n <= levels; ++n) s[n - 1] = std::size_t{1} << n;
    return s;
}

// blocks, pair unions, alternating pairs, initial segments, and the (A_n, B_n) splits
std::vector<SignedSet> structured_for(const OrderedPartition& sigma, bool paired) {
    std::vector<SignedSet> out;
    const std::size_t nb = sigma.block_count();
    for (std::size_t n = 0; n < nb; ++n) {
        const Block b = sigma.block(n);
        out.push_back({block_set(b), {}, "block" + std::to_string(n + 1)});
        if (b.length >= 2) {
            // A_n: first ceil(|sigma_n|/2) coordinates, B_n the rest
            const std::size_t half = (b.length + 1) / 2;
            IndexSet s = block_set(b);
            std::vector<int> eps(b.length, -1);
            std::fill(eps.begin(), eps.begin() + static_cast<std::ptrdiff_t>(half), 1);
            out.push_back({s, eps, "split" + std::to_string(n + 1)});
            out.push_back({range_set(b.start, b.start + half), {}, "half" + std::to_string(n + 1)});
        }
    }
    if (paired) {
        for (std::size_t n = 0; 2 * n + 1 < nb; ++n) {
            const Block a = sigma.block(2 * n), c = sigma.block(2 * n + 1);
            IndexSet s = range_set(a.start, c.end());
            std::vector<int> eps(s.size(), 1);
            std::fill(eps.begin(), eps.begin() + static_cast<std::ptrdiff_t>(a.length), -1);
            out.push_back({s, {}, "pair" + std::to_string(n + 1)});
            out.push_back({s, eps, "alternating" + std::to_string(n + 1)});
        }
    }
    for (std::size_t m = 1; m < sigma.dim(); m *= 2) out.push_back({range_set(0, m), {}, "initial" + std::to_string(m)});
    for (std::size_t n = 1; n <= nb; ++n) {
        const std::size_t m = sigma.cumulative(n);
        out.push_back({range_set(0, m), {}, "prefix" + std::to_string(n)});
    }
    return out;
}

}  // namespace

double RotationPair::dual_norm() const { return R * R / (2.0 * std::sqrt(R * R - 1.0)); }

RotationPair rotation_pair(double R) {
    if (!(R >= kSqrt2 * (1.0 - 1e-12)) || !std::isfinite(R)) throw std::invalid_argument("rotation pair needs R >= sqrt(2)");
    RotationPair p;
    p.R = R;
    p.alpha = std::asin(std::min(1.0 / R, 1.0 / kSqrt2));
    const double r2 = R * R;
    const double c2 = std::max(0.0, 1.0 - 2.0 / r2);
    const double s2 = (2.0 / R) * std::sqrt(std::max(0.0, 1.0 - 1.0 / r2));
    p.h1 = {1.0, 0.0};
    p.h2 = {c2, s2};
    // c * sin(2 alpha) = 1, so the closed form below is exactly biorthogonal up to rounding
    const double c = 1.0 / s2;
    p.h1_star = {c * s2, -c * c2};
    p.h2_star = {0.0, c};
    return p;
}

EtaSequence::EtaSequence(std::vector<EtaPair> pairs) : pairs_(std::move(pairs)) {
    for (const auto& e : pairs_) {
        if (!(e.lambda > 0.0) || !(e.mu > 0.0)) throw std::invalid_argument("eta entries must be positive");
        if (e.lambda * e.mu < kSqrt2 * (1.0 - 1e-12)) throw std::invalid_argument("eta needs lambda*mu >= sqrt(2)");
    }
}

Basis eta_transform(const Basis& b, const EtaSequence& eta) {
    const std::size_t n = b.dim();
    if (n % 2 != 0) throw std::invalid_argument("eta transform needs an even dimension");
    if (eta.size() != n / 2) throw std::invalid_argument("eta length must be half the dimension");
    const auto nn = static_cast<Eigen::Index>(n);
    Mat fwd = Mat::Zero(nn, nn);
    Mat inv = Mat::Zero(nn, nn);
    for (std::size_t p = 0; p < n / 2; ++p) {
        const auto i = static_cast<Eigen::Index>(2 * p);
        const double lam = eta[p].lambda;
        const RotationPair rp = rotation_pair(lam * eta[p].mu);
        fwd.block(i, i, 2, 1) = lam * rp.h1;
        fwd.block(i, i + 1, 2, 1) = lam * rp.h2;
        inv.block(i, i, 1, 2) = (rp.h1_star / lam).transpose();
        inv.block(i + 1, i, 1, 2) = (rp.h2_star / lam).transpose();
    }
    Mat synth = b.is_unit() ? fwd : Mat(b.synth() * fwd);
    Mat anal = b.is_unit() ? inv : Mat(inv * b.anal());
    return Basis::from_pair(b.space_ptr(), std::move(synth), std::move(anal));
}

DkkSpace::DkkSpace(Basis base, SeqNorm host, OrderedPartition sigma)
    : base_(std::move(base)), host_(std::move(host)), blocks_(std::move(sigma), fundamental_function(host_)) {
    if (base_.dim() != blocks_.block_count()) throw std::invalid_argument("number of blocks must equal the dimension of X");
    if (host_.dim() != blocks_.partition().dim()) throw std::invalid_argument("host dimension must equal the partition size");
}

double DkkSpace::q_part(std::span<const double> f) const {
    const Vec q = complement_project(partition(), f);
    return host_.eval(as_span(q));
}

Vec DkkSpace::x_image(std::span<const double> f) const { return base_.synthesize(blocks_.coefficients(f)); }

double DkkSpace::x_part(std::span<const double> f) const { return base_.space().norm(x_image(f)); }

double DkkSpace::norm(std::span<const double> f) const {
    if (f.size() != dim()) throw std::invalid_argument("dimension mismatch in DKK norm");
    return q_part(f) + x_part(f);
}

Vec DkkSpace::assemble(const Vec& g, const Vec& x) const {
    const Vec c = base_.analyze(x);
    return g + blocks_.expand(as_span(c));
}

double DkkSpace::unit_dual(std::size_t k, const Vec& g, const Vec& x) const {
    const std::size_t n = partition().block_of(k);
    return g[static_cast<Eigen::Index>(k)] + base_.dual(n).dot(x) * blocks_.vector_scale(n);
}

nlohmann::json DkkSpace::to_json() const {
    return {{"kind", "dkk"}, {"host", host_.to_json()}, {"partition", partition().to_json()}, {"base", basis_to_json(base_)}};
}

Basis dkk_space(const Basis& base, const SeqNorm& host, const OrderedPartition& sigma) {
    return Basis::unit(std::make_shared<DkkSpace>(base, host, sigma));
}

Vec Dkkw::pair_vector(std::size_t n, double a, double b) const {
    const auto& sigma = space->partition();
    return indicator(sigma.dim(), sigma.block(2 * n), a) + indicator(sigma.dim(), sigma.block(2 * n + 1), b);
}

double Dkkw::R(std::size_t n, double a, double b) const { return space->norm(pair_vector(n, a, b)); }

double Dkkw::R_formula(std::size_t n, double a, double b) const {
    const double lam = space->blocks().lambda()(pair_sizes[n]);
    const Vec y = a * x_eta.vector(2 * n) + b * x_eta.vector(2 * n + 1);
    return lam * x_eta.space().norm(y);
}

Dkkw dkkw_assembly(const Basis& b, const SeqNorm& host, const OrderedPartition& sigma) {
    const std::size_t nb = sigma.block_count();
    if (nb % 2 != 0) throw std::invalid_argument("DKKW assembly needs an even number of blocks");
    std::vector<std::size_t> pairs(nb / 2);
    for (std::size_t n = 0; n < nb / 2; ++n) {
        if (sigma.size(2 * n) != sigma.size(2 * n + 1)) throw std::invalid_argument("DKKW assembly needs paired block sizes");
        if (sigma.size(2 * n) < 2) throw std::invalid_argument("DKKW assembly needs block sizes >= 2");
        pairs[n] = sigma.size(2 * n);
    }
    const FundamentalFunction lambda = fundamental_function(host);
    std::vector<EtaPair> eta(pairs.size());
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        const double l = lambda(pairs[n]);
        eta[n] = {static_cast<double>(pairs[n]) / l, l};
    }
    Basis xe = eta_transform(b, EtaSequence(std::move(eta)));
    auto space = std::make_shared<DkkSpace>(xe, host, sigma);
    Basis unit = Basis::unit(space);
    return {std::move(space), std::move(unit), std::move(xe), std::move(pairs)};
}

namespace {

Construction finish(std::string name, std::shared_ptr<const DkkSpace> space, nlohmann::json meta) {
    Construction c{std::move(name), Basis::unit(space), space, {}, {}, {}, {}, std::move(meta)};
    return c;
}

}  // namespace

Dkkw thmA_assembly(const SeqNorm& host, const Basis& x, std::size_t levels, const BuildOptions& opt) {
    if (levels < 2) throw std::invalid_argument("thmA needs at least 2 levels");
    if (x.dim() != levels) throw std::invalid_argument("base basis of X must have dimension equal to levels");
    const auto pairs = dyadic_pairs(levels);
    const OrderedPartition sigma = OrderedPartition::paired(pairs);
    check_dim(sigma.dim(), opt);
    // V[S, sigma] over the first `levels` blocks, interleaved with X
    const std::vector<std::size_t> head(sigma.sizes().begin(), sigma.sizes().begin() + static_cast<std::ptrdiff_t>(levels));
    const OrderedPartition head_sigma(head);
    auto vspace = std::make_shared<BlockSpanSpace>(host.resized(head_sigma.dim()), head_sigma);
    const Basis x0 = direct_sum(Basis::unit(vspace), x);
    return dkkw_assembly(x0, host.resized(sigma.dim()), sigma);
}

Construction build_thmA(const SeqNorm& host, const Basis& x, std::size_t levels, const BuildOptions& opt) {
    const Dkkw d = thmA_assembly(host, x, levels, opt);
    const OrderedPartition& sigma = d.space->partition();

    nlohmann::json meta{{"construction", "thmA"}, {"levels", levels}, {"dim", sigma.dim()}, {"host", host.to_json()}};
    Construction c = finish("thmA", d.space, std::move(meta));
    for (std::size_t n = 0; n < levels; ++n) {
        const Block a = sigma.block(2 * n), g = sigma.block(2 * n + 1);
        LevelWitness w;
        w.level = n + 1;
        w.scale = sigma.cumulative(2 * n + 2);
        w.f = indicator(sigma.dim(), a);
        w.g = indicator(sigma.dim(), g);
        w.f_support = block_set(a);
        w.g_support = block_set(g);
        w.coefficient = 1.0;
        const Vec u = w.g - w.f;
        c.witnesses.push_back({u, w.g_support, "pair" + std::to_string(n + 1) + ":g", "proof"});
        c.witnesses.push_back({u, w.f_support, "pair" + std::to_string(n + 1) + ":f", "proof"});
        c.levels.push_back(std::move(w));
    }
    c.structured_sets = structured_for(sigma, true);
    return c;
}

Construction build_thmA(const SeqNorm& host, std::size_t levels, const BuildOptions& opt) {
    if (levels < 2) throw std::invalid_argument("thmA needs at least 2 levels");
    auto xs = std::make_shared<SequenceSpace>(host.resized(levels));
    return build_thmA(host, Basis::unit(xs), levels, opt);
}

Construction build_mainA(const SeqNorm& host, std::size_t levels, const BuildOptions& opt) {
    if (levels < 2) throw std::invalid_argument("mainA needs at least 2 levels");
    const auto pairs = dyadic_pairs(levels);
    const OrderedPartition inner_sigma = OrderedPartition::paired(pairs);
    // Outer block k gets the size of the inner block holding coordinate k, so every
    // witness coordinate at level n equals 1/Lambda_{2^n}.
    std::vector<std::size_t> outer_sizes(inner_sigma.dim());
    for (std::size_t k = 0; k < outer_sizes.size(); ++k) outer_sizes[k] = inner_sigma.size(inner_sigma.block_of(k));
    const OrderedPartition sigma(outer_sizes);
    check_dim(sigma.dim(), opt);
    Construction inner = build_thmA(host, levels, opt);

    const SeqNorm s = host.resized(sigma.dim());
    auto space = std::make_shared<DkkSpace>(inner.basis, s, sigma);
    nlohmann::json meta{{"construction", "mainA"},
                        {"levels", levels},
                        {"dim", sigma.dim()},
                        {"inner_dim", inner_sigma.dim()},
                        {"outer_partition", "level-matched"},
                        {"host", host.to_json()}};
    Construction c = finish("mainA", space, std::move(meta));
    const auto lrp = has_lrp(fundamental_function(s));
    if (!lrp.holds) c.warnings.push_back("host fundamental function fails the LRP within truncation");

    const BlockSystem& bs = space->blocks();
    const auto sum_blocks = [&](const Block& inner_block, IndexSet& support) {
        Vec v = Vec::Zero(static_cast<Eigen::Index>(sigma.dim()));
        for (std::size_t k = inner_block.start; k < inner_block.end(); ++k) {
            const Block ob = sigma.block(k);
            v.segment(static_cast<Eigen::Index>(ob.start), static_cast<Eigen::Index>(ob.length)).setConstant(bs.vector_scale(k));
            for (std::size_t t = ob.start; t < ob.end(); ++t) support.push_back(t);
        }
        return v;
    };
    for (std::size_t n = 0; n < levels; ++n) {
        LevelWitness w;
        w.level = n + 1;
        w.f = sum_blocks(inner_sigma.block(2 * n), w.f_support);
        w.g = sum_blocks(inner_sigma.block(2 * n + 1), w.g_support);
        w.scale = sigma.cumulative(inner_sigma.cumulative(2 * n + 2));
        w.coefficient = 1.0 / bs.lambda()(pairs[n]);
        const Vec u = w.g - w.f;
        c.witnesses.push_back({u, w.g_support, "level" + std::to_string(n + 1) + ":g", "proof"});
        c.witnesses.push_back({u, w.f_support, "level" + std::to_string(n + 1) + ":f", "proof"});
        c.levels.push_back(std::move(w));
    }
    c.structured_sets = structured_for(sigma, false);
    // unions of whole outer blocks inside each level, plus the level halves
    for (std::size_t n = 0; n < levels; ++n) {
        for (std::size_t half = 0; half < 2; ++half) {
            const Block ib = inner_sigma.block(2 * n + half);
            for (std::size_t r = 1; r <= ib.length; r *= 2) {
                const std::size_t start = sigma.block(ib.start).start;
                const std::size_t end = sigma.block(ib.start + r - 1).end();
                c.structured_sets.push_back({range_set(start, end), {}, "level" + std::to_string(n + 1) + (half ? "g" : "f") + "x" + std::to_string(r)});
            }
        }
    }
    return c;
}

Construction build_dem_nonucc(const SeqNorm& host, std::size_t levels, const BuildOptions& opt) {
    if (levels < 2) throw std::invalid_argument("demNonUCC needs at least 2 levels");
    std::vector<std::size_t> pairs(levels);
    for (std::size_t n = 1; n <= levels; ++n) pairs[n - 1] = n;
    const OrderedPartition sigma = OrderedPartition::paired(pairs);
    check_dim(sigma.dim(), opt);
    const SeqNorm s = host.resized(sigma.dim());
    auto vspace = std::make_shared<BlockSpanSpace>(s, sigma);
    const FundamentalFunction lambda = fundamental_function(s);
    std::vector<EtaPair> eta(levels);
    std::size_t clamped = 0;
    for (std::size_t n = 0; n < levels; ++n) {
        double mu = lambda(pairs[n]);
        // the rotation pair is only defined for R >= sqrt(2)
        if (mu < kSqrt2) {
            mu = kSqrt2;
            ++clamped;
        }
        eta[n] = {1.0, mu};
    }
    Basis base = eta_transform(Basis::unit(vspace), EtaSequence(std::move(eta)));
    auto space = std::make_shared<DkkSpace>(base, s, sigma);
    nlohmann::json meta{{"construction", "demNonUCC"}, {"levels", levels}, {"dim", sigma.dim()}, {"clamped_pairs", clamped}, {"host", host.to_json()}};
    Construction c = finish("demNonUCC", space, std::move(meta));
    for (std::size_t n = 0; n < levels; ++n) {
        const Block a = sigma.block(2 * n), g = sigma.block(2 * n + 1);
        LevelWitness w;
        w.level = n + 1;
        w.scale = sigma.cumulative(2 * n + 2);
        w.f = indicator(sigma.dim(), a);
        w.g = indicator(sigma.dim(), g);
        w.f_support = block_set(a);
        w.g_support = block_set(g);
        w.coefficient = 1.0;
        c.witnesses.push_back({w.g - w.f, w.g_support, "pair" + std::to_string(n + 1) + ":g", "proof"});
        c.levels.push_back(std::move(w));
    }
    c.structured_sets = structured_for(sigma, true);
    return c;
}

Construction build_dkk(const SeqNorm& host, std::size_t levels, const BuildOptions& opt) {
    if (levels < 2) throw std::invalid_argument("dkk needs at least 2 levels");
    const OrderedPartition sigma(dyadic_pairs(levels));
    check_dim(sigma.dim(), opt);
    auto xs = std::make_shared<SequenceSpace>(host.resized(levels));
    auto space = std::make_shared<DkkSpace>(Basis::unit(xs), host.resized(sigma.dim()), sigma);
    nlohmann::json meta{{"construction", "dkk"}, {"levels", levels}, {"dim", sigma.dim()}, {"host", host.to_json()}};
    Construction c = finish("dkk", space, std::move(meta));
    c.structured_sets = structured_for(sigma, false);
    return c;
}

Construction build_named(const std::string& name, const SeqNorm& host, std::size_t levels, const BuildOptions& opt) {
    if (name == "thmA") return build_thmA(host, levels, opt);
    if (name == "mainA") return build_mainA(host, levels, opt);
    if (name == "demNonUCC") return build_dem_nonucc(host, levels, opt);
    if (name == "dkk") return build_dkk(host, levels, opt);
    throw std::invalid_argument("unknown construction: " + name);
}

double eq_positive_check(const Basis& u, const std::vector<double>& mu, int trials, std::uint64_t seed) {
    if (mu.size() != u.dim()) throw std::invalid_argument("one mu per vector of U expected");
    const Basis u2 = direct_sum(u, u);
    std::vector<EtaPair> eta(mu.size());
    for (std::size_t n = 0; n < mu.size(); ++n) eta[n] = {1.0, mu[n]};
    const Basis ue = eta_transform(u2, EtaSequence(std::move(eta)));
    const auto n2 = static_cast<Eigen::Index>(u2.dim());
    double worst = 1.0;
    const auto compare = [&](const Vec& a) {
        const double x = u2.coefficient_norm(a);
        const double y = ue.coefficient_norm(a);
        if (x == 0.0 && y == 0.0) return;
        worst = std::max({worst, x / y, y / x});
    };
    // one active pair at a time
    for (Eigen::Index p = 0; p + 1 < n2; p += 2) {
        for (double t : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
            Vec a = Vec::Zero(n2);
            a[p] = 1.0;
            a[p + 1] = t;
            compare(a);
        }
    }
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> un(0.0, 1.0);
        Vec a(n2);
        const double density = un(rng);
        for (auto& x : a) x = un(rng) < density ? std::exp(2.0 * un(rng)) - 1.0 : 0.0;
        compare(a);
    }
    return worst;
}

}  // namespace glab
