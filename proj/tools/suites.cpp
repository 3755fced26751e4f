#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "glab/random.hpp"
#include "glab/serialize.hpp"

namespace glab::tools {

namespace {

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

class Ctx {
public:
    Ctx(SuiteResult& r, const ExperimentConfig& cfg) : r_(r), cfg_(cfg) {}

    void row(std::string quantity, double scale, double value, BoundKind kind = BoundKind::exact, std::string witness = "") {
        r_.rows.push_back({std::move(quantity), scale, value, kind, std::move(witness), cfg_.seed});
    }
    void verdict(int criterion, std::string name, bool pass, std::string detail) {
        r_.verdicts.push_back({criterion, std::move(name), pass, std::move(detail)});
    }
    std::uint64_t seed(std::uint64_t stream) const { return split_seed(cfg_.seed, stream); }
    int trials(int fallback) const { return cfg_.trials > 0 ? cfg_.trials : fallback; }
    std::size_t levels(std::size_t fallback) const { return cfg_.levels > 0 ? cfg_.levels : fallback; }
    SeqNorm host() const { return parse_host(cfg_.host); }
    BuildOptions build() const { return {cfg_.max_dim}; }

private:
    SuiteResult& r_;
    const ExperimentConfig& cfg_;
};

Vec gaussian(Rng& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Vec v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = g(rng);
    return v;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Basis random_euclidean_basis(std::size_t n, std::uint64_t seed, bool orthonormal) {
    auto space = std::make_shared<SequenceSpace>(SeqNorm::lp(2.0, n));
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng = make_rng(seed, attempt);
        Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (auto& x : m.reshaped()) x = std::normal_distribution<double>()(rng);
        if (orthonormal) {
            Eigen::HouseholderQR<Mat> qr(m);
            return Basis::from_synthesis(space, qr.householderQ() * Mat::Identity(m.rows(), m.cols()));
        }
        Basis b = Basis::from_synthesis(space, m);
        if (b.rcond() > 1e-3) return b;
    }
}

// ---------------------------------------------------------------- criterion 1

void suite_rotation(Ctx& c) {
    const double tol = 1e-10;
    double worst = 0.0, violation = 0.0;
    for (double R : {std::numbers::sqrt2, 1.5, 2.0, 5.0, 50.0}) {
        const RotationPair p = rotation_pair(R);
        const double dn = p.dual_norm();
        const double errs[] = {std::abs(p.h1_star.dot(p.h1) - 1.0),
                               std::abs(p.h1_star.dot(p.h2)),
                               std::abs(p.h2_star.dot(p.h1)),
                               std::abs(p.h2_star.dot(p.h2) - 1.0),
                               std::abs(p.h1.norm() - 1.0),
                               std::abs(p.h2.norm() - 1.0),
                               std::abs((p.h1 - p.h2).norm() - 2.0 / R),
                               std::abs(p.h1_star.norm() - dn),
                               std::abs(p.h2_star.norm() - dn),
                               std::abs(std::sin(p.alpha) - 1.0 / R)};
        const double e = *std::max_element(std::begin(errs), std::end(errs));
        double v = 0.0;
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                const double x = i / 49.0, y = j / 49.0;
                const double mid = (x * p.h1 + y * p.h2).norm();
                v = std::max({v, std::hypot(x, y) - mid, mid - (x + y)});
            }
        }
        c.row("rotation_identity_error", R, e);
        c.row("rotation_sandwich_violation", R, std::max(v, 0.0));
        worst = std::max(worst, e);
        violation = std::max(violation, v);
    }
    c.verdict(1, "rotation identities", worst <= tol, fmt("max identity error %.3g (tol 1e-10)", worst));
    c.verdict(1, "rotation sandwich", violation <= tol, fmt("max sandwich violation %.3g on 50x50 grid", std::max(violation, 0.0)));
}

// ---------------------------------------------------------------- criterion 2

SeqNorm sqrt_lorentz(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
    return SeqNorm::lorentz(1.0, Weight(std::move(w)));
}

void suite_dkk_core(Ctx& c) {
    const std::size_t n = std::size_t{1} << 14;
    // sizes 1, 1, 2, 4, ..., 2^13: geometric blocks summing to 2^14
    std::vector<std::size_t> sizes{1};
    for (std::size_t s = 1; s < n; s *= 2) sizes.push_back(s);
    const OrderedPartition sigma(sizes);
    const std::vector<std::pair<std::string, SeqNorm>> hosts{
        {"l1", SeqNorm::lp(1.0, n)}, {"l2", SeqNorm::lp(2.0, n)}, {"d1(w)", sqrt_lorentz(n)}};

    double biorth = 0.0, unit = 0.0;
    for (const auto& [name, s] : hosts) {
        const BlockSystem bs(sigma, fundamental_function(s));
        for (std::size_t m = 0; m < sigma.block_count(); ++m) {
            const Vec v = bs.vector(m);
            unit = std::max(unit, std::abs(s.eval(as_span(v)) - 1.0));
            for (std::size_t k = 0; k < sigma.block_count(); ++k)
                biorth = std::max(biorth, std::abs(bs.apply(k, as_span(v)) - (k == m ? 1.0 : 0.0)));
        }
    }
    c.row("v_biorthogonality_error", static_cast<double>(n), biorth);
    c.row("v_norm_error", static_cast<double>(n), unit);
    c.verdict(2, "V/V* biorthogonality", biorth <= 1e-12, fmt("max |<v*_k, v_m> - delta| = %.3g", biorth));

    double idem = 0.0, sum = 0.0;
    for (int t = 0; t < 1000; ++t) {
        Rng rng = make_rng(c.seed(1), static_cast<std::uint64_t>(t));
        const Vec f = gaussian(rng, n);
        const Vec p = average_project(sigma, as_span(f));
        const Vec pp = average_project(sigma, as_span(p));
        const Vec q = complement_project(sigma, as_span(f));
        idem = std::max(idem, (pp - p).cwiseAbs().maxCoeff());
        sum = std::max(sum, (p + q - f).cwiseAbs().maxCoeff());
    }
    c.row("p_idempotence_error", static_cast<double>(n), idem);
    c.row("p_plus_q_error", static_cast<double>(n), sum);
    c.verdict(2, "P idempotent, P+Q=Id", idem <= 1e-12 && sum <= 1e-12, fmt("max errors %.3g and %.3g on 10^3 vectors", idem, sum));

    const int samples = c.trials(10000);
    bool bounded = true;
    std::string detail;
    std::vector<SeqNorm> norms;
    for (const auto& h : hosts) norms.push_back(h.second);
    const auto ratios = projection_norm_bound_check(sigma, norms, samples, c.seed(10));
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        const auto& r = ratios[h];
        c.row("p_ratio_" + hosts[h].first, static_cast<double>(n), r.p_ratio, BoundKind::lower);
        c.row("q_ratio_" + hosts[h].first, static_cast<double>(n), r.q_ratio, BoundKind::lower);
        bounded = bounded && r.p_ratio <= 2.0 + 1e-10 && r.q_ratio <= 3.0 + 1e-10;
        detail += (h ? ", " : "") + hosts[h].first + fmt(" P %.4f Q %.4f", r.p_ratio, r.q_ratio);
    }
    c.verdict(2, "||P|| <= 2 and ||Q|| <= 3", bounded, detail + fmt(" over %.0f samples", samples));

    // Y[X, S, sigma] against Q_sigma(S) (+) X with X = l2 over the blocks
    auto xs = std::make_shared<SequenceSpace>(SeqNorm::lp(2.0, sigma.block_count()));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, roundtrip = 0.0;
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        const DkkSpace y(Basis::unit(xs), hosts[h].second, sigma);
        for (int t = 0; t < 200; ++t) {
            Rng rng = make_rng(c.seed(20 + h), static_cast<std::uint64_t>(t));
            const Vec raw = gaussian(rng, n);
            const Vec g = complement_project(sigma, as_span(raw)) * (t % 3 == 0 ? 0.0 : 1.0);
            const Vec x = gaussian(rng, sigma.block_count()) * (t % 3 == 1 ? 0.0 : std::exp(2.0 * std::normal_distribution<double>()(rng)));
            const Vec f = y.assemble(g, x);
            const Vec g2 = complement_project(sigma, as_span(f));
            const Vec x2 = y.x_image(as_span(f));
            roundtrip = std::max({roundtrip, (g2 - g).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff()),
                                  (x2 - x).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff())});
            const double mx = std::max(hosts[h].second.eval(as_span(g)), xs->norm(x));
            if (mx == 0.0) continue;
            const double ratio = y.norm(f) / mx;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    c.row("dkk_sum_over_max_min", static_cast<double>(n), lo);
    c.row("dkk_sum_over_max_max", static_cast<double>(n), hi);
    c.row("dkk_roundtrip_error", static_cast<double>(n), roundtrip);
    c.verdict(2, "DKK norm within factor 2 of the direct-sum norm", lo >= 1.0 - 1e-12 && hi <= 2.0 + 1e-12 && roundtrip <= 1e-10,
              fmt("||f||_Y / max in [%.4f, %.4f], round-trip error %.3g", lo, hi, roundtrip));
}

// ---------------------------------------------------------------- criterion 3

void suite_dkkw(Ctx& c) {
    const std::size_t levels = c.levels(10);
    const SeqNorm host = c.host();
    const Dkkw d = thmA_assembly(host, Basis::unit(std::make_shared<SequenceSpace>(host.resized(levels))), levels, c.build());
    const std::vector<double> grid{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    double worst = 0.0;
    std::vector<double> r11, rm11;
    for (std::size_t n = 0; n < levels; ++n) {
        for (double a : grid)
            for (double b : grid) worst = std::max(worst, rel_err(d.R(n, a, b), d.R_formula(n, a, b)));
        const double s = static_cast<double>(d.pair_sizes[n]);
        c.row("R11/2s", static_cast<double>(n + 1), d.R(n, 1.0, 1.0) / (2.0 * s));
        c.row("R-11", static_cast<double>(n + 1), d.R(n, -1.0, 1.0));
        c.row("R10/s", static_cast<double>(n + 1), d.R(n, 1.0, 0.0) / s);
        if (n >= 1) {
            r11.push_back(d.R(n, 1.0, 1.0) / (2.0 * s));
            rm11.push_back(d.R(n, -1.0, 1.0));
        }
    }
    c.row("dkkw_identity_error", static_cast<double>(levels), worst);
    c.verdict(3, "R_n(a,b) identity", worst <= 1e-10, fmt("max relative error %.3g over 49 (a,b) pairs per level", worst));
    const double s1 = spread(r11), s2 = spread(rm11);
    c.verdict(3, "R_n(1,1)/(2s_n) spread", s1 <= 8.0, fmt("spread %.4f over n = 2..%.0f", s1, static_cast<double>(levels)));
    c.verdict(3, "R_n(-1,1) spread", s2 <= 8.0, fmt("spread %.4f over n = 2..%.0f", s2, static_cast<double>(levels)));
}

// ---------------------------------------------------------------- criterion 4

void suite_thmA(Ctx& c) {
    const SeqNorm host = c.host();
    {
        const Construction small = build_thmA(host, 3, c.build());
        std::vector<double> r;
        for (const auto& lw : small.levels)
            r.push_back(small.space->norm(lw.f) / small.space->norm(Vec(lw.g - lw.f)) / std::ldexp(1.0, static_cast<int>(lw.level)));
        const double sp = spread(r);
        c.row("thmA3_dim", 3, static_cast<double>(small.basis.dim()));
        c.verdict(4, "levels=3 construction", small.basis.dim() == 28 && sp <= 8.0,
                  fmt("dimension %.0f, spread of r_n/2^n %.4f", static_cast<double>(small.basis.dim()), sp));
    }
    const std::size_t levels = c.levels(10);
    const Construction k = build_thmA(host, levels, c.build());
    SearchOptions opt;
    opt.trials = c.trials(8);
    opt.rounds = 4;
    opt.refine_coordinates = 24;
    std::vector<double> ms, vals;
    for (const auto& lw : k.levels) {
        opt.seed = c.seed(100 + lw.level);
        const Bound kt = ktilde_lower(k.basis, lw.scale, k.witnesses, opt);
        const Bound km = km_lower(k.basis, lw.scale, k.witnesses, SearchOptions{0, 0, 0, 0});
        c.row("ktilde", static_cast<double>(lw.scale), kt.value, kt.kind, kt.witness);
        c.row("km", static_cast<double>(lw.scale), km.value, km.kind, km.witness);
        c.row("km_upper_trivial", static_cast<double>(lw.scale), static_cast<double>(lw.scale), BoundKind::upper, "m");
        if (lw.level >= 3) {
            ms.push_back(static_cast<double>(lw.scale));
            vals.push_back(kt.value);
        }
    }
    const LinearFit f = fit_loglog(ms, vals);
    c.row("ktilde_loglog_slope", static_cast<double>(levels), f.slope);
    c.row("ktilde_loglog_r2", static_cast<double>(levels), f.r2);
    c.verdict(4, "ktilde_m grows linearly at m = M_n", std::abs(f.slope - 1.0) <= 0.15 && f.r2 >= 0.98,
              fmt("log-log slope %.4f (1 +- 0.15), R^2 %.5f, levels 3..%.0f", f.slope, f.r2, static_cast<double>(levels)));
}

// ---------------------------------------------------------------- criterion 5

// norms of the positive indicators of every structured set plus random sets of each dyadic size
std::vector<std::pair<std::size_t, double>> indicator_norms(const Construction& k, int per_size, std::uint64_t seed) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(k.structured_sets.size());
    for (const auto& s : k.structured_sets) out.emplace_back(s.set.size(), signed_indicator_norm(k.basis, s.set));
    const std::size_t n = k.basis.dim();
    for (std::size_t m = 1, i = 0; m <= n; m *= 2, ++i) {
        for (int t = 0; t < per_size; ++t) {
            Rng rng = make_rng(seed, i * 1000 + static_cast<std::size_t>(t));
            const IndexSet a = random_subset(rng, n, m);
            out.emplace_back(m, signed_indicator_norm(k.basis, a));
        }
    }
    return out;
}

void suite_mainA(Ctx& c) {
    const std::size_t levels = c.levels(8);
    const Construction k = build_mainA(c.host(), levels, c.build());
    const FundamentalFunction lambda = fundamental_function(k.space->host());
    c.row("mainA_dim", static_cast<double>(levels), static_cast<double>(k.basis.dim()));
    for (const auto& w : k.warnings) c.row("warning", 0, 1.0, BoundKind::exact, w);

    std::vector<double> g_ratio, diff, qg_level, qg_log2;
    for (const auto& lw : k.levels) {
        const double nf = k.space->norm(lw.f), ng = k.space->norm(lw.g), nd = k.space->norm(Vec(lw.g - lw.f));
        const double two_n = std::ldexp(1.0, static_cast<int>(lw.level));
        g_ratio.push_back(ng / two_n);
        diff.push_back(nd);
        const double lvl = static_cast<double>(lw.level);
        c.row("norm_f", lvl, nf);
        c.row("norm_g/2^n", lvl, ng / two_n);
        c.row("norm_-f+g", lvl, nd);
        // both halves of -f+g, each only if it is a greedy set
        const Vec u = lw.g - lw.f;
        double best = 1.0;
        for (const auto* half : {&lw.f_support, &lw.g_support}) {
            const bool greedy = is_greedy_set(u, *half, 1e-10);
            const double r = k.space->norm(coordinate_projection(k.basis, *half, as_span(u))) / nd;
            c.row(half == &lw.f_support ? "qg_ratio_f_half" : "qg_ratio_g_half", lvl, r, BoundKind::lower, greedy ? "greedy" : "not greedy");
            if (greedy) best = std::max(best, r);
        }
        c.row("quasi_greedy", lvl, best, BoundKind::lower, "level" + std::to_string(lw.level));
        c.row("ktilde_witness", static_cast<double>(lw.scale), ng / nd, BoundKind::lower, "level" + std::to_string(lw.level));
        qg_level.push_back(lvl);
        qg_log2.push_back(std::log2(best));
    }
    const double sa = spread(g_ratio), sb = spread(diff);
    c.verdict(5, "(a) ||g_n||/2^n spread", sa <= 8.0, fmt("spread %.4f", sa));
    c.verdict(5, "(b) ||-f_n+g_n|| spread", sb <= 8.0, fmt("spread %.4f", sb));
    const LinearFit qf = fit_linear(qg_level, qg_log2);
    const double rate = std::exp2(qf.slope);
    double cmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < qg_level.size(); ++i) cmin = std::min(cmin, std::exp2(qg_log2[i] - qg_level[i]));
    c.row("quasi_greedy_rate", static_cast<double>(levels), rate);
    c.verdict(5, "(c) quasi-greedy lower bound grows like 2^n", std::abs(rate - 2.0) <= 0.2 && cmin > 0.0,
              fmt("fitted rate %.4f per level (2 +- 0.2), c = min ratio/2^n = %.4f", rate, cmin));

    const Bound tq = tqg_constant_lower(k.basis, k.witnesses, 0, c.seed(5));
    c.row("tqg_witness", static_cast<double>(levels), tq.value, tq.kind, tq.witness);

    // upper democracy function over the structured sets against Lambda_m
    const auto norms = indicator_norms(k, 0, c.seed(6));
    std::map<std::size_t, double> best_at;
    for (const auto& [m, v] : norms) best_at[m] = std::max(best_at[m], v);
    std::vector<double> ratio;
    double running = 0.0;
    auto it = best_at.begin();
    for (std::size_t m = 1; m <= k.basis.dim(); m *= 2) {
        for (; it != best_at.end() && it->first <= m; ++it) running = std::max(running, it->second);
        const double r = running / lambda(m);
        ratio.push_back(r);
        c.row("phi_u/Lambda", static_cast<double>(m), r, BoundKind::lower, "structured");
    }
    const double sd = spread(ratio);
    c.verdict(5, "(d) fundamental function ~ Lambda_m", sd <= 8.0, fmt("spread of phi_u(m)/Lambda_m %.4f over dyadic m", sd));
}

// ---------------------------------------------------------------- criterion 6

void suite_dem_nonucc(Ctx& c) {
    const std::size_t levels = c.levels(60);
    const Construction k = build_dem_nonucc(c.host(), levels, c.build());
    const FundamentalFunction lambda = fundamental_function(k.space->host());
    std::vector<double> alt;
    for (const auto& lw : k.levels) {
        const double v = k.space->norm(Vec(lw.g - lw.f));
        alt.push_back(v);
        c.row("alternating_norm", static_cast<double>(2 * lw.level), v, BoundKind::upper, "pair" + std::to_string(lw.level));
    }
    const double sa = spread(alt);
    c.verdict(6, "alternating witnesses ~ 1", sa <= 8.0, fmt("spread %.4f over n = 1..%.0f", sa, static_cast<double>(levels)));

    std::vector<double> pos;
    for (const auto& [m, v] : indicator_norms(k, 4, c.seed(7))) pos.push_back(v / lambda(m));
    const double sp = spread(pos);
    c.row("positive_indicator_spread", static_cast<double>(levels), sp);
    c.verdict(6, "positive indicators ~ Lambda_m", sp <= 8.0, fmt("spread of ||1_A||/Lambda_|A| %.4f over %.0f sets", sp, static_cast<double>(pos.size())));

    for (std::size_t m = 2; m <= k.basis.dim(); m *= 4) {
        const DemocracyBounds d = democracy_functions(k.basis, m, DemocracyMode::sampled, k.structured_sets, 16, c.seed(8 + m));
        c.row("phi_u/phi_l", static_cast<double>(m), d.phi_u / d.phi_l, BoundKind::lower, "sampled");
        c.row("phi_us/phi_ls", static_cast<double>(m), d.phi_us / d.phi_ls, BoundKind::lower, "sampled");
    }
}

// ---------------------------------------------------------------- criterion 7

void suite_lorentz(Ctx& c) {
    const int trials = c.trials(200);
    struct Pair {
        double p, q;
        const char* name;
    };
    const double inf = std::numeric_limits<double>::infinity();
    bool stable = true;
    std::string detail;
    for (const Pair& pq : {Pair{1.0, 2.0, "d1->d2"}, Pair{1.0, inf, "d1->dinf"}, Pair{2.0, inf, "d2->dinf"}}) {
        std::vector<double> consts;
        for (std::size_t n = 256; n <= 4096; n *= 2) {
            const SeqNorm s = sqrt_lorentz(n);
            const auto& w = std::get<LorentzKind>(s.kind()).w;
            const double k = embedding_constant(w, pq.p, pq.q, trials, c.seed(static_cast<std::uint64_t>(n)));
            consts.push_back(k);
            c.row(std::string("embedding_") + pq.name, static_cast<double>(n), k, BoundKind::lower);
        }
        const double sp = spread(consts);
        stable = stable && sp <= 1.05;
        detail += (detail.empty() ? "" : ", ") + std::string(pq.name) + fmt(" C %.4f (dimension spread %.4f)", consts.back(), sp);
    }
    c.verdict(7, "embedding constant stable over dimension", stable, detail);

    const std::size_t n = 1024;
    std::vector<double> w2(n);
    for (std::size_t k = 0; k < n; ++k) w2[k] = k % 2 == 0 ? 2.0 : 0.0;
    const double eq = lorentz_equiv_check(Weight::constant(n), Weight(w2), 1.0, 1000, c.seed(30));
    c.row("lorentz_equiv_equal_primitive", static_cast<double>(n), eq, BoundKind::lower);
    c.verdict(7, "equal-primitive weights equivalent", eq <= 2.01, fmt("max ratio %.4f over 10^3 samples", eq));
    for (std::size_t m = 64; m <= 4096; m *= 4) {
        std::vector<double> h(m);
        for (std::size_t k = 0; k < m; ++k) h[k] = 1.0 / static_cast<double>(k + 1);
        c.row("lorentz_equiv_harmonic", static_cast<double>(m), lorentz_equiv_check(Weight::constant(m), Weight(h), 1.0, 100, c.seed(31)),
              BoundKind::lower);
    }
}

void suite_regularity(Ctx& c) {
    const std::size_t n = 10000;
    struct Case {
        const char* name;
        FundamentalFunction lambda;
        std::size_t lrp_b, urp_b;  // 0: fails
    };
    const Case cases[] = {{"sqrt(m)", FundamentalFunction::power(n, 0.5), 4, 4},
                          {"m", FundamentalFunction::power(n, 1.0), 2, 0},
                          {"1+log(m)", FundamentalFunction::logarithmic(n), 0, 6}};
    bool table = true, ulrp = true;
    std::string detail;
    for (const Case& k : cases) {
        const auto lrp = has_lrp(k.lambda), urp = has_urp(k.lambda);
        const auto dini = dini_ratio(k.lambda);
        const double dmax = *std::max_element(dini.begin(), dini.end());
        c.row(std::string("lrp_b_") + k.name, static_cast<double>(n), lrp.holds ? static_cast<double>(lrp.witness_b) : 0.0);
        c.row(std::string("urp_b_") + k.name, static_cast<double>(n), urp.holds ? static_cast<double>(urp.witness_b) : 0.0);
        c.row(std::string("dini_max_") + k.name, static_cast<double>(n), dmax);
        const bool ok = (lrp.holds ? lrp.witness_b : 0) == k.lrp_b && (urp.holds ? urp.witness_b : 0) == k.urp_b;
        table = table && ok;
        if (lrp.holds) ulrp = ulrp && dmax <= 2.0 * static_cast<double>(lrp.witness_b);
        detail += (detail.empty() ? "" : "; ") + std::string(k.name) + ": LRP " +
                  (lrp.holds ? "b=" + std::to_string(lrp.witness_b) : std::string("fails")) + ", URP " +
                  (urp.holds ? "b=" + std::to_string(urp.witness_b) : std::string("fails"));
    }
    c.verdict(7, "LRP/URP table", table, detail);
    const auto dini = dini_ratio(cases[0].lambda);
    const double dmax = *std::max_element(dini.begin(), dini.end());
    c.verdict(7, "Dini ratio for sqrt(m)", dmax <= 2.01 && ulrp, fmt("max r_m %.4f for m <= 10^4", dmax));
}

// ---------------------------------------------------------------- criterion 8

void suite_phi(Ctx& c) {
    const std::size_t levels = c.levels(8);
    const Construction k = build_mainA(c.host(), levels, c.build());
    const FundamentalFunction lambda = fundamental_function(k.space->host());
    WitnessFamily pool_witnesses = k.witnesses;
    for (auto& w : kmphi_witnesses(k.basis, k.witnesses, 1.0)) pool_witnesses.push_back(std::move(w));
    const PhiPool pool(k.basis, pool_witnesses, c.trials(8), c.seed(40));
    std::vector<double> x, y;
    for (std::size_t n = 2; n <= 8; ++n) {
        const double a = 1.0 / lambda(std::size_t{1} << n);
        const Bound b = pool(a);
        x.push_back(1.0 - std::log(a));
        y.push_back(b.value);
        c.row("phi", a, b.value, b.kind, b.witness);
    }
    const LinearFit f = fit_linear(x, y);
    c.row("phi_fit_c1", static_cast<double>(levels), f.slope);
    c.row("phi_fit_r2", static_cast<double>(levels), f.r2);
    c.verdict(8, "phi(a) ~ c1 (1 - log a)", f.slope > 0.0 && f.r2 >= 0.95,
              fmt("c1 %.4g, intercept %.4g, R^2 %.4f over a = 1/Lambda_{2^n}, n = 2..8", f.slope, f.intercept, f.r2));

    // dyadic layers on random f in Q
    bool layers_ok = true;
    for (int t = 0; t < 1000; ++t) {
        Rng rng = make_rng(c.seed(41), static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const std::size_t dim = 64;
        Vec coef(static_cast<Eigen::Index>(dim));
        for (auto& v : coef) {
            const double r = u(rng);
            // exact powers of two and exact 1 exercise the boundaries
            v = r < 0.1 ? 1.0 : r < 0.3 ? std::ldexp(1.0, -static_cast<int>(u(rng) * 12)) : std::pow(u(rng), 4.0);
            if (u(rng) < 0.5) v = -v;
        }
        const double a = t % 7 == 0 ? std::ldexp(1.0, -(t % 11)) : std::max(1e-4, std::pow(u(rng), 3.0));
        const auto layers = dyadic_layers_coeffs(coef, a);
        const double bound = 2.0 - std::log2(a);
        if (static_cast<double>(layers.size()) > bound + 1e-12) layers_ok = false;
        std::vector<int> seen(dim, 0);
        const std::size_t nl = layers.size() - 1;
        for (std::size_t j = 0; j < layers.size(); ++j) {
            for (std::size_t i : layers[j]) {
                ++seen[i];
                const double v = std::abs(coef[static_cast<Eigen::Index>(i)]);
                const double lo = j < nl ? std::ldexp(1.0, -static_cast<int>(j)) : a;
                const double hi = j == 0 ? std::numeric_limits<double>::infinity() : std::ldexp(1.0, 1 - static_cast<int>(j));
                if (v < lo || v >= hi) layers_ok = false;
            }
        }
        for (std::size_t i = 0; i < dim; ++i)
            if (seen[i] != (std::abs(coef[static_cast<Eigen::Index>(i)]) >= a ? 1 : 0)) layers_ok = false;
    }
    c.verdict(8, "dyadic layers partition A(f,a)", layers_ok, "10^3 random f in Q, layer count <= 2 - log2 a");

    // transfer check on calibration bases
    bool clean = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int inst = 0; inst <= 10; ++inst) {
        const Basis b = random_euclidean_basis(8, c.seed(50 + static_cast<std::uint64_t>(inst)), inst == 0);
        std::vector<double> F;
        WitnessFamily km_w;
        for (std::size_t m = 1; m <= b.dim(); ++m) {
            const Bound e = km_exact_hilbert(b, m);
            F.push_back(std::max(1.0, e.value));
        }
        // leading singular vectors of every S_A with |A| <= 3, and of every prefix
        for (std::size_t m = 1; m <= b.dim(); ++m) {
            IndexSet a(m);
            std::iota(a.begin(), a.end(), std::size_t{0});
            km_w.push_back(km_hilbert_witness(b, a));
        }
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = i + 1; j < b.dim(); ++j) km_w.push_back(km_hilbert_witness(b, {i, j}));
        WitnessFamily all = km_w;
        for (auto& w : kmphi_witnesses(b, km_w, 1.0)) all.push_back(std::move(w));
        const PhiPool p(b, all, 64, c.seed(60 + static_cast<std::uint64_t>(inst)));
        std::vector<double> grid;
        for (int m = 1; m <= 8; ++m) grid.push_back(1.0 / m);
        grid.push_back(0.05);
        const TransferCheck tc = kmphi_transfer_check(b, 1.0, F, grid, p, 0, c.seed(70));
        for (const auto& r : tc.rows) min_margin = std::min(min_margin, r.lhs - r.rhs);
        clean = clean && !tc.any_flag();
    }
    c.row("kmphi_min_margin", 11, min_margin);
    c.verdict(8, "kmphi transfer consistent on calibration bases", clean, fmt("min lhs - rhs %.4f over 11 bases", min_margin));
}

// ---------------------------------------------------------------- criterion 9

// max ||S_A f|| over the unit sphere of R^3: coarse grid followed by zoomed grids
double brute_force_sphere(const Mat& s) {
    const auto value = [&](double th, double ph) {
        const Eigen::Vector3d f(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
        return (s * f).norm();
    };
    double best = -1.0, bt = 0.0, bp = 0.0;
    const int nt = 181, np = 361;
    double dt = std::numbers::pi / (nt - 1), dp = 2.0 * std::numbers::pi / (np - 1);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            const double v = value(i * dt, j * dp);
            if (v > best) best = v, bt = i * dt, bp = j * dp;
        }
    for (int round = 0; round < 12; ++round) {
        const double ct = bt, cp = bp;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) {
                const double th = ct + i * dt / 5.0, ph = cp + j * dp / 5.0;
                const double v = value(th, ph);
                if (v > best) best = v, bt = th, bp = ph;
            }
        dt /= 5.0;
        dp /= 5.0;
    }
    return best;
}

void suite_calibration(Ctx& c) {
    double worst = 0.0;
    for (int inst = 0; inst < 5; ++inst) {
        const Basis b = random_euclidean_basis(3, c.seed(80 + static_cast<std::uint64_t>(inst)), false);
        for (std::size_t m = 1; m <= 3; ++m) {
            double brute = 0.0;
            for (unsigned mask = 1; mask < 8; ++mask) {
                IndexSet a;
                for (std::size_t i = 0; i < 3; ++i)
                    if (mask >> i & 1U) a.push_back(i);
                if (a.size() > m) continue;
                Mat s = Mat::Zero(3, 3);
                for (std::size_t i : a) s += b.vector(i) * b.dual(i).transpose();
                brute = std::max(brute, brute_force_sphere(s));
            }
            const double exact = km_exact_hilbert(b, m).value;
            worst = std::max(worst, rel_err(exact, brute));
            c.row("km_exact_vs_grid", static_cast<double>(m), std::abs(exact - brute), BoundKind::exact, "instance" + std::to_string(inst));
        }
    }
    c.verdict(9, "km_exact_hilbert matches grid search", worst <= 1e-6, fmt("max relative gap %.3g on 3-dim instances", worst));

    double excess = -std::numeric_limits<double>::infinity();
    for (int inst = 0; inst < 10; ++inst) {
        const Basis b = random_euclidean_basis(8, c.seed(90 + static_cast<std::uint64_t>(inst)), false);
        for (std::size_t m = 1; m <= 8; ++m) {
            SearchOptions opt;
            opt.trials = c.trials(40);
            opt.rounds = 400;
            opt.seed = c.seed(200 + 10 * static_cast<std::uint64_t>(inst) + m);
            const double lo = km_lower(b, m, {}, opt).value;
            const double ex = km_exact_hilbert(b, m).value;
            excess = std::max(excess, lo - ex);
            c.row("km_lower/km_exact", static_cast<double>(m), lo / ex, BoundKind::lower, "instance" + std::to_string(inst));
        }
    }
    c.verdict(9, "km_lower <= km_exact_hilbert", excess <= 1e-10, fmt("max km_lower - km_exact %.3g on 10 random 8-dim bases", excess));

    const Basis ortho = random_euclidean_basis(10, c.seed(99), true);
    double km_dev = 0.0, leb_dev = 0.0, phi_dev = 0.0;
    for (std::size_t m = 1; m <= ortho.dim(); ++m) km_dev = std::max(km_dev, std::abs(km_exact_hilbert(ortho, m).value - 1.0));
    for (int t = 0; t < 20; ++t) {
        Rng rng = make_rng(c.seed(100), static_cast<std::uint64_t>(t));
        const Vec f = gaussian(rng, ortho.dim());
        for (std::size_t m = 1; m < ortho.dim(); ++m) {
            std::vector<IndexSet> cands;
            IndexSet idx(m);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            do cands.push_back(idx);
            while ([&] {
                for (std::size_t i = m; i-- > 0;)
                    if (idx[i] < ortho.dim() - m + i) {
                        ++idx[i];
                        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
                        return true;
                    }
                return false;
            }());
            leb_dev = std::max(leb_dev, std::abs(lebesgue_lower(ortho, f, m, cands).value - 1.0));
        }
    }
    const PhiPool p(ortho, {}, 100, c.seed(101));
    for (double a : {1.0, 0.5, 0.25, 0.1, 0.01}) phi_dev = std::max(phi_dev, std::abs(p(a).value - 1.0));
    c.row("orthonormal_km_deviation", 10, km_dev);
    c.row("orthonormal_lebesgue_deviation", 10, leb_dev);
    c.row("orthonormal_phi_deviation", 10, phi_dev);
    c.verdict(9, "orthonormal basis: k_m = L_m = phi = 1", km_dev <= 1e-10 && leb_dev <= 1e-10 && phi_dev <= 1e-10,
              fmt("deviations %.3g, %.3g, %.3g", km_dev, leb_dev, phi_dev));
}

using SuiteFn = void (*)(Ctx&);

const std::vector<std::pair<std::string, std::pair<int, SuiteFn>>>& registry() {
    static const std::vector<std::pair<std::string, std::pair<int, SuiteFn>>> r{
        {"rotation", {1, suite_rotation}},   {"dkk-core", {2, suite_dkk_core}},         {"dkkw", {3, suite_dkkw}},
        {"thmA", {4, suite_thmA}},           {"mainA", {5, suite_mainA}},               {"demNonUCC", {6, suite_dem_nonucc}},
        {"lorentz", {7, suite_lorentz}},     {"regularity", {7, suite_regularity}},     {"phi", {8, suite_phi}},
        {"calibration", {9, suite_calibration}}};
    return r;
}

// criteria with a wall-clock budget, in seconds
double runtime_budget(const std::string& suite) {
    if (suite == "rotation") return 1.0;
    if (suite == "dkk-core") return 30.0;
    if (suite == "thmA") return 120.0;
    return 0.0;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool SuiteResult::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry()) n.push_back(k);
        return n;
    }();
    return names;
}

int suite_criterion(const std::string& suite) {
    for (const auto& [k, v] : registry())
        if (k == suite) return v.first;
    throw std::invalid_argument("unknown suite: " + suite);
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
    if (cfg.levels == 1) throw std::invalid_argument("levels must be at least 2");
    if (cfg.trials < 0) throw std::invalid_argument("trials must be positive");
    SuiteFn fn = nullptr;
    int criterion = 0;
    for (const auto& [k, v] : registry())
        if (k == cfg.suite) criterion = v.first, fn = v.second;
    if (!fn) throw std::invalid_argument("unknown suite: " + cfg.suite);
    SuiteResult r;
    Ctx ctx(r, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    fn(ctx);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (const double budget = runtime_budget(cfg.suite); budget > 0.0)
        r.verdicts.push_back({criterion, "runtime", r.seconds < budget, fmt("%.2f s (budget %.0f s)", r.seconds, budget)});
    r.provenance = {{"suite", cfg.suite},  {"criterion", criterion},   {"levels", cfg.levels}, {"host", cfg.host},
                    {"seed", cfg.seed},    {"trials", cfg.trials},     {"max_dim", cfg.max_dim}, {"threads", thread_count()},
                    {"version", "0.1.0"}, {"seconds", r.seconds}};
    return r;
}

std::string report_csv(const EstimateReport& rows) {
    std::ostringstream os;
    os << "quantity,scale,value,bound_kind,witness,seed\n";
    for (const auto& r : rows)
        os << csv_escape(r.quantity) << ',' << g17(r.scale) << ',' << g17(r.value) << ',' << to_string(r.bound) << ','
           << csv_escape(r.witness) << ',' << r.seed << '\n';
    return os.str();
}

nlohmann::json verdict_json(const SuiteResult& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : r.verdicts) v.push_back({{"criterion", x.criterion}, {"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    return {{"schema", "glab.verdict/1"}, {"pass", r.passed()}, {"verdicts", v}, {"provenance", r.provenance}};
}

void emit_report(const SuiteResult& r, const std::string& stem) {
    std::ofstream csv(stem + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + stem + ".csv");
    csv << report_csv(r.rows);
    std::ofstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot write " + stem + ".json");
    js << verdict_json(r).dump(2) << '\n';
}

}  // namespace glab::tools
