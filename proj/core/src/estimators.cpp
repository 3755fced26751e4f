#include "glab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "glab/random.hpp"

namespace glab {

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
    }
    return "lower";
}

namespace {

constexpr double kSupportTol = 1e-12;

Vec restrict(const Vec& c, const IndexSet& a) {
    Vec out = Vec::Zero(c.size());
    for (std::size_t n : a) out[static_cast<Eigen::Index>(n)] = c[static_cast<Eigen::Index>(n)];
    return out;
}

double ratio_on(const Basis& b, const Vec& c, const IndexSet& a) {
    const double d = b.coefficient_norm(c);
    if (!(d > 0.0)) return 0.0;
    return b.coefficient_norm(restrict(c, a)) / d;
}

// next k-combination of {0..n-1} in lexicographic order
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

Vec random_coefficients(Rng& rng, std::size_t n, std::size_t active, int shape) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec c = Vec::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < active; ++k) {
        double v = 0.0;
        switch (shape % 4) {
            case 0: v = g(rng); break;
            case 1: v = (u(rng) < 0.5 ? -1.0 : 1.0); break;
            case 2: v = std::exp(2.0 * g(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0); break;
            default: v = (u(rng) < 0.5 ? -1.0 : 1.0) / std::sqrt(1.0 + static_cast<double>(k)); break;
        }
        c[static_cast<Eigen::Index>(k)] = v;
    }
    return c;
}

// pattern search on J(c) = ||S_A c|| / ||c||: additive moves along coordinates with a step
// per coordinate that grows after a success and shrinks after a failure
double refine(const Basis& b, Vec& c, const IndexSet& a, const SearchOptions& opt, Rng& rng, std::size_t active) {
    double best = ratio_on(b, c, a);
    const double rms = std::max(c.head(static_cast<Eigen::Index>(active)).norm() / std::sqrt(static_cast<double>(active)), 1e-300);
    std::vector<double> step(active);
    for (std::size_t k = 0; k < active; ++k) step[k] = std::max(0.5 * std::abs(c[static_cast<Eigen::Index>(k)]), 0.25 * rms);
    for (int round = 0; round < opt.rounds; ++round) {
        std::vector<std::size_t> coords;
        if (active <= opt.refine_coordinates) {
            coords.resize(active);
            std::iota(coords.begin(), coords.end(), std::size_t{0});
        } else {
            coords = random_subset(rng, active, opt.refine_coordinates);
        }
        bool improved = false;
        for (std::size_t k : coords) {
            const auto i = static_cast<Eigen::Index>(k);
            const double old = c[i];
            bool hit = false;
            for (double dir : {1.0, -1.0}) {
                c[i] = old + dir * step[k];
                const double v = ratio_on(b, c, a);
                if (v > best * (1.0 + 1e-12)) {
                    best = v;
                    hit = true;
                    break;
                }
            }
            if (hit) {
                step[k] *= 2.0;
                improved = true;
            } else {
                c[i] = old;
                step[k] *= 0.5;
            }
        }
        if (!improved && *std::max_element(step.begin(), step.end()) < 1e-9 * rms) break;
    }
    return best;
}

bool supported_in_prefix(const Vec& c, std::size_t m) {
    const double scale = c.cwiseAbs().maxCoeff();
    for (Eigen::Index k = static_cast<Eigen::Index>(m); k < c.size(); ++k)
        if (std::abs(c[k]) > kSupportTol * std::max(1.0, scale)) return false;
    return true;
}

}  // namespace

double projection_norm_hilbert(const Basis& b, const IndexSet& a) {
    if (!b.space().is_euclidean()) throw std::invalid_argument("exact projection norms need a Euclidean ambient norm");
    if (a.empty()) return 0.0;
    const auto k = static_cast<Eigen::Index>(a.size());
    const auto n = static_cast<Eigen::Index>(b.dim());
    Mat x(n, k), y(k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        x.col(i) = b.vector(a[static_cast<std::size_t>(i)]);
        y.row(i) = b.dual(a[static_cast<std::size_t>(i)]).transpose();
    }
    // ||X Y||^2 = lambda_max(R H R^T) with X^T X = R^T R and H = Y Y^T
    const Mat g = x.transpose() * x;
    const Mat h = y * y.transpose();
    Eigen::LLT<Mat> llt(g);
    Mat prod;
    if (llt.info() == Eigen::Success) {
        const Mat r = llt.matrixU();
        prod = r * h * r.transpose();
    } else {
        prod = (x * y).transpose() * (x * y);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(prod, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Witness km_hilbert_witness(const Basis& b, const IndexSet& a) {
    if (!b.space().is_euclidean()) throw std::invalid_argument("exact projection norms need a Euclidean ambient norm");
    const auto n = static_cast<Eigen::Index>(b.dim());
    Mat s = Mat::Zero(n, n);
    for (std::size_t k : a) s += b.vector(k) * b.dual(k).transpose();
    Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullV);
    std::string label = "svd:A={";
    for (std::size_t i = 0; i < a.size(); ++i) label += (i ? " " : "") + std::to_string(a[i] + 1);
    return {svd.matrixV().col(0), a, label + "}", "proof"};
}

Bound km_exact_hilbert(const Basis& b, std::size_t m, const std::vector<IndexSet>& candidates, int trials, std::uint64_t seed) {
    if (!b.space().is_euclidean()) throw std::invalid_argument("km_exact_hilbert needs a Euclidean ambient norm; use km_lower");
    const std::size_t n = b.dim();
    if (m == 0) return {0.0, BoundKind::exact, "empty"};
    m = std::min(m, n);
    Bound out{0.0, BoundKind::exact, ""};
    const auto consider = [&](const IndexSet& a) {
        const double v = projection_norm_hilbert(b, a);
        if (v > out.value) {
            out.value = v;
            out.witness = "A={";
            for (std::size_t i = 0; i < a.size(); ++i) out.witness += (i ? " " : "") + std::to_string(a[i] + 1);
            out.witness += "}";
        }
    };
    if (n <= 20 || m <= 2) {
        for (std::size_t k = 1; k <= m; ++k) {
            std::vector<std::size_t> idx(k);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            do consider(idx);
            while (next_combination(idx, n));
        }
        return out;
    }
    out.kind = BoundKind::lower;
    for (const auto& a : candidates)
        if (a.size() <= m) consider(a);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        consider(random_subset(rng, n, 1 + static_cast<std::size_t>(t) % m));
    }
    return out;
}

Bound km_lower(const Basis& b, std::size_t m, const WitnessFamily& witnesses, const SearchOptions& opt) {
    const std::size_t n = b.dim();
    Bound out{m > 0 ? 1.0 : 0.0, BoundKind::lower, m > 0 ? "singleton" : "empty"};
    if (m == 0) return out;
    m = std::min(m, n);
    for (const auto& w : witnesses) {
        if (w.set.size() > m) continue;
        const double v = ratio_on(b, b.analyze(w.f), w.set);
        if (v > out.value) out = {v, BoundKind::lower, w.label};
    }
    std::vector<double> slots(static_cast<std::size_t>(std::max(opt.trials, 0)), 0.0);
    parallel_for(slots.size(), [&](std::size_t t) {
        Rng rng = make_rng(opt.seed, t);
        Vec c = random_coefficients(rng, n, n, static_cast<int>(t));
        // |A| = m on half of the trials, 1 <= |A| <= m otherwise
        std::uniform_int_distribution<std::size_t> size(1, m);
        const std::size_t k = t % 4 < 2 ? m : size(rng);
        IndexSet a;
        if (t % 2 == 0) {
            a = random_subset(rng, n, k);
        } else {
            a = greedy_order(c, k).set;
        }
        slots[t] = refine(b, c, a, opt, rng, n);
    });
    for (std::size_t t = 0; t < slots.size(); ++t)
        if (slots[t] > out.value) out = {slots[t], BoundKind::lower, "random#" + std::to_string(t)};
    return out;
}

Bound ktilde_lower(const Basis& b, std::size_t m, const WitnessFamily& witnesses, const SearchOptions& opt) {
    const std::size_t n = b.dim();
    Bound out{m > 0 ? 1.0 : 0.0, BoundKind::lower, m > 0 ? "singleton" : "empty"};
    if (m == 0) return out;
    m = std::min(m, n);
    for (const auto& w : witnesses) {
        const Vec c = b.analyze(w.f);
        if (!supported_in_prefix(c, m)) continue;
        const double v = ratio_on(b, c, w.set);
        if (v > out.value) out = {v, BoundKind::lower, w.label};
    }
    std::vector<double> slots(static_cast<std::size_t>(std::max(opt.trials, 0)), 0.0);
    parallel_for(slots.size(), [&](std::size_t t) {
        Rng rng = make_rng(opt.seed, t);
        Vec c = random_coefficients(rng, n, m, static_cast<int>(t));
        std::uniform_int_distribution<std::size_t> size(1, m);
        const IndexSet a = random_subset(rng, m, size(rng));
        slots[t] = refine(b, c, a, opt, rng, m);
    });
    for (std::size_t t = 0; t < slots.size(); ++t)
        if (slots[t] > out.value) out = {slots[t], BoundKind::lower, "random#" + std::to_string(t)};
    return out;
}

double signed_indicator_norm(const Basis& b, const IndexSet& a, const std::vector<int>& signs) {
    return b.space().norm(signed_indicator(b, a, signs));
}

DemocracyBounds democracy_functions(const Basis& b, std::size_t m, DemocracyMode mode, const std::vector<SignedSet>& structured,
                                    int trials, std::uint64_t seed) {
    const std::size_t n = b.dim();
    if (m == 0 || m > n) throw std::invalid_argument("democracy functions need 1 <= m <= N");
    DemocracyBounds out;
    out.phi_l = out.phi_ls = std::numeric_limits<double>::infinity();
    const auto upper = [&](const IndexSet& a, const std::vector<int>& eps) {
        const double plain = signed_indicator_norm(b, a);
        out.phi_u = std::max(out.phi_u, plain);
        out.phi_us = std::max({out.phi_us, plain, eps.empty() ? 0.0 : signed_indicator_norm(b, a, eps)});
    };
    const auto lower = [&](const IndexSet& a, const std::vector<int>& eps) {
        const double plain = signed_indicator_norm(b, a);
        out.phi_l = std::min(out.phi_l, plain);
        out.phi_ls = std::min({out.phi_ls, plain, eps.empty() ? plain : signed_indicator_norm(b, a, eps)});
    };

    if (mode == DemocracyMode::exhaustive) {
        // sets with |A| <= m for the upper functions, |A| >= m for the lower ones, all signs up to a global flip
        double count = 0.0;
        for (std::size_t k = 1; k <= n; ++k) count += binomial(n, k) * std::ldexp(1.0, static_cast<int>(k) - 1);
        if (count <= 1e6) {
            out.exhaustive = true;
            for (std::size_t k = 1; k <= n; ++k) {
                std::vector<std::size_t> idx(k);
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                do {
                    for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
                        std::vector<int> eps(k, 1);
                        for (std::size_t i = 1; i < k; ++i)
                            if (mask >> (i - 1) & 1U) eps[i] = -1;
                        const double v = signed_indicator_norm(b, idx, eps);
                        if (mask == 0) {
                            if (k <= m) out.phi_u = std::max(out.phi_u, v);
                            if (k >= m) out.phi_l = std::min(out.phi_l, v);
                        }
                        if (k <= m) out.phi_us = std::max(out.phi_us, v);
                        if (k >= m) out.phi_ls = std::min(out.phi_ls, v);
                    }
                } while (next_combination(idx, n));
            }
            return out;
        }
    }

    for (const auto& s : structured) {
        if (s.set.empty() || s.set.back() >= n) continue;
        if (s.set.size() <= m) upper(s.set, s.signs);
        if (s.set.size() >= m) lower(s.set, s.signs);
    }
    // initial segment and the alternating-sign initial segment
    IndexSet head(m);
    std::iota(head.begin(), head.end(), std::size_t{0});
    std::vector<int> alt(m);
    for (std::size_t i = 0; i < m; ++i) alt[i] = (i % 2) ? -1 : 1;
    upper(head, alt);
    lower(head, alt);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        const IndexSet a = random_subset(rng, n, m);
        std::bernoulli_distribution coin(0.5);
        std::vector<int> eps(m);
        for (auto& e : eps) e = coin(rng) ? 1 : -1;
        upper(a, eps);
        lower(a, eps);
    }
    return out;
}

Bound tqg_constant_lower(const Basis& b, const WitnessFamily& witnesses, int trials, std::uint64_t seed) {
    const std::size_t n = b.dim();
    Bound out{0.0, BoundKind::lower, ""};
    const auto scan = [&](const Vec& c, const std::string& label) {
        const double norm = b.coefficient_norm(c);
        if (!(norm > 0.0)) return;
        const GreedyResult full = greedy_order(c, n);
        Vec signs = Vec::Zero(c.size());
        // m runs over 1, 2, 4, ... and the support size
        std::size_t support = 0;
        for (Eigen::Index k = 0; k < c.size(); ++k) support += c[k] != 0.0 ? 1 : 0;
        std::vector<std::size_t> ms;
        for (std::size_t m = 1; m < support; m *= 2) ms.push_back(m);
        if (support > 0) ms.push_back(support);
        std::size_t filled = 0;
        for (std::size_t m : ms) {
            for (; filled < m; ++filled) {
                const auto i = static_cast<Eigen::Index>(full.order[filled]);
                signs[i] = c[i] > 0 ? 1.0 : -1.0;
            }
            const double least = std::abs(c[static_cast<Eigen::Index>(full.order[m - 1])]);
            const double v = least * b.coefficient_norm(signs) / norm;
            if (v > out.value) out = {v, BoundKind::lower, label + ":m=" + std::to_string(m)};
        }
    };
    for (const auto& w : witnesses) scan(b.analyze(w.f), w.label);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        std::uniform_int_distribution<std::size_t> active(1, n);
        Vec c = random_coefficients(rng, n, n, t);
        const std::size_t keep = active(rng);
        const IndexSet a = random_subset(rng, n, keep);
        scan(restrict(c, a), "random#" + std::to_string(t));
    }
    return out;
}

std::vector<GreedyWitnessRatio> greedy_witness_ratios(const Basis& b, const WitnessFamily& witnesses) {
    std::vector<GreedyWitnessRatio> out;
    out.reserve(witnesses.size());
    for (const auto& w : witnesses) {
        const Vec c = b.analyze(w.f);
        out.push_back({w.label, ratio_on(b, c, w.set), is_greedy_set(c, w.set, 1e-10)});
    }
    return out;
}

Bound quasi_greedy_lower(const Basis& b, const WitnessFamily& witnesses) {
    Bound out{1.0, BoundKind::lower, "trivial"};
    for (const auto& r : greedy_witness_ratios(b, witnesses))
        if (r.greedy && r.ratio > out.value) out = {r.ratio, BoundKind::lower, r.label};
    return out;
}

Bound lebesgue_lower(const Basis& b, const Vec& f, std::size_t m, const std::vector<IndexSet>& candidates) {
    const Vec c = b.analyze(f);
    const GreedyResult g = greedy_order(c, std::min(m, b.dim()));
    const IndexSet all = [&] {
        IndexSet s(b.dim());
        std::iota(s.begin(), s.end(), std::size_t{0});
        return s;
    }();
    const double norm_f = b.coefficient_norm(c);
    const double numer = b.coefficient_norm(c - restrict(c, g.set));
    double denom = norm_f;
    std::string witness = "empty";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].size() > m) throw std::invalid_argument("candidate support larger than m");
        const double d = b.coefficient_norm(c - restrict(c, candidates[i]));
        if (d < denom) {
            denom = d;
            witness = "candidate#" + std::to_string(i);
        }
    }
    const double tol = 1e-12 * std::max(1.0, norm_f);
    if (denom <= tol) return {numer > tol ? std::numeric_limits<double>::infinity() : 1.0, BoundKind::lower, witness};
    return {numer / denom, BoundKind::lower, witness};
}

PhiPool::PhiPool(const Basis& b, const WitnessFamily& witnesses, int trials, std::uint64_t seed) {
    const std::size_t n = b.dim();
    const auto ingest = [&](const Vec& raw, const IndexSet* fixed, const std::string& label) {
        const double top = raw.cwiseAbs().maxCoeff();
        if (!(top > 0.0)) return;
        const Vec c = raw / top;  // now in Q
        const double norm = b.coefficient_norm(c);
        if (!(norm > 0.0)) return;
        if (fixed) add(b, c, norm, *fixed, label);
        // threshold sets A(g, t) at every distinct magnitude level (capped)
        std::vector<double> mags;
        for (Eigen::Index k = 0; k < c.size(); ++k)
            if (c[k] != 0.0) mags.push_back(std::abs(c[k]));
        std::sort(mags.begin(), mags.end(), std::greater<>());
        mags.erase(std::unique(mags.begin(), mags.end(), [](double x, double y) { return std::abs(x - y) <= 1e-12 * x; }),
                   mags.end());
        const std::size_t step = std::max<std::size_t>(1, mags.size() / 32);
        for (std::size_t i = 0; i < mags.size(); i += step) {
            IndexSet a;
            for (Eigen::Index k = 0; k < c.size(); ++k)
                if (std::abs(c[k]) >= mags[i] * (1.0 - 1e-12)) a.push_back(static_cast<std::size_t>(k));
            add(b, c, norm, a, label + ":level" + std::to_string(i));
        }
    };
    for (const auto& w : witnesses) ingest(b.analyze(w.f), &w.set, w.label);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        Vec c = random_coefficients(rng, n, n, t);
        ingest(c, nullptr, "random#" + std::to_string(t));
        const double top = c.cwiseAbs().maxCoeff();
        std::uniform_int_distribution<std::size_t> size(1, n);
        const IndexSet a = random_subset(rng, n, size(rng));
        if (top > 0.0) add(b, c / top, b.coefficient_norm(c / top), a, "random#" + std::to_string(t) + ":subset");
    }
}

void PhiPool::add(const Basis& b, const Vec& coeffs, double norm, const IndexSet& a, const std::string& label) {
    if (a.empty()) return;
    double threshold = std::numeric_limits<double>::infinity();
    for (std::size_t k : a) threshold = std::min(threshold, std::abs(coeffs[static_cast<Eigen::Index>(k)]));
    if (!(threshold > 0.0)) return;
    entries_.push_back({threshold, b.coefficient_norm(restrict(coeffs, a)) / norm, label});
}

Bound PhiPool::operator()(double a) const {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("phi is defined for 0 < a <= 1");
    // phi >= 1 always: f = x_n, A = {n}
    Bound out{1.0, BoundKind::lower, "singleton"};
    for (const auto& e : entries_)
        if (e.threshold >= a * (1.0 - 1e-12) && e.ratio > out.value) out = {e.ratio, BoundKind::lower, e.label};
    return out;
}

Bound phi_lower(const Basis& b, double a, const WitnessFamily& witnesses, int trials, std::uint64_t seed) {
    return PhiPool(b, witnesses, trials, seed)(a);
}

WitnessFamily kmphi_witnesses(const Basis& b, const WitnessFamily& km_witnesses, double p) {
    WitnessFamily out;
    for (const auto& w : km_witnesses) {
        const Vec c = b.analyze(w.f);
        const double top = c.cwiseAbs().maxCoeff();
        if (!(top > 0.0) || w.set.empty()) continue;
        const double cut = std::pow(static_cast<double>(w.set.size()), -1.0 / p);
        IndexSet a2;
        for (std::size_t k : w.set)
            if (std::abs(c[static_cast<Eigen::Index>(k)]) / top > cut) a2.push_back(k);
        if (a2.empty()) continue;
        out.push_back({w.f / top, std::move(a2), w.label + ":A2", "transfer"});
    }
    return out;
}

bool TransferCheck::any_flag() const {
    return std::any_of(rows.begin(), rows.end(), [](const TransferRow& r) { return r.flagged; });
}

TransferCheck kmphi_transfer_check(const Basis& b, double p, const std::vector<double>& F, const std::vector<double>& a_grid,
                                   const PhiPool& pool, int dual_trials, std::uint64_t seed, double tol) {
    if (F.empty()) throw std::invalid_argument("transfer check needs F on at least m = 1");
    TransferCheck out;
    out.alpha2_exact = true;
    for (std::size_t n = 0; n < b.dim(); ++n) {
        out.alpha1 = std::max(out.alpha1, b.space().norm(b.vector(n)));
        const DualNorm d = dual_norm(b, n, dual_trials, split_seed(seed, n));
        out.alpha2 = std::max(out.alpha2, d.value);
        out.alpha2_exact = out.alpha2_exact && d.exact;
    }
    const double denom = std::pow(4.0, 1.0 / p) * out.alpha1 * out.alpha2;
    for (double a : a_grid) {
        const double x = std::pow(a, -p);
        // F non-decreasing, extended by its last value
        const auto m = static_cast<std::size_t>(std::ceil(x - 1e-12));
        const double fx = F[std::min(std::max<std::size_t>(m, 1), F.size()) - 1];
        TransferRow row{a, pool(a).value, fx / denom, false};
        row.flagged = row.lhs < row.rhs - tol;
        out.rows.push_back(row);
    }
    return out;
}

std::vector<IndexSet> dyadic_layers_coeffs(const Vec& coeffs, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("dyadic layers need 0 < a <= 1");
    if (coeffs.size() > 0 && coeffs.cwiseAbs().maxCoeff() > 1.0 + 1e-12) throw std::invalid_argument("vector outside Q");
    // n with 2^{-n} <= a < 2^{1-n}
    const auto n = static_cast<std::size_t>(std::max(0.0, std::floor(-std::log2(a) + 1e-12)) + 0.5);
    std::vector<IndexSet> layers(n + 1);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const double v = std::abs(coeffs[k]);
        if (v < a) continue;
        std::size_t layer = 0;
        // smallest j with v >= 2^{-j}, capped at n
        while (layer < n && v < std::ldexp(1.0, -static_cast<int>(layer))) ++layer;
        layers[layer].push_back(static_cast<std::size_t>(k));
    }
    return layers;
}

std::vector<IndexSet> dyadic_layers(const Basis& b, const Vec& f, double a) { return dyadic_layers_coeffs(b.analyze(f), a); }

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit needs distinct abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
    return f;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_linear(lx, ly);
}

double spread(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("spread of an empty family");
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
}

}  // namespace glab
