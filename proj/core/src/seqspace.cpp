#include "glab/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/sort/spreadsort/spreadsort.hpp>

#include "glab/random.hpp"

namespace glab {

namespace {

// nonzero magnitudes only; the norms below stop at the first zero anyway
std::vector<double> sorted_magnitudes(std::span<const double> f) {
    std::vector<double> a;
    a.reserve(f.size());
    for (double x : f)
        if (x != 0.0) a.push_back(std::abs(x));
    boost::sort::spreadsort::float_sort(a.begin(), a.end());
    std::reverse(a.begin(), a.end());
    return a;
}

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + 1e-12) + 1e-300; }

}  // namespace

Weight::Weight(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("weight must be non-empty");
    if (!(w_[0] > 0.0)) throw std::invalid_argument("weight must have w[1] > 0");
    s_.resize(w_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(w_[i] >= 0.0) || !std::isfinite(w_[i])) throw std::invalid_argument("weight entries must be finite and non-negative");
        acc += w_[i];
        s_[i] = acc;
    }
}

Weight Weight::constant(std::size_t n, double value) { return Weight(std::vector<double>(n, value)); }

Weight Weight::truncated(std::size_t n) const {
    if (n > w_.size()) throw std::invalid_argument("weight shorter than requested dimension");
    return Weight(std::vector<double>(w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(n)));
}

FundamentalFunction::FundamentalFunction(std::vector<double> lambda) : lambda_(std::move(lambda)) {
    for (double v : lambda_) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("fundamental function must be positive");
    }
}

FundamentalFunction FundamentalFunction::power(std::size_t n, double exponent) {
    std::vector<double> v(n);
    for (std::size_t m = 1; m <= n; ++m) v[m - 1] = std::pow(static_cast<double>(m), exponent);
    return FundamentalFunction(std::move(v));
}

FundamentalFunction FundamentalFunction::logarithmic(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t m = 1; m <= n; ++m) v[m - 1] = 1.0 + std::log(static_cast<double>(m));
    return FundamentalFunction(std::move(v));
}

double FundamentalFunction::operator()(std::size_t m) const {
    if (m == 0) return 0.0;
    if (m > lambda_.size()) throw std::out_of_range("fundamental function index beyond truncation");
    return lambda_[m - 1];
}

bool FundamentalFunction::is_regular(double tol) const {
    for (std::size_t m = 1; m < lambda_.size(); ++m) {
        if (lambda_[m] < lambda_[m - 1] * (1.0 - tol)) return false;
        const double prev = static_cast<double>(m) / lambda_[m - 1];
        const double cur = static_cast<double>(m + 1) / lambda_[m];
        if (cur < prev * (1.0 - tol)) return false;
    }
    return true;
}

Weight FundamentalFunction::increment_weight() const {
    std::vector<double> w(lambda_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, lambda_[i] - (i ? lambda_[i - 1] : 0.0));
    return Weight(std::move(w));
}

Weight FundamentalFunction::average_weight() const {
    std::vector<double> u(lambda_.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = lambda_[i] / static_cast<double>(i + 1);
    return Weight(std::move(u));
}

SeqNorm SeqNorm::lp(double p, std::size_t dim) {
    if (!(p > 0.0)) throw std::invalid_argument("lp exponent must be positive");
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    return SeqNorm(LpKind{p}, dim);
}

SeqNorm SeqNorm::lorentz(double q, Weight w) {
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("lorentz exponent must be positive and finite");
    const std::size_t n = w.size();
    return SeqNorm(LorentzKind{q, std::move(w)}, n);
}

SeqNorm SeqNorm::weak_lorentz(Weight w) {
    const std::size_t n = w.size();
    return SeqNorm(WeakLorentzKind{std::move(w)}, n);
}

double SeqNorm::eval(std::span<const double> f) const {
    if (f.size() != dim_) throw std::invalid_argument("dimension mismatch in norm evaluation");
    if (const auto* lp = std::get_if<LpKind>(&kind_)) {
        const double p = lp->p;
        if (std::isinf(p)) {
            double m = 0.0;
            for (double x : f) m = std::max(m, std::abs(x));
            return m;
        }
        if (p == 1.0) {
            double s = 0.0;
            for (double x : f) s += std::abs(x);
            return s;
        }
        if (p == 2.0) {
            // scaled to avoid overflow
            double scale = 0.0;
            for (double x : f) scale = std::max(scale, std::abs(x));
            if (scale == 0.0) return 0.0;
            double s = 0.0;
            for (double x : f) {
                const double t = x / scale;
                s += t * t;
            }
            return scale * std::sqrt(s);
        }
        double scale = 0.0;
        for (double x : f) scale = std::max(scale, std::abs(x));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (double x : f) s += std::pow(std::abs(x) / scale, p);
        return scale * std::pow(s, 1.0 / p);
    }
    return eval_sorted(sorted_magnitudes(f));
}

double SeqNorm::eval_runs(std::span<const double> values, std::span<const std::size_t> lengths) const {
    if (values.size() != lengths.size()) throw std::invalid_argument("values and lengths differ in size");
    if (std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}) != dim_)
        throw std::invalid_argument("dimension mismatch in norm evaluation");
    if (const auto* lp = std::get_if<LpKind>(&kind_)) {
        double scale = 0.0;
        for (double x : values) scale = std::max(scale, std::abs(x));
        if (scale == 0.0 || std::isinf(lp->p)) return scale;
        double s = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            s += static_cast<double>(lengths[i]) * std::pow(std::abs(values[i]) / scale, lp->p);
        return scale * std::pow(s, 1.0 / lp->p);
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return std::abs(values[i]) > std::abs(values[j]); });
    std::vector<double> a;
    a.reserve(dim_);
    for (std::size_t i : order)
        if (values[i] != 0.0) a.insert(a.end(), lengths[i], std::abs(values[i]));
    return eval_sorted(a);
}

double SeqNorm::eval_sorted(const std::vector<double>& a) const {
    if (const auto* lw = std::get_if<LorentzKind>(&kind_)) {
        const double q = lw->q;
        double s = 0.0;
        for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
            const double wn = lw->w[n];
            if (wn == 0.0) continue;
            const double sn = lw->w.primitive(n);
            s += q == 1.0 ? a[n] * wn : std::pow(sn * a[n], q) * wn / sn;
        }
        return q == 1.0 ? s : std::pow(s, 1.0 / q);
    }
    const auto& wl = std::get<WeakLorentzKind>(kind_);
    double m = 0.0;
    for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) m = std::max(m, a[n] * wl.w.primitive(n));
    return m;
}

SeqNorm SeqNorm::resized(std::size_t n) const {
    return std::visit(
        [n](const auto& k) -> SeqNorm {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, LpKind>) {
                return SeqNorm::lp(k.p, n);
            } else if constexpr (std::is_same_v<K, LorentzKind>) {
                return SeqNorm::lorentz(k.q, k.w.truncated(n));
            } else {
                return SeqNorm::weak_lorentz(k.w.truncated(n));
            }
        },
        kind_);
}

bool SeqNorm::is_euclidean() const {
    const auto* lp = std::get_if<LpKind>(&kind_);
    return lp && lp->p == 2.0;
}

bool SeqNorm::is_convex() const {
    if (const auto* lp = std::get_if<LpKind>(&kind_)) return lp->p >= 1.0;
    if (const auto* lw = std::get_if<LorentzKind>(&kind_)) {
        if (lw->q < 1.0) return false;
        // d_q(w) is a norm for non-increasing w; otherwise only a quasi-norm in general
        for (std::size_t i = 1; i < lw->w.size(); ++i)
            if (lw->w[i] > lw->w[i - 1]) return false;
        return true;
    }
    return false;
}

std::string SeqNorm::describe() const {
    std::ostringstream os;
    if (const auto* lp = std::get_if<LpKind>(&kind_)) {
        os << "l" << lp->p << "(" << dim_ << ")";
    } else if (const auto* lw = std::get_if<LorentzKind>(&kind_)) {
        os << "d_" << lw->q << "(w)(" << dim_ << ")";
    } else {
        os << "d_inf(w)(" << dim_ << ")";
    }
    return os.str();
}

nlohmann::json SeqNorm::to_json() const {
    nlohmann::json j;
    if (const auto* lp = std::get_if<LpKind>(&kind_)) {
        j["kind"] = "lp";
        if (std::isinf(lp->p))
            j["p"] = "inf";
        else
            j["p"] = lp->p;
        j["dim"] = dim_;
    } else if (const auto* lw = std::get_if<LorentzKind>(&kind_)) {
        j["kind"] = "lorentz";
        j["q"] = lw->q;
        j["weight"] = lw->w.values();
    } else {
        j["kind"] = "weak_lorentz";
        j["weight"] = std::get<WeakLorentzKind>(kind_).w.values();
    }
    return j;
}

SeqNorm SeqNorm::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") {
        const auto& p = j.at("p");
        const double pv = p.is_string() ? std::numeric_limits<double>::infinity() : p.get<double>();
        return SeqNorm::lp(pv, j.at("dim").get<std::size_t>());
    }
    if (kind == "lorentz") return SeqNorm::lorentz(j.at("q").get<double>(), Weight(j.at("weight").get<std::vector<double>>()));
    if (kind == "weak_lorentz") return SeqNorm::weak_lorentz(Weight(j.at("weight").get<std::vector<double>>()));
    throw std::invalid_argument("unknown sequence norm kind: " + kind);
}

FundamentalFunction fundamental_function(const SeqNorm& s) {
    const std::size_t n = s.dim();
    std::vector<double> v(n);
    if (const auto* lp = std::get_if<LpKind>(&s.kind())) {
        for (std::size_t m = 1; m <= n; ++m)
            v[m - 1] = std::isinf(lp->p) ? 1.0 : std::pow(static_cast<double>(m), 1.0 / lp->p);
    } else if (const auto* lw = std::get_if<LorentzKind>(&s.kind())) {
        double acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double sn = lw->w.primitive(m);
            acc += lw->q == 1.0 ? lw->w[m] : std::pow(sn, lw->q - 1.0) * lw->w[m];
            v[m] = lw->q == 1.0 ? acc : std::pow(acc, 1.0 / lw->q);
        }
    } else {
        const auto& wl = std::get<WeakLorentzKind>(s.kind());
        for (std::size_t m = 0; m < n; ++m) v[m] = wl.w.primitive(m);
    }
    return FundamentalFunction(std::move(v));
}

namespace {

template <class Holds>
RegularityVerdict regularity_search(const FundamentalFunction& lambda, Holds&& holds) {
    const std::size_t n = lambda.size();
    if (n < 4) throw std::invalid_argument("regularity check needs N >= 4");
    const auto bmax = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    RegularityVerdict v;
    for (std::size_t b = 2; b <= bmax; ++b) {
        std::size_t bad = 0;
        for (std::size_t m = 1; m * b <= n; ++m) {
            if (!holds(lambda(m), lambda(b * m), static_cast<double>(b))) {
                bad = m;
                break;
            }
        }
        if (bad == 0) {
            v.holds = true;
            v.witness_b = b;
            v.counterexamples.clear();
            return v;
        }
        v.counterexamples.push_back(bad);
    }
    return v;
}

}  // namespace

RegularityVerdict has_lrp(const FundamentalFunction& lambda) {
    return regularity_search(lambda, [](double lm, double lbm, double) { return leq(2.0 * lm, lbm); });
}

RegularityVerdict has_urp(const FundamentalFunction& lambda) {
    return regularity_search(lambda, [](double lm, double lbm, double b) { return leq(2.0 * lbm, b * lm); });
}

std::vector<double> dini_ratio(const FundamentalFunction& lambda) {
    std::vector<double> r(lambda.size());
    double acc = 0.0;
    for (std::size_t m = 1; m <= lambda.size(); ++m) {
        acc += lambda(m) / static_cast<double>(m);
        r[m - 1] = acc / lambda(m);
    }
    return r;
}

namespace {

// indicators of initial segments, the harmonic vector, then random draws
template <class Visit>
void sample_vectors(std::size_t n, int trials, std::uint64_t seed, Visit&& visit) {
    std::vector<double> f(n);
    std::vector<std::size_t> sizes;
    for (std::size_t m = 1; m < n; m *= 2) sizes.push_back(m);
    sizes.push_back(n);
    for (std::size_t m : sizes) {
        std::fill(f.begin(), f.end(), 0.0);
        std::fill(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
        visit(f);
    }
    for (std::size_t k = 0; k < n; ++k) f[k] = 1.0 / static_cast<double>(k + 1);
    visit(f);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
        std::normal_distribution<double> g;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int shape = t % 4;
        const double density = shape == 3 ? std::max(1.0 / static_cast<double>(n), u(rng) * 0.2) : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (u(rng) > density) {
                f[k] = 0.0;
                continue;
            }
            switch (shape) {
                case 0: f[k] = g(rng); break;
                case 1: f[k] = std::exp(3.0 * g(rng)); break;
                case 2: f[k] = std::pow(static_cast<double>(k + 1), -u(rng) * 1.5) * (g(rng) > 0 ? 1.0 : -1.0); break;
                default: f[k] = g(rng); break;
            }
        }
        visit(f);
    }
}

}  // namespace

double lorentz_equiv_check(const Weight& w, const Weight& w2, double q, int trials, std::uint64_t seed) {
    const std::size_t n = std::min(w.size(), w2.size());
    const auto a = SeqNorm::lorentz(q, w.truncated(n));
    const auto b = SeqNorm::lorentz(q, w2.truncated(n));
    double worst = 1.0;
    sample_vectors(n, trials, seed, [&](const std::vector<double>& f) {
        const double x = a.eval(f);
        const double y = b.eval(f);
        if (x == 0.0 && y == 0.0) return;
        worst = std::max({worst, x / y, y / x});
    });
    return worst;
}

double embedding_constant(const Weight& w, double p, double q, int trials, std::uint64_t seed) {
    const auto make = [&w](double r) { return std::isinf(r) ? SeqNorm::weak_lorentz(w) : SeqNorm::lorentz(r, w); };
    const auto small = make(p);
    const auto large = make(q);
    double worst = 0.0;
    sample_vectors(w.size(), trials, seed, [&](const std::vector<double>& f) {
        const double d = small.eval(f);
        if (d > 0.0) worst = std::max(worst, large.eval(f) / d);
    });
    return worst;
}

}  // namespace glab
