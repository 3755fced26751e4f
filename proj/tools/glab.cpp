#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "glab/estimators.hpp"
#include "glab/random.hpp"
#include "glab/serialize.hpp"
#include "suites.hpp"

namespace {

using namespace glab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ','))
        if (!cell.empty()) out.push_back(std::stod(cell));
    return out;
}

std::string stem_of(const std::string& path) {
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

Vec load_vector_or_random(const std::string& path, std::size_t dim, std::uint64_t seed) {
    if (!path.empty()) {
        Vec f = read_vector_csv(path);
        if (static_cast<std::size_t>(f.size()) != dim) throw UsageError("vector length does not match the space dimension");
        return f;
    }
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> g;
    Vec f(static_cast<Eigen::Index>(dim));
    for (auto& x : f) x = g(rng);
    return f;
}

void print_g17(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

// ------------------------------------------------------------------ estimate

struct EstimateArgs {
    std::string space, param, m_list = "1,2,4,8", a_list = "0.5,0.25,0.125", vector, out;
    std::uint64_t seed = 42;
    int trials = 50;
    std::size_t max_dim = std::size_t{1} << 18;
};

EstimateReport run_estimate(const EstimateArgs& a) {
    LoadedSpace ls = load_space(a.space, BuildOptions{a.max_dim});
    const Basis& b = ls.basis;
    const WitnessFamily witnesses = ls.construction ? ls.construction->witnesses : WitnessFamily{};
    const std::vector<SignedSet> structured = ls.construction ? ls.construction->structured_sets : std::vector<SignedSet>{};
    EstimateReport rows;
    const auto add = [&](const std::string& q, double scale, const Bound& bd) { rows.push_back({q, scale, bd.value, bd.kind, bd.witness, a.seed}); };

    if (a.param == "phi") {
        const PhiPool pool(b, witnesses, a.trials, a.seed);
        for (double x : parse_list(a.a_list)) {
            if (!(x > 0.0 && x <= 1.0)) throw UsageError("a must lie in (0, 1]");
            add("phi", x, pool(x));
        }
        return rows;
    }
    if (a.param == "tqg") {
        add("tqg", static_cast<double>(b.dim()), tqg_constant_lower(b, witnesses, a.trials, a.seed));
        return rows;
    }
    if (a.param == "qg") {
        add("qg", static_cast<double>(b.dim()), quasi_greedy_lower(b, witnesses));
        return rows;
    }
    const Vec f = a.param == "lebesgue" ? load_vector_or_random(a.vector, b.dim(), a.seed) : Vec();
    for (double mv : parse_list(a.m_list)) {
        if (mv < 1.0 || mv != std::floor(mv)) throw UsageError("m must be a positive integer");
        const auto m = static_cast<std::size_t>(mv);
        if (m > b.dim()) throw UsageError("m exceeds the dimension");
        SearchOptions opt;
        opt.trials = a.trials;
        opt.seed = split_seed(a.seed, m);
        if (a.param == "km") {
            add("km", mv, b.space().is_euclidean() && b.dim() <= 20 ? km_exact_hilbert(b, m) : km_lower(b, m, witnesses, opt));
        } else if (a.param == "ktilde") {
            add("ktilde", mv, ktilde_lower(b, m, witnesses, opt));
        } else if (a.param == "lebesgue") {
            std::vector<IndexSet> cands;
            for (int t = 0; t < a.trials; ++t) {
                Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(t));
                cands.push_back(random_subset(rng, b.dim(), m));
            }
            const Vec c = b.analyze(f);
            cands.push_back(greedy_order(c, m).order);
            add("lebesgue", mv, lebesgue_lower(b, f, m, cands));
        } else if (a.param == "phiu" || a.param == "phil" || a.param == "phius" || a.param == "phils") {
            const DemocracyBounds d = democracy_functions(b, m, DemocracyMode::exhaustive, structured, a.trials, opt.seed);
            const double v = a.param == "phiu" ? d.phi_u : a.param == "phil" ? d.phi_l : a.param == "phius" ? d.phi_us : d.phi_ls;
            // sampled sets give a lower bound for the sup-type functions and an upper bound for the inf-type ones
            const BoundKind kind = d.exhaustive ? BoundKind::exact : (a.param == "phiu" || a.param == "phius") ? BoundKind::lower : BoundKind::upper;
            rows.push_back({a.param, mv, v, kind, d.exhaustive ? "exhaustive" : "sampled", a.seed});
        } else {
            throw UsageError("unknown parameter: " + a.param);
        }
    }
    return rows;
}

// ------------------------------------------------------------------ config

// JSON config first, then any flag given on the command line
tools::ExperimentConfig make_config(const std::string& config_path, const CLI::App& sub, const tools::ExperimentConfig& flags,
                                    std::string& out) {
    tools::ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot open config " + config_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("bad config: ") + e.what());
        }
        cfg.suite = j.value("suite", cfg.suite);
        cfg.levels = j.value("levels", cfg.levels);
        cfg.host = j.value("host", cfg.host);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.trials = j.value("trials", cfg.trials);
        cfg.max_dim = j.value("max_dim", cfg.max_dim);
        if (out.empty() || sub.get_option("--out")->count() == 0) out = j.value("out", out);
    }
    if (sub.get_option("--suite")->count()) cfg.suite = flags.suite;
    if (sub.get_option("--levels")->count()) cfg.levels = flags.levels;
    if (sub.get_option("--host")->count()) cfg.host = flags.host;
    if (sub.get_option("--seed")->count()) cfg.seed = flags.seed;
    if (sub.get_option("--trials")->count()) cfg.trials = flags.trials;
    if (sub.get_option("--max-dim")->count()) cfg.max_dim = flags.max_dim;
    if (cfg.suite.empty()) throw UsageError("no suite given");
    return cfg;
}

void add_config_flags(CLI::App* sub, tools::ExperimentConfig& f, std::string& config, std::string& out) {
    sub->add_option("--suite", f.suite, "suite name");
    sub->add_option("--levels", f.levels, "levels (0: suite default)");
    sub->add_option("--host", f.host, "host norm: l2, l1, linf, lp:P, lorentz:Q:wfile, weak:wfile");
    sub->add_option("--seed", f.seed, "64-bit seed");
    sub->add_option("--trials", f.trials, "random trials (0: suite default)");
    sub->add_option("--max-dim", f.max_dim, "dimension cap");
    sub->add_option("--config", config, "JSON config; flags win");
    sub->add_option("--out", out, "output stem for <stem>.csv and <stem>.json");
}

void print_verdicts(const tools::SuiteResult& r, const std::string& suite) {
    for (const auto& v : r.verdicts)
        std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << v.criterion << "] " << suite << ": " << v.name << " -- " << v.detail << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glab: numerical laboratory for greedy-like bases"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build a construction and write its space description");
    std::string construction, host = "l2", build_out;
    std::size_t levels = 4, max_dim = std::size_t{1} << 18;
    build->add_option("--construction", construction, "thmA | mainA | demNonUCC | dkk")->required();
    build->add_option("--host", host, "host norm descriptor");
    build->add_option("--levels", levels, "levels");
    build->add_option("--max-dim", max_dim, "dimension cap");
    build->add_option("--out", build_out, "output JSON")->required();

    // norm
    auto* norm = app.add_subcommand("norm", "norm of a vector given in space or coefficient coordinates");
    std::string norm_space, norm_vec;
    bool norm_coeffs = false;
    norm->add_option("--space", norm_space)->required();
    norm->add_option("--vector", norm_vec, "single-column CSV")->required();
    norm->add_flag("--coefficients", norm_coeffs, "treat the vector as basis coefficients");
    norm->add_option("--max-dim", max_dim);

    // tga
    auto* tga_cmd = app.add_subcommand("tga", "thresholding greedy approximant G_m f");
    std::string tga_space, tga_vec, tga_out;
    std::size_t tga_m = 1;
    tga_cmd->add_option("--space", tga_space)->required();
    tga_cmd->add_option("--vector", tga_vec)->required();
    tga_cmd->add_option("--m", tga_m)->required();
    tga_cmd->add_option("--out", tga_out, "single-column CSV; stdout if omitted");
    tga_cmd->add_option("--max-dim", max_dim);

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate a greedy-type parameter");
    EstimateArgs ea;
    est->add_option("--space", ea.space)->required();
    est->add_option("--param", ea.param, "km | ktilde | phiu | phil | phius | phils | tqg | qg | phi | lebesgue")->required();
    est->add_option("--m-list", ea.m_list, "comma-separated m values");
    est->add_option("--a-list", ea.a_list, "comma-separated thresholds for phi");
    est->add_option("--vector", ea.vector, "f for lebesgue (random if omitted)");
    est->add_option("--seed", ea.seed);
    est->add_option("--trials", ea.trials);
    est->add_option("--max-dim", ea.max_dim);
    est->add_option("--out", ea.out, "CSV; stdout if omitted");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "run a suite and write <out>.csv and <out>.json");
    tools::ExperimentConfig rep_flags;
    std::string rep_config, rep_out;
    add_config_flags(rep, rep_flags, rep_config, rep_out);

    // check
    auto* chk = app.add_subcommand("check", "run suites and print verdicts (all suites by default)");
    tools::ExperimentConfig chk_flags;
    std::string chk_config, chk_out;
    add_config_flags(chk, chk_flags, chk_config, chk_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*build) {
            Construction c = build_named(construction, parse_host(host), levels, BuildOptions{max_dim});
            save_space(build_out, c);
            write_witnesses_csv(stem_of(build_out) + ".witnesses.csv", c);
            for (const auto& w : c.warnings) std::cerr << "warning: " << w << '\n';
            std::cout << c.name << " dim " << c.basis.dim() << " -> " << build_out << '\n';
            return kExitPass;
        }
        if (*norm) {
            const LoadedSpace ls = load_space(norm_space, BuildOptions{max_dim});
            const Vec v = read_vector_csv(norm_vec);
            if (static_cast<std::size_t>(v.size()) != ls.basis.dim()) throw UsageError("vector length does not match the space dimension");
            print_g17(std::cout, norm_coeffs ? ls.basis.coefficient_norm(v) : ls.basis.space().norm(v));
            std::cout << '\n';
            return kExitPass;
        }
        if (*tga_cmd) {
            const LoadedSpace ls = load_space(tga_space, BuildOptions{max_dim});
            const Vec v = read_vector_csv(tga_vec);
            if (static_cast<std::size_t>(v.size()) != ls.basis.dim()) throw UsageError("vector length does not match the space dimension");
            if (tga_m > ls.basis.dim()) throw UsageError("m exceeds the dimension");
            const Vec g = tga(ls.basis, as_span(v), tga_m);
            if (tga_out.empty()) {
                for (double x : g) print_g17(std::cout, x), std::cout << '\n';
            } else {
                write_vector_csv(tga_out, g);
            }
            return kExitPass;
        }
        if (*est) {
            const EstimateReport rows = run_estimate(ea);
            const std::string csv = tools::report_csv(rows);
            if (ea.out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(ea.out);
                if (!out) throw std::runtime_error("cannot write " + ea.out);
                out << csv;
            }
            return kExitPass;
        }
        if (*rep) {
            const tools::ExperimentConfig cfg = make_config(rep_config, *rep, rep_flags, rep_out);
            const tools::SuiteResult r = tools::run_suite(cfg);
            tools::emit_report(r, rep_out.empty() ? cfg.suite : stem_of(rep_out));
            print_verdicts(r, cfg.suite);
            return r.passed() ? kExitPass : kExitFail;
        }
        if (*chk) {
            std::vector<std::string> suites = tools::suite_names();
            tools::ExperimentConfig base;
            if (!chk_config.empty() || chk->get_option("--suite")->count()) {
                base = make_config(chk_config, *chk, chk_flags, chk_out);
                suites = {base.suite};
            } else {
                chk_flags.suite = "rotation";
                base = chk_flags;
            }
            bool ok = true;
            for (const auto& s : suites) {
                tools::ExperimentConfig cfg = base;
                cfg.suite = s;
                const tools::SuiteResult r = tools::run_suite(cfg);
                print_verdicts(r, s);
                if (!chk_out.empty()) tools::emit_report(r, stem_of(chk_out) + "." + s);
                ok = ok && r.passed();
            }
            return ok ? kExitPass : kExitFail;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
