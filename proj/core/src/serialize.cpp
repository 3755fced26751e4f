#include "glab/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace glab {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        row.push_back(v);
    }
    return row;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(parse_row(line));
    }
    return rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::vector<double> read_weight_file(const std::string& path) {
    std::vector<double> w;
    for (const auto& row : read_rows(path)) w.insert(w.end(), row.begin(), row.end());
    return w;
}

}  // namespace

nlohmann::json basis_to_json(const Basis& b) {
    nlohmann::json j{{"space", b.space().to_json()}};
    if (b.is_unit()) {
        j["synth"] = "identity";
    } else {
        j["synth"] = "dense";
        j["dim"] = b.dim();
    }
    return j;
}

SpacePtr space_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "sequence") return std::make_shared<SequenceSpace>(SeqNorm::from_json(j.at("norm")));
    if (kind == "block_span")
        return std::make_shared<BlockSpanSpace>(SeqNorm::from_json(j.at("host")), OrderedPartition::from_json(j.at("partition")));
    if (kind == "direct_sum") return std::make_shared<DirectSumSpace>(space_from_json(j.at("left")), space_from_json(j.at("right")));
    if (kind == "dkk")
        return std::make_shared<DkkSpace>(basis_from_json(j.at("base")), SeqNorm::from_json(j.at("host")),
                                          OrderedPartition::from_json(j.at("partition")));
    throw std::invalid_argument("space kind cannot be rebuilt from JSON alone: " + kind);
}

Basis basis_from_json(const nlohmann::json& j) {
    if (j.at("synth") != "identity") throw std::invalid_argument("only unit systems are described inline");
    return Basis::unit(space_from_json(j.at("space")));
}

void write_matrix_csv(const std::string& path, const Mat& m) {
    auto out = open_out(path);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) out << (r ? "," : "") << format_double(m(r, c));
        out << '\n';
    }
}

Mat read_matrix_csv(const std::string& path) {
    const auto rows = read_rows(path);
    if (rows.empty()) throw std::runtime_error("empty matrix file " + path);
    const auto n = static_cast<Eigen::Index>(rows.front().size());
    Mat m(n, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
        if (static_cast<Eigen::Index>(rows[c].size()) != n) throw std::runtime_error("ragged matrix file " + path);
        for (Eigen::Index r = 0; r < n; ++r) m(r, static_cast<Eigen::Index>(c)) = rows[c][static_cast<std::size_t>(r)];
    }
    return m;
}

void write_vector_csv(const std::string& path, const Vec& v) {
    auto out = open_out(path);
    for (double x : v) out << format_double(x) << '\n';
}

Vec read_vector_csv(const std::string& path) {
    const auto values = read_weight_file(path);
    return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

SeqNorm parse_host(const std::string& d) {
    std::vector<std::string> parts;
    std::stringstream ss(d);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.empty()) throw std::invalid_argument("empty host descriptor");
    const std::string& k = parts[0];
    if (k == "l2") return SeqNorm::lp(2.0, 1);
    if (k == "l1") return SeqNorm::lp(1.0, 1);
    if (k == "linf") return SeqNorm::lp(std::numeric_limits<double>::infinity(), 1);
    if (k == "lp" && parts.size() == 2) return SeqNorm::lp(std::stod(parts[1]), 1);
    if (k == "lorentz" && parts.size() == 3) return SeqNorm::lorentz(std::stod(parts[1]), Weight(read_weight_file(parts[2])));
    if (k == "weak" && parts.size() == 2) return SeqNorm::weak_lorentz(Weight(read_weight_file(parts[1])));
    throw std::invalid_argument("unrecognised host descriptor: " + d);
}

nlohmann::json construction_to_json(const Construction& c) {
    return {{"schema", kSpaceSchema},
            {"construction", {{"name", c.name}, {"host", c.meta.at("host")}, {"levels", c.meta.at("levels")}}},
            {"dim", c.basis.dim()},
            {"meta", c.meta},
            {"warnings", c.warnings},
            {"space", c.space->to_json()},
            {"synth", "identity"}};
}

void write_witnesses_csv(const std::string& path, const Construction& c) {
    auto out = open_out(path);
    out << "witness,label,kind,index,value\n";
    for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
        const auto& w = c.witnesses[i];
        for (Eigen::Index k = 0; k < w.f.size(); ++k)
            if (w.f[k] != 0.0) out << i << ',' << w.label << ",f," << k << ',' << format_double(w.f[k]) << '\n';
        for (std::size_t k : w.set) out << i << ',' << w.label << ",set," << k << ",1\n";
    }
}

void save_space(const std::string& path, const Construction& c) {
    auto out = open_out(path);
    out << construction_to_json(c).dump(1) << '\n';
}

LoadedSpace load_space(const std::string& path, const BuildOptions& opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("construction")) {
        const auto& r = j.at("construction");
        Construction c = build_named(r.at("name").get<std::string>(), SeqNorm::from_json(r.at("host")),
                                     r.at("levels").get<std::size_t>(), opt);
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != c.basis.dim())
            throw std::runtime_error("rebuilt construction has a different dimension than recorded");
        Basis b = c.basis;
        return {std::move(b), std::move(c)};
    }
    SpacePtr space = space_from_json(j.at("space"));
    const std::string synth = j.value("synth", std::string("identity"));
    if (synth == "identity") return {Basis::unit(space), std::nullopt};
    const std::filesystem::path csv = std::filesystem::path(path).parent_path() / synth;
    Mat m = read_matrix_csv(csv.string());
    if (static_cast<std::size_t>(m.rows()) != space->dim() || m.rows() != m.cols())
        throw std::runtime_error("synthesis matrix does not match the space dimension");
    return {Basis::from_synthesis(space, std::move(m)), std::nullopt};
}

}  // namespace glab
