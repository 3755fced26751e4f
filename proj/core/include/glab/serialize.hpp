#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "glab/basis.hpp"
#include "glab/constructions.hpp"

namespace glab {

inline constexpr const char* kSpaceSchema = "glab.space/1";

// {"space": ..., "synth": "identity"} for unit systems, {"synth": "dense", "dim": N} otherwise
nlohmann::json basis_to_json(const Basis& b);

SpacePtr space_from_json(const nlohmann::json& j);
// unit systems only; dense bases are rebuilt from a construction recipe or a synth CSV
Basis basis_from_json(const nlohmann::json& j);

// column-major: line k holds the k-th column
void write_matrix_csv(const std::string& path, const Mat& m);
Mat read_matrix_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vec& v);
Vec read_vector_csv(const std::string& path);

// l2, l1, linf, lp:P, lorentz:Q:WEIGHTFILE, weak:WEIGHTFILE
SeqNorm parse_host(const std::string& descriptor);

nlohmann::json construction_to_json(const Construction& c);
void write_witnesses_csv(const std::string& path, const Construction& c);

struct LoadedSpace {
    Basis basis;
    std::optional<Construction> construction;
};

// Reads a space-description file. A "construction" entry is rebuilt from its recipe; otherwise
// "synth" is "identity" or a CSV path relative to the JSON file.
LoadedSpace load_space(const std::string& path, const BuildOptions& opt = {});
void save_space(const std::string& path, const Construction& c);

}  // namespace glab
