#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "glab/random.hpp"
#include "glab/serialize.hpp"

using namespace glab;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "glab_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Serialize, SeqNormJsonRoundTrip) {
    std::vector<double> w{1.0, 0.5, 0.25};
    for (const SeqNorm& s : {SeqNorm::lp(1.5, 3), SeqNorm::lorentz(2.0, Weight(w)), SeqNorm::weak_lorentz(Weight(w))}) {
        const SeqNorm t = SeqNorm::from_json(s.to_json());
        const std::vector<double> f{0.3, -2.0, 1.0};
        EXPECT_EQ(t.eval(f), s.eval(f));
    }
}

TEST(Serialize, MatrixCsvIsColumnMajorAndExact) {
    Mat m(2, 3);
    m << 1, 2, 3, 4, 5, 6.123456789012345;
    const auto p = scratch("m.csv");
    write_matrix_csv(p.string(), m);
    std::ifstream in(p);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "1,4");
    EXPECT_EQ(read_matrix_csv(p.string()), m);
}

TEST(Serialize, ConstructionRecipeRoundTrip) {
    const Construction c = build_thmA(SeqNorm::lp(2.0, 1), 3);
    const auto p = scratch("thmA.json");
    save_space(p.string(), c);
    const LoadedSpace ls = load_space(p.string());
    ASSERT_TRUE(ls.construction.has_value());
    EXPECT_EQ(ls.basis.dim(), 28u);
    Rng rng = make_rng(1, 0);
    std::normal_distribution<double> g;
    Vec f(28);
    for (auto& x : f) x = g(rng);
    EXPECT_EQ(ls.basis.space().norm(f), c.space->norm(f));
}

TEST(Serialize, DenseSynthesisFromCsv) {
    Mat m(2, 2);
    m << 2, 1, 0, 1;
    write_matrix_csv(scratch("synth.csv").string(), m);
    const nlohmann::json j{{"space", {{"kind", "sequence"}, {"norm", SeqNorm::lp(2.0, 2).to_json()}}}, {"synth", "synth.csv"}};
    std::ofstream(scratch("dense.json")) << j.dump();
    const LoadedSpace ls = load_space(scratch("dense.json").string());
    EXPECT_EQ(ls.basis.synth(), m);
    EXPECT_FALSE(ls.construction.has_value());
}

TEST(Serialize, HostDescriptors) {
    EXPECT_EQ(parse_host("l2").resized(4).eval(std::vector<double>{3, 4, 0, 0}), 5.0);
    EXPECT_EQ(parse_host("l1").resized(2).eval(std::vector<double>{3, -4}), 7.0);
    EXPECT_THROW(parse_host("banana"), std::invalid_argument);
}

TEST(Serialize, WitnessCsvHeader) {
    const Construction c = build_thmA(SeqNorm::lp(2.0, 1), 2);
    const auto p = scratch("w.csv");
    write_witnesses_csv(p.string(), c);
    std::ifstream in(p);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "witness,label,kind,index,value");
}
