#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "asmidx/chem_io.hpp"
#include "asmidx/fixtures.hpp"
#include "asmidx/pathway.hpp"

namespace asmidx {
namespace {

// Ethanol with every hydrogen written out.
constexpr const char *kEthanol = R"(ethanol
  hand written

  9  8  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    1.5000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    2.2500    1.2990    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0
   -0.5000    0.8000    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0
   -0.5000   -0.8000    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0
   -0.9000    0.0000    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0
    1.9000   -0.8000    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0
    1.9000    0.8000   -0.5000 H   0  0  0  0  0  0  0  0  0  0  0  0
    3.1000    1.2000    0.0000 H   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  1  0
  2  3  1  0
  1  4  1  0
  1  5  1  0
  1  6  1  0
  2  7  1  0
  2  8  1  0
  3  9  1  0
M  END
)";

constexpr const char *kWater = R"(water


  1  0  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0
M  END
)";

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Molfile, StripsHydrogens) {
  const auto rec = parse_molfile(kEthanol);
  EXPECT_EQ(rec.name, "ethanol");
  EXPECT_EQ(rec.graph.vertex_count(), 3u);
  ASSERT_EQ(rec.graph.edge_count(), 2u);
  EXPECT_EQ(rec.graph.atom_label(rec.graph.bond(1).b).str(), "O");
}

TEST(Molfile, BenzoicAcidHasNineBonds) {
  const auto rec = parse_molfile(
      slurp(std::filesystem::path(ASMIDX_DATA_DIR) / "kekule/drugs/benzoic_acid.mol"));
  EXPECT_EQ(rec.graph.vertex_count(), 9u);
  EXPECT_EQ(rec.graph.edge_count(), 9u);
}

TEST(Molfile, ShortAtomTableIsAnError) {
  std::string text = kWater;
  text.replace(text.find("  1  0  0"), 9, "  5  0  0");
  EXPECT_THROW(parse_molfile(text), ParseError);
}

TEST(Molfile, RejectsV3000) {
  std::string text = kWater;
  text.replace(text.find("V2000"), 5, "V3000");
  EXPECT_THROW(parse_molfile(text), ParseError);
}

TEST(Molfile, ChargesAreReportedNotKept) {
  std::string text = kWater;
  text.replace(text.find("M  END"), 6, "M  CHG  1   1  -1\nM  END");
  const auto rec = parse_molfile(text);
  ASSERT_EQ(rec.warnings.size(), 1u);
  EXPECT_NE(rec.warnings[0].find("charge"), std::string::npos);
}

TEST(Sdf, ReadsRecordsInOrder) {
  const std::string one = std::string(kEthanol) + "$$$$\n";
  const auto res = parse_sdf(one + one + one);
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_EQ(res.records[2].record, 2u);
  EXPECT_TRUE(res.diagnostics.empty());
}

TEST(Sdf, SkipsMalformedRecord) {
  const std::string good = std::string(kEthanol) + "$$$$\n";
  const auto res = parse_sdf(good + "broken\n\n\n  x  y\n$$$$\n" + good);
  EXPECT_EQ(res.records.size(), 2u);
  ASSERT_EQ(res.diagnostics.size(), 1u);
  EXPECT_EQ(res.diagnostics[0].record, 1u);
}

TEST(Sdf, AcceptsMissingFinalSeparator) {
  EXPECT_EQ(parse_sdf(kEthanol).records.size(), 1u);
}

TEST(Sdf, EmptyInputWarns) {
  const auto res = parse_sdf("");
  EXPECT_TRUE(res.records.empty());
  EXPECT_FALSE(res.warnings.empty());
}

TEST(Edgelist, ChainOfFourBonds) {
  const auto rec = parse_edgelist(
      "mgf 1\nname butane-ish\n# comment\natom 0 C\natom 1 C\natom 2 C\n"
      "atom 3 C\natom 4 C\nbond 0 1 1\nbond 1 2 1\nbond 2 3 1\nbond 3 4 1\n");
  EXPECT_EQ(rec.name, "butane-ish");
  EXPECT_EQ(rec.graph.edge_count(), 4u);
}

TEST(Edgelist, Errors) {
  EXPECT_THROW(parse_edgelist("mgf 1\natom 0 C\nbond 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_edgelist("mgf 1\natom 0 C\natom 0 N\n"), ParseError);
  EXPECT_THROW(parse_edgelist("mgf 1\natom 0 C\nbond 0 1 1\n"), ParseError);
  EXPECT_THROW(parse_edgelist("atom 0 C\n"), ParseError);
  EXPECT_THROW(parse_edgelist("mgf 1\nfoo\n"), ParseError);
  try {
    parse_edgelist("mgf 1\natom 0 C\natom 1 C\nbond 0 1 1\nbond 1 0 2\n");
    FAIL() << "duplicate bond accepted";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(Edgelist, AtomsOnlyGivesEmptyGraph) {
  const auto rec = parse_edgelist("mgf 1\natom 0 C\natom 1 O\n");
  EXPECT_EQ(rec.graph.vertex_count(), 2u);
  EXPECT_EQ(rec.graph.edge_count(), 0u);
}

TEST(Edgelist, RoundTrip) {
  MoleculeRecord rec;
  rec.name = "ring";
  rec.graph = fixtures::ring(5, "N", "2");
  const auto back = parse_edgelist(write_edgelist(rec));
  EXPECT_EQ(back.name, "ring");
  EXPECT_EQ(write_edgelist(back), write_edgelist(rec));
}

TEST(ReadMolecules, DispatchesOnExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "asmidx_chem_io";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "x.sdf") << kEthanol << "$$$$\n" << kWater << "$$$$\n";
  std::ofstream(dir / "x.txt") << "nothing";
  EXPECT_EQ(read_molecules(dir / "x.sdf").size(), 2u);
  EXPECT_THROW(read_molecules(dir / "x.txt"), ParseError);
  EXPECT_THROW(read_molecules(dir / "missing.mol"), ParseError);
  std::filesystem::remove_all(dir);
}

TEST(Report, JsonRoundTrip) {
  ResultReport r;
  r.name = "benzoic acid";
  r.assembly_index = 6;
  r.bond_count = 9;
  r.duplicate_sum = 2;
  r.record_hash = "abc";
  r.pathway = std::vector<ReportStep>{{{0, 1}, {2}, {3}, 3}};
  const auto line = write_report_json(r);
  EXPECT_NE(line.find("\"assembly_index\":6"), std::string::npos);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto back = read_report_json(line);
  EXPECT_EQ(back.assembly_index, 6u);
  EXPECT_EQ(back.name, r.name);
  ASSERT_TRUE(back.pathway.has_value());
  EXPECT_EQ(back.pathway->at(0).left, (std::vector<EdgeId>{0, 1}));
  EXPECT_THROW(read_report_json("{\"schema\":\"other\"}"), ParseError);
}

TEST(Dot, BuildingBlocksOnlyWhenNoSteps) {
  const auto g = fixtures::chain(3);
  const auto space = build_assembly_space(g, {});
  const auto dot = write_assembly_dot(space);
  EXPECT_EQ(space.joined_nodes(), 0u);
  EXPECT_NE(dot.find("box"), std::string::npos);
  EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST(Dot, FragmentUsedTwiceGivesParallelArcs) {
  AssemblySpace space;
  space.nodes = {{1, true, "C-C"}, {2, false, "CCC"}};
  space.arcs = {{0, 1}, {0, 1}};
  const auto dot = write_assembly_dot(space);
  const auto first = dot.find("n0 -> n1");
  ASSERT_NE(first, std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1", first + 1), std::string::npos);
}

TEST(Dot, CycleIsRejected) {
  AssemblySpace space;
  space.nodes = {{2, false, "a"}, {2, false, "b"}};
  space.arcs = {{0, 1}, {1, 0}};
  EXPECT_THROW(write_assembly_dot(space), ContractViolation);
}

}  // namespace
}  // namespace asmidx
