#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "canon/graph_io.hpp"
#include "canon/invariant.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace canon;
using namespace canon::testing;

namespace {

const std::string kGolden = CANON_GOLDEN_DIR;

class GoldenTest : public ::testing::TestWithParam<GoldenCase> {};

std::string case_name(const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; }

GoldenRun run_args(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  GoldenRun run;
  run.exit_code = cli::run(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

// Part of the canon output after the labeling lines.
std::string form_part(const std::string& out) { return out.substr(out.find("cg 1\n")); }

}  // namespace

TEST_P(GoldenTest, MatchesExpectedAtOneAndFourWorkers) {
  const GoldenCase& c = GetParam();
  const GoldenRun serial = run_golden(c, kGolden, 1);
  const GoldenRun team = run_golden(c, kGolden, 4);
  EXPECT_EQ(serial.exit_code, c.exit_code) << serial.err;
  EXPECT_EQ(team.exit_code, c.exit_code) << team.err;
  EXPECT_EQ(comparable_output(c, serial.out), comparable_output(c, team.out));

  const std::string expected_path = golden_expected_path(kGolden, c);
  if (std::getenv("CANON_UPDATE_GOLDEN")) write_file(expected_path, serial.out);
  ASSERT_TRUE(std::filesystem::exists(expected_path)) << expected_path;
  EXPECT_EQ(serial.out, read_file(expected_path));
}

INSTANTIATE_TEST_SUITE_P(Cases, GoldenTest, ::testing::ValuesIn(load_golden_cases(kGolden)), case_name);

TEST(Cli, RelabeledCycleHasSameForm) {
  GoldenRun a = run_args({"canon", "--method", "rigidity", "--r", "2", "--input", kGolden + "/inputs/c4.cg"});
  GoldenRun b =
      run_args({"canon", "--method", "rigidity", "--r", "2", "--input", kGolden + "/inputs/c4_relabeled.cg"});
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_EQ(form_part(a.out), form_part(b.out));
}

TEST(Cli, PathMidpointRankedFirst) {
  GoldenRun run = run_args({"canon", "--method", "separator", "--invariant", "bf", "--r", "1", "--input",
                            kGolden + "/inputs/p3.cg"});
  ASSERT_EQ(run.exit_code, 0);
  EXPECT_NE(run.out.find("2 -> 1\n"), std::string::npos);
}

TEST(Cli, BfMethodMatchesOracle) {
  const std::string path = kGolden + "/inputs/tree8.cg";
  GoldenRun run = run_args({"canon", "--method", "bf", "--input", path});
  ASSERT_EQ(run.exit_code, 0);
  EXPECT_EQ(parse_cg(form_part(run.out)), apply_permutation(parse_cg(read_file(path)),
                                                            bf_canonical(parse_cg(read_file(path))).labeling));
}

TEST(Cli, IsoCollisionIsReported) {
  GoldenRun run = run_args({"iso", kGolden + "/inputs/c6.cg", kGolden + "/inputs/2k3.cg", "--invariant", "wl1",
                            "--check"});
  EXPECT_EQ(run.exit_code, 1);
  EXPECT_EQ(run.out, "non-isomorphic\n");
  EXPECT_NE(run.err.find("invariant-failure"), std::string::npos);
}

TEST(Cli, IsoMappingIsAnIsomorphism) {
  const ColoredGraph g = parse_cg(read_file(kGolden + "/inputs/tree9.cg"));
  const ColoredGraph h = parse_cg(read_file(kGolden + "/inputs/tree9_relabeled.cg"));
  GoldenRun run = run_args({"iso", kGolden + "/inputs/tree9.cg", kGolden + "/inputs/tree9_relabeled.cg",
                            "--invariant", "wl1", "--r", "1"});
  ASSERT_EQ(run.exit_code, 0);
  std::istringstream lines(run.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "isomorphic");
  std::vector<Vertex> mapping(9);
  while (std::getline(lines, line)) {
    unsigned v = 0;
    unsigned image = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%u -> %u", &v, &image), 2);
    mapping[v - 1] = image - 1;
  }
  EXPECT_EQ(apply_permutation(g, Labeling(mapping)), h);
}

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run_args({"--help"}).exit_code, 0);
  EXPECT_EQ(run_args({}).exit_code, 2);
  EXPECT_EQ(run_args({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run_args({"canon", "--input", kGolden + "/inputs/p3.cg", "--workers", "0"}).exit_code, 2);
  EXPECT_EQ(run_args({"gen", "--family", "tree", "--n", "4", "--count", "3"}).exit_code, 2);
}

TEST(Cli, CapacityMessageOnStderr) {
  GoldenRun run = run_args({"canon", "--method", "bf", "--input", kGolden + "/inputs/k12.cg", "--oracle-cap", "10"});
  EXPECT_EQ(run.exit_code, 3);
  EXPECT_TRUE(run.out.empty());
  EXPECT_NE(run.err.find("error:"), std::string::npos);
}

TEST(Cli, GenCorpusWithManifest) {
  const auto dir = std::filesystem::temp_directory_path() / "canon_gen_corpus_test";
  std::filesystem::remove_all(dir);
  GoldenRun run = run_args({"gen", "--family", "tree", "--n", "6", "--seed", "3", "--count", "4", "--out-dir",
                            dir.string()});
  ASSERT_EQ(run.exit_code, 0) << run.err;
  auto entries = parse_manifest(read_file((dir / "manifest.txt").string()));
  ASSERT_EQ(entries.size(), 4u);
  for (const auto& e : entries) {
    EXPECT_EQ(parse_cg(read_file((dir / e.path).string())), gen_family(e.family, e.params, e.seed));
  }
  EXPECT_EQ(entries.back().seed, 6u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, BenchCsvSchema) {
  GoldenRun run = run_args({"bench", "--family", "k_tree", "--k", "2", "--n", "9", "--trials", "2", "--invariant",
                            "wl1", "--r", "3"});
  ASSERT_EQ(run.exit_code, 0);
  EXPECT_EQ(run.out.substr(0, run.out.find('\n')),
            "family,n,seed,method,invariant,depth,invariant_calls,wall_ms,workers,diagnostics");
  EXPECT_NE(run.err.find("within_bound=yes"), std::string::npos);
}

TEST(Cli, DepthBound) {
  EXPECT_EQ(cli::depth_bound(1), 1u);
  EXPECT_EQ(cli::depth_bound(2), 2u);
  EXPECT_EQ(cli::depth_bound(12), 5u);
  EXPECT_EQ(cli::depth_bound(16), 5u);
  EXPECT_EQ(cli::depth_bound(17), 6u);
}
