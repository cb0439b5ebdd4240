#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "monomeq/io.hpp"
#include "monomeq/monomeq.hpp"

using namespace monomeq;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MONOMEQ_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("monomeq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, QuadFixtureAnalyzesAsNotEquivalent) {
  ASSERT_EQ(run("fixture quad --out " + path("quad")).exit_code, 0);
  for (const char* f : {"P.json", "U.json", "A.json", "expected.json"}) EXPECT_TRUE(fs::exists(dir_ / "quad" / f)) << f;
  const auto r = run("analyze " + path("quad/A.json"));
  EXPECT_EQ(r.exit_code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "NotEquivalent");
  EXPECT_EQ(j["first_failing_k"], 2);
  EXPECT_EQ(j["half_normal"], true);
  EXPECT_LE(j["commutator_norm"].get<double>(), 1e-10);
  EXPECT_EQ(read_matrix_file(dir_ / "quad" / "A.json"), quad_fixture().A());
}

TEST_F(CliTest, CycleFixtureRecordsExpectation) {
  ASSERT_EQ(run("fixture cycle --n 5 --out " + path("cycle")).exit_code, 0);
  const json e = json::parse(read_text_file(dir_ / "cycle" / "expected.json"));
  EXPECT_EQ(e["first_failing_k"], 4);
  EXPECT_EQ(e["n"], 5);
  EXPECT_EQ(read_matrix_file(dir_ / "cycle" / "U.json"), cycle_fixture(5).U);
}

TEST_F(CliTest, RandomMonomialExportIsEquivalentWithWitness) {
  ASSERT_EQ(run("fixture random-monomial --n 6 --seed 7 --out " + path("r")).exit_code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "r" / "ground_truth.json"));
  const auto r = run("analyze " + path("r/A.json"));
  EXPECT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "Equivalent");
  ASSERT_TRUE(j["witness"].is_object());
  EXPECT_EQ(matrix_from_json(j["witness"]["V"]).rows(), 6u);
}

TEST_F(CliTest, RandomMonomialExportIsDeterministic) {
  ASSERT_EQ(run("fixture random-monomial --n 6 --seed 7 --out " + path("a")).exit_code, 0);
  ASSERT_EQ(run("fixture random-monomial --n 6 --seed 7 --out " + path("b")).exit_code, 0);
  EXPECT_EQ(read_text_file(dir_ / "a" / "A.json"), read_text_file(dir_ / "b" / "A.json"));
}

TEST_F(CliTest, AnalyzeMatchesInMemoryBitForBit) {
  ASSERT_EQ(run("fixture random-monomial --n 5 --seed 11 --out " + path("r")).exit_code, 0);
  const auto r = run("analyze " + path("r/A.json"));
  const Matrix a = read_matrix_file(dir_ / "r" / "A.json");
  EXPECT_EQ(a, random_monomial_conjugate(5, 11, true).A);
  EXPECT_EQ(json::parse(r.out), to_json(decide_unitary_equiv(a)));
}

TEST_F(CliTest, IdentityIsEquivalent) {
  write_matrix_file(dir_ / "id.json", Matrix::identity(3));
  EXPECT_EQ(run("analyze " + path("id.json")).exit_code, 0);
}

TEST_F(CliTest, MasaDiagonalGeneratorWithCycle) {
  write_matrix_file(dir_ / "d.json", Matrix::diagonal(std::vector<double>{1, 2, 3}));
  write_matrix_file(dir_ / "c.json", cycle_matrix(3));
  const auto r = run("masa --gen " + path("d.json") + " --unitary " + path("c.json"));
  EXPECT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verified"], true);
  const Matrix v = matrix_from_json(j["V"]);
  // V is the identity up to column order and phases
  for (std::size_t c = 0; c < 3; ++c) {
    double biggest = 0;
    for (std::size_t i = 0; i < 3; ++i) biggest = std::max(biggest, std::abs(v(i, c)));
    EXPECT_NEAR(biggest, 1.0, 1e-12);
  }
}

TEST_F(CliTest, MasaScalarGeneratorAnyUnitary) {
  write_matrix_file(dir_ / "i.json", Matrix::identity(4));
  write_matrix_file(dir_ / "u.json", random_unitary(4, 3));
  const auto r = run("masa --gen " + path("i.json") + " --unitary " + path("u.json"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["verified"], true);
}

TEST_F(CliTest, MasaNonCommutingGeneratorsExitThree) {
  write_matrix_file(dir_ / "a.json", Matrix{{1, 0}, {0, 2}});
  write_matrix_file(dir_ / "b.json", Matrix{{0, 1}, {1, 0}});
  write_matrix_file(dir_ / "u.json", Matrix::identity(2));
  EXPECT_EQ(run("masa --gen " + path("a.json") + " --gen " + path("b.json") + " --unitary " + path("u.json")).exit_code,
            3);
}

TEST_F(CliTest, MasaNonInvariantAlgebraExitThree) {
  const auto f = cycle_fixture(5);
  write_matrix_file(dir_ / "p.json", f.P);
  write_matrix_file(dir_ / "u.json", f.U);
  for (std::size_t k = 1; k <= 3; ++k) {
    // generators E_11 .. E_44 are not U-invariant as an algebra
    write_matrix_file(dir_ / ("e" + std::to_string(k) + ".json"), Matrix::unit(5, k, k));
  }
  const auto r = run("masa --gen " + path("p.json") + " --gen " + path("e1.json") + " --gen " + path("e2.json") +
                     " --gen " + path("e3.json") + " --unitary " + path("u.json"));
  EXPECT_EQ(r.exit_code, 3);
}

TEST_F(CliTest, MalformedInputExitFive) {
  {
    std::ofstream(dir_ / "bad.json") << "{\"n\": 2, \"entries\": [[[1,0]]]}";
  }
  EXPECT_EQ(run("analyze " + path("bad.json")).exit_code, 5);
  {
    std::ofstream(dir_ / "junk.json") << "not json at all";
  }
  EXPECT_EQ(run("analyze " + path("junk.json")).exit_code, 5);
  EXPECT_EQ(run("analyze " + path("missing.json")).exit_code, 5);
}

TEST_F(CliTest, UsageErrorsExitFour) {
  EXPECT_EQ(run("").exit_code, 4);
  EXPECT_EQ(run("analyze").exit_code, 4);
  EXPECT_EQ(run("frobnicate").exit_code, 4);
  EXPECT_EQ(run("fixture nosuch --out " + path("x")).exit_code, 4);
  EXPECT_EQ(run("fixture cycle --n 2 --out " + path("x")).exit_code, 4);
  EXPECT_EQ(run("search --n 1").exit_code, 4);
  EXPECT_EQ(run("search --max-power 1").exit_code, 4);
  EXPECT_EQ(run("analyze x.json --commute-tol -1").exit_code, 4);
}

TEST_F(CliTest, ToleranceProfileFromEnvironment) {
  write_matrix_file(dir_ / "id.json", Matrix::identity(2));
  const std::string cmd = "MONOMEQ_TOL_PROFILE=strict " + std::string(MONOMEQ_CLI_PATH) + " analyze " + path("id.json");
  EXPECT_EQ(std::system((cmd + " >/dev/null 2>&1").c_str()), 0);
  const std::string bad = "MONOMEQ_TOL_PROFILE=bogus " + std::string(MONOMEQ_CLI_PATH) + " analyze " + path("id.json");
  EXPECT_NE(std::system((bad + " >/dev/null 2>&1").c_str()), 0);
}

TEST_F(CliTest, SearchIsDeterministicJsonLines) {
  const auto a = run("search --n 3 --trials 5 --seed 4");
  const auto b = run("search --n 3 --trials 5 --seed 4");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    EXPECT_TRUE(j.contains("classification"));
    ++count;
  }
  EXPECT_EQ(count, 10u);
  const auto c = run("search --n 3 --trials 5 --seed 4 --controls-only");
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 5);
}
