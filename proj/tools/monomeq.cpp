// monomeq: unitary equivalence to weighted permutations from the command line.
//
// Exit codes: 0 Equivalent/success, 1 NotEquivalent, 2 Inconclusive,
// 3 invariant or commutation violation, 4 usage, 5 I/O or malformed input.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monomeq/io.hpp"
#include "monomeq/monomeq.hpp"

namespace fs = std::filesystem;
using namespace monomeq;

namespace {

enum Exit : int { kOk = 0, kNotEquivalent = 1, kInconclusive = 2, kViolation = 3, kUsage = 4, kIo = 5 };

struct TolFlags {
  std::optional<double> commute_tol;
  std::optional<double> cluster_tol;
  std::optional<double> zero_tol;

  void attach(CLI::App* app) {
    app->add_option("--commute-tol", commute_tol, "relative Frobenius tolerance for commutator tests");
    app->add_option("--cluster-tol", cluster_tol, "relative gap for eigenvalue clustering");
    app->add_option("--zero-tol", zero_tol, "threshold below which values count as zero");
  }

  ToleranceConfig resolve() const {
    const char* env = std::getenv("MONOMEQ_TOL_PROFILE");
    ToleranceConfig t = ToleranceConfig::profile(env ? env : "default");
    if (commute_tol) t.commute_tol = *commute_tol;
    if (cluster_tol) t.cluster_tol = *cluster_tol;
    if (zero_tol) t.zero_tol = *zero_tol;
    t.validate();
    return t;
  }
};

int analyze(const std::string& path, const ToleranceConfig& tol, const DecideOptions& options) {
  const Matrix a = read_matrix_file(path);
  const auto report = decide_unitary_equiv(a, tol, options);
  std::cout << to_json(report).dump(2) << '\n';
  for (const auto& d : report.diagnostics) std::cerr << "monomeq: " << d << '\n';
  switch (report.verdict) {
    case Verdict::Equivalent: return kOk;
    case Verdict::NotEquivalent: return kNotEquivalent;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int masa(const std::vector<std::string>& gen_paths, const std::string& unitary_path, const ToleranceConfig& tol) {
  std::vector<Matrix> gens;
  for (const auto& p : gen_paths) gens.push_back(read_matrix_file(p));
  const Matrix u = read_matrix_file(unitary_path);
  const auto basis = build_invariant_masa(gens, u, tol);
  auto j = to_json(basis);
  j["verified"] = verify_masa(basis, gens, u, tol);
  std::cout << j.dump(2) << '\n';
  return j["verified"].get<bool>() ? kOk : kViolation;
}

void write_bundle(const fs::path& dir, const FixtureBundle& f) {
  fs::create_directories(dir);
  write_matrix_file(dir / "P.json", f.P);
  write_matrix_file(dir / "U.json", f.U);
  write_matrix_file(dir / "A.json", f.A());
  write_json_file(dir / "expected.json", to_json(f));
}

int fixture(const std::string& name, std::size_t n, std::uint64_t seed, bool singular, const fs::path& out) {
  if (name == "quad") {
    write_bundle(out, quad_fixture());
  } else if (name == "cycle") {
    write_bundle(out, cycle_fixture(n));
  } else if (name == "random-monomial") {
    const auto inst = random_monomial_conjugate(n, seed, !singular);
    fs::create_directories(out);
    write_matrix_file(out / "P.json", inst.P);
    write_matrix_file(out / "U.json", inst.U);
    write_matrix_file(out / "A.json", inst.A);
    write_matrix_file(out / "ground_truth.json", inst.ground_truth.V);
    json expected{{"name", "random-monomial"}, {"n", n}, {"seed", seed}, {"form", to_json(inst.form)}};
    expected["verdict"] = singular ? json(nullptr) : json("Equivalent");
    write_json_file(out / "expected.json", expected);
  } else {
    std::cerr << "monomeq: unknown fixture '" << name << "' (expected cycle, quad or random-monomial)\n";
    return kUsage;
  }
  std::cerr << "monomeq: wrote fixture '" << name << "' to " << out.string() << '\n';
  return kOk;
}

int search(const SearchOptions& opt) {
  std::size_t candidates = 0;
  std::size_t records = 0;
  run_search(opt, [&](const SearchRecord& r) {
    ++records;
    if (r.classification == Classification::CandidateCounterexample) ++candidates;
    std::cout << to_json(r).dump() << '\n';
  });
  std::cerr << "monomeq: " << records << " records, " << candidates << " candidate counterexamples\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide unitary equivalence to weighted permutations and build invariant masas"};
  app.require_subcommand(1);

  TolFlags tol_flags;
  DecideOptions decide_options;

  auto* analyze_cmd = app.add_subcommand("analyze", "decide a matrix file; prints a JSON report");
  std::string analyze_path;
  analyze_cmd->add_option("file", analyze_path, "matrix JSON file")->required();
  analyze_cmd->add_option("--kernel-retries", decide_options.kernel_retries, "kernel rotations tried for singular input");
  analyze_cmd->add_option("--seed", decide_options.seed, "seed for kernel rotations");
  tol_flags.attach(analyze_cmd);

  auto* masa_cmd = app.add_subcommand("masa", "build a U-invariant masa containing the generated algebra");
  std::vector<std::string> gen_paths;
  std::string unitary_path;
  masa_cmd->add_option("--gen", gen_paths, "Hermitian generator file (repeatable)");
  masa_cmd->add_option("--unitary", unitary_path, "unitary matrix file")->required();
  tol_flags.attach(masa_cmd);

  auto* fixture_cmd = app.add_subcommand("fixture", "export a fixture as matrix files");
  std::string fixture_name;
  std::size_t fixture_n = 5;
  std::uint64_t fixture_seed = 0;
  bool fixture_singular = false;
  std::string fixture_out = ".";
  fixture_cmd->add_option("name", fixture_name, "cycle | quad | random-monomial")->required();
  fixture_cmd->add_option("--n", fixture_n, "dimension (cycle, random-monomial)")->check(CLI::PositiveNumber);
  fixture_cmd->add_option("--seed", fixture_seed, "seed (random-monomial)");
  fixture_cmd->add_flag("--singular", fixture_singular, "zero some weights (random-monomial)");
  fixture_cmd->add_option("--out", fixture_out, "output directory");

  auto* search_cmd = app.add_subcommand("search", "randomized power half-normality experiment (JSON lines)");
  SearchOptions search_opt;
  bool controls_only = false;
  search_cmd->add_option("--n", search_opt.n, "dimension")->check(CLI::Range(2, 200));
  search_cmd->add_option("--trials", search_opt.trials, "number of trials")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-power", search_opt.max_power, "highest power tested")->check(CLI::Range(2, 64));
  search_cmd->add_option("--seed", search_opt.seed, "base seed");
  search_cmd->add_option("--kernel-retries", search_opt.kernel_retries, "kernel rotations for singular samples");
  search_cmd->add_flag("--controls-only", controls_only, "emit only monomial-conjugate controls");
  tol_flags.attach(search_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const ToleranceConfig tol = tol_flags.resolve();
    if (analyze_cmd->parsed()) return analyze(analyze_path, tol, decide_options);
    if (masa_cmd->parsed()) return masa(gen_paths, unitary_path, tol);
    if (fixture_cmd->parsed()) return fixture(fixture_name, fixture_n, fixture_seed, fixture_singular, fixture_out);
    if (search_cmd->parsed()) {
      search_opt.tol = tol;
      search_opt.include_candidates = !controls_only;
      return search(search_opt);
    }
  } catch (const ParseError& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kIo;
  } catch (const DimensionMismatch& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kIo;
  } catch (const NotCommuting& e) {
    std::cerr << "monomeq: NotCommuting: " << e.what() << '\n';
    return kViolation;
  } catch (const InvariantViolation& e) {
    std::cerr << "monomeq: InvariantViolation: " << e.what() << '\n';
    return kViolation;
  } catch (const AmbiguousMatch& e) {
    std::cerr << "monomeq: AmbiguousMatch: " << e.what() << '\n';
    return kViolation;
  } catch (const NotHermitian& e) {
    std::cerr << "monomeq: NotHermitian: " << e.what() << '\n';
    return kViolation;
  } catch (const NotUnitary& e) {
    std::cerr << "monomeq: NotUnitary: " << e.what() << '\n';
    return kViolation;
  } catch (const PreconditionViolation& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "monomeq: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}
