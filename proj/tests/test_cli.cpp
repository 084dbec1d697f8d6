#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kent/matrix_io.hpp"
#include "kent/states.hpp"

using namespace kent;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(KENT_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "kent_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("state subcommand prints the d24 amplitudes") {
  for (const char* args : {"state --name d24 --qubits 4", "state --name d24"}) {
    const RunResult r = run_cli(args);
    CHECK(r.exit_code == 0);
    std::istringstream in(r.output);
    const Vector psi = read_vector(in);
    REQUIRE(psi.size() == 16);
    CHECK(std::abs(psi(3).real() - 1.0 / std::sqrt(6.0)) < 1e-12);
  }
  // ghz has no natural size; asking without --qubits is a domain error
  CHECK(run_cli("state --name ghz").exit_code == 1);
}

TEST_CASE("gen-db is bit-reproducible") {
  const fs::path dir = scratch_dir();
  const fs::path a = dir / "a.kent";
  const fs::path b = dir / "b.kent";
  const std::string flags = "gen-db --qubits 2 --count 5 --seed 7 --restarts 3 --out ";
  CHECK(run_cli(flags + a.string()).exit_code == 0);
  CHECK(run_cli(flags + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("g-eval prints the value and the oracle for a stored Bell projector") {
  const fs::path dir = scratch_dir();
  const fs::path mat = dir / "bell.mat";
  const Vector bell = named_pure("bell", 2);
  write_matrix_file(mat.string(), bell * bell.adjoint());

  const RunResult r = run_cli("g-eval --in " + mat.string() + " --partition \"1|2\" --oracle");
  CHECK(r.exit_code == 0);
  double g = -1.0, oracle = -1.0;
  std::sscanf(r.output.c_str(), "g=%lf", &g);
  const auto pos = r.output.find("oracle=");
  REQUIRE(pos != std::string::npos);
  std::sscanf(r.output.c_str() + pos, "oracle=%lf", &oracle);
  CHECK(std::abs(g - 0.5) < 1e-6);
  CHECK(std::abs(oracle - 0.5) < 1e-9);
}

TEST_CASE("measure reports an all-zero tuple on white noise") {
  const fs::path dir = scratch_dir();
  const fs::path db = dir / "m.kent";
  REQUIRE(run_cli("gen-db --qubits 2 --count 6 --seed 3 --restarts 3 --out " + db.string())
              .exit_code == 0);
  const RunResult r =
      run_cli("measure --db " + db.string() + " --state family:werner,n=2,p=0 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("value=0 ") != std::string::npos);
  CHECK(r.output.find("\"value\":0.0") != std::string::npos);
}

TEST_CASE("scan locates the seeded Werner threshold from the shell") {
  const fs::path dir = scratch_dir();
  const fs::path db = dir / "s.kent";
  REQUIRE(run_cli("gen-db --qubits 2 --count 5 --seed 11 --restarts 3 --augment singlet --out " +
                  db.string())
              .exit_code == 0);
  const RunResult r = run_cli("scan --db " + db.string() +
                              " --family werner --qubits 2 --k 2 --ptol 1e-5");
  CHECK(r.exit_code == 0);
  double lo = -1.0, hi = -1.0;
  const auto pos = r.output.find('[');
  REQUIRE(pos != std::string::npos);
  std::sscanf(r.output.c_str() + pos, "[%lf, %lf]", &lo, &hi);
  CHECK(std::abs(lo - 1.0 / 3.0) < 1e-4);
  CHECK(std::abs(hi - 1.0 / 3.0) < 1e-4);
}

TEST_CASE("curve CSV files are byte-identical across runs") {
  const fs::path dir = scratch_dir();
  const fs::path db = dir / "c.kent";
  REQUIRE(run_cli("gen-db --qubits 2 --count 5 --seed 5 --restarts 3 --augment singlet --out " +
                  db.string())
              .exit_code == 0);
  const fs::path csv1 = dir / "c1.csv";
  const fs::path csv2 = dir / "c2.csv";
  const std::string flags =
      "curve --db " + db.string() + " --family werner --qubits 2 --grid 0:1:0.1 --out ";
  CHECK(run_cli(flags + csv1.string()).exit_code == 0);
  CHECK(run_cli(flags + csv2.string()).exit_code == 0);
  const std::string content = slurp(csv1);
  CHECK(content == slurp(csv2));
  CHECK(content.rfind("p,k=2\n", 0) == 0);
  CHECK(std::count(content.begin(), content.end(), '\n') == 12);
}

TEST_CASE("measure accepts a sub-partition context") {
  const fs::path dir = scratch_dir();
  const fs::path db = dir / "sp.kent";
  REQUIRE(run_cli("gen-db --qubits 3 --count 4 --seed 19 --restarts 3 --out " + db.string())
              .exit_code == 0);
  const RunResult r = run_cli("measure --db " + db.string() +
                              " --state family:ghz,n=3,p=0 --partition \"12|3\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("context=12|3") != std::string::npos);
}

TEST_CASE("neg-bench prints the agreement table") {
  const fs::path dir = scratch_dir();
  const fs::path db = dir / "nb.kent";
  REQUIRE(run_cli("gen-db --qubits 2 --count 40 --seed 13 --restarts 4 --out " + db.string())
              .exit_code == 0);
  const RunResult r = run_cli("neg-bench --db " + db.string() + " --samples 25 --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("detection error (%)") != std::string::npos);
  CHECK(r.output.find("disagreements=") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage and domain errors") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("measure --db missing.kent --state family:werner,n=2,p=0").exit_code == 1);
  CHECK(run_cli("state --name nonexistent --qubits 2").exit_code == 1);
  const RunResult usage = run_cli("gen-db --qubits 2");
  CHECK(usage.exit_code == 2);
}
