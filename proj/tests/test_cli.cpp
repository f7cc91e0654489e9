#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" KIGN_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kignorance_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("price --bogus").code == 2);
  CHECK(run("price --a 2 --b 1").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("solve-pde --output /nonexistent-dir/out.csv").code == 3);
  CHECK(run("price --config /nonexistent-dir/cfg").code == 3);
}

TEST_CASE("price CSV") {
  const auto r = run("price --format csv --a 0.9 --b 1.1 --k 0.2 --sigma 0.2 --mu 0.05");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a_B", "b_B", "c", "k", "t", "b_t", "upper", "lower", "k0_price",
                                            "discount_factor"});
  const double upper = std::stod(rows[1][6]), lower = std::stod(rows[1][7]), mid = std::stod(rows[1][8]);
  CHECK(lower <= mid);
  CHECK(mid <= upper);
  CHECK(std::stod(rows[1][9]) == 1.0);
}

TEST_CASE("path-demo sign column and determinism") {
  const auto a = run("path-demo --format csv --steps 400 --seed 11");
  const auto b = run("path-demo --format csv --steps 400 --seed 11");
  const auto c = run("path-demo --format csv --steps 400 --seed 12");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 401);
  CHECK(rows[0] == std::vector<std::string>{"t", "B_t", "Z_t", "sign"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK((rows[i][3] == "-1" || rows[i][3] == "0"));
}

TEST_CASE("seed from the environment, flags win") {
  const auto env = run("path-demo --steps 50", "KIGNORANCE_SEED=11");
  CHECK(env.out == run("path-demo --steps 50 --seed 11").out);
  CHECK(run("path-demo --steps 50 --seed 12", "KIGNORANCE_SEED=11").out == run("path-demo --steps 50 --seed 12").out);
}

TEST_CASE("config file supplies defaults") {
  const auto cfg = scratch("demo.cfg");
  {
    std::ofstream f(cfg);
    f << "# comment\nseed = 11\nsteps=50\n";
  }
  const auto from_file = run("path-demo --config " + cfg.string());
  CHECK(from_file.code == 0);
  CHECK(from_file.out == run("path-demo --steps 50 --seed 11").out);
  CHECK(run("path-demo --config " + cfg.string() + " --seed 12").out == run("path-demo --steps 50 --seed 12").out);
}

TEST_CASE("output file") {
  const auto path = scratch("pde.csv");
  std::filesystem::remove(path);
  REQUIRE(run("solve-pde --terminal quadratic --k 0.5 --nx 201 --nt 200 --stride 100 --output " + path.string()).code ==
          0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto rows = parse_csv(ss.str());
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "u", "w"});
  CHECK(rows.size() == 1 + 3 * 201);
}

TEST_CASE("simulate writes per-path records") {
  const auto path = scratch("sim.csv");
  const auto r = run("simulate --paths 100 --steps 20 --output " + path.string());
  REQUIRE(r.code == 0);
  CHECK(!r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto rows = parse_csv(ss.str());
  CHECK(rows[0] == std::vector<std::string>{"path", "B_T", "L_T", "weight"});
  CHECK(rows.size() == 101);
}

TEST_CASE("verify reports and exits 0 on success") {
  const auto r = run("verify --suite density --quick");
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] density/") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

}
