#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "pathfree/rational.hpp"

#include <cmath>
#include <unistd.h>

namespace fs = std::filesystem;
using pathfree::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "pathfree");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pathfree_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("generate is deterministic") {
  TempDir dir;
  const auto a = call({"generate", "--model", "uniform-m", "--n", "40", "--m", "60", "--seed", "5"});
  const auto b = call({"generate", "--model", "uniform-m", "--n", "40", "--m", "60", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# model=uniform-m n=40 m=60 seed=5") != std::string::npos);

  const auto empty = call({"generate", "--model", "uniform-m", "--n", "5", "--m", "0"});
  CHECK(empty.out == "# n=5\n# model=uniform-m n=5 m=0 seed=0\n");

  const auto odd = call({"generate", "--model", "d-regular", "--n", "5", "--d", "3"});
  CHECK(odd.code == 2);
  CHECK(odd.err.find("even") != std::string::npos);

  CHECK(call({"generate", "--model", "d-regular", "--n", "6", "--d", "2", "--output", dir / "g.txt"}).code == 0);
  CHECK(slurp(dir / "g.txt").find("# n=6") == 0);
}

TEST_CASE("bins table") {
  const auto r = call({"bins", "--grid", "1..2", "1..2"});
  REQUIRE(r.code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["expected_max"] == "1");
  CHECK(rows[0]["w"] == "1");
  CHECK(rows[0]["lb_usable"].is_null());
  CHECK(rows[3]["q"] == 2);
  CHECK(rows[3]["n"] == 2);
  CHECK(rows[3]["expected_max"] == "3/2");
  CHECK(rows[3]["w"] == "3/4");

  const auto mc = call({"bins", "--grid", "3..4", "5..6", "--trials", "20000", "--seed", "3"});
  for (const auto& row : nlohmann::json::parse(mc.out)) {
    const auto exact = pathfree::Rational(row["expected_max"].get<std::string>());
    CHECK(std::fabs(row["mc_mean"].get<double>() - exact.get_d()) <= 5 * row["mc_stderr"].get<double>());
  }

  const auto refused = call({"bins", "--grid", "100..100", "100..100"});
  CHECK(refused.code == 0);
  CHECK(nlohmann::json::parse(refused.out)[0].contains("refusal"));

  CHECK(call({"bins", "--grid", "3..1", "1..2"}).code == 2);
}

TEST_CASE("check-inequalities") {
  CHECK(call({"check-inequalities", "--grid", "2..2", "2..2"}).code == 0);
  const auto bad = call({"check-inequalities", "--grid", "1..3", "1..3", "--corrupt-oracle"});
  CHECK(bad.code == 1);
  const auto json = call({"check-inequalities", "--grid", "1..6", "1..6", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(nlohmann::json::parse(json.out)["violations"] == 0);
}

TEST_CASE("colour and verify") {
  TempDir dir;
  write(dir / "empty.txt", "# n=3\n");
  auto r = call({"colour", "--input", dir / "empty.txt", "--r", "4", "--k", "5", "--output", dir / "c.txt"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["accepted"] == true);

  write(dir / "edge.txt", "0 1\n");
  r = call({"colour", "--input", dir / "edge.txt", "--r", "2", "--k", "3", "--output", dir / "c.txt"});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "c.txt") == "# n=2\n# r=2 k=3 colours_used=1\n0 1 0\n");
  CHECK(call({"verify", "--colouring", dir / "c.txt"}).code == 0);

  write(dir / "bad.txt", "0 1 0\n1 2 0\n2 3 0\n");
  r = call({"verify", "--colouring", dir / "bad.txt", "--r", "1", "--k", "4"});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["failures"].size() == 1);

  write(dir / "graph.txt", "0 1\n1 2\n2 3\n3 4\n");
  r = call({"verify", "--colouring", dir / "bad.txt", "--input", dir / "graph.txt", "--r", "1", "--k", "5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("uncoloured") != std::string::npos);
}

TEST_CASE("colour a generated graph with a report") {
  TempDir dir;
  CHECK(call({"generate", "--model", "uniform-m", "--n", "500", "--m", "700", "--seed", "1", "--output",
              dir / "g.txt"})
            .code == 0);
  const auto r = call({"colour", "--input", dir / "g.txt", "--r", "20", "--k", "40", "--seed", "1", "--output",
                       dir / "c.txt", "--report", dir / "report.json"});
  CHECK((r.code == 0 || r.code == 1));
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report.contains("verification"));
  CHECK(report["stages"].size() >= 3);
  CHECK((report["accepted"] == (r.code == 0)));
}

TEST_CASE("usage and input errors exit with 2") {
  TempDir dir;
  CHECK(call({}).code == 2);
  CHECK(call({"colour", "--input", dir / "missing.txt", "--r", "4", "--k", "5"}).code == 2);
  CHECK(call({"colour", "--input", dir / "missing.txt", "--k", "5"}).code == 2);
  write(dir / "loop.txt", "0 0\n");
  const auto r = call({"colour", "--input", dir / "loop.txt", "--r", "4", "--k", "5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(call({"colour", "--input", dir / "loop.txt", "--r", "4", "--k", "2"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("extract") {
  TempDir dir;
  call({"generate", "--model", "d-regular", "--n", "60", "--d", "4", "--seed", "2", "--output", dir / "g.txt"});
  const auto r = call({"extract", "--input", dir / "g.txt", "--r", "8", "--k", "8", "--trials", "50"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"certified\":true") != std::string::npos);
}

TEST_CASE("round overspend exits with 3") {
  TempDir dir;
  call({"generate", "--model", "uniform-m", "--n", "400", "--m", "8000", "--seed", "2", "--output", dir / "g.txt"});
  const std::vector<std::string> base{"colour", "--input", dir / "g.txt", "--r", "32", "--k", "16", "--beta0",
                                      "0.5", "--trials", "20", "--output", dir / "c.txt", "--report",
                                      dir / "r.json"};
  CHECK(call(base).code != 3);
  auto injected = base;
  injected.insert(injected.end(), {"--inject-round-overspend", "40"});
  const auto r = call(injected);
  CHECK(r.code == 3);
  CHECK(r.err.find("r rho^i / 6") != std::string::npos);
}
