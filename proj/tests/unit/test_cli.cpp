#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "sepfp/cli.hpp"

using namespace sepfp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Workdir {
 public:
  Workdir() : path_(fs::temp_directory_path() / ("sepfp_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const char* isotropic = R"({"M": [[0.6, 0, 0], [0, 0.6, 0], [0, 0, 0.6]], "v": [0.3, -0.2, 0.5]})";
const char* distinct = R"({"M": [[1, 0, 0], [0, 2, 0], [0, 0, 3]], "v": [0, 0, 0]})";
const char* nilpotent = R"({"M": [[0, 1, 0], [0, 0, 1], [0, 0, 0]], "v": [0, 0, 0]})";

}  // namespace

TEST_CASE("charts list") {
  const Run j = run({"charts", "list"});
  CHECK(j.code == 0);
  const json list = json::parse(j.out);
  REQUIRE(list.size() == 11);
  CHECK(list[4]["name"] == "spherical");
  CHECK(list[9]["parameters"] == json::array({"k"}));
  const Run c = run({"charts", "list", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 12);
  CHECK(c.out.rfind("id,name,split_class,parameters,range\n", 0) == 0);
}

TEST_CASE("classify exit codes") {
  Workdir dir;
  const Run ok = run({"classify", "--input", dir.file("d.json", distinct)});
  CHECK(ok.code == exit_ok);
  CHECK(json::parse(ok.out)["case"] == "SymmetricDistinct");
  const Run nil = run({"classify", "--input", dir.file("n.json", nilpotent)});
  CHECK(nil.code == exit_not_separable);
  CHECK(json::parse(nil.out)["case"] == "NotSeparable");
  CHECK(run({"classify", "--input", dir.file("bad.json", "{\"M\": [[1, 0")}).code == exit_input_error);
  CHECK(run({"classify", "--input", dir.file("v.json", R"({"M": [[1,0,0],[0,1,0],[0,0,1]]})")}).code ==
        exit_input_error);
  CHECK(run({"classify", "--input", dir.path("missing.json")}).code == exit_input_error);
  CHECK(run({"classify", "--input", dir.file("t.json", distinct), "--tol", "-1"}).code == exit_input_error);
  CHECK(run({"classify"}).code == exit_input_error);
  CHECK(run({"frobnicate"}).code == exit_input_error);
}

TEST_CASE("solve and verify") {
  Workdir dir;
  const std::string drift = dir.file("iso.json", isotropic);
  const std::string manifest = dir.path("m.json");
  const Run solved = run({"solve", "--input", drift, "--chart", "spherical", "--lambda", "0.5,-2,-1", "--seed", "3",
                          "--manifest", manifest});
  REQUIRE(solved.code == exit_ok);
  const auto rows = csv_rows(solved.out);
  REQUIRE(rows.size() == 20);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 9);
    CHECK(r[8] <= 5e-4);
  }

  CHECK(run({"verify", "--input", manifest}).code == exit_ok);

  json m = json::parse(slurp(manifest));
  CHECK(m["points"].size() == 20);
  json tampered = m;
  tampered["request"]["lambda"][0] = 0.55;
  const Run bad = run({"verify", "--input", dir.file("tampered.json", tampered.dump())});
  CHECK(bad.code == exit_verification_failed);
  CHECK(json::parse(bad.out)["consistent"] == false);

  json empty = m;
  empty["points"] = json::array();
  CHECK(run({"verify", "--input", dir.file("empty.json", empty.dump())}).code == exit_input_error);
  json old = m;
  old["version"] = "0.0.1";
  CHECK(run({"verify", "--input", dir.file("old.json", old.dump())}).code == exit_input_error);
}

TEST_CASE("solve rejects inadmissible and unknown charts") {
  Workdir dir;
  const Run r = run({"solve", "--input", dir.file("d.json", distinct), "--chart", "spherical"});
  CHECK(r.code == exit_inadmissible_chart);
  CHECK(r.err.find("admissible: cartesian") != std::string::npos);
  CHECK(run({"solve", "--input", dir.file("n.json", nilpotent), "--chart", "1"}).code == exit_not_separable);
  CHECK(run({"solve", "--input", dir.file("i.json", isotropic), "--chart", "torus"}).code == exit_input_error);
  CHECK(run({"solve", "--input", dir.file("j.json", isotropic), "--chart", "1", "--lambda", "1,2"}).code ==
        exit_input_error);
}

TEST_CASE("zero separation constants give the time factor alone") {
  Workdir dir;
  const Run r = run({"solve", "--input", dir.file("iso.json", isotropic), "--chart", "cartesian", "--seed", "9"});
  REQUIRE(r.code == exit_ok);
  for (const auto& row : csv_rows(r.out)) CHECK(row[7] == doctest::Approx(std::exp(-1.8 * row[0])).epsilon(1e-12));
}

TEST_CASE("mc and curl") {
  Workdir dir;
  const std::string drift = dir.file("iso.json", isotropic);
  const Run mc = run({"mc", "--input", drift, "--seed", "4", "--n", "20000", "--tau", "0.3"});
  CHECK(mc.code == exit_ok);
  const json report = json::parse(mc.out);
  CHECK(report["pass"] == true);
  CHECK(report["z_scores"]["cov"].size() == 3);
  CHECK(run({"mc", "--input", drift, "--n", "10"}).code == exit_input_error);
  CHECK(run({"mc", "--input", drift, "--dt", "0.5"}).code == exit_input_error);

  const std::string square = dir.file("sq.json", R"({"polynomial": [[], [], [{"c": 1, "p": [2, 0, 0]},
                                                                           {"c": 1, "p": [0, 2, 0]}]]})");
  const std::string constant = dir.file("c.json", R"({"polynomial": [[], [], [{"c": 2.5, "p": [0, 0, 0]}]]})");
  const Run fail = run({"curl", "--input", square});
  CHECK(fail.code == exit_verification_failed);
  CHECK(json::parse(fail.out)["verdict"] == "curl not constant - not R-separable");
  CHECK(run({"curl", "--input", constant}).code == exit_ok);
  CHECK(run({"curl", "--input", drift}).code == exit_ok);
  CHECK(run({"curl", "--input", dir.file("neg.json", R"({"polynomial": [[{"c": 1, "p": [-1, 0, 0]}], [], []]})")})
            .code == exit_input_error);
}

TEST_CASE("repeated runs are byte-identical") {
  Workdir dir;
  const std::string drift = dir.file("iso.json", isotropic);
  const std::vector<std::vector<std::string>> commands{
      {"solve", "--input", drift, "--chart", "oblate_spheroidal", "--lambda", "0.3,-1,0.7", "--seed", "11"},
      {"solve", "--input", drift, "--chart", "10", "--lambda", "0.3,-1,0.7", "--seed", "11", "--format", "json"},
      {"mc", "--input", drift, "--seed", "2", "--n", "5000"},
      {"curl", "--input", drift, "--seed", "5"},
      {"classify", "--input", drift},
  };
  for (const auto& cmd : commands) {
    const Run a = run(cmd), b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
  run({"solve", "--input", drift, "--chart", "5", "--output", dir.path("a.csv"), "--manifest", dir.path("a.json")});
  run({"solve", "--input", drift, "--chart", "5", "--output", dir.path("b.csv"), "--manifest", dir.path("b.json")});
  CHECK(slurp(dir.path("a.csv")) == slurp(dir.path("b.csv")));
  CHECK(slurp(dir.path("a.json")) == slurp(dir.path("b.json")));
}

TEST_CASE("log verbosity") {
  Workdir dir;
  const std::string drift = dir.file("iso.json", isotropic);
  setenv("SEPFP_LOG", "info", 1);
  CHECK(run({"classify", "--input", drift}).err.find("classified as Isotropic") != std::string::npos);
  setenv("SEPFP_LOG", "error", 1);
  CHECK(run({"classify", "--input", drift}).err.empty());
  unsetenv("SEPFP_LOG");
  CHECK(run({"classify", "--input", drift}).err.empty());
}
