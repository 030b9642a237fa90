#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "capd/sim/runner.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_dir() {
  static int counter = 0;
  std::string dir = "cli_test_" + std::to_string(counter++);
  std::string cmd = "mkdir -p " + dir;
  REQUIRE(std::system(cmd.c_str()) == 0);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("CAPD_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CAPD_BIN must point at the capd binary");
  std::string dir = temp_dir();
  std::string cmd = std::string(bin) + " " + args + " > " + dir + "/out 2> " + dir + "/err";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(dir + "/out"), slurp(dir + "/err")};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("run: bundled usecase1 emits the four stage codes") {
  CliResult r = run_cli("run usecase1_bandwidth --format jsonl");
  CHECK(r.exit_code == 0);
  for (const char* code : {"SEND_COLOR_VIDEO", "SEND_GRAYSCALE_VIDEO", "SEND_STILL_IMAGES",
                           "SEND_OBJECT_COUNT"})
    CHECK(r.out.find(code) != std::string::npos);
  // jsonl is clean: every stdout line parses as JSON.
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line))
    CHECK_NOTHROW(nlohmann::json::parse(line));
}

TEST_CASE("run: usecase3 contains the microphone switch") {
  CliResult r = run_cli("run usecase3_blind");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("SWITCH_TO_MICROPHONE") != std::string::npos);
}

TEST_CASE("run: a missing scenario file exits 2 with no partial log") {
  CliResult r = run_cli("run missing.file");
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
}

TEST_CASE("run: seed overrides and determinism") {
  CliResult a = run_cli("run usecase2_jam --format jsonl --seed 7");
  CliResult b = run_cli("run usecase2_jam --format jsonl --seed 7");
  CliResult c = run_cli("run usecase2_jam --format jsonl --seed 8");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("query: fixture KG returns four ordered rows") {
  std::string dir = temp_dir();
  CliResult seeded =
      run_cli("seed --out " + dir + "/fx.ttl --observations 7.5,3.0,0.5,0.05");
  REQUIRE(seeded.exit_code == 0);

  write_file(dir + "/q.rq", capd::policy::PolicyEngine::fixture_query_text());
  CliResult r = run_cli("query " + dir + "/fx.ttl " + dir + "/q.rq --format jsonl");
  CHECK(r.exit_code == 0);

  std::vector<std::string> codes;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    auto row = nlohmann::json::parse(line);
    codes.push_back(row.at("Mitigation_Program").get<std::string>());
  }
  CHECK(codes == std::vector<std::string>{"SEND_COLOR_VIDEO", "SEND_GRAYSCALE_VIDEO",
                                          "SEND_STILL_IMAGES", "SEND_OBJECT_COUNT"});

  // Text format: aligned table with the projection header.
  CliResult t = run_cli("query " + dir + "/fx.ttl " + dir + "/q.rq");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("Time") != std::string::npos);
  CHECK(t.out.find("Mitigation_Program") != std::string::npos);
}

TEST_CASE("query: empty KG returns zero rows with exit 0") {
  std::string dir = temp_dir();
  write_file(dir + "/empty.ttl", "");
  write_file(dir + "/q.rq", "SELECT ?s WHERE { ?s a bf:Asset }");
  CliResult r = run_cli("query " + dir + "/empty.ttl " + dir + "/q.rq --format jsonl");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("query: parse errors exit 3") {
  std::string dir = temp_dir();
  write_file(dir + "/kg.ttl", "bf:A a bf:Asset .");
  write_file(dir + "/bad.rq", "SELECT WHERE {");
  CHECK(run_cli("query " + dir + "/kg.ttl " + dir + "/bad.rq").exit_code == 3);

  write_file(dir + "/bad.ttl", "bf:A a .");
  write_file(dir + "/ok.rq", "SELECT ?s WHERE { ?s a bf:Asset }");
  CHECK(run_cli("query " + dir + "/bad.ttl " + dir + "/ok.rq").exit_code == 3);
}

TEST_CASE("validate: fixture passes, a gap is reported with names") {
  std::string dir = temp_dir();
  REQUIRE(run_cli("seed --out " + dir + "/fx.ttl --observations 7.5").exit_code == 0);
  CHECK(run_cli("validate " + dir + "/fx.ttl").exit_code == 0);

  // A result node with no bf:value is one min_count violation.
  write_file(dir + "/broken.ttl",
             "bf:obs1 a bf:BandwidthObservation ; sosa:phenomenonTime 1 ; "
             "bf:hasResult bf:res1 .\n"
             "bf:res1 a bf:Result .\n");
  CliResult r = run_cli("validate " + dir + "/broken.ttl");
  CHECK(r.exit_code == 1);
  int lines = 0;
  for (char c : r.out)
    lines += c == '\n';
  CHECK(lines == 1);
  CHECK(r.out.find("min_count") != std::string::npos);
  CHECK(r.out.find("res1") != std::string::npos);
  CHECK(r.out.find("value") != std::string::npos);
}

TEST_CASE("explain: derived and asserted triples, absent exits 4") {
  std::string dir = temp_dir();
  write_file(dir + "/kg.ttl",
             "bf:drone1 a bf:MovableAsset .\n"
             "bf:MovableAsset rdfs:subClassOf bf:Asset .\n");

  CliResult derived = run_cli("explain " + dir + "/kg.ttl \"bf:drone1 a bf:Asset\"");
  CHECK(derived.exit_code == 0);
  CHECK(derived.out.find("R2-type-propagation") != std::string::npos);
  CHECK(derived.out.find("[asserted]") != std::string::npos);

  CliResult leaf = run_cli("explain " + dir + "/kg.ttl \"bf:drone1 a bf:MovableAsset\"");
  CHECK(leaf.exit_code == 0);
  CHECK(leaf.out.find("[asserted]") != std::string::npos);

  CHECK(run_cli("explain " + dir + "/kg.ttl \"bf:ghost a bf:Asset\"").exit_code == 4);
  CHECK(run_cli("explain " + dir + "/kg.ttl \"not a valid triple spec at all\"").exit_code == 3);
}

TEST_CASE("bundled scenario files on disk match the embedded definitions") {
#ifdef CAPD_SOURCE_DIR
  for (const auto& name : capd::sim::bundled_scenario_names()) {
    std::string path = std::string(CAPD_SOURCE_DIR) + "/scenarios/" + name + ".json";
    std::string file = slurp(path);
    REQUIRE_MESSAGE(!file.empty(), path);
    CHECK(nlohmann::json::parse(file) ==
          nlohmann::json::parse(capd::sim::bundled_scenario(name)));
  }
#endif
}
