#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cartan/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cartan::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / "cartan_forge_cli_test";
  fs::create_directories(d);
  return d;
}

json load_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

void store_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2) << "\n";
}

}  // namespace

TEST_CASE("construct writes a decomposition that verify accepts") {
  fs::path file = scratch_dir() / "z217.json";
  CliResult c = run_cli({"construct", "--ring", "Z/217", "--n", "3",
                         "--out", file.string()});
  CHECK(c.code == cartan::cli::kOk);
  CHECK(c.out.find("PASS") != std::string::npos);
  REQUIRE(fs::exists(file));

  CliResult v = run_cli({"verify", "--in", file.string()});
  CHECK(v.code == cartan::cli::kOk);
  CHECK(v.out.find("PASS") != std::string::npos);

  // the file itself is a bare decomposition object
  json j = load_json(file);
  CHECK(j.contains("ring"));
  CHECK(j.contains("components"));
  CHECK(j["ring"] == "Z/217");
}

TEST_CASE("construct reports json with a decomposition and a report") {
  CliResult c = run_cli({"construct", "--ring", "F_7", "--n", "3",
                         "--classical", "--format", "json"});
  CHECK(c.code == cartan::cli::kOk);
  json j = json::parse(c.out);
  REQUIRE(j.contains("decomposition"));
  REQUIRE(j.contains("report"));
  CHECK(j["report"]["pass"] == true);
  CHECK(j["report"]["all_classical"] == true);
  CHECK(j["decomposition"]["components"].size() == 4);
  CHECK(j["decomposition"]["provenance"]["u"] == json::array({2}));
}

TEST_CASE("construct distinguishes impossible from unimplemented") {
  CliResult center = run_cli({"construct", "--ring", "Z/9", "--n", "3"});
  CHECK(center.code == cartan::cli::kNoOdac);
  CHECK(center.out.find("nonzero center") != std::string::npos);
  CHECK(center.out.find("3 * identity") != std::string::npos);

  CliResult comp = run_cli({"construct", "--ring", "Z/5", "--n", "6"});
  CHECK(comp.code == cartan::cli::kNoConstruction);
  CHECK(comp.out.find("not a prime power") != std::string::npos);

  CliResult local = run_cli({"construct", "--ring", "Z/35", "--n", "3"});
  CHECK(local.code == cartan::cli::kNoConstruction);
  CHECK(local.out.find("factor Z/5") != std::string::npos);
}

TEST_CASE("verify rejects a decomposition whose component was zeroed") {
  fs::path file = scratch_dir() / "z217a.json";
  REQUIRE(run_cli({"construct", "--ring", "Z/217", "--n", "3", "--out",
                   file.string()}).code == 0);
  json j = load_json(file);
  auto& entries = j["components"][1]["basis"][0]["entries"];
  for (auto& row : entries)
    for (auto& e : row) e = 0;
  fs::path tampered = scratch_dir() / "z217_tampered.json";
  store_json(tampered, j);

  CliResult v = run_cli({"verify", "--in", tampered.string()});
  CHECK(v.code == cartan::cli::kVerificationFailed);
  CHECK(v.out.find("not free") != std::string::npos);
  CHECK(v.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify refuses files whose matrices carry nonzero trace") {
  fs::path file = scratch_dir() / "z217b.json";
  REQUIRE(run_cli({"construct", "--ring", "Z/217", "--n", "3", "--out",
                   file.string()}).code == 0);
  json j = load_json(file);
  auto& entries = j["components"][0]["basis"][0]["entries"];
  for (auto& row : entries)
    for (auto& e : row) e = 0;
  entries[0][0] = 1;
  fs::path bad = scratch_dir() / "z217_trace.json";
  store_json(bad, j);

  CliResult v = run_cli({"verify", "--in", bad.string()});
  CHECK(v.code == cartan::cli::kUsageOrIo);
  CHECK(v.err.find("nonzero trace") != std::string::npos);
}

TEST_CASE("verify reports io and parse problems as usage errors") {
  CliResult missing = run_cli({"verify", "--in", "/nonexistent/x.json"});
  CHECK(missing.code == cartan::cli::kUsageOrIo);

  fs::path garbage = scratch_dir() / "garbage.json";
  std::ofstream(garbage) << "{ not json";
  CliResult broken = run_cli({"verify", "--in", garbage.string()});
  CHECK(broken.code == cartan::cli::kUsageOrIo);
  CHECK(broken.err.find("invalid JSON") != std::string::npos);
}

TEST_CASE("search table lists existence by field size") {
  CliResult r = run_cli({"search-sl3", "--q", "5,7,11,13", "--format", "json"});
  CHECK(r.code == cartan::cli::kOk);
  json t = json::parse(r.out);
  REQUIRE(t.is_array());
  REQUIRE(t.size() == 4);
  CHECK(t[0]["exists"] == false);
  CHECK(t[1]["exists"] == true);
  CHECK(t[2]["exists"] == false);
  CHECK(t[3]["exists"] == true);
  CHECK(t[1]["cliques_found"] == 12);
  CHECK(t[1]["witnesses"].size() == 4);
  CHECK(t[1]["all_certified"] == false);
}

TEST_CASE("ranges skip invalid sizes but explicit values must be valid") {
  CliResult range = run_cli({"search-sl3", "--q", "5..13", "--format", "json"});
  CHECK(range.code == cartan::cli::kOk);
  CHECK(json::parse(range.out).size() == 4);  // 5, 7, 11, 13

  CliResult bad = run_cli({"search-sl3", "--q", "9"});
  CHECK(bad.code == cartan::cli::kUsageOrIo);
  CHECK(bad.err.find("q = 9") != std::string::npos);

  CliResult junk = run_cli({"search-sl3", "--q", "abc"});
  CHECK(junk.code == cartan::cli::kUsageOrIo);
}

TEST_CASE("oracle command covers both the pair oracle and the census") {
  CliResult oracle = run_cli({"oracle-lemma", "--q", "5", "--format", "json"});
  CHECK(oracle.code == cartan::cli::kOk);
  json t = json::parse(oracle.out);
  CHECK(t[0]["counterexamples"] == 0);
  CHECK(t[0]["instances_checked"] == 6080);

  CliResult census = run_cli({"oracle-lemma", "--shape-census", "--format", "json"});
  CHECK(census.code == cartan::cli::kOk);
  json ct = json::parse(census.out);
  CHECK(ct[0]["q"] == 5);
  CHECK(ct[0]["ok"] == true);
  CHECK(ct[0]["subspaces"] == 508431);

  CliResult noq = run_cli({"oracle-lemma"});
  CHECK(noq.code == cartan::cli::kUsageOrIo);
}

TEST_CASE("remark command fails exactly when an orthogonal pair exists") {
  CHECK(run_cli({"remark-check", "--q", "5,11"}).code == cartan::cli::kOk);
  CliResult seven = run_cli({"remark-check", "--q", "7"});
  CHECK(seven.code == cartan::cli::kVerificationFailed);
}

TEST_CASE("sl2 analysis renders one row per nonzero element") {
  CliResult r = run_cli({"sl2-analysis", "--q", "7,9", "--format", "json"});
  CHECK(r.code == cartan::cli::kOk);
  json t = json::parse(r.out);
  REQUIRE(t.size() == 2);
  CHECK(t[0]["rows"].size() == 6);
  CHECK(t[1]["rows"].size() == 8);
  CHECK(run_cli({"sl2-analysis", "--q", "8"}).code == cartan::cli::kUsageOrIo);
}

TEST_CASE("ring info lists local factors") {
  CliResult r = run_cli({"ring-info", "--ring", "Z/217"});
  CHECK(r.code == cartan::cli::kOk);
  CHECK(r.out.find("local factor Z/7") != std::string::npos);
  CHECK(r.out.find("local factor Z/31") != std::string::npos);

  CliResult bad = run_cli({"ring-info", "--ring", "Z/x"});
  CHECK(bad.code == cartan::cli::kUsageOrIo);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("budgets stop oversized sweeps with a dedicated exit code") {
  CliResult ceiling = run_cli({"oracle-lemma", "--q", "101"});
  CHECK(ceiling.code == cartan::cli::kBudgetExceeded);

  CliResult flag = run_cli({"search-sl3", "--q", "25", "--budget-ms", "1"});
  CHECK(flag.code == cartan::cli::kBudgetExceeded);

  setenv("CARTAN_FORGE_BUDGET_MS", "1", 1);
  CliResult env = run_cli({"search-sl3", "--q", "25"});
  CHECK(env.code == cartan::cli::kBudgetExceeded);

  // an explicit flag overrides the environment
  CliResult override_flag =
      run_cli({"search-sl3", "--q", "25", "--budget-ms", "100000"});
  CHECK(override_flag.code == cartan::cli::kOk);
  unsetenv("CARTAN_FORGE_BUDGET_MS");
}

TEST_CASE("usage problems return code 1 and help returns 0") {
  CHECK(run_cli({}).code == cartan::cli::kUsageOrIo);
  CHECK(run_cli({"frobnicate"}).code == cartan::cli::kUsageOrIo);
  CHECK(run_cli({"construct", "--ring", "Z/7"}).code == cartan::cli::kUsageOrIo);
  CHECK(run_cli({"construct", "--ring", "Z/7", "--n", "1"}).code ==
        cartan::cli::kUsageOrIo);

  CliResult help = run_cli({"--help"});
  CHECK(help.code == cartan::cli::kOk);
  CHECK(help.out.find("cartan-forge") != std::string::npos);
  CHECK(help.out.find("construct") != std::string::npos);
}

TEST_CASE("search output lands in a file when asked") {
  fs::path file = scratch_dir() / "search.json";
  CliResult r = run_cli({"search-sl3", "--q", "7", "--out", file.string()});
  CHECK(r.code == cartan::cli::kOk);
  json t = load_json(file);
  REQUIRE(t.is_array());
  CHECK(t[0]["q"] == 7);
  CHECK(t[0]["witnesses"].size() == 4);
  // default rendering on stdout is text
  CHECK(r.out.find("q = 7") != std::string::npos);
}

TEST_CASE("serial flag keeps results identical") {
  CliResult par = run_cli({"search-sl3", "--q", "7", "--format", "json"});
  CliResult ser = run_cli({"search-sl3", "--q", "7", "--serial", "--format", "json"});
  CHECK(par.code == 0);
  CHECK(ser.code == 0);
  CHECK(json::parse(par.out)[0]["witnesses"] == json::parse(ser.out)[0]["witnesses"]);
}
