#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "mq/config.hpp"
#include "mq/format.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(static_cast<bool>(out));
  out << content;
}

// A fresh scratch directory per call site; left in place for post-mortems.
fs::path scratch_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("mq_cli_" + std::to_string(::getpid()) + "_" + tag +
                        "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_log = dir / "stdout.txt";
  const fs::path err_log = dir / "stderr.txt";
  const std::string cmd = std::string(MQ_CLI_PATH) + " " + args + " >" +
                          out_log.string() + " 2>" + err_log.string();
  const int rc = std::system(cmd.c_str());
  CliResult res;
  REQUIRE(rc != -1);
  if (WIFEXITED(rc)) res.exit_code = WEXITSTATUS(rc);
  res.out = slurp(out_log);
  res.err = slurp(err_log);
  return res;
}

std::string desk_config_path() {
  return std::string(MQ_REPO_DIR) + "/configs/desk.json";
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Every artifact listed in the manifest exists with matching bytes/checksum.
void check_manifest_integrity(const fs::path& out_dir) {
  const std::string text = slurp(out_dir / "manifest.json");
  REQUIRE_FALSE(text.empty());
  const json doc = json::parse(text);
  CHECK(doc["tool"] == "mq");
  CHECK(doc["version"] == "0.1.0");
  for (const auto& cell : doc["cells"]) CHECK(cell["status"] == "ok");
  REQUIRE_FALSE(doc["artifacts"].empty());
  for (const auto& art : doc["artifacts"]) {
    const fs::path p = out_dir / art["path"].get<std::string>();
    const std::string bytes = slurp(p);
    CHECK(bytes.size() == art["bytes"].get<std::uint64_t>());
    CHECK(mq::to_hex(mq::fnv1a64(bytes)) ==
          art["checksum_fnv1a64"].get<std::string>());
  }
}

// Non-manifest artifacts of two runs, keyed by relative path.
std::map<std::string, std::string> artifact_bytes(const fs::path& out_dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    out[name] = slurp(entry.path());
  }
  return out;
}

// A copy of the shipped config with a small nashq budget, for fast e2e runs.
std::string small_nashq_config(const fs::path& dir) {
  json doc = json::parse(mq::config_to_json(mq::default_config()));
  doc["nashq"]["step_budget"] = 20000;
  const fs::path path = dir / "config.json";
  spit(path, doc.dump(2) + "\n");
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes the exact solution and a consistent manifest") {
  const fs::path dir = scratch_dir("solve");
  const fs::path out = dir / "out";
  const auto res = run_cli("solve --config " + desk_config_path() +
                               " --dt 0.001 --out " + out.string(),
                           dir);
  REQUIRE(res.exit_code == 0);

  const auto rows = lines_of(slurp(out / "solve.csv"));
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] ==
        "dt,state_id,v_star,policy_ask,policy_bid,sup_dist_to_ref,"
        "policy_identical,hjb_residual");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 8);
    CHECK(f[0] == "0.001");
    const double v = std::strtod(f[2].c_str(), nullptr);
    CHECK(std::abs(v - oracle::kValueDt0001[i - 1]) <= 1e-7);
    const double hjb = std::strtod(f[7].c_str(), nullptr);
    CHECK(std::abs(hjb - oracle::kHjbDt0001) <= 1e-4 * oracle::kHjbDt0001);
  }
  check_manifest_integrity(out);

  const json manifest = json::parse(slurp(out / "manifest.json"));
  REQUIRE(manifest["cells"].size() == 1);
  CHECK(manifest["cells"][0]["name"] == "solve dt=0.001");
  CHECK(manifest["config"]["master_seed"] ==
        mq::default_config().master_seed);
}

TEST_CASE("solve reruns are byte-identical outside the manifest") {
  const fs::path dir = scratch_dir("rerun");
  const fs::path out_a = dir / "a";
  const fs::path out_b = dir / "b";
  const std::string base =
      "solve --config " + desk_config_path() + " --dt 0.01 --out ";
  REQUIRE(run_cli(base + out_a.string(), dir).exit_code == 0);
  REQUIRE(run_cli(base + out_b.string(), dir).exit_code == 0);
  const auto a = artifact_bytes(out_a);
  const auto b = artifact_bytes(out_b);
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);
}

TEST_CASE("format override switches the artifact family") {
  const fs::path dir = scratch_dir("format");
  const fs::path out = dir / "out";
  const auto res = run_cli("solve --config " + desk_config_path() +
                               " --dt 0.1 --format json --out " + out.string(),
                           dir);
  REQUIRE(res.exit_code == 0);
  CHECK_FALSE(fs::exists(out / "solve.csv"));
  REQUIRE(fs::exists(out / "solve.json"));
  const json doc = json::parse(slurp(out / "solve.json"));
  REQUIRE(doc.size() == 9);
  CHECK(std::abs(doc[4]["v_star"].get<double>() - oracle::kValueDt01[4]) <=
        1e-7);
}

TEST_CASE("malformed config exits with code 2 and writes nothing") {
  const fs::path dir = scratch_dir("badcfg");
  const fs::path cfg = dir / "broken.json";
  spit(cfg, "{ this is not json");
  const fs::path out = dir / "out";
  const auto res = run_cli(
      "solve --config " + cfg.string() + " --dt 0.1 --out " + out.string(),
      dir);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("error:") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("schema violations exit with code 2") {
  const fs::path dir = scratch_dir("schema");
  json doc = json::parse(mq::config_to_json(mq::default_config()));
  doc["qlearning"]["default"]["omega"] = 0.4;
  const fs::path cfg = dir / "bad_omega.json";
  spit(cfg, doc.dump(2) + "\n");
  const fs::path out = dir / "out";
  const auto res = run_cli(
      "solve --config " + cfg.string() + " --dt 0.1 --out " + out.string(),
      dir);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("omega") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("unknown flags and missing subcommands exit with code 2") {
  const fs::path dir = scratch_dir("usage");
  CHECK(run_cli("solve --config " + desk_config_path() +
                    " --dt 0.1 --frobnicate",
                dir)
            .exit_code == 2);
  CHECK(run_cli("", dir).exit_code == 2);
  CHECK(run_cli("--help", dir).exit_code == 0);
}

TEST_CASE("dump-config reproduces the shipped config byte for byte") {
  const fs::path dir = scratch_dir("dump");
  const auto res = run_cli("dump-config", dir);
  REQUIRE(res.exit_code == 0);
  CHECK(res.out == slurp(desk_config_path()));
}

TEST_CASE("game solve emits the equilibrium table") {
  const fs::path dir = scratch_dir("game");
  const fs::path out = dir / "out";
  const auto res = run_cli("game solve --config " + desk_config_path() +
                               " --dt 0.1 --out " + out.string(),
                           dir);
  REQUIRE(res.exit_code == 0);

  const auto rows = lines_of(slurp(out / "game_solution.csv"));
  REQUIRE(rows.size() == 11);  // header + 2*(2+1+2) rows
  CHECK(rows[0] == "dt,state_id,player,action_id,probability,v_star,residual");
  // State 0, player 1 puts all mass on its second action (widest ask).
  const auto r1 = fields_of(rows[1]);
  const auto r2 = fields_of(rows[2]);
  CHECK(r1[4] == "0");
  CHECK(r2[4] == "1");
  const double v = std::strtod(r1[5].c_str(), nullptr);
  CHECK(std::abs(v - oracle::kGameValueDt01[0]) <= 1e-6);
  check_manifest_integrity(out);

  // Deterministic rerun.
  const fs::path out2 = dir / "out2";
  REQUIRE(run_cli("game solve --config " + desk_config_path() +
                      " --dt 0.1 --out " + out2.string(),
                  dir)
              .exit_code == 0);
  CHECK(slurp(out / "game_solution.csv") == slurp(out2 / "game_solution.csv"));
}

TEST_CASE("game nashq runs, logs curves, and honors the seed override") {
  const fs::path dir = scratch_dir("nashq");
  const std::string cfg = small_nashq_config(dir);
  const fs::path out = dir / "out";
  const auto res = run_cli(
      "game nashq --config " + cfg + " --dt 0.1 --out " + out.string(), dir);
  REQUIRE(res.exit_code == 0);

  const auto rows = lines_of(slurp(out / "nashq_curves.csv"));
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0] == "step,player,value_error,policy_error");
  const auto first = fields_of(rows[1]);
  REQUIRE(first.size() == 4);
  CHECK(first[0] == "0");
  CHECK(first[1] == "1");
  check_manifest_integrity(out);

  // Same seed: identical bytes. Different master seed: different curve.
  const fs::path out_same = dir / "same";
  const fs::path out_diff = dir / "diff";
  REQUIRE(run_cli("game nashq --config " + cfg + " --dt 0.1 --out " +
                      out_same.string(),
                  dir)
              .exit_code == 0);
  CHECK(slurp(out / "nashq_curves.csv") ==
        slurp(out_same / "nashq_curves.csv"));
  REQUIRE(run_cli("game nashq --config " + cfg +
                      " --dt 0.1 --seed 7 --out " + out_diff.string(),
                  dir)
              .exit_code == 0);
  CHECK(slurp(out / "nashq_curves.csv") !=
        slurp(out_diff / "nashq_curves.csv"));
}

TEST_CASE("sweep over a tiny grid produces the full artifact set") {
  const fs::path dir = scratch_dir("sweep");
  json doc = json::parse(mq::config_to_json(mq::default_config()));
  doc["grid"] = {{"kind", "list"}, {"values", {0.1, 0.05}}};
  doc["qlearning"]["default"]["step_budget"] = 30000;
  doc["qlearning"].erase("per_dt");
  doc["complexity"]["seeds"] = {1, 2};
  const fs::path cfg = dir / "tiny.json";
  spit(cfg, doc.dump(2) + "\n");

  const fs::path out = dir / "out";
  const auto res = run_cli("sweep --config " + cfg.string() +
                               " --jobs 2 --plot --out " + out.string(),
                           dir);
  REQUIRE(res.exit_code == 0);

  for (const char* name : {"sweep.csv", "curves_dt1.csv", "curves_dt2.csv",
                           "complexity.csv", "sweep.svg", "convergence.svg",
                           "complexity.svg", "manifest.json"}) {
    CHECK(fs::exists(out / name));
  }
  check_manifest_integrity(out);

  const auto sweep_rows = lines_of(slurp(out / "sweep.csv"));
  REQUIRE(sweep_rows.size() == 19);  // header + 2 dts * 9 states
  const auto cx_rows = lines_of(slurp(out / "complexity.csv"));
  REQUIRE(cx_rows.size() == 5);  // header + 2 dts * 2 seeds

  // Reference row (smallest dt) reports zero distance to itself.
  const auto last = fields_of(sweep_rows.back());
  CHECK(last[5] == "0");
  CHECK(last[6] == "1");

  // Deterministic rerun, including parallel scheduling.
  const fs::path out2 = dir / "out2";
  REQUIRE(run_cli("sweep --config " + cfg.string() +
                      " --jobs 2 --plot --out " + out2.string(),
                  dir)
              .exit_code == 0);
  CHECK(artifact_bytes(out) == artifact_bytes(out2));
}

TEST_CASE("a one-point grid degenerates cleanly") {
  const fs::path dir = scratch_dir("grid1");
  json doc = json::parse(mq::config_to_json(mq::default_config()));
  doc["grid"] = {{"kind", "list"}, {"values", {0.1}}};
  doc["qlearning"]["default"]["step_budget"] = 20000;
  doc["qlearning"].erase("per_dt");
  doc["complexity"]["seeds"] = {1};
  const fs::path cfg = dir / "one.json";
  spit(cfg, doc.dump(2) + "\n");

  const fs::path out = dir / "out";
  const auto res =
      run_cli("sweep --config " + cfg.string() + " --out " + out.string(), dir);
  REQUIRE(res.exit_code == 0);
  const auto rows = lines_of(slurp(out / "sweep.csv"));
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields_of(rows[i]);
    CHECK(f[5] == "0");  // the only dt is its own reference
    CHECK(f[6] == "1");
  }
}

}  // TEST_SUITE
