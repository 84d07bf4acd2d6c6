#include "arctic/cli.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>

using namespace arctic;
using namespace arctic::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int rc;
  std::string out, err;
  json doc;
};

Outcome go(const RunConfig& cfg) {
  std::ostringstream o, e;
  int rc = run(cfg, o, e);
  Outcome r{rc, o.str(), e.str(), {}};
  if (!r.out.empty()) r.doc = json::parse(r.out);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::current_path() / "cli_test_out" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int shell(const std::string& args) {
  std::string cmd = std::string(ARCTIC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("verify aztec n = 8") {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.model = ModelId::Aztec;
  cfg.n = 8;
  auto r = go(cfg);
  REQUIRE(r.rc == 0);
  for (const char* key : {"command", "model", "version", "params", "checks", "artifacts", "pass"}) CHECK(r.doc.contains(key));
  CHECK(r.doc["command"] == "verify");
  CHECK(r.doc["model"] == "aztec");
  CHECK(r.doc["params"]["n"] == 8);
  CHECK(r.doc["pass"] == true);
  bool saw_det = false;
  for (const auto& c : r.doc["checks"]) {
    for (const char* key : {"name", "expected", "actual", "tolerance", "pass"}) REQUIRE(c.contains(key));
    REQUIRE(c["pass"] == true);
    if (c["name"] == "det_equals_tilings") {
      saw_det = true;
      CHECK(c["expected"] == "68719476736/1");
    }
  }
  CHECK(saw_det);
}

TEST_CASE("verify every model") {
  for (ModelId m : {ModelId::Aztec, ModelId::DyckHalfHex, ModelId::RedHalfHex, ModelId::Staircase,
                    ModelId::StaircaseAlt, ModelId::Vsasm}) {
    RunConfig cfg;
    cfg.command = Command::Verify;
    cfg.model = m;
    cfg.n = m == ModelId::Vsasm ? 7 : 4;
    cfg.k = 3;
    INFO(model_name(m));
    CHECK(go(cfg).rc == 0);
    cfg.command = Command::OnePoint;
    CHECK(go(cfg).rc == 0);
    cfg.command = Command::Oracle;
    cfg.n = m == ModelId::Vsasm ? 5 : 2;
    CHECK(go(cfg).rc == 0);
  }
}

TEST_CASE("exact rationals serialize as strings") {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.model = ModelId::DyckHalfHex;
  cfg.n = 1;
  cfg.k = 2;
  auto r = go(cfg);
  REQUIRE(r.rc == 0);
  for (const auto& c : r.doc["checks"])
    if (c["name"] == "onepoint_det_ratio l=3") {
      CHECK(c["actual"] == "2/3");
      CHECK(c["tolerance"] == 0.0);
    }
}

TEST_CASE("envelope staircase writes CSV and SVG") {
  fs::path d = scratch("envelope");
  RunConfig cfg;
  cfg.command = Command::Envelope;
  cfg.model = ModelId::Staircase;
  cfg.grid.min = 1.05;
  cfg.grid.max = 6;
  cfg.grid.count = 200;
  cfg.csv_path = (d / "env.csv").string();
  cfg.svg_path = (d / "env.svg").string();
  auto r = go(cfg);
  REQUIRE(r.rc == 0);
  CHECK(r.doc["artifacts"].size() == 2);
  std::string csv = slurp(cfg.csv_path);
  CHECK(csv.rfind("z,xi_star,slope,intercept,env_x,env_y,residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 199);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  double worst = 0;
  while (std::getline(in, line)) worst = std::max(worst, std::stod(line.substr(line.rfind(',') + 1)));
  CHECK(worst <= 1e-3);
  std::string svg = slurp(cfg.svg_path);
  CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("curve vsasm samples") {
  fs::path d = scratch("curve");
  RunConfig cfg;
  cfg.command = Command::Curve;
  cfg.model = ModelId::Vsasm;
  cfg.samples = 100;
  cfg.csv_path = (d / "curve.csv").string();
  auto r = go(cfg);
  REQUIRE(r.rc == 0);
  std::string csv = slurp(cfg.csv_path);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 101);
  for (const auto& c : r.doc["checks"])
    if (c["name"] == "max_parametric_residual") CHECK(c["actual"].get<double>() <= 1e-12);
  for (ModelId m : {ModelId::Aztec, ModelId::DyckHalfHex, ModelId::Staircase}) {
    cfg.model = m;
    cfg.csv_path.clear();
    CHECK(go(cfg).rc == 0);
  }
}

TEST_CASE("saddle reports and failing checks") {
  RunConfig cfg;
  cfg.command = Command::Saddle;
  cfg.model = ModelId::Aztec;
  cfg.n = 512;
  auto ok = go(cfg);
  CHECK(ok.rc == 0);
  CHECK(ok.doc["checks"].size() == 16);
  cfg.tolerance = 1e-9;
  auto bad = go(cfg);
  CHECK(bad.rc == 1);
  CHECK(bad.doc["pass"] == false);
  bool any_fail = false;
  for (const auto& c : bad.doc["checks"]) any_fail = any_fail || c["pass"] == false;
  CHECK(any_fail);
}

TEST_CASE("usage errors") {
  RunConfig cfg;
  cfg.command = Command::Verify;
  cfg.model = ModelId::Vsasm;
  cfg.n = 4;
  auto r = go(cfg);
  CHECK(r.rc == 2);
  CHECK(r.err.find("usage error") != std::string::npos);
  cfg.model = ModelId::Aztec;
  cfg.n = 0;
  CHECK(go(cfg).rc == 2);
  cfg.command = Command::Envelope;
  cfg.n = 4;
  cfg.grid.count = 4;
  CHECK(go(cfg).rc == 2);
  cfg.command = Command::Saddle;
  cfg.n = 32;
  cfg.grid.count.reset();
  CHECK(go(cfg).rc == 2);
  cfg.n = 256;
  cfg.grid.min = 0.5;
  CHECK(go(cfg).rc == 2);
  cfg.grid.min = 1.5;
  cfg.grid.spacing = "cubic";
  CHECK(go(cfg).rc == 2);
}

TEST_CASE("oracle budget exhaustion is a check failure") {
  RunConfig cfg;
  cfg.command = Command::Oracle;
  cfg.model = ModelId::Aztec;
  cfg.n = 3;
  cfg.budget = 10;
  auto r = go(cfg);
  CHECK(r.rc == 1);
  CHECK(r.doc["error"].get<std::string>().find("budget") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  for (Command c : {Command::Envelope, Command::Plot, Command::Curve, Command::Oracle}) {
    std::string a[3], b[3];
    for (int pass = 0; pass < 2; ++pass) {
      fs::path d = scratch("det" + std::to_string(pass));
      RunConfig cfg;
      cfg.command = c;
      cfg.model = c == Command::Oracle ? ModelId::Vsasm : ModelId::Aztec;
      cfg.n = c == Command::Oracle ? 5 : 4;
      cfg.json_path = (d / "r.json").string();
      cfg.csv_path = (d / "r.csv").string();
      if (c == Command::Envelope || c == Command::Plot) cfg.svg_path = (d / "r.svg").string();
      if (c == Command::Oracle) cfg.dump_path = (d / "r.ndjson").string();
      REQUIRE(go(cfg).rc == 0);
      std::string* dst = pass ? b : a;
      // paths differ between the two directories; compare with the directory stripped
      std::string js = slurp(d / "r.json");
      for (size_t p; (p = js.find(d.string())) != std::string::npos;) js.erase(p, d.string().size());
      dst[0] = js;
      dst[1] = fs::exists(d / "r.csv") ? slurp(d / "r.csv") : "";
      dst[2] = fs::exists(d / "r.svg") ? slurp(d / "r.svg") : slurp(d / "r.ndjson");
    }
    INFO(command_name(c));
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    CHECK(a[2] == b[2]);
  }
}

TEST_CASE("staircase figure with two sample tangents") {
  fs::path d = scratch("plot");
  RunConfig cfg;
  cfg.command = Command::Plot;
  cfg.model = ModelId::Staircase;
  cfg.grid.min = 1.5;
  cfg.grid.max = 3;
  cfg.grid.count = 2;
  cfg.svg_path = (d / "p.svg").string();
  REQUIRE(go(cfg).rc == 0);
  std::string svg = slurp(cfg.svg_path);
  size_t lines = 0;
  for (size_t p = 0; (p = svg.find("<line ", p)) != std::string::npos; ++p) ++lines;
  CHECK(lines == 2);
  CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("emit_svg") {
  ImplicitCurve c = parabola_curve();
  std::string only = emit_svg({}, {}, &c, padded_window(c));
  CHECK(only.find("<path") != std::string::npos);
  CHECK(only.find("<line ") == std::string::npos);
  CHECK(only == emit_svg({}, {}, &c, padded_window(c)));
  CHECK_THROWS_AS(emit_svg({}, {}, &c, Frame{1, 1, 0, 1}), domain_error);
  CHECK_THROWS_AS(emit_svg({}, {}, nullptr, padded_window(c)), domain_error);
}

TEST_CASE("command-line binary exit codes") {
  CHECK(shell("verify --model aztec --n 3") == 0);
  CHECK(shell("verify --model hexagon --n 3") == 2);
  CHECK(shell("verify --model vsasm --n 4") == 2);
  CHECK(shell("frobnicate") == 2);
  CHECK(shell("saddle --model aztec --n 256 --tol 1e-9") == 1);
  CHECK(shell("--version") == 0);
  CHECK(std::system(("ARCTIC_ORACLE_BUDGET=10 " + std::string(ARCTIC_CLI_PATH) +
                     " oracle --model aztec --n 3 > /dev/null 2>&1").c_str()) != 0);
}
