#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsloc/cli.hpp"

using namespace bsloc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(std::string sub, std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.subcommand = std::move(sub);
  c.inputs = std::move(inputs);
  return c;
}

std::string data(const char* name) { return std::string(BSLOC_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bsloc_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return (dir / name).string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, RrTorusCrossCheck) {
  RunConfig c = config("rr", {data("torus_n3.json")});
  c.cross_check = true;
  Result r = run_cli(c);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("total,,3"), std::string::npos);
  EXPECT_NE(r.err.find("RR=3"), std::string::npos);
}

TEST(Cli, RrEmptyAssembly) {
  Result r = run_cli(config("rr", {data("empty.json")}));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("total,,0"), std::string::npos);
}

TEST(Cli, RrJsonFormat) {
  RunConfig c = config("rr", {data("sphere.json")});
  c.format = OutputFormat::Json;
  Result r = run_cli(c);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"rr\": 1"), std::string::npos);
}

TEST(Cli, MalformedJsonIsInputError) {
  fs::path d = scratch("malformed");
  Result r = run_cli(config("rr", {write(d, "bad.json", "{\n  \"pieces\": [,]\n}")}));
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("bad.json:2:"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli(config("rr", {(d / "missing.json").string()})).code, kExitInput);
  EXPECT_EQ(run_cli(config("rr")).code, kExitInput);
  EXPECT_EQ(run_cli(config("nope")).code, kExitInput);
}

TEST(Cli, ValidateReportsBadGluing) {
  fs::path d = scratch("validate");
  std::string bad = write(d, "bad.json", R"({"pieces": [{"kind": "disk", "profile": [[0, 0], [1, 0.25]]},
    {"kind": "disk", "profile": [[0, 0], [1, 0.25]]}], "gluings": [[["p0", "b0"], ["p1", "b0"]]]})");
  Result r = run_cli(config("validate", {data("sphere.json"), bad}));
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.out.find("IncompatibleGluing"), std::string::npos);
  EXPECT_EQ(run_cli(config("validate", {data("torus_model_n3.json")})).code, kExitOk);
}

TEST(Cli, Modes) {
  Result r = run_cli(config("modes", {data("bs_plus.json")}));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("0,even"), std::string::npos);
  EXPECT_NE(r.out.find("index,,1"), std::string::npos);
}

TEST(Cli, SpectrumTorus) {
  Result r = run_cli(config("spectrum", {data("torus_model_n3.json")}));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("index=3"), std::string::npos);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.substr(0, 12), "t,sv_1_even,");
  EXPECT_NE(header.find("sv_20_odd,kernel_even,kernel_odd,index,gap,localization_fraction"), std::string::npos);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

TEST(Cli, SpectrumUnresolved) {
  fs::path d = scratch("unresolved");
  std::string m = write(d, "t.json", R"({"kind": "torus", "N": 1, "t": 0, "grid": 16})");
  Result r = run_cli(config("spectrum", {m}));
  EXPECT_TRUE(r.code == kExitUnresolved || r.code == kExitOk) << r.err;
  std::string coarse = write(d, "c.json", R"({"kind": "torus", "N": 1, "t": 40, "grid": 16})");
  EXPECT_EQ(run_cli(config("spectrum", {coarse})).code, kExitInput);
}

TEST(Cli, SweepAcyclic) {
  RunConfig c = config("sweep", {data("acyclic_cylinder.json")});
  c.t_list = {1.0, 5.0, 20.0};
  Result r = run_cli(c);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, Product) {
  RunConfig c = config("product", {data("bs_plus.json"), data("bs_plus.json")});
  c.format = OutputFormat::Json;
  Result r = run_cli(c);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"index\": 1"), std::string::npos);
  RunConfig t = config("product", {data("torus_n3.json"), data("torus_n3.json")});
  t.format = OutputFormat::Json;
  Result rt = run_cli(t);
  EXPECT_NE(rt.out.find("\"bs_fibers\": 9"), std::string::npos) << rt.out;
}

TEST(Cli, FuzzDeterministicReports) {
  fs::path a = scratch("fuzz_a"), b = scratch("fuzz_b");
  RunConfig c = config("fuzz");
  c.count = 40;
  c.seed = 7;
  c.spectral_samples = 2;
  c.out_dir = a.string();
  Result ra = run_cli(c);
  c.out_dir = b.string();
  Result rb = run_cli(c);
  EXPECT_EQ(ra.code, kExitOk);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(slurp(a / "fuzz.csv"), slurp(b / "fuzz.csv"));
  EXPECT_EQ(slurp(a / "fuzz.json"), slurp(b / "fuzz.json"));
  EXPECT_NE(ra.err.find("40/40"), std::string::npos);
}

TEST(Cli, SpectrumDeterministicReports) {
  fs::path a = scratch("spec_a"), b = scratch("spec_b");
  RunConfig c = config("spectrum", {data("torus_model_n3.json")});
  c.out_dir = a.string();
  run_cli(c);
  c.out_dir = b.string();
  run_cli(c);
  EXPECT_EQ(slurp(a / "spectrum.csv"), slurp(b / "spectrum.csv"));
  EXPECT_EQ(slurp(a / "spectrum.json"), slurp(b / "spectrum.json"));
  EXPECT_FALSE(slurp(a / "spectrum.json").empty());
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = BSLOC_CLI;
  auto sh = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(sh("rr " + data("torus_n3.json") + " --cross-check"), 0);
  EXPECT_EQ(sh("fuzz --count 10 --seed 7"), 0);
  EXPECT_EQ(sh("rr /nonexistent.json"), 1);
  EXPECT_EQ(sh("--format yaml rr " + data("torus_n3.json")), 1);
  EXPECT_EQ(sh("rr"), 1);
  EXPECT_EQ(std::system(("BS_LOCALIZE_THREADS=1 " + bin + " sweep " + data("flat_torus.json") +
                         " --t 1,5,20 > /dev/null 2>&1").c_str()), 0);
}
