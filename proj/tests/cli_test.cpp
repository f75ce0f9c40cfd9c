#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "residua/cli.hpp"
#include "residua/generators.hpp"
#include "residua/io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "residua");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = residua::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  return residua::read_file(std::string(RESIDUA_GOLDEN_DIR) + "/" + name);
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("residua_cli_test_" + name);
}

}  // namespace

TEST_CASE("analyze divisor lattice of 12 matches the golden report") {
  Run r = run({"analyze", "--gen", "divisor:12"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("analyze_divisor12.json"));
}

TEST_CASE("report file gets the same bytes") {
  auto path = scratch("report.json");
  Run r = run({"analyze", "--gen", "divisor:12", "--report", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(residua::read_file(path.string()) == golden("analyze_divisor12.json"));
  std::filesystem::remove(path);
}

TEST_CASE("input files round trip through analyze") {
  auto path = scratch("lattice.json");
  {
    std::ofstream f(path);
    f << residua::dump_canonical(residua::lattice_to_json(residua::divisor_lattice(12)));
  }
  Run a = run({"analyze", "--input", path.string()});
  Run b = run({"analyze", "--gen", "divisor:12"});
  CHECK(a.code == 0);
  auto ja = residua::Json::parse(a.out);
  auto jb = residua::Json::parse(b.out);
  CHECK(ja["profiles"] == jb["profiles"]);
  std::filesystem::remove(path);
}

TEST_CASE("laws on a random lattice pass") {
  Run r = run({"laws", "--gen", "random:seed=7,size=50", "--laws", "all"});
  CHECK(r.code == 0);
  auto j = residua::Json::parse(r.out);
  CHECK(j["summary"]["fail"] == 0);
}

TEST_CASE("law reports are deterministic across job counts") {
  Run a = run({"laws", "--gen", "random:seed=5,size=40", "--jobs", "1"});
  Run b = run({"laws", "--gen", "random:seed=5,size=40", "--jobs", "4"});
  CHECK(a.out == b.out);
}

TEST_CASE("testbed ladder and discrepancies") {
  Run r = run({"testbed", "--dims", "2", "--bound", "8", "--cb"});
  CHECK(r.code == 0);
  auto j = residua::Json::parse(r.out);
  CHECK(j["isolation_check"]["mismatches"].empty());
  bool found = false;
  for (const auto& d : j["isolation_check"]["discrepancies"]) found = found || d["element"] == "inf,0";
  CHECK(found);
  CHECK(j["ladder"].size() == 4);
}

TEST_CASE("algebra subcommands") {
  Run g = run({"group", "--name", "Q8"});
  CHECK(g.code == 0);
  CHECK(residua::Json::parse(g.out)["frattini"]["agree"] == true);
  Run ring = run({"ring", "--n", "12"});
  CHECK(ring.code == 0);
  CHECK(residua::Json::parse(ring.out)["jacobson"]["via_mu"] == "(6)");
  Run t = run({"topology", "--gen", "boolean:2"});
  CHECK(t.code == 0);
  CHECK(residua::Json::parse(t.out)["discrete"] == true);
}

TEST_CASE("dot output") {
  Run h = run({"analyze", "--gen", "boolean:2", "--format", "dot"});
  CHECK(h.code == 0);
  CHECK(h.out.rfind("digraph hasse", 0) == 0);
  Run b = run({"analyze", "--gen", "chain:3", "--element", "2", "--format", "dot"});
  CHECK(b.out.rfind("digraph boundary", 0) == 0);
  CHECK(b.out.find("n1 -> n2") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "--gen", "divisor:12", "--input", "x.json"}).code == 2);
  CHECK(run({"analyze", "--gen", "bogus:1"}).code == 2);
  CHECK(run({"analyze", "--input", "/nonexistent/lattice.json"}).code == 2);
  CHECK(run({"laws", "--gen", "chain:3", "--laws", "NOPE"}).code == 2);
  CHECK(run({"testbed", "--dims", "7"}).code == 2);
  CHECK(run({"ring", "--n", "1"}).code == 2);
  CHECK(run({"analyze", "--gen", "chain:3", "--element", "9"}).code == 2);
  Run help = run({"--help"});
  CHECK(help.code == 0);
}
