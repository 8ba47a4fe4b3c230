#include "io/config.hpp"
#include "io/output.hpp"
#include "io/run.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("chb_test_" + name);
  fs::remove_all(p);
  return p;
}

int count_snapshots(const fs::path& dir) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ".vtk";
  return n;
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse_config(text);
    FAIL("expected a configuration error for: " << text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, std::string(e.what()));
  }
}

RunConfig small_run() {
  RunConfig c = parse_config("grid.nx = 8\ngrid.ny = 8\nstepper.dt = 1e-3\n");
  return c;
}

} // namespace

TEST_CASE("empty text gives the defaults") {
  CHECK(serialize_config(parse_config("")) == serialize_config(RunConfig{}));
  CHECK(serialize_config(parse_config("# only a comment\n\n   \n")) == serialize_config(RunConfig{}));
}

TEST_CASE("regime switch and comments") {
  const RunConfig c = parse_config("rho = 1   # visco\neps = 0.05\n");
  CHECK(c.material.rho == 1);
  CHECK(c.material.eps == 0.05);
  CHECK(MaterialModel(c.material).visco());
}

TEST_CASE("invalid configurations are rejected with a reason") {
  expect_config_error("m0 = -1", "positivity");
  expect_config_error("no_such_key = 1", "no_such_key");
  expect_config_error("grid.nx = ten", "grid.nx");
  expect_config_error("grid.nx = 2.5", "grid.nx");
  expect_config_error("stepper.dt = 0", "stepper.dt");
  expect_config_error("grid.nx 12", "=");
  expect_config_error("grid.bc.left = glue", "grid.bc.left");
  expect_config_error("grid.bc.left = neumann\ngrid.bc.right = neumann\ngrid.bc.bottom = neumann\ngrid.bc.top = neumann",
                      "dirichlet");
  expect_config_error("rho = 1\nstepper.formulation = pressure", "pressure");
}

TEST_CASE("configurations round-trip bit for bit") {
  RunConfig c;
  c.material.eps = 0.1 / 3.0;
  c.material.tau1 = -1.0 / 7.0;
  c.stepper.dt = 1e-3 / 3.0;
  c.s_fluid.kind = SourcePreset::Gaussian;
  c.s_fluid.amplitude = std::nextafter(0.3, 1.0);
  c.edges[1] = EdgeTag::NeumannTraction;
  c.init.seed = 123456789012345ULL;
  const std::string text = serialize_config(c);
  const RunConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.material.eps == c.material.eps);
  CHECK(back.s_fluid.amplitude == c.s_fluid.amplitude);
  CHECK(back.init.seed == c.init.seed);
  for (const std::string& k : config_keys()) CHECK(text.find(k + " = ") != std::string::npos);
}

TEST_CASE("single assignments") {
  RunConfig c;
  set_config_value(c, "stepper.refresh", "false");
  CHECK_FALSE(c.stepper.refresh_linearization);
  set_config_value(c, "solver.backend", "cg");
  CHECK(c.solver.backend == LinearBackend::CG);
  CHECK_THROWS_AS(set_config_value(c, "stepper.refresh", "maybe"), Error);
}

TEST_CASE("a zero-window run writes the header and the initial row") {
  RunConfig c = small_run();
  c.t_end = 0.0;
  const fs::path dir = scratch("zero");
  Simulation sim(c);
  const RunResult r = sim.run(dir.string());
  CHECK(r.complete);
  CHECK(r.windows == 0);
  const std::string csv = slurp(dir / "diagnostics.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.rfind(kDiagnosticsHeader, 0) == 0);
  CHECK(fs::exists(dir / "config.echo"));
  CHECK(parse_config(slurp(dir / "config.echo")).t_end == 0.0);
}

TEST_CASE("snapshot stride and deterministic replay") {
  RunConfig c = small_run();
  c.t_end = 0.01;
  c.output_stride = 5;
  const fs::path a = scratch("replay_a"), b = scratch("replay_b");
  Simulation s1(c), s2(c);
  CHECK(s1.run(a.string()).windows == 10);
  CHECK(s2.run(b.string()).complete);
  CHECK(count_snapshots(a) == 3);
  CHECK(fs::exists(a / "snapshot_000000.vtk"));
  CHECK(fs::exists(a / "snapshot_000005.vtk"));
  CHECK(fs::exists(a / "snapshot_000010.vtk"));
  CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "snapshot_000010.vtk") == slurp(b / "snapshot_000010.vtk"));
  const std::string csv = slurp(a / "diagnostics.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  CHECK(s1.state().t == 0.01);
}

TEST_CASE("snapshots carry every field") {
  RunConfig c = small_run();
  Simulation sim(c);
  const std::string vtk = vtk_snapshot(sim.state());
  for (const char* f : {"phi", "theta", "p", "umag", "ux", "uy"})
    CHECK(vtk.find(std::string("SCALARS ") + f + " ") != std::string::npos);
  CHECK(vtk.find("DIMENSIONS 8 8 1") != std::string::npos);
}

TEST_CASE("unwritable output is an i/o error") {
  const fs::path file = scratch("not_a_dir");
  { std::ofstream(file) << "x"; }
  try {
    write_text_file((file / "inner.txt").string(), "data");
    FAIL("expected an i/o error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("oracle suite and its csv") {
  const RunConfig c;
  const auto reports = oracle_suite(c);
  CHECK(reports.size() >= 2);
  for (const auto& [label, r] : reports) CHECK_MESSAGE(r.pass(), label);
  const std::string csv = oracle_csv(reports);
  CHECK(csv.rfind("label,quantity,value,threshold,pass\n", 0) == 0);
}
