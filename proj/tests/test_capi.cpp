// Exercises the shared library through the public header only.

#include "chb/chb.h"

#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

namespace {

struct Config {
  chb_config* ptr = nullptr;
  ~Config() { chb_config_destroy(ptr); }
};

struct Sim {
  chb_simulation* ptr = nullptr;
  ~Sim() { chb_simulation_destroy(ptr); }
};

} // namespace

TEST_CASE("configuration through the C interface") {
  Config c;
  REQUIRE(chb_config_parse("grid.nx = 8\ngrid.ny = 8\n", &c.ptr) == CHB_OK);
  CHECK(chb_config_set(c.ptr, "stepper.t_end", "0.005") == CHB_OK);

  size_t needed = 0;
  char tiny[8];
  CHECK(chb_config_serialize(c.ptr, tiny, sizeof tiny, &needed) == CHB_ERR_SIZE);
  REQUIRE(needed > sizeof tiny);
  std::vector<char> buf(needed);
  REQUIRE(chb_config_serialize(c.ptr, buf.data(), buf.size(), &needed) == CHB_OK);
  CHECK(std::strlen(buf.data()) + 1 == needed);
  CHECK(std::string(buf.data()).find("stepper.t_end = 0.005") != std::string::npos);

  CHECK(chb_config_set(c.ptr, "m0", "-1") == CHB_ERR_CONFIG);
  CHECK(std::string(chb_last_error()).find("positivity") != std::string::npos);
  // a rejected assignment leaves the configuration unchanged
  REQUIRE(chb_config_serialize(c.ptr, buf.data(), buf.size(), &needed) == CHB_OK);
  CHECK(std::string(buf.data()).find("m0 = 0.1") != std::string::npos);

  Config bad;
  CHECK(chb_config_parse("grid.nx = many", &bad.ptr) == CHB_ERR_CONFIG);
  CHECK(bad.ptr == nullptr);
  CHECK(chb_config_load("/nonexistent/chb.cfg", &bad.ptr) == CHB_ERR_IO);
}

TEST_CASE("null arguments are reported, not dereferenced") {
  chb_config* c = nullptr;
  CHECK(chb_config_parse(nullptr, &c) == CHB_ERR_INVALID_ARGUMENT);
  CHECK(chb_config_set(nullptr, "a", "b") == CHB_ERR_INVALID_ARGUMENT);
  CHECK(chb_simulation_step(nullptr, nullptr) == CHB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(chb_last_error()).find("NULL") != std::string::npos);
  chb_config_destroy(nullptr);
  chb_simulation_destroy(nullptr);
  CHECK(std::string(chb_status_string(CHB_ERR_PICARD)).size() > 0);
}

TEST_CASE("stepping a simulation and reading fields") {
  Config c;
  REQUIRE(chb_config_parse("grid.nx = 8\ngrid.ny = 6\nstepper.t_end = 0.003\n", &c.ptr) == CHB_OK);
  Sim s;
  REQUIRE(chb_simulation_create(c.ptr, &s.ptr) == CHB_OK);
  int nx = 0, ny = 0;
  CHECK(chb_simulation_grid(s.ptr, &nx, &ny) == CHB_OK);
  CHECK(nx == 8);
  CHECK(ny == 6);

  chb_diagnostics d0{};
  REQUIRE(chb_simulation_diagnostics(s.ptr, &d0) == CHB_OK);
  CHECK(d0.t == 0.0);
  chb_window_info w{};
  REQUIRE(chb_simulation_step(s.ptr, &w) == CHB_OK);
  CHECK(w.dt == doctest::Approx(1e-3));
  CHECK(w.picard_iters >= 1);
  double t = 0.0;
  CHECK(chb_simulation_time(s.ptr, &t) == CHB_OK);
  CHECK(t == doctest::Approx(1e-3));

  std::vector<double> phi(48);
  CHECK(chb_simulation_field(s.ptr, CHB_FIELD_PHI, phi.data(), 47) == CHB_ERR_SIZE);
  REQUIRE(chb_simulation_field(s.ptr, CHB_FIELD_PHI, phi.data(), phi.size()) == CHB_OK);
  for (int f = CHB_FIELD_PHI; f <= CHB_FIELD_UY; ++f)
    CHECK(chb_simulation_field(s.ptr, static_cast<chb_field>(f), phi.data(), phi.size()) == CHB_OK);

  int complete = 0;
  CHECK(chb_simulation_run(s.ptr, nullptr, &complete) == CHB_OK);
  CHECK(complete == 1);
  chb_diagnostics d{};
  REQUIRE(chb_simulation_diagnostics(s.ptr, &d) == CHB_OK);
  CHECK(d.t == doctest::Approx(0.003));
  CHECK(d.mass_phi == doctest::Approx(d0.mass_phi).epsilon(1e-12));
}

TEST_CASE("oracle report through the C interface") {
  Config c;
  REQUIRE(chb_config_parse("", &c.ptr) == CHB_OK);
  size_t needed = 0;
  int pass = 0;
  CHECK(chb_oracle_report(c.ptr, nullptr, nullptr, 0, &needed, &pass) == CHB_ERR_SIZE);
  std::vector<char> buf(needed);
  REQUIRE(chb_oracle_report(c.ptr, "capi_oracle", buf.data(), buf.size(), &needed, &pass) == CHB_OK);
  CHECK(pass == 1);
  CHECK(std::string(buf.data()).find("decoupled") != std::string::npos);
}
