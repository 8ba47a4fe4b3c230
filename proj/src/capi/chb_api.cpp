#include "chb/chb.h"

#include "diagnostics/convergence.hpp"
#include "io/run.hpp"

#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

struct chb_config {
  chb::RunConfig cfg;
};

struct chb_simulation {
  chb::Simulation sim;
};

namespace {

thread_local std::string g_last_error;

chb_status code_of(chb::ErrorCode c) {
  switch (c) {
  case chb::ErrorCode::InvalidArgument: return CHB_ERR_INVALID_ARGUMENT;
  case chb::ErrorCode::Config: return CHB_ERR_CONFIG;
  case chb::ErrorCode::Coefficient: return CHB_ERR_COEFFICIENT;
  case chb::ErrorCode::Setup: return CHB_ERR_SETUP;
  case chb::ErrorCode::Solver: return CHB_ERR_SOLVER;
  case chb::ErrorCode::Picard: return CHB_ERR_PICARD;
  case chb::ErrorCode::Io: return CHB_ERR_IO;
  case chb::ErrorCode::Size: return CHB_ERR_SIZE;
  }
  return CHB_ERR_INTERNAL;
}

chb_status set_error(chb_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
chb_status guarded(F&& f) {
  try {
    return f();
  } catch (const chb::Error& e) {
    return set_error(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CHB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CHB_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CHB_ERR_INTERNAL, "unknown exception");
  }
}

chb_status null_arg(const char* what) { return set_error(CHB_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

chb_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1)
    return set_error(CHB_ERR_SIZE, "buffer of " + std::to_string(cap) + " bytes is too small, need " +
                                       std::to_string(s.size() + 1));
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return CHB_OK;
}

} // namespace

extern "C" {

const char* chb_last_error(void) { return g_last_error.c_str(); }

const char* chb_status_string(chb_status s) {
  switch (s) {
  case CHB_OK: return "ok";
  case CHB_ERR_INVALID_ARGUMENT: return "invalid argument";
  case CHB_ERR_CONFIG: return "configuration error";
  case CHB_ERR_COEFFICIENT: return "coefficient positivity violated";
  case CHB_ERR_SETUP: return "setup error";
  case CHB_ERR_SOLVER: return "linear solver failure";
  case CHB_ERR_PICARD: return "fixed-point iteration failure";
  case CHB_ERR_IO: return "i/o error";
  case CHB_ERR_SIZE: return "size error";
  case CHB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

chb_status chb_config_parse(const char* text, chb_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new chb_config{chb::parse_config(text)};
    return CHB_OK;
  });
}

chb_status chb_config_load(const char* path, chb_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new chb_config{chb::load_config(path)};
    return CHB_OK;
  });
}

chb_status chb_config_set(chb_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] {
    chb::RunConfig copy = cfg->cfg;
    chb::set_config_value(copy, key, value);
    copy.validate();
    cfg->cfg = std::move(copy);
    return CHB_OK;
  });
}

chb_status chb_config_serialize(const chb_config* cfg, char* buf, size_t cap, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return copy_out(chb::serialize_config(cfg->cfg), buf, cap, needed); });
}

void chb_config_destroy(chb_config* cfg) { delete cfg; }

chb_status chb_simulation_create(const chb_config* cfg, chb_simulation** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new chb_simulation{chb::Simulation(cfg->cfg)};
    return CHB_OK;
  });
}

void chb_simulation_destroy(chb_simulation* sim) { delete sim; }

chb_status chb_simulation_step(chb_simulation* sim, chb_window_info* info) {
  if (!sim) return null_arg("sim");
  return guarded([&] {
    const chb::PicardReport& r = sim->sim.step();
    if (info) *info = chb_window_info{r.t_start, r.dt_used, r.iterations, r.shrinks, r.rho};
    return CHB_OK;
  });
}

chb_status chb_simulation_run(chb_simulation* sim, const char* out_dir, int* complete) {
  if (!sim) return null_arg("sim");
  return guarded([&] {
    const chb::RunResult r = sim->sim.run(out_dir ? out_dir : "");
    if (complete) *complete = r.complete ? 1 : 0;
    return r.complete ? CHB_OK : set_error(CHB_ERR_PICARD, r.failure);
  });
}

chb_status chb_simulation_time(const chb_simulation* sim, double* t) {
  if (!sim) return null_arg("sim");
  if (!t) return null_arg("t");
  *t = sim->sim.state().t;
  return CHB_OK;
}

chb_status chb_simulation_grid(const chb_simulation* sim, int* nx, int* ny) {
  if (!sim) return null_arg("sim");
  if (nx) *nx = sim->sim.grid()->nx();
  if (ny) *ny = sim->sim.grid()->ny();
  return CHB_OK;
}

chb_status chb_simulation_field(const chb_simulation* sim, chb_field field, double* out, size_t len) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  const chb::SimState& s = sim->sim.state();
  const std::size_t n = s.grid()->size();
  if (len < n) return set_error(CHB_ERR_SIZE, "field buffer needs " + std::to_string(n) + " values");
  const chb::Vec* v = nullptr;
  switch (field) {
  case CHB_FIELD_PHI: v = &s.phi.values; break;
  case CHB_FIELD_THETA: v = &s.theta.values; break;
  case CHB_FIELD_PRESSURE: v = &s.p.values; break;
  case CHB_FIELD_MU: v = &s.mu.values; break;
  case CHB_FIELD_UX: v = &s.u.x; break;
  case CHB_FIELD_UY: v = &s.u.y; break;
  }
  if (!v) return set_error(CHB_ERR_INVALID_ARGUMENT, "unknown field id");
  std::memcpy(out, v->data(), n * sizeof(double));
  return CHB_OK;
}

chb_status chb_simulation_diagnostics(const chb_simulation* sim, chb_diagnostics* out) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  const chb::DiagnosticsRow& r = sim->sim.rows().back();
  *out = chb_diagnostics{r.t,        r.E_total,    r.E_interface,  r.E_elastic, r.E_fluid, r.mass_phi,
                         r.mass_theta, r.picard_iters, r.rho, r.residual, r.dt};
  return CHB_OK;
}

chb_status chb_oracle_report(const chb_config* cfg, const char* out_dir, char* buf, size_t cap, size_t* needed,
                             int* all_pass) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    const auto reports = chb::oracle_suite(cfg->cfg);
    std::string text;
    bool pass = true;
    for (const auto& [label, r] : reports) {
      text += label + "\n" + r.table() + "\n";
      pass = pass && r.pass();
    }
    if (out_dir) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) chb::fail(chb::ErrorCode::Io, std::string("cannot create output directory '") + out_dir + "'");
      chb::write_text_file((std::filesystem::path(out_dir) / "oracle.csv").string(), chb::oracle_csv(reports));
    }
    if (all_pass) *all_pass = pass ? 1 : 0;
    return copy_out(text, buf, cap, needed);
  });
}

chb_status chb_mms_report(char* buf, size_t cap, size_t* needed, int* all_pass) {
  return guarded([&] {
    const auto tables = chb::default_convergence_suite();
    std::string text;
    for (const auto& t : tables) text += t.format() + "\n";
    const bool pass = tables[0].order >= 1.8 && tables[0].order <= 2.2 && tables[1].order >= 0.85 &&
                      tables[1].order <= 1.15 && tables[2].order >= 1.8 && tables[3].order >= 1.8;
    if (all_pass) *all_pass = pass ? 1 : 0;
    return copy_out(text, buf, cap, needed);
  });
}

} // extern "C"
