#include "io/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace chb {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  fail(ErrorCode::Config, "value '" + value + "' for key '" + key + "' is not " + expected);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) bad_value(key, v, "a finite number");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, v, "an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  bad_value(key, v, "a boolean (true/false)");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class Member>
Key dbl(std::string name, Member m) {
  return {std::move(name), [m](RunConfig& c, const std::string& k, const std::string& v) { m(c) = to_double(k, v); },
          [m](const RunConfig& c) { return fmt(m(const_cast<RunConfig&>(c))); }};
}

template <class Member>
Key integer(std::string name, Member m) {
  return {std::move(name),
          [m](RunConfig& c, const std::string& k, const std::string& v) {
            const long long x = to_int(k, v);
            if (x < -2147483647LL || x > 2147483647LL) bad_value(k, v, "a 32-bit integer");
            m(c) = static_cast<int>(x);
          },
          [m](const RunConfig& c) { return std::to_string(m(const_cast<RunConfig&>(c))); }};
}

template <class Member>
Key boolean(std::string name, Member m) {
  return {std::move(name), [m](RunConfig& c, const std::string& k, const std::string& v) { m(c) = to_bool(k, v); },
          [m](const RunConfig& c) { return std::string(m(const_cast<RunConfig&>(c)) ? "true" : "false"); }};
}

template <class E, class Member>
Key enumeration(std::string name, Member m, std::vector<std::pair<const char*, E>> names) {
  return {std::move(name),
          [m, names](RunConfig& c, const std::string& k, const std::string& v) {
            for (const auto& [s, e] : names)
              if (v == s) {
                m(c) = e;
                return;
              }
            std::string opts;
            for (const auto& [s, e] : names) opts += (opts.empty() ? "" : ", ") + std::string(s);
            fail(ErrorCode::Config, "value '" + v + "' for key '" + k + "' must be one of: " + opts);
          },
          [m, names](const RunConfig& c) {
            for (const auto& [s, e] : names)
              if (m(const_cast<RunConfig&>(c)) == e) return std::string(s);
            return std::string("?");
          }};
}

const std::vector<std::pair<const char*, EdgeTag>> kTags = {{"dirichlet", EdgeTag::DirichletDisplacement},
                                                            {"neumann", EdgeTag::NeumannTraction}};

void add_preset(std::vector<Key>& keys, const std::string& prefix, PresetParams RunConfig::*member) {
  auto ref = [member](RunConfig& c) -> PresetParams& { return c.*member; };
  keys.push_back(enumeration<SourcePreset>(prefix + ".kind", [ref](RunConfig& c) -> SourcePreset& { return ref(c).kind; },
                                           {{"zero", SourcePreset::Zero},
                                            {"constant", SourcePreset::Constant},
                                            {"gaussian", SourcePreset::Gaussian},
                                            {"ramp", SourcePreset::Ramp}}));
  keys.push_back(dbl(prefix + ".amplitude", [ref](RunConfig& c) -> double& { return ref(c).amplitude; }));
  keys.push_back(dbl(prefix + ".x0", [ref](RunConfig& c) -> double& { return ref(c).x0; }));
  keys.push_back(dbl(prefix + ".y0", [ref](RunConfig& c) -> double& { return ref(c).y0; }));
  keys.push_back(dbl(prefix + ".width", [ref](RunConfig& c) -> double& { return ref(c).width; }));
  keys.push_back(dbl(prefix + ".ramp_time", [ref](RunConfig& c) -> double& { return ref(c).ramp_time; }));
}

#define FIELD(expr) [](RunConfig & c) -> auto& { return expr; }

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back(integer("grid.nx", FIELD(c.nx)));
    k.push_back(integer("grid.ny", FIELD(c.ny)));
    k.push_back(dbl("grid.lx", FIELD(c.lx)));
    k.push_back(dbl("grid.ly", FIELD(c.ly)));
    k.push_back(enumeration<EdgeTag>("grid.bc.left", FIELD(c.edges[0]), kTags));
    k.push_back(enumeration<EdgeTag>("grid.bc.right", FIELD(c.edges[1]), kTags));
    k.push_back(enumeration<EdgeTag>("grid.bc.bottom", FIELD(c.edges[2]), kTags));
    k.push_back(enumeration<EdgeTag>("grid.bc.top", FIELD(c.edges[3]), kTags));

    k.push_back(dbl("eps", FIELD(c.material.eps)));
    k.push_back(integer("rho", FIELD(c.material.rho)));
    k.push_back(dbl("m0", FIELD(c.material.m0)));
    k.push_back(dbl("m1", FIELD(c.material.m1)));
    k.push_back(dbl("kappa0", FIELD(c.material.kappa0)));
    k.push_back(dbl("kappa1", FIELD(c.material.kappa1)));
    k.push_back(dbl("biot_m0", FIELD(c.material.biot_m0)));
    k.push_back(dbl("biot_m1", FIELD(c.material.biot_m1)));
    k.push_back(dbl("alpha0", FIELD(c.material.alpha0)));
    k.push_back(dbl("alpha1", FIELD(c.material.alpha1)));
    k.push_back(dbl("psi_scale", FIELD(c.material.psi_scale)));
    k.push_back(dbl("lame.lambda0", FIELD(c.material.lambda0)));
    k.push_back(dbl("lame.lambda1", FIELD(c.material.lambda1)));
    k.push_back(dbl("lame.mu0", FIELD(c.material.mu0)));
    k.push_back(dbl("lame.mu1", FIELD(c.material.mu1)));
    k.push_back(dbl("visco.lambda0", FIELD(c.material.visco_lambda0)));
    k.push_back(dbl("visco.lambda1", FIELD(c.material.visco_lambda1)));
    k.push_back(dbl("visco.mu0", FIELD(c.material.visco_mu0)));
    k.push_back(dbl("visco.mu1", FIELD(c.material.visco_mu1)));
    k.push_back(dbl("tau0", FIELD(c.material.tau0)));
    k.push_back(dbl("tau1", FIELD(c.material.tau1)));

    k.push_back(dbl("stepper.dt", FIELD(c.stepper.dt)));
    k.push_back(dbl("stepper.t_end", FIELD(c.t_end)));
    k.push_back(dbl("stepper.tol_picard", FIELD(c.stepper.tol_picard)));
    k.push_back(integer("stepper.max_picard", FIELD(c.stepper.max_picard_iters)));
    k.push_back(dbl("stepper.shrink", FIELD(c.stepper.shrink_factor)));
    k.push_back(integer("stepper.max_shrinks", FIELD(c.stepper.max_shrinks)));
    k.push_back(boolean("stepper.refresh", FIELD(c.stepper.refresh_linearization)));
    k.push_back(enumeration<Formulation>("stepper.formulation", FIELD(c.stepper.formulation),
                                         {{"theta", Formulation::FluidContent}, {"pressure", Formulation::Pressure}}));

    k.push_back(enumeration<LinearBackend>("solver.backend", FIELD(c.solver.backend),
                                           {{"cholesky", LinearBackend::Cholesky}, {"cg", LinearBackend::CG}}));
    k.push_back(dbl("solver.tol_lin", FIELD(c.solver.lin.tol_rel)));
    k.push_back(dbl("solver.tol_abs", FIELD(c.solver.lin.tol_abs)));
    k.push_back(integer("solver.max_iter", FIELD(c.solver.lin.max_iter)));

    add_preset(k, "source.phase", &RunConfig::s_phase);
    add_preset(k, "source.fluid", &RunConfig::s_fluid);
    add_preset(k, "source.force_x", &RunConfig::force_x);
    add_preset(k, "source.force_y", &RunConfig::force_y);
    add_preset(k, "source.traction_x", &RunConfig::traction_x);
    add_preset(k, "source.traction_y", &RunConfig::traction_y);

    k.push_back(enumeration<PhiInit>("init.phi", FIELD(c.init.phi),
                                     {{"constant", PhiInit::Constant},
                                      {"interface", PhiInit::Interface},
                                      {"spinodal", PhiInit::Spinodal}}));
    k.push_back(dbl("init.phi_value", FIELD(c.init.phi_value)));
    k.push_back(dbl("init.noise", FIELD(c.init.noise)));
    k.push_back({"init.seed",
                 [](RunConfig& c, const std::string& key, const std::string& v) {
                   const long long x = to_int(key, v);
                   if (x < 0) bad_value(key, v, "a nonnegative integer");
                   c.init.seed = static_cast<std::uint64_t>(x);
                 },
                 [](const RunConfig& c) { return std::to_string(c.init.seed); }});
    k.push_back(enumeration<ThetaInit>("init.theta", FIELD(c.init.theta),
                                       {{"constant", ThetaInit::Constant},
                                        {"gaussian", ThetaInit::Gaussian},
                                        {"cosine", ThetaInit::Cosine}}));
    k.push_back(dbl("init.theta_value", FIELD(c.init.theta_value)));
    k.push_back(dbl("init.theta_amplitude", FIELD(c.init.theta_amplitude)));

    k.push_back({"output.dir", [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; },
                 [](const RunConfig& c) { return c.output_dir; }});
    k.push_back(integer("output.stride", FIELD(c.output_stride)));
    return k;
  }();
  return keys;
}

#undef FIELD

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key_syntax(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.')) return false;
  return k.find("..") == std::string::npos;
}

} // namespace

void set_config_value(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), value = trim(value_in);
  if (!valid_key_syntax(key))
    fail(ErrorCode::Config, "malformed key '" + key + "': keys are dot-separated lowercase identifiers");
  for (const auto& k : key_table())
    if (k.name == key) {
      k.set(cfg, key, value);
      return;
    }
  fail(ErrorCode::Config, "unknown configuration key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::Config, "line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    try {
      set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      fail(ErrorCode::Config, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Io, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : key_table()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.push_back(k.name);
  return out;
}

void RunConfig::validate() const {
  if (nx < 4 || ny < 4) fail(ErrorCode::Config, "grid.nx and grid.ny must be at least 4");
  if (!(lx > 0.0 && ly > 0.0)) fail(ErrorCode::Config, "grid.lx and grid.ly must be positive");
  bool dirichlet = false;
  for (auto t : edges) dirichlet = dirichlet || t == EdgeTag::DirichletDisplacement;
  if (!dirichlet)
    fail(ErrorCode::Config, "at least one grid.bc edge must be dirichlet so the displacement problem is invertible");
  MaterialModel{material};
  stepper.validate();
  if (!(t_end >= 0.0)) fail(ErrorCode::Config, "stepper.t_end must be nonnegative");
  if (stepper.formulation == Formulation::Pressure && material.rho != 0)
    fail(ErrorCode::Config, "stepper.formulation = pressure requires rho = 0");
  if (!(solver.lin.tol_rel > 0.0) || !(solver.lin.tol_abs >= 0.0))
    fail(ErrorCode::Config, "solver tolerances must be positive");
  if (solver.lin.max_iter < 1) fail(ErrorCode::Config, "solver.max_iter must be at least 1");
  for (const PresetParams* p : {&s_phase, &s_fluid, &force_x, &force_y, &traction_x, &traction_y}) {
    if (p->kind == SourcePreset::Gaussian && !(p->width > 0.0))
      fail(ErrorCode::Config, "gaussian source width must be positive");
    if (p->kind == SourcePreset::Ramp && !(p->ramp_time > 0.0))
      fail(ErrorCode::Config, "ramp source ramp_time must be positive");
  }
  if (!(init.noise >= 0.0)) fail(ErrorCode::Config, "init.noise must be nonnegative");
  if (output_stride < 1) fail(ErrorCode::Config, "output.stride must be at least 1");
}

SourceSpec RunConfig::sources() const {
  return make_sources(s_phase, s_fluid, force_x, force_y, traction_x, traction_y);
}

} // namespace chb
