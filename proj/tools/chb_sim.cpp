// Command-line driver. Links only the C interface in chb/chb.h.

#include "chb/chb.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

int report(chb_status s, const char* what) {
  std::fprintf(stderr, "chb_sim: %s: %s (%s)\n", what, chb_last_error(), chb_status_string(s));
  return static_cast<int>(s) == 0 ? 0 : 2;
}

// Calls f(buf, cap, needed) and retries once with the size it asks for.
template <class F>
chb_status fetch_text(F&& f, std::string& out) {
  std::vector<char> buf(1 << 16);
  size_t needed = 0;
  chb_status s = f(buf.data(), buf.size(), &needed);
  if (s == CHB_ERR_SIZE && needed > buf.size()) {
    buf.resize(needed);
    s = f(buf.data(), buf.size(), &needed);
  }
  if (s == CHB_OK) out.assign(buf.data());
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cahn-Hilliard-Biot simulator"};
  std::string config_path, out_dir = "";
  std::vector<std::string> overrides;
  bool oracle = false, mms = false, quiet = false;
  app.add_option("-c,--config", config_path, "configuration file (key = value lines)")->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("-s,--set", overrides, "override KEY=VALUE, repeatable");
  app.add_flag("--oracle", oracle, "run the dense operator checks instead of a simulation");
  app.add_flag("--mms", mms, "run the convergence studies instead of a simulation");
  app.add_flag("-q,--quiet", quiet, "no per-window output");
  CLI11_PARSE(app, argc, argv);

  if (mms) {
    std::string text;
    int pass = 0;
    const chb_status s = fetch_text([&](char* b, size_t c, size_t* n) { return chb_mms_report(b, c, n, &pass); }, text);
    if (s != CHB_OK) return report(s, "convergence studies");
    std::fputs(text.c_str(), stdout);
    return pass ? 0 : 1;
  }

  chb_config* cfg = nullptr;
  chb_status s = config_path.empty() ? chb_config_parse("", &cfg) : chb_config_load(config_path.c_str(), &cfg);
  if (s != CHB_OK) return report(s, "configuration");
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "chb_sim: override '%s' is not KEY=VALUE\n", kv.c_str());
      chb_config_destroy(cfg);
      return 2;
    }
    s = chb_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != CHB_OK) {
      chb_config_destroy(cfg);
      return report(s, kv.c_str());
    }
  }
  if (!out_dir.empty()) {
    s = chb_config_set(cfg, "output.dir", out_dir.c_str());
    if (s != CHB_OK) {
      chb_config_destroy(cfg);
      return report(s, "output.dir");
    }
  }
  std::string resolved;
  s = fetch_text([&](char* b, size_t c, size_t* n) { return chb_config_serialize(cfg, b, c, n); }, resolved);
  if (s != CHB_OK) {
    chb_config_destroy(cfg);
    return report(s, "configuration");
  }
  std::string dir = "out";
  for (std::size_t pos = 0; pos < resolved.size();) {
    const std::size_t end = resolved.find('\n', pos);
    const std::string line = resolved.substr(pos, end - pos);
    if (line.rfind("output.dir = ", 0) == 0) dir = line.substr(13);
    pos = end == std::string::npos ? resolved.size() : end + 1;
  }

  if (oracle) {
    std::string text;
    int pass = 0;
    s = fetch_text(
        [&](char* b, size_t c, size_t* n) { return chb_oracle_report(cfg, dir.c_str(), b, c, n, &pass); }, text);
    chb_config_destroy(cfg);
    if (s != CHB_OK) return report(s, "oracle");
    std::fputs(text.c_str(), stdout);
    return pass ? 0 : 1;
  }

  chb_simulation* sim = nullptr;
  s = chb_simulation_create(cfg, &sim);
  chb_config_destroy(cfg);
  if (s != CHB_OK) return report(s, "setup");
  int complete = 0;
  s = chb_simulation_run(sim, dir.c_str(), &complete);
  if (!quiet || s != CHB_OK) {
    chb_diagnostics d{};
    if (chb_simulation_diagnostics(sim, &d) == CHB_OK)
      std::printf("t = %.6g  E = %.10e  mean(phi) = %.12e  mean(theta) = %.12e\n", d.t, d.e_total, d.mass_phi,
                  d.mass_theta);
  }
  const int rc = s == CHB_OK && complete ? 0 : 1;
  if (s != CHB_OK) report(s, "run");
  chb_simulation_destroy(sim);
  return rc;
}
