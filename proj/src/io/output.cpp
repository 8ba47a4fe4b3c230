#include "io/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

namespace chb {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

std::string vtk_snapshot(const SimState& s) {
  const Grid& g = *s.grid();
  const auto n = static_cast<Eigen::Index>(g.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "# vtk DataFile Version 3.0\nchb snapshot t=%.16e\nASCII\nDATASET STRUCTURED_POINTS\n"
                "DIMENSIONS %d %d 1\nORIGIN 0 0 0\nSPACING %.16e %.16e 1\nPOINT_DATA %lld\n",
                s.t, g.nx(), g.ny(), g.hx(), g.hy(), static_cast<long long>(n));
  out += buf;
  const Vec umag = (s.u.x.array().square() + s.u.y.array().square()).sqrt();
  const Vec p = s.derived_valid ? s.p.values : Vec::Zero(n);
  const std::pair<const char*, const Vec*> fields[] = {{"phi", &s.phi.values}, {"theta", &s.theta.values},
                                                       {"p", &p},              {"umag", &umag},
                                                       {"ux", &s.u.x},         {"uy", &s.u.y}};
  for (const auto& [name, v] : fields) {
    out += std::string("SCALARS ") + name + " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index k = 0; k < n; ++k) {
      std::snprintf(buf, sizeof buf, "%.16e\n", (*v)[k]);
      out += buf;
    }
  }
  return out;
}

OutputWriter::OutputWriter(std::string dir, const std::string& config_echo) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory '" + dir_ + "': " + ec.message());
  write_text_file(path("config.echo"), config_echo);
  csv_.open(path("diagnostics.csv"), std::ios::binary | std::ios::trunc);
  if (!csv_) fail(ErrorCode::Io, "cannot open '" + path("diagnostics.csv") + "' for writing");
  csv_ << kDiagnosticsHeader << '\n';
  csv_.flush();
}

std::string OutputWriter::path(const std::string& name) const {
  return (std::filesystem::path(dir_) / name).string();
}

void OutputWriter::append_row(const DiagnosticsRow& row) {
  csv_ << format_row(row) << '\n';
  csv_.flush();
  if (!csv_) fail(ErrorCode::Io, "write to '" + path("diagnostics.csv") + "' failed");
}

void OutputWriter::snapshot(const SimState& s, int window) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%06d.vtk", window);
  write_text_file(path(name), vtk_snapshot(s));
}

std::string oracle_csv(const std::vector<std::pair<std::string, IdentityReport>>& reports) {
  std::string out = "label,quantity,value,threshold,pass\n";
  char buf[256];
  for (const auto& [label, r] : reports)
    for (const auto& c : r.checks) {
      std::snprintf(buf, sizeof buf, "%s,%s,%.16e,%.16e,%d\n", label.c_str(), c.quantity.c_str(), c.value,
                    c.threshold, c.pass() ? 1 : 0);
      out += buf;
    }
  return out;
}

} // namespace chb
