#pragma once

#include "diagnostics/diagnostics.hpp"
#include "oracle/dense.hpp"

#include <fstream>
#include <string>

namespace chb {

/// Writes `content` to `path`, replacing it. I/O failures raise an Io error naming the path.
void write_text_file(const std::string& path, const std::string& content);

/// Legacy ASCII VTK STRUCTURED_POINTS with phi, theta, p, umag, ux, uy.
std::string vtk_snapshot(const SimState& s);

/// Output directory of one run: diagnostics.csv (appended row by row), snapshot_NNNNNN.vtk,
/// config.echo.
class OutputWriter {
public:
  OutputWriter(std::string dir, const std::string& config_echo);

  void append_row(const DiagnosticsRow& row);
  void snapshot(const SimState& s, int window);
  const std::string& dir() const noexcept { return dir_; }
  std::string path(const std::string& name) const;

private:
  std::string dir_;
  std::ofstream csv_;
};

/// oracle.csv: label,quantity,value,threshold,pass
std::string oracle_csv(const std::vector<std::pair<std::string, IdentityReport>>& reports);

} // namespace chb
