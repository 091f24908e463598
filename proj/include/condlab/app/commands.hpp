#pragma once

#include <filesystem>
#include <iosfwd>

#include "condlab/app/config.hpp"

namespace condlab::app {

struct Context {
  std::filesystem::path out_dir;
  bool verbose = false;
  std::ostream* log;  ///< diagnostics and warnings
};

/// occupations.csv (sigma, k, nu) and family.json (spec + per-sigma totals).
void cmd_family(const RunConfig& config, const Context& ctx);
/// report.json and report.csv.
void cmd_criterion(const RunConfig& config, const Context& ctx);
/// scan.csv; warns when n_C/|O| <= n_R/|O0|.
void cmd_scan(const RunConfig& config, const Context& ctx);
/// spectrum.csv.
void cmd_spectrum(const RunConfig& config, const Context& ctx);

/// Exclusive lock on an output directory, released on destruction.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

/// Parses argv, runs the subcommand and maps failures to exit codes:
/// 0 ok, 1 I/O or usage, 2 config, 3 numerical.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace condlab::app
