#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dynwalk/estimate.hpp"

// Experiment output: one Report per command invocation, one ReportRow per
// checked quantity.  JSON carries everything including wall time; CSV
// carries only the deterministic columns so that rerunning a seed yields
// byte-identical files regardless of machine load or worker count.

namespace dynwalk::report {

struct ReportRow {
  std::string experiment;
  std::string parameter; // e.g. "z", "pair", "a"
  double value = 0;      // the parameter value
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double band_low = 0;
  double band_high = 0;
  experiments::Verdict verdict = experiments::Verdict::Info;
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 0;
  std::string note;
};

struct Report {
  int schema_version = 1;
  std::string command;
  std::uint64_t master_seed = 0;
  std::map<std::string, std::string> config; // resolved key=value settings
  std::string git_describe;
  std::vector<ReportRow> rows;
  double wall_time_seconds = 0; // JSON only, never in CSV
};

/// The git-describe string baked in at build time ("unknown" outside a
/// checkout).
std::string build_describe();

/// Worst verdict across rows: Fail > Underpowered > Pass; Info rows are
/// ignored.  A report with only Info rows counts as Pass.
experiments::Verdict overall_verdict(const Report& r);

std::string to_json(const Report& r);
Report from_json(const std::string& text); // inverse of to_json

/// Fixed-column CSV: header plus one line per row.  Numeric fields are
/// printed with %.17g so values round-trip exactly.
void write_csv(const Report& r, std::ostream& os);

/// Writes to a temporary sibling then renames into place; the temporary
/// is removed on failure.  Throws std::runtime_error on IO errors.
void save_json(const Report& r, const std::string& path);
void save_csv(const Report& r, const std::string& path);

} // namespace dynwalk::report
