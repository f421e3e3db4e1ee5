#include "dynwalk/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dynwalk::report {

using experiments::Verdict;
using nlohmann::json;

namespace {

Verdict verdict_from_name(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "underpowered") return Verdict::Underpowered;
  if (s == "info") return Verdict::Info;
  throw std::runtime_error("report: unknown verdict '" + s + "'");
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

std::string build_describe() {
#ifdef DYNWALK_GIT_DESCRIBE
  return DYNWALK_GIT_DESCRIBE;
#else
  return "unknown";
#endif
}

Verdict overall_verdict(const Report& r) {
  Verdict worst = Verdict::Pass;
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::Fail: return 2;
      case Verdict::Underpowered: return 1;
      default: return 0;
    }
  };
  for (const auto& row : r.rows) {
    if (row.verdict == Verdict::Info) continue;
    if (rank(row.verdict) > rank(worst)) worst = row.verdict;
  }
  return worst;
}

std::string to_json(const Report& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["command"] = r.command;
  j["master_seed"] = r.master_seed;
  j["config"] = r.config;
  j["git_describe"] = r.git_describe;
  j["wall_time_seconds"] = r.wall_time_seconds;
  j["overall"] = experiments::verdict_name(overall_verdict(r));
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    json jr;
    jr["experiment"] = row.experiment;
    jr["parameter"] = row.parameter;
    jr["value"] = row.value;
    jr["estimate"] = row.estimate;
    jr["ci_low"] = row.ci_low;
    jr["ci_high"] = row.ci_high;
    jr["band_low"] = row.band_low;
    jr["band_high"] = row.band_high;
    jr["verdict"] = experiments::verdict_name(row.verdict);
    jr["seed"] = row.seed;
    jr["n_samples"] = row.n_samples;
    jr["note"] = row.note;
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
  const json j = json::parse(text);
  Report r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != 1) throw std::runtime_error("report: unsupported schema version");
  r.command = j.at("command").get<std::string>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.config = j.at("config").get<std::map<std::string, std::string>>();
  r.git_describe = j.at("git_describe").get<std::string>();
  r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  for (const auto& jr : j.at("rows")) {
    ReportRow row;
    row.experiment = jr.at("experiment").get<std::string>();
    row.parameter = jr.at("parameter").get<std::string>();
    row.value = jr.at("value").get<double>();
    row.estimate = jr.at("estimate").get<double>();
    row.ci_low = jr.at("ci_low").get<double>();
    row.ci_high = jr.at("ci_high").get<double>();
    row.band_low = jr.at("band_low").get<double>();
    row.band_high = jr.at("band_high").get<double>();
    row.verdict = verdict_from_name(jr.at("verdict").get<std::string>());
    row.seed = jr.at("seed").get<std::uint64_t>();
    row.n_samples = jr.at("n_samples").get<std::uint64_t>();
    row.note = jr.at("note").get<std::string>();
    r.rows.push_back(std::move(row));
  }
  return r;
}

void write_csv(const Report& r, std::ostream& os) {
  os << "experiment,parameter,value,estimate,ci_low,ci_high,band_low,band_high,"
        "verdict,seed,n_samples,note\n";
  for (const auto& row : r.rows) {
    os << csv_quote(row.experiment) << "," << csv_quote(row.parameter) << ","
       << fmt17(row.value) << "," << fmt17(row.estimate) << "," << fmt17(row.ci_low) << ","
       << fmt17(row.ci_high) << "," << fmt17(row.band_low) << "," << fmt17(row.band_high)
       << "," << experiments::verdict_name(row.verdict) << "," << row.seed << ","
       << row.n_samples << "," << csv_quote(row.note) << "\n";
  }
}

namespace {

void save_atomic(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("report: cannot open " + tmp);
    os << body;
    os.flush();
    if (!os) {
      os.close();
      std::remove(tmp.c_str());
      throw std::runtime_error("report: write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("report: rename failed for " + path);
  }
}

} // namespace

void save_json(const Report& r, const std::string& path) { save_atomic(path, to_json(r)); }

void save_csv(const Report& r, const std::string& path) {
  std::ostringstream os;
  write_csv(r, os);
  save_atomic(path, os.str());
}

} // namespace dynwalk::report
