// Command-line front end: one subcommand per experiment, JSON + CSV
// artifacts per run.  Exit codes: 0 all pass, 1 any fail, 2 usage or IO
// error, 3 underpowered rows present in strict mode.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "dynwalk/analytic.hpp"
#include "dynwalk/erdos.hpp"
#include "dynwalk/experiments.hpp"
#include "dynwalk/integral_test.hpp"
#include "dynwalk/ou.hpp"
#include "dynwalk/report.hpp"
#include "dynwalk/rng.hpp"
#include "dynwalk/walk.hpp"

namespace {

using dynwalk::experiments::Verdict;
using dynwalk::report::Report;
using dynwalk::report::ReportRow;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool strict = false;
  bool allow_rare = false;
  std::uint64_t shard_size = 2048;
  int workers = 0;
};

template <typename T>
std::string list_str(const std::vector<T>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i];
  }
  return os.str();
}

int finish(const GlobalOpts& g, const std::string& name, Report r,
           std::chrono::steady_clock::time_point t0) {
  r.command = name;
  r.master_seed = g.seed;
  r.git_describe = dynwalk::report::build_describe();
  r.config["seed"] = std::to_string(g.seed);
  r.config["shard_size"] = std::to_string(g.shard_size);
  r.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(g.out_dir);
  const std::string base = g.out_dir + "/" + name;
  dynwalk::report::save_json(r, base + ".json");
  dynwalk::report::save_csv(r, base + ".csv");

  int fails = 0, under = 0;
  for (const auto& row : r.rows) {
    std::cout << row.experiment << " " << row.parameter << "=" << row.value << " estimate="
              << row.estimate << " band=[" << row.band_low << "," << row.band_high << "] "
              << dynwalk::experiments::verdict_name(row.verdict);
    if (!row.note.empty()) std::cout << "  (" << row.note << ")";
    std::cout << "\n";
    if (row.verdict == Verdict::Fail) ++fails;
    if (row.verdict == Verdict::Underpowered) ++under;
  }
  std::cout << "report: " << base << ".json  overall="
            << dynwalk::experiments::verdict_name(dynwalk::report::overall_verdict(r)) << "\n";
  if (fails > 0) return 1;
  if (under > 0 && g.strict) return 3;
  return 0;
}

dynwalk::experiments::RunConfig run_cfg(const GlobalOpts& g) {
  dynwalk::experiments::RunConfig cfg;
  cfg.master_seed = g.seed;
  cfg.shard_size = g.shard_size;
  cfg.allow_rare = g.allow_rare;
  return cfg;
}

const char* classification_name(dynwalk::integral::Classification c) {
  switch (c) {
    case dynwalk::integral::Classification::Finite: return "finite";
    case dynwalk::integral::Classification::Divergent: return "divergent";
    default: return "inconclusive";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical Gaussian walk experiment driver"};
  app.require_subcommand(1);
  app.set_config("--config")->description("flat key=value config file");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "output directory for JSON/CSV artifacts")
      ->envname("DYNWALK_OUTDIR")
      ->capture_default_str();
  app.add_flag("--strict", g.strict, "underpowered rows fail the exit code");
  app.add_flag("--allow-rare", g.allow_rare, "disable the expected-hits >= 20 guard");
  app.add_option("--shard-size", g.shard_size, "paths per deterministic shard")
      ->capture_default_str();
  app.add_option("--workers", g.workers, "thread count (0 = library default)")
      ->capture_default_str();

  // tail-sweep
  auto* ts = app.add_subcommand("tail-sweep", "annealed sup tail versus the analytic band");
  dynwalk::experiments::TailSweepParams tsp;
  tsp.z_values = {2.0, 2.5};
  ts->add_option("--n", tsp.n, "walk length")->capture_default_str();
  ts->add_option("--z", tsp.z_values, "threshold list")->delimiter(',')->capture_default_str();
  ts->add_option("--paths", tsp.M, "Monte Carlo paths")->capture_default_str();
  ts->add_option("--slack-low", tsp.band.slack_low)->capture_default_str();
  ts->add_option("--slack-high", tsp.band.slack_high)->capture_default_str();

  // quenched-tail
  auto* qt = app.add_subcommand("quenched-tail", "quenched sup tail over fixed clock logs");
  dynwalk::experiments::QuenchedTailParams qtp;
  qtp.clock_seeds = {101, 102, 103, 104, 105};
  qt->add_option("--n", qtp.n)->capture_default_str();
  qt->add_option("--z", qtp.z)->capture_default_str();
  qt->add_option("--clock-seeds", qtp.clock_seeds)->delimiter(',')->capture_default_str();
  qt->add_option("--paths", qtp.M)->capture_default_str();
  qt->add_option("--eps", qtp.eps, "upper band (2+eps) f(z)")->capture_default_str();
  qt->add_option("--lower-slack", qtp.lower_slack)->capture_default_str();

  // clock-verify
  auto* cv = app.add_subcommand("clock-verify", "uniform clock deviation versus the bound");
  dynwalk::experiments::ClockVerifyParams cvp;
  cv->add_option("--n", cvp.n)->capture_default_str();
  cv->add_option("--delta", cvp.delta)->capture_default_str();
  cv->add_option("--alpha", cvp.alpha)->capture_default_str();
  cv->add_option("--reps", cvp.reps)->capture_default_str();
  cv->add_option("--horizon", cvp.horizon)->capture_default_str();

  // fdd-cov
  auto* fc = app.add_subcommand("fdd-cov", "rescaled-field covariance versus the limit");
  dynwalk::experiments::FddParams fcp;
  fcp.s_grid = {0.0, 0.5, 1.0};
  fcp.t_grid = {0.25, 0.5, 1.0};
  fc->add_option("--n", fcp.n)->capture_default_str();
  fc->add_option("--s-grid", fcp.s_grid)->delimiter(',')->capture_default_str();
  fc->add_option("--t-grid", fcp.t_grid)->delimiter(',')->capture_default_str();
  fc->add_option("--reps", fcp.reps)->capture_default_str();
  fc->add_option("--z-max", fcp.z_max)->capture_default_str();

  // regression (kept under fdd-cov family in the spec map; own subcommand here)
  auto* rg = app.add_subcommand("regression", "quenched conditional-law regression");
  dynwalk::experiments::RegressionParams rgp;
  rg->add_option("--n", rgp.n)->capture_default_str();
  rg->add_option("--u", rgp.u)->capture_default_str();
  rg->add_option("--v", rgp.v)->capture_default_str();
  rg->add_option("--clock-seed", rgp.clock_seed)->capture_default_str();
  rg->add_option("--paths", rgp.M)->capture_default_str();

  // block-moment
  auto* bm = app.add_subcommand("block-moment", "neighboring block fourth-moment bound");
  dynwalk::experiments::BlockMomentParams bmp;
  std::vector<std::vector<double>> pair_specs;
  bm->add_option("--n", bmp.n)->capture_default_str();
  bm->add_option("--reps", bmp.reps)->capture_default_str();
  bm->add_option("--pair", pair_specs,
                 "t0,t1,s0,s1,t0,t1,s0,s1[,coeff] (repeatable; default pairs otherwise)")
      ->delimiter(',');

  // ou-tail
  auto* ot = app.add_subcommand("ou-tail", "stationary OU sup tail on a fine grid");
  double ot_z = 2.5, ot_h = 1e-3;
  std::uint64_t ot_M = 100000;
  ot->add_option("--z", ot_z)->capture_default_str();
  ot->add_option("--step", ot_h, "grid spacing h")->capture_default_str();
  ot->add_option("--paths", ot_M)->capture_default_str();

  // integral-test
  auto* it = app.add_subcommand("integral-test", "growth-envelope convergence classifier");
  std::string it_family = "corollary";
  std::vector<double> it_params = {4.5, 5.5};
  bool it_clamped = false;
  bool it_static = false;
  it->add_option("--family", it_family)->check(CLI::IsMember({"corollary", "scaled-lil"}));
  it->add_option("--a,--c", it_params, "parameter list")->delimiter(',');
  it->add_flag("--clamped", it_clamped);
  it->add_flag("--static", it_static, "classify the static variant instead");

  // erdos-suite
  auto* es = app.add_subcommand("erdos-suite", "sparse-sequence suite");
  dynwalk::experiments::ErdosSuiteParams esp;
  esp.envelope = dynwalk::erdos::GrowthEnvelope::scaled_lil(1.0, /*clamped=*/true);
  double es_c = 1.0;
  es->add_option("--n-max", esp.n_max)->capture_default_str();
  es->add_option("--paths", esp.M)->capture_default_str();
  es->add_option("--loc-j", esp.loc_js, "localization indices (default: all feasible)")
      ->delimiter(',');
  es->add_option("--c", es_c, "localization envelope coefficient")->capture_default_str();

  // simulate-path
  auto* sp = app.add_subcommand("simulate-path", "one path dump as CSV");
  std::uint64_t sp_n = 1000, sp_clock_seed = 1, sp_dev_seed = 2;
  double sp_horizon = 1.0;
  std::string sp_output;
  sp->add_option("--n", sp_n)->capture_default_str();
  sp->add_option("--clock-seed", sp_clock_seed)->capture_default_str();
  sp->add_option("--deviate-seed", sp_dev_seed)->capture_default_str();
  sp->add_option("--horizon", sp_horizon)->capture_default_str();
  sp->add_option("--output", sp_output, "CSV path (default <out-dir>/path.csv)");

  // pz-check
  auto* pz = app.add_subcommand("pz-check", "occupation-time moments and hitting bound");
  dynwalk::experiments::PaleyZygmundParams pzp;
  pz->add_option("--n", pzp.n)->capture_default_str();
  pz->add_option("--z", pzp.z)->capture_default_str();
  pz->add_option("--clock-seed", pzp.clock_seed)->capture_default_str();
  pz->add_option("--paths", pzp.M)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

#ifdef _OPENMP
  if (g.workers > 0) omp_set_num_threads(g.workers);
#endif

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (ts->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::run_tail_sweep(tsp, run_cfg(g));
      r.config = {{"n", std::to_string(tsp.n)},
                  {"z", list_str(tsp.z_values)},
                  {"paths", std::to_string(tsp.M)},
                  {"slack_low", std::to_string(tsp.band.slack_low)},
                  {"slack_high", std::to_string(tsp.band.slack_high)}};
      return finish(g, "tail-sweep", std::move(r), t0);
    }
    if (qt->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::run_quenched_tail(qtp, run_cfg(g));
      r.config = {{"n", std::to_string(qtp.n)},
                  {"z", std::to_string(qtp.z)},
                  {"clock_seeds", list_str(qtp.clock_seeds)},
                  {"paths", std::to_string(qtp.M)},
                  {"eps", std::to_string(qtp.eps)},
                  {"lower_slack", std::to_string(qtp.lower_slack)}};
      return finish(g, "quenched-tail", std::move(r), t0);
    }
    if (cv->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::run_clock_verification(cvp, run_cfg(g));
      r.config = {{"n", std::to_string(cvp.n)},
                  {"delta", std::to_string(cvp.delta)},
                  {"alpha", std::to_string(cvp.alpha)},
                  {"reps", std::to_string(cvp.reps)},
                  {"horizon", std::to_string(cvp.horizon)}};
      return finish(g, "clock-verify", std::move(r), t0);
    }
    if (fc->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::run_fdd_covariance(fcp, run_cfg(g));
      r.config = {{"n", std::to_string(fcp.n)},
                  {"s_grid", list_str(fcp.s_grid)},
                  {"t_grid", list_str(fcp.t_grid)},
                  {"reps", std::to_string(fcp.reps)}};
      return finish(g, "fdd-cov", std::move(r), t0);
    }
    if (rg->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::run_regression_check(rgp, run_cfg(g));
      r.config = {{"n", std::to_string(rgp.n)},
                  {"u", std::to_string(rgp.u)},
                  {"v", std::to_string(rgp.v)},
                  {"clock_seed", std::to_string(rgp.clock_seed)},
                  {"paths", std::to_string(rgp.M)}};
      return finish(g, "regression", std::move(r), t0);
    }
    if (bm->parsed()) {
      if (pair_specs.empty()) {
        using dynwalk::experiments::Block;
        // two vertically abutting pairs, one shared-edge horizontal pair,
        // one degenerate pair
        bmp.pairs = {
            {Block{0.0, 0.5, 0.0, 0.5}, Block{0.0, 0.5, 0.5, 1.0}},
            {Block{0.0, 0.5, 0.0, 1.0}, Block{0.5, 1.0, 0.0, 1.0}},
            {Block{0.25, 0.75, 0.0, 0.5}, Block{0.25, 0.75, 0.5, 1.0}},
            {Block{0.0, 0.5, 0.5, 0.5}, Block{0.0, 0.5, 0.5, 1.0}},
        };
        bmp.bound_coeffs = {10.0, 10.0, 10.0, 10.0};
      } else {
        for (const auto& spec : pair_specs) {
          if (spec.size() != 8 && spec.size() != 9)
            throw CLI::ValidationError("--pair needs 8 numbers plus an optional coefficient");
          using dynwalk::experiments::Block;
          bmp.pairs.push_back({Block{spec[0], spec[1], spec[2], spec[3]},
                               Block{spec[4], spec[5], spec[6], spec[7]}});
          bmp.bound_coeffs.push_back(spec.size() == 9 ? spec[8] : 10.0);
        }
      }
      Report r;
      r.rows = dynwalk::experiments::run_block_moment_check(bmp, run_cfg(g));
      r.config = {{"n", std::to_string(bmp.n)},
                  {"reps", std::to_string(bmp.reps)},
                  {"pairs", std::to_string(bmp.pairs.size())}};
      return finish(g, "block-moment", std::move(r), t0);
    }
    if (ot->parsed()) {
      const auto est = dynwalk::ou::ou_sup_tail(ot_z, ot_h, ot_M, g.seed);
      const double f = dynwalk::analytic::tail_f(ot_z);
      ReportRow row;
      row.experiment = "ou-tail";
      row.parameter = "z";
      row.value = ot_z;
      row.estimate = est.p_hat;
      row.ci_low = est.ci_low;
      row.ci_high = est.ci_high;
      row.band_low = f / 10.0;
      row.band_high = std::min(1.0, 10.0 * f);
      row.verdict = (est.p_hat >= row.band_low && est.p_hat <= row.band_high) ? Verdict::Pass
                                                                              : Verdict::Fail;
      row.seed = g.seed;
      row.n_samples = ot_M;
      {
        std::ostringstream os;
        os << "h=" << ot_h << " coarse(2h) p_hat=" << est.coarse_p_hat;
        row.note = os.str();
      }
      Report r;
      r.rows = {row};
      r.config = {{"z", std::to_string(ot_z)},
                  {"h", std::to_string(ot_h)},
                  {"paths", std::to_string(ot_M)}};
      return finish(g, "ou-tail", std::move(r), t0);
    }
    if (it->parsed()) {
      Report r;
      for (double v : it_params) {
        const auto env = (it_family == "corollary")
                             ? dynwalk::erdos::GrowthEnvelope::corollary(v, it_clamped)
                             : dynwalk::erdos::GrowthEnvelope::scaled_lil(v, it_clamped);
        const auto verdict = it_static ? dynwalk::integral::static_erdos_test(env)
                                       : dynwalk::integral::integral_test(env);
        const auto seq = dynwalk::erdos::ErdosSequence::make(1024);
        const auto sum = dynwalk::integral::sum_test(env, seq, 1024);
        ReportRow row;
        row.experiment = "integral-test";
        row.parameter = (it_family == "corollary") ? "a" : "c";
        row.value = v;
        row.estimate = verdict.partial_value;
        row.verdict = (sum.classification == verdict.classification || it_static)
                          ? Verdict::Pass
                          : Verdict::Fail;
        row.seed = g.seed;
        row.note = std::string(classification_name(verdict.classification)) +
                   (it_static ? " (static)" : std::string(" sum=") +
                                                  classification_name(sum.classification));
        r.rows.push_back(std::move(row));
      }
      r.config = {{"family", it_family},
                  {"params", list_str(it_params)},
                  {"clamped", it_clamped ? "1" : "0"},
                  {"static", it_static ? "1" : "0"}};
      return finish(g, "integral-test", std::move(r), t0);
    }
    if (es->parsed()) {
      esp.envelope = dynwalk::erdos::GrowthEnvelope::scaled_lil(es_c, /*clamped=*/true);
      Report r;
      r.rows = dynwalk::experiments::run_erdos_suite(esp, run_cfg(g));
      r.config = {{"n_max", std::to_string(esp.n_max)},
                  {"paths", std::to_string(esp.M)},
                  {"c", std::to_string(es_c)},
                  {"loc_j", list_str(esp.loc_js)}};
      return finish(g, "erdos-suite", std::move(r), t0);
    }
    if (sp->parsed()) {
      const auto log = dynwalk::clocks::sample_clocks(sp_n, sp_horizon, sp_clock_seed);
      const auto path = dynwalk::walk::simulate_path(sp_n, log, sp_dev_seed);
      std::filesystem::create_directories(g.out_dir);
      const std::string out = sp_output.empty() ? g.out_dir + "/path.csv" : sp_output;
      std::ofstream os(out, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot open " + out);
      dynwalk::walk::write_path_csv(path, os);
      if (!os.good()) throw std::runtime_error("write failed for " + out);
      std::cout << "wrote " << out << " (" << path.times.size() << " segments, sup="
                << dynwalk::walk::path_sup(path) << ")\n";
      return 0;
    }
    if (pz->parsed()) {
      Report r;
      r.rows = dynwalk::experiments::paley_zygmund_check(pzp, run_cfg(g));
      r.config = {{"n", std::to_string(pzp.n)},
                  {"z", std::to_string(pzp.z)},
                  {"clock_seed", std::to_string(pzp.clock_seed)},
                  {"paths", std::to_string(pzp.M)}};
      return finish(g, "pz-check", std::move(r), t0);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
