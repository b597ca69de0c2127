// Command-line harness: runs the propagation / ensemble pipeline per a
// config file and emits report and series artifacts.
//
// Exit codes: 0 success, 1 config or validation error, 2 failed report
// row under `verify`, 3 runtime error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "scatterlab/estimators.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/pipeline.hpp"
#include "scatterlab/report.hpp"

namespace {

using namespace scatterlab;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string seed_override;
  int threads = 1;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Stem of the config path without directory or extension.
std::string config_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base.empty() ? "run" : base;
}

int load_and_validate(const CliOptions& cli, ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  cfg = load_config_file(cli.config_path, errors);
  if (!cli.seed_override.empty()) {
    try {
      cfg.seed = std::stoull(cli.seed_override);
    } catch (...) {
      errors.push_back("bad --seed value: " + cli.seed_override);
    }
  }
  if (!cli.out_dir.empty()) {
    cfg.out_dir = cli.out_dir;
  } else if (cfg.out_dir.empty()) {
    const char* env = std::getenv("SCATTERLAB_OUT");
    std::string root = env ? env : "out";
    cfg.out_dir = root + "/" + (cfg.preset.empty() ? config_stem(cli.config_path)
                                                   : cfg.preset);
  }
  for (auto& e : validate(cfg)) errors.push_back(e);
  if (!errors.empty()) {
    std::fprintf(stderr, "config error%s:\n", errors.size() == 1 ? "" : "s");
    for (const auto& e : errors) std::fprintf(stderr, "  %s\n", e.c_str());
    return 1;
  }
  return 0;
}

void write_series_csv(const std::string& path, const QuantumSeries& S) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,total_mass,energy,h2,ball_mass,ball_outflux";
  for (const auto& id : S.cone_ids) out << ",mass_" << id;
  for (std::size_t c = 0; c < S.cone_ids.size(); ++c)
    for (double R : S.r_list) {
      out << ",region_" << S.cone_ids[c] << "_" << g17(R);
      out << ",cap_" << S.cone_ids[c] << "_" << g17(R);
      out << ",lat_" << S.cone_ids[c] << "_" << g17(R);
    }
  out << '\n';
  for (std::size_t f = 0; f < S.frames(); ++f) {
    out << g17(S.t[f]) << ',' << g17(S.total_mass[f]) << ',' << g17(S.energy[f])
        << ',' << g17(S.h2[f]) << ',' << g17(S.ball_mass[f]) << ','
        << g17(S.ball_outflux[f]);
    for (std::size_t c = 0; c < S.cone_ids.size(); ++c) out << ',' << g17(S.cone_mass[c][f]);
    for (std::size_t c = 0; c < S.cone_ids.size(); ++c)
      for (std::size_t ri = 0; ri < S.r_list.size(); ++ri)
        out << ',' << g17(S.region_mass[c][ri][f]) << ',' << g17(S.cap_flux[c][ri][f])
            << ',' << g17(S.lat_flux[c][ri][f]);
    out << '\n';
  }
}

void write_ks_csv(const std::string& path, const PipelineResult& res) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "variant,t,axis,statistic,critical,pass\n";
  for (std::size_t v = 0; v < res.variants.size(); ++v)
    for (const auto& kc : res.ks[v])
      out << res.variants[v].label() << ',' << g17(kc.t) << ',' << kc.axis << ','
          << g17(kc.statistic) << ',' << g17(kc.critical) << ','
          << (kc.pass ? "true" : "false") << '\n';
}

void write_crossings_csv(const std::string& path, const ExperimentConfig& cfg,
                         const PipelineResult& res) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "cone,R,path,n_cap,n_lat,chi_start,chi_end\n";
  for (const auto& cc : cfg.cones) {
    ConeRegion cone = cc.build(cfg.dim);
    for (double R : cfg.r_list) {
      CrossingLedger led = crossing_count(res.ensembles[0], cone, R);
      for (int p = 0; p < res.ensembles[0].n_paths; ++p)
        out << cone.id << ',' << g17(R) << ',' << p << ',' << led.n_cap[p] << ','
            << led.n_lat[p] << ',' << led.chi_start[p] << ',' << led.chi_end[p]
            << '\n';
    }
  }
}

void dump_ensembles(const ExperimentConfig& cfg, const PipelineResult& res,
                    bool force_binary) {
  std::string kind = cfg.dump_ensemble;
  if (force_binary && kind == "none") kind = "binary";
  if (kind == "none" || res.ensembles.empty()) return;
  for (std::size_t v = 0; v < res.ensembles.size(); ++v) {
    std::string base = cfg.out_dir + "/ensemble_" + res.variants[v].label();
    if (kind == "csv")
      write_ensemble_csv(base + ".csv", res.ensembles[v]);
    else
      write_ensemble_binary(base + ".nsle", res.ensembles[v]);
  }
}

// Runs the pipeline with the estimator selection of the subcommand and
// writes the artifacts.  Returns the report for exit-code decisions.
RunReport run_command(const ExperimentConfig& cfg, const PipelineOptions& opt,
                      const EstimatorSelection& sel, bool crossings_artifact,
                      bool force_ensemble_dump) {
  if (!make_directories(cfg.out_dir))
    throw std::runtime_error("cannot create output directory " + cfg.out_dir);
  PipelineResult res = run_pipeline(cfg, opt);

  RunReport report;
  report.config_hash = cfg.hash();
  report.config_echo = cfg.canonical_text();
  run_estimators(cfg, res, sel, report);
  report.timings.push_back({"total", res.wall_total});
  report.timings.push_back({"fft", res.wall_fft});
  report.timings.push_back({"sde", res.wall_sde});

  write_report_csv(report, cfg.out_dir + "/report.csv");
  write_report_json(report, cfg, cfg.out_dir + "/report.json");
  write_timings_csv(report, cfg.out_dir + "/timings.csv");
  write_series_csv(cfg.out_dir + "/series.csv", res.series);
  if (!res.variants.empty()) write_ks_csv(cfg.out_dir + "/ks.csv", res);
  if (crossings_artifact && !res.ensembles.empty())
    write_crossings_csv(cfg.out_dir + "/crossings.csv", cfg, res);
  dump_ensembles(cfg, res, force_ensemble_dump);
  if (!res.dumped_frames.empty())
    write_manifest(cfg.out_dir + "/manifest.json", res.dumped_frames);

  for (const auto& row : report.rows) {
    std::printf("%-52s %-6s value=%.6g", row.estimator.c_str(), row.status.c_str(),
                row.value);
    if (row.oracle_kind != "self" && row.oracle_kind != "bound")
      std::printf(" oracle=%.6g band=%.3g", row.oracle_value, row.band);
    else if (row.oracle_kind == "bound" || row.band > 0)
      std::printf(" band=%.3g", row.band);
    std::printf("\n");
  }
  std::printf("rows: %d pass, %d fail, %zu total  ->  %s/report.csv\n",
              report.n_pass(), report.n_fail(), report.rows.size(),
              cfg.out_dir.c_str());
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scatterlab: wave-packet scattering and stochastic path ensembles"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  CliOptions cli;
  app.add_option("--config", cli.config_path, "config file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", cli.out_dir, "output directory (overrides config)");
  app.add_option("--seed", cli.seed_override, "RNG seed override");
  app.add_option("--threads", cli.threads,
                 "worker threads (accepted for compatibility; execution is serial)");

  auto* c_prop = app.add_subcommand("propagate", "wave-function evolution and its checks");
  auto* c_sample = app.add_subcommand("sample", "draw and advance the path ensemble");
  auto* c_cross = app.add_subcommand("cross", "boundary-crossing ledgers per path");
  auto* c_flux = app.add_subcommand("flux", "surface flux series and crossing identity");
  auto* c_cones = app.add_subcommand("cones", "scattering-into-cones estimates");
  auto* c_fas = app.add_subcommand("fas", "pathwise flux-across-surfaces agreement");
  auto* c_verify = app.add_subcommand("verify", "all estimators; nonzero exit on any failed row");
  auto* c_report = app.add_subcommand("report", "all estimators; always exits 0 when the run completes");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg;
  int rc = load_and_validate(cli, cfg);
  if (rc != 0) return rc;

  try {
    EstimatorSelection none;
    none.propagation = none.out_state = none.density_tracking = none.cones =
        none.pathwise_fas = none.flux = none.continuity = none.velocity = false;

    if (c_prop->parsed()) {
      PipelineOptions opt;
      opt.with_sde = false;
      opt.with_oracle = cfg.compare_free_oracle;
      EstimatorSelection sel = none;
      sel.propagation = sel.out_state = sel.continuity = true;
      run_command(cfg, opt, sel, false, false);
      return 0;
    }
    if (c_sample->parsed()) {
      PipelineOptions opt;
      opt.with_flux = false;
      EstimatorSelection sel = none;
      sel.density_tracking = sel.velocity = true;
      run_command(cfg, opt, sel, false, true);
      return 0;
    }
    if (c_cross->parsed()) {
      PipelineOptions opt;
      opt.with_flux = false;
      EstimatorSelection sel = none;
      sel.density_tracking = sel.pathwise_fas = sel.velocity = true;
      run_command(cfg, opt, sel, true, false);
      return 0;
    }
    if (c_flux->parsed()) {
      PipelineOptions opt;
      EstimatorSelection sel = none;
      sel.flux = sel.continuity = sel.density_tracking = true;
      run_command(cfg, opt, sel, false, false);
      return 0;
    }
    if (c_cones->parsed()) {
      PipelineOptions opt;
      opt.with_flux = false;
      EstimatorSelection sel = none;
      sel.cones = sel.velocity = sel.density_tracking = true;
      run_command(cfg, opt, sel, false, false);
      return 0;
    }
    if (c_fas->parsed()) {
      PipelineOptions opt;
      opt.with_flux = false;
      EstimatorSelection sel = none;
      sel.pathwise_fas = sel.velocity = true;
      run_command(cfg, opt, sel, false, false);
      return 0;
    }
    // verify / report: everything, oracle included where available.
    PipelineOptions opt;
    opt.with_oracle = cfg.compare_free_oracle;
    EstimatorSelection sel;
    RunReport report = run_command(cfg, opt, sel, false, false);
    if (c_verify->parsed() && report.n_fail() > 0) {
      std::fprintf(stderr, "verify: %d row%s failed\n", report.n_fail(),
                   report.n_fail() == 1 ? "" : "s");
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
