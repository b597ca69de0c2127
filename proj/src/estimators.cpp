#include "scatterlab/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "scatterlab/stats.hpp"

namespace scatterlab {

double cone_momentum_mass(const Grid& grid, const std::vector<double>& kdens,
                          const ConeRegion& cone) {
  std::vector<double> m;
  m.reserve(kdens.size());
  int jj[3];
  double k[3] = {0, 0, 0};
  for (std::size_t idx = 0; idx < kdens.size(); ++idx) {
    grid.unflatten(idx, jj);
    for (int a = 0; a < grid.dim; ++a) k[a] = grid.wavenumber(jj[a]);
    if (cone.contains(k)) m.push_back(kdens[idx]);
  }
  return kahan_sum(m) * grid.k_cell_volume();
}

namespace {

// Portion of a series at recorded times >= t_lo.
void tail_series(const std::vector<double>& t, const std::vector<double>& y,
                 double t_lo, std::vector<double>& t_out, std::vector<double>& y_out) {
  t_out.clear();
  y_out.clear();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t_lo - 1e-9) {
      t_out.push_back(t[i]);
      y_out.push_back(y[i]);
    }
}

}  // namespace

void run_estimators(const ExperimentConfig& cfg, const PipelineResult& res,
                    const EstimatorSelection& sel, RunReport& report) {
  const QuantumSeries& S = res.series;
  Grid grid{cfg.dim, cfg.n, cfg.length};
  double T = cfg.t_final;
  bool free_case = cfg.potential.is_zero();

  std::vector<ConeRegion> cones;
  for (const auto& cc : cfg.cones) cones.push_back(cc.build(cfg.dim));

  // Windows with resolved flat times.
  std::vector<WindowFunction> windows;
  {
    auto flats = cfg.default_window_flats();
    for (std::size_t i = 0; i < cfg.windows.size(); ++i)
      windows.push_back({cfg.windows[i].name, cfg.t0, flats[i], T});
  }

  if (sel.propagation && S.frames() >= 2) {
    double norm_drift = 0.0;
    for (double m : S.total_mass) norm_drift = std::max(norm_drift, std::abs(m - S.total_mass[0]));
    report.add_bound({"propagation.norm_drift", "", 0, T, norm_drift, 0, 0, 1e-12, "exact"});

    double e0 = S.energy[0], edrift = 0.0;
    for (double e : S.energy) edrift = std::max(edrift, std::abs(e - e0));
    double scale = std::max(1e-30, std::abs(e0));
    report.add_bound({"propagation.energy_drift_rel", "", 0, T, edrift / scale, 0, 0,
                      cfg.band_energy_rel, "exact"});

    if (cfg.compare_free_oracle && free_case)
      report.add_bound({"oracle.free_gaussian_max_err", "", 0, T, res.oracle_max_err, 0,
                        0, 1e-8, "closed_form"});

    if (!res.out_density.empty()) {
      double kmass = kahan_sum(res.out_density) * grid.k_cell_volume();
      report.add_check({"spectral.parseval", "", 0, T, kmass, 0, S.total_mass.back(),
                        1e-12, "exact"});
    }

    if (free_case) {
      // t * h2(t) equals the initial position norm for free evolution.
      double q0_sq = cfg.dim * cfg.sigma * cfg.sigma;
      for (int a = 0; a < cfg.dim; ++a) q0_sq += cfg.x0[a] * cfg.x0[a];
      double q0 = std::sqrt(q0_sq);
      double worst = 0.0;
      for (double tc : {cfg.t0, 0.25 * T, 0.5 * T, T}) {
        if (tc < cfg.t0) continue;
        // Nearest recorded frame.
        std::size_t best = 0;
        for (std::size_t i = 0; i < S.frames(); ++i)
          if (std::abs(S.t[i] - tc) < std::abs(S.t[best] - tc)) best = i;
        if (S.t[best] <= 0.0) continue;
        worst = std::max(worst, std::abs(S.t[best] * S.h2[best] - q0) / q0);
      }
      report.add_bound({"ballistic.h2_identity_rel_err", "", 0, T, worst, 0, 0, 1e-6,
                        "closed_form"});
    }
  }

  if (sel.out_state && !res.out_density.empty() && !res.out_density_half.empty()) {
    std::vector<double> d(res.out_density.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = std::abs(res.out_density[i] - res.out_density_half[i]);
    double l1 = kahan_sum(d) * grid.k_cell_volume();
    report.add_bound({"out_state.two_horizon_l1", "", 0, T, l1, 0, 0, cfg.band_out_l1,
                      "self"});
  }

  if (sel.density_tracking) {
    for (std::size_t v = 0; v < res.variants.size(); ++v) {
      std::string label = res.variants[v].label();
      const auto& checks = res.ks[v];
      if (!checks.empty()) {
        int pass = 0;
        double max_stat = 0.0;
        for (const auto& kc : checks) {
          pass += kc.pass;
          max_stat = std::max(max_stat, kc.statistic);
        }
        double frac = static_cast<double>(pass) / checks.size();
        report.add_check({"sde.ks_pass_fraction." + label, "", 0, T, frac, 0, 1.0,
                          0.0501, "quadrature"});
        report.add_info({"sde.ks_max_stat." + label, "", 0, T, max_stat, 0,
                         checks.front().critical, 0, "quadrature"});
      }
      if (v < res.ensembles.size() && res.ensembles[v].n_paths > 0) {
        double frozen = static_cast<double>(res.ensembles[v].frozen_count()) /
                        res.ensembles[v].n_paths;
        report.add_bound({"sde.out_of_box." + label, "", 0, T, frozen, 0, 0, 1e-3,
                          "bound"});
        const auto& st = res.sde_stats[v];
        double cap_frac = st.steps ? static_cast<double>(st.cap_hits) / st.steps : 0.0;
        report.add_info({"sde.cap_hit_fraction." + label, "", 0, T, cap_frac, 0, 0, 0,
                         "self"});
      }
    }
  }

  // Estimators below need the primary ensemble.
  bool have_paths = !res.ensembles.empty() && res.ensembles[0].n_samples() >= 3;
  VelocityEstimate vel;
  if (have_paths) vel = asymptotic_velocity(res.ensembles[0]);

  if (sel.velocity && have_paths) {
    if (free_case) {
      double k2 = 0.0;
      for (int a = 0; a < cfg.dim; ++a) k2 += cfg.k0[a] * cfg.k0[a];
      double s2 = cfg.sigma * cfg.sigma;
      // Var per axis of X_T matches the quantum spread s^2 + T^2/(4 s^2).
      double oracle = k2 + cfg.dim / (4.0 * s2) + cfg.dim * s2 / (T * T);
      report.add_check({"velocity.mean_speed_sq", "", 0, T, vel.mean_speed_sq,
                        vel.se_speed_sq, oracle, 3.0 * vel.se_speed_sq + 0.005,
                        "closed_form"});
    } else {
      report.add_info({"velocity.mean_speed_sq", "", 0, T, vel.mean_speed_sq,
                       vel.se_speed_sq, 0, 0, "self"});
    }
    double gap_band = 5.0 * cfg.sigma * std::sqrt(static_cast<double>(cfg.dim)) / T;
    report.add_bound({"velocity.two_horizon_gap", "", 0, T, vel.mean_gap, 0, 0,
                      std::max(gap_band, 0.05), "bound"});
  }

  if (sel.cones && have_paths && !res.out_density.empty()) {
    for (std::size_t c = 0; c < cones.size(); ++c) {
      double kmass = cone_momentum_mass(grid, res.out_density, cones[c]);
      Settlement st = sic_pathwise(res.ensembles[0], cones[c], vel);
      std::vector<double> tt, yy;
      tail_series(S.t, S.cone_mass[c], cfg.t0, tt, yy);
      double plat = plateau(tt, yy);
      std::string id = cones[c].id;
      report.add_check({"cones.prob_mc." + id, id, 0, T, st.mc_fraction, st.mc_se,
                        kmass, 3.0 * st.mc_se + cfg.band_stat, "quadrature"});
      report.add_check({"cones.mass_plateau." + id, id, 0, T, plat, 0, kmass,
                        cfg.band_stat, "quadrature"});
      report.add_check({"cones.mc_vs_plateau." + id, id, 0, T, st.mc_fraction,
                        st.mc_se, plat, 3.0 * st.mc_se + cfg.band_stat, "mc"});
      report.add_info({"cones.settled_fraction." + id, id, 0, T,
                       st.settled_in_cone, 0, st.mc_fraction, 0, "self"});
      report.add_bound({"cones.unsettled_fraction." + id, id, 0, T, st.unsettled, 0,
                        0, 0.02, "bound"});
    }
  }

  if (sel.pathwise_fas && have_paths) {
    double r_max = *std::max_element(cfg.r_list.begin(), cfg.r_list.end());
    for (std::size_t c = 0; c < cones.size(); ++c) {
      FasTable tab = fas_pathwise(res.ensembles[0], cones[c], cfg.r_list, vel);
      std::string id = cones[c].id;
      for (const auto& row : tab.rows) {
        if (row.R == r_max)
          report.add_check({"fas.agreement." + id, id, row.R, T, row.agree_fraction,
                            0, 1.0, 0.01, "mc"});
        else
          report.add_info({"fas.agreement." + id, id, row.R, T, row.agree_fraction,
                           0, 1.0, 0.01, "mc"});
        report.add_info({"fas.mean_abs_diff." + id, id, row.R, T, row.mean_abs_diff,
                         row.se, 0, 0, "mc"});
      }
      report.add_bound({"fas.telescoping_failures." + id, id, 0, T,
                        static_cast<double>(tab.telescoping_failures), 0, 0, 0,
                        "exact"});
      report.add_check({"fas.diff_nonincreasing_in_R." + id, id, 0, T,
                        tab.diff_nonincreasing_in_R ? 1.0 : 0.0, 0, 1.0, 0, "self"});
    }
  }

  if (sel.flux && have_paths && S.frames() >= 3) {
    std::vector<double> tt;
    for (std::size_t c = 0; c < cones.size(); ++c) {
      std::string id = cones[c].id;
      std::vector<double> lat_window(S.r_list.size(), 0.0);
      for (std::size_t ri = 0; ri < S.r_list.size(); ++ri) {
        double R = S.r_list[ri];
        CrossingLedger led = crossing_count(res.ensembles[0], cones[c], R);
        std::vector<double> cap, lat, reg;
        tail_series(S.t, S.cap_flux[c][ri], cfg.t0, tt, cap);
        tail_series(S.t, S.lat_flux[c][ri], cfg.t0, tt, lat);
        tail_series(S.t, S.region_mass[c][ri], cfg.t0, tt, reg);
        for (const auto& phi : windows) {
          FluxComparison fc = crossing_vs_flux(led, phi, tt, cap, lat);
          report.add_check({"flux.crossing_identity." + id + "." + phi.name, id, R, T,
                            fc.mc, fc.mc_se, fc.quad, 3.0 * fc.mc_se + cfg.band_stat,
                            "quadrature"});
        }
        {
          // Cap-only piece of the same identity.
          WindowedCrossingSum cap_mc{0.0, 0.0};
          {
            std::vector<double> per(led.events.size(), 0.0);
            for (std::size_t p = 0; p < led.events.size(); ++p)
              for (const auto& ev : led.events[p])
                if (ev.piece == Piece::cap) per[p] += ev.sign * windows[0](ev.t);
            MeanSE ms = mean_se(per);
            cap_mc = {ms.mean, ms.se};
          }
          double cap_quad = windowed_integral(tt, cap, windows[0]);
          report.add_check({"flux.cap_crossings_vs_quad." + id + "." + windows[0].name,
                            id, R, T, cap_mc.mean, cap_mc.se, cap_quad,
                            3.0 * cap_mc.se + cfg.band_stat, "quadrature"});

          // Windowed net influx against the outgoing momentum mass of the cone.
          double net_in = cap_quad - windowed_integral(tt, lat, windows[0]) + reg.front();
          double kmass = cone_momentum_mass(grid, res.out_density, cones[c]);
          report.add_check({"flux.window_vs_out." + id, id, R, T, net_in, 0, kmass,
                            cfg.band_stat, "quadrature"});

          double leak = std::abs(windowed_integral(tt, lat, windows[0]));
          lat_window[ri] = leak;
          report.add_bound({"flux.lateral_leak." + id, id, R, T, leak, 0, 0, 0.05,
                            "bound"});
        }
      }
      if (lat_window.size() >= 2) {
        double worst_rise = 0.0;
        for (std::size_t ri = 0; ri + 1 < lat_window.size(); ++ri)
          worst_rise = std::max(worst_rise, lat_window[ri + 1] - lat_window[ri]);
        report.add_bound({"flux.lateral_monotone." + id, id, 0, T, worst_rise, 0, 0,
                          0.005, "bound"});
      }
    }
  }

  if (sel.continuity && S.frames() >= 3) {
    ContinuityResult cr = continuity_residual(S.t, S.ball_mass, S.ball_outflux);
    double band = (cfg.dim == 1) ? 5e-4 : 5e-3;
    report.add_bound({"continuity.max_residual", "", S.ball_radius, T, cr.max_abs, 0,
                      0, band, "exact"});
  }
}

}  // namespace scatterlab
