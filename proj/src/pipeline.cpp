#include "scatterlab/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "scatterlab/propagator.hpp"
#include "scatterlab/rng.hpp"
#include "scatterlab/spectral.hpp"
#include "scatterlab/stats.hpp"
#include "scatterlab/surface.hpp"

namespace scatterlab {

std::string DriftVariant::label() const {
  std::string s = to_string(mode);
  if (mode == DriftMode::nelson) {
    s += '-';
    s += to_string(convention);
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Tensor-product 4-point Lagrange (cubic) evaluation of a vector field at an
// off-lattice point.  One order better than the multilinear rule used in the
// drift hot path; keeps surface quadratures from dominating the continuity
// residual.
void cubic_eval(const Grid& grid, const std::array<std::vector<double>, 3>& f,
                const double* x, double* out) {
  int dim = grid.dim, n = grid.n;
  double dx = grid.dx();
  int j0[3];
  double w[3][4];
  for (int a = 0; a < dim; ++a) {
    double u = (x[a] + 0.5 * grid.length) / dx - 0.5;
    double fl = std::floor(u);
    double fr = u - fl;
    long jl = static_cast<long>(fl) % n;
    if (jl < 0) jl += n;
    j0[a] = static_cast<int>(jl);
    w[a][0] = -fr * (fr - 1.0) * (fr - 2.0) / 6.0;
    w[a][1] = (fr * fr - 1.0) * (fr - 2.0) / 2.0;
    w[a][2] = -fr * (fr + 1.0) * (fr - 2.0) / 2.0;
    w[a][3] = fr * (fr * fr - 1.0) / 6.0;
  }
  int points = 1;
  for (int a = 0; a < dim; ++a) points *= 4;
  for (int a = 0; a < dim; ++a) out[a] = 0.0;
  for (int c = 0; c < points; ++c) {
    double wt = 1.0;
    std::size_t idx = 0;
    int rem = c;
    for (int a = 0; a < dim; ++a) {
      int bit = rem & 3;
      rem >>= 2;
      int j = j0[a] + bit - 1;
      j %= n;
      if (j < 0) j += n;
      wt *= w[a][bit];
      idx = idx * n + static_cast<std::size_t>(j);
    }
    for (int a = 0; a < dim; ++a) out[a] += wt * f[a][idx];
  }
}

// Quadrature of interpolated J . n over a surface rule.
double surface_flux(const Grid& grid, const std::array<std::vector<double>, 3>& J,
                    const SurfaceQuadrature& q) {
  double flux = 0.0, comp = 0.0;
  double j[3];
  for (std::size_t i = 0; i < q.nodes(); ++i) {
    const double* x = &q.x[i * q.dim];
    const double* n = &q.normal[i * q.dim];
    cubic_eval(grid, J, x, j);
    double dot = 0.0;
    for (int a = 0; a < q.dim; ++a) dot += j[a] * n[a];
    double y = dot * q.w[i] - comp;
    double t = flux + y;
    comp = (t - flux) - y;
    flux = t;
  }
  return flux;
}

// Node weights w such that sum w_i rho_i approximates int_{|x| < Rb} rho.
// 1d: exact integral of the piecewise Lagrange-cubic interpolant clipped to
// the ball (matching the cubic surface evaluation so the boundary terms of
// the continuity residual are higher order); 2d/3d: per-cell coverage by
// 4^dim subsamples.
std::vector<double> ball_weights(const Grid& grid, double Rb) {
  std::vector<double> w(grid.size(), 0.0);
  if (grid.dim == 1) {
    double dx = grid.dx();
    int n = grid.n;
    // Antiderivatives of the cubic Lagrange basis on nodes {-1, 0, 1, 2}.
    auto anti = [](double u, double* L) {
      double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
      L[0] = -(u4 / 4.0 - u3 + u2) / 6.0;
      L[1] = (u4 / 4.0 - 2.0 * u3 / 3.0 - u2 / 2.0 + 2.0 * u) / 2.0;
      L[2] = -(u4 / 4.0 - u3 / 3.0 - u2) / 2.0;
      L[3] = (u4 / 4.0 - u2 / 2.0) / 6.0;
    };
    for (int j = 0; j + 1 < n; ++j) {
      double xl = grid.coord(j), xr = grid.coord(j + 1);
      double a = std::max(xl, -Rb), b = std::min(xr, Rb);
      if (a >= b) continue;
      double La[4], Lb[4];
      anti((a - xl) / dx, La);
      anti((b - xl) / dx, Lb);
      for (int k = 0; k < 4; ++k) {
        int jk = j + k - 1;
        jk %= n;
        if (jk < 0) jk += n;
        w[jk] += dx * (Lb[k] - La[k]);
      }
    }
    return w;
  }
  double dx = grid.dx();
  double half_diag = 0.5 * dx * std::sqrt(static_cast<double>(grid.dim));
  double dV = grid.cell_volume();
  const int sub = 4;
  double x[3];
  int jj[3];
  for (std::size_t idx = 0; idx < w.size(); ++idx) {
    grid.node_coords(idx, x);
    double r = std::sqrt(norm2(x, grid.dim));
    if (r <= Rb - half_diag) {
      w[idx] = dV;
    } else if (r < Rb + half_diag) {
      grid.unflatten(idx, jj);
      long inside = 0, total = 1;
      for (int a = 0; a < grid.dim; ++a) total *= sub;
      for (long s = 0; s < total; ++s) {
        long rem = s;
        double y2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
          int sa = rem % sub;
          rem /= sub;
          double ya = x[a] + ((sa + 0.5) / sub - 0.5) * dx;
          y2 += ya * ya;
        }
        if (y2 < Rb * Rb) ++inside;
      }
      w[idx] = dV * static_cast<double>(inside) / static_cast<double>(total);
    }
  }
  return w;
}

}  // namespace

PipelineResult run_pipeline(const ExperimentConfig& cfg, const PipelineOptions& opt) {
  {
    auto violations = validate(cfg);
    if (!violations.empty()) {
      std::string msg = "invalid config:";
      for (const auto& v : violations) msg += "\n  " + v;
      throw std::invalid_argument(msg);
    }
  }
  auto wall0 = Clock::now();

  Grid grid{cfg.dim, cfg.n, cfg.length};
  GaussianSpec spec;
  spec.x0 = cfg.x0;
  spec.k0 = cfg.k0;
  spec.sigma = cfg.sigma;

  double dt = cfg.dt_effective();
  long steps_per_frame = std::lround(cfg.frame_dt / dt);
  long f0 = std::lround(cfg.t0 / cfg.frame_dt);
  long fN = std::lround(cfg.t_final / cfg.frame_dt);
  long f_half = std::lround(0.5 * cfg.t_final / cfg.frame_dt);

  WaveFunction w = init_gaussian(grid, spec);
  Propagator prop(grid, cfg.potential, dt);
  SpectralOps ops(grid);

  std::vector<ConeRegion> cones;
  for (const auto& cc : cfg.cones) cones.push_back(cc.build(cfg.dim));

  PipelineResult res;
  res.series.ball_radius = cfg.ball_radius;
  for (const auto& c : cones) res.series.cone_ids.push_back(c.id);
  res.series.r_list = cfg.r_list;

  // Geometry tables.
  std::size_t n_cones = cones.size(), n_r = cfg.r_list.size();
  double r_outer = cfg.r_outer_effective();
  std::vector<std::vector<SurfaceQuadrature>> cap_q(n_cones), lat_q(n_cones);
  for (std::size_t c = 0; c < n_cones; ++c)
    for (double R : cfg.r_list) {
      cap_q[c].push_back(cap_quadrature(cones[c], R, cfg.quad_m));
      lat_q[c].push_back(lateral_quadrature(cones[c], R, r_outer, cfg.quad_m));
    }
  SurfaceQuadrature ball_q =
      cap_quadrature(ConeRegion::full_space(cfg.dim, "ball"), cfg.ball_radius,
                     cfg.quad_m);
  std::vector<double> ball_w = ball_weights(grid, cfg.ball_radius);

  // Node membership tables: cone nodes and per-(cone, R) region nodes.
  std::vector<std::vector<std::size_t>> cone_nodes(n_cones);
  std::vector<std::vector<std::vector<std::size_t>>> region_nodes(n_cones);
  {
    double x[3];
    for (std::size_t c = 0; c < n_cones; ++c) region_nodes[c].resize(n_r);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      grid.node_coords(idx, x);
      for (std::size_t c = 0; c < n_cones; ++c) {
        if (!cones[c].contains(x)) continue;
        cone_nodes[c].push_back(idx);
        double r2 = norm2(x, cfg.dim);
        for (std::size_t ri = 0; ri < n_r; ++ri)
          if (r2 > cfg.r_list[ri] * cfg.r_list[ri]) region_nodes[c][ri].push_back(idx);
      }
    }
    res.series.cone_mass.resize(n_cones);
    res.series.region_mass.assign(n_cones, std::vector<std::vector<double>>(n_r));
    res.series.cap_flux.assign(n_cones, std::vector<std::vector<double>>(n_r));
    res.series.lat_flux.assign(n_cones, std::vector<std::vector<double>>(n_r));
  }

  // SDE variants.
  res.variants = opt.variants;
  if (opt.with_sde && res.variants.empty())
    res.variants.push_back({cfg.mode, cfg.convention, 0});
  if (!opt.with_sde) res.variants.clear();
  std::size_t nv = res.variants.size();
  std::vector<SlidingDriftProvider> providers(nv);
  res.ensembles.resize(nv);
  res.sde_stats.resize(nv);
  res.ks.resize(nv);
  double sde_dt = cfg.sde_dt();
  double b_cap = 0.5 * grid.dx() / sde_dt;
  bool need_grad_rho = false;
  for (const auto& v : res.variants)
    if (v.mode == DriftMode::nelson) need_grad_rho = true;

  std::vector<double> ks_times = cfg.ks_check_times();
  double dV = grid.cell_volume();

  for (long f = 0; f <= fN; ++f) {
    double tf = f * cfg.frame_dt;
    bool sde_active = opt.with_sde && f >= f0;
    bool record = opt.record_from_zero || f >= f0;
    if (record || sde_active) {
      std::vector<double> rho = ops.density(w);
      GradientField g = ops.gradient(w);
      std::array<std::vector<double>, 3> J = ops.current(w, g);

      if (record) {
        res.series.t.push_back(tf);
        {
          std::vector<double> m(rho.size());
          for (std::size_t i = 0; i < m.size(); ++i) m[i] = rho[i] * dV;
          res.series.total_mass.push_back(kahan_sum(m));
        }
        res.series.energy.push_back(ops.energy(w, prop.potential_samples()));
        res.series.h2.push_back(tf > 0.0 ? ops.h2_diagnostic(w, g, tf) : 0.0);
        for (std::size_t c = 0; c < n_cones; ++c) {
          double s = 0.0, comp = 0.0;
          for (auto idx : cone_nodes[c]) {
            double y = rho[idx] * dV - comp;
            double t = s + y;
            comp = (t - s) - y;
            s = t;
          }
          res.series.cone_mass[c].push_back(s);
          for (std::size_t ri = 0; ri < n_r; ++ri) {
            double sm = 0.0, cm = 0.0;
            for (auto idx : region_nodes[c][ri]) {
              double y = rho[idx] * dV - cm;
              double t = sm + y;
              cm = (t - sm) - y;
              sm = t;
            }
            res.series.region_mass[c][ri].push_back(sm);
            if (opt.with_flux) {
              res.series.cap_flux[c][ri].push_back(surface_flux(grid, J, cap_q[c][ri]));
              res.series.lat_flux[c][ri].push_back(
                  lat_q[c][ri].nodes() ? surface_flux(grid, J, lat_q[c][ri]) : 0.0);
            } else {
              res.series.cap_flux[c][ri].push_back(0.0);
              res.series.lat_flux[c][ri].push_back(0.0);
            }
          }
        }
        {
          std::vector<double> m(rho.size());
          for (std::size_t i = 0; i < m.size(); ++i) m[i] = ball_w[i] * rho[i];
          res.series.ball_mass.push_back(kahan_sum(m));
          res.series.ball_outflux.push_back(opt.with_flux ? surface_flux(grid, J, ball_q)
                                                          : 0.0);
        }
      }

      if (sde_active) {
        std::array<std::vector<double>, 3> gr;
        if (need_grad_rho) gr = ops.grad_density(w, g);
        for (std::size_t v = 0; v < nv; ++v) {
          providers[v].push(drift_field(grid, tf, rho, J, gr, res.variants[v].mode,
                                        res.variants[v].convention, b_cap,
                                        cfg.drift_eps_rel));
        }
        auto sde0 = Clock::now();
        for (std::size_t v = 0; v < nv; ++v) {
          if (f == f0) {
            int stride = res.variants[v].sample_stride > 0
                             ? res.variants[v].sample_stride
                             : cfg.sample_stride_effective();
            res.ensembles[v] =
                sample_initial(grid, rho, cfg.n_paths, cfg.seed,
                               res.variants[v].mode, cfg.t0, sde_dt, stride);
          } else {
            advance_to(res.ensembles[v], providers[v], tf, b_cap, res.sde_stats[v]);
          }
        }
        res.wall_sde += seconds_since(sde0);

        // Density-tracking snapshots.
        bool is_ks_time = false;
        for (double tk : ks_times)
          if (std::abs(tk - tf) < 1e-9 * (1.0 + std::abs(tf))) is_ks_time = true;
        if (is_ks_time) {
          for (int axis = 0; axis < cfg.dim; ++axis) {
            // Marginal cell masses along this axis.
            std::vector<double> marg(grid.n, 0.0);
            int jj[3];
            for (std::size_t idx = 0; idx < rho.size(); ++idx) {
              grid.unflatten(idx, jj);
              marg[jj[axis]] += rho[idx];
            }
            GridCdf cdf = grid_cdf(-0.5 * grid.length, grid.dx(), marg);
            for (std::size_t v = 0; v < nv; ++v) {
              std::vector<double> sample(cfg.n_paths);
              for (int p = 0; p < cfg.n_paths; ++p)
                sample[p] = res.ensembles[v].cur[static_cast<std::size_t>(p) * cfg.dim + axis];
              KsCheck kc;
              kc.t = tf;
              kc.axis = axis;
              kc.statistic = ks_statistic(sample, cdf);
              kc.critical = ks_critical_value(cfg.ks_alpha, sample.size());
              kc.pass = kc.statistic <= kc.critical;
              res.ks[v].push_back(kc);
            }
          }
        }
      }

      if (opt.with_oracle && cfg.potential.is_zero() &&
          (f % cfg.oracle_stride == 0 || f == fN)) {
        WaveFunction ref = free_gaussian_exact(grid, spec, tf);
        double err = 0.0;
        for (std::size_t i = 0; i < w.psi.size(); ++i)
          err = std::max(err, std::abs(w.psi[i] - ref.psi[i]));
        res.oracle_max_err = std::max(res.oracle_max_err, err);
      }
    }

    if (f == f_half) {
      res.out_density_half = ops.momentum_density(w);
      res.out_half_time = tf;
    }
    if (f == fN) res.out_density = ops.momentum_density(w);

    if (cfg.dump_frames) {
      long stride = cfg.dump_frame_stride > 0
                        ? cfg.dump_frame_stride
                        : std::max<long>(1, fN / 16);
      if (f % stride == 0 || f == fN) {
        std::string dir = (cfg.out_dir.empty() ? std::string(".") : cfg.out_dir) +
                          "/frames";
        make_directories(dir);
        char name[64];
        std::snprintf(name, sizeof name, "frame_%06ld.nslf", f);
        std::string file = dir + "/" + name;
        write_frame(file, w);
        res.dumped_frames.push_back({f, file, tf});
      }
    }

    if (f < fN) {
      auto fft0 = Clock::now();
      prop.evolve(w, steps_per_frame);
      res.wall_fft += seconds_since(fft0);
    }
  }

  res.wall_total = seconds_since(wall0);
  return res;
}

}  // namespace scatterlab
