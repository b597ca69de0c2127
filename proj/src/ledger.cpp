#include "scatterlab/ledger.hpp"

#include <cmath>
#include <stdexcept>

#include "scatterlab/stats.hpp"

namespace scatterlab {

CrossingLedger crossing_count(const PathEnsemble& e, const ConeRegion& cone,
                              double R) {
  if (cone.dim != e.dim) throw std::invalid_argument("crossing_count: dim mismatch");
  CrossingLedger L;
  L.R = R;
  L.events.resize(e.n_paths);
  L.n_cap.assign(e.n_paths, 0);
  L.n_lat.assign(e.n_paths, 0);
  L.chi_start.assign(e.n_paths, 0);
  L.chi_end.assign(e.n_paths, 0);
  std::size_t ns = e.n_samples();
  for (int p = 0; p < e.n_paths; ++p) {
    L.chi_start[p] = region_contains(cone, R, e.sample(p, 0)) ? 1 : 0;
    L.chi_end[p] = region_contains(cone, R, e.sample(p, ns - 1)) ? 1 : 0;
    for (std::size_t s = 0; s + 1 < ns; ++s) {
      const double* a = e.sample(p, s);
      const double* b = e.sample(p, s + 1);
      SegmentEvents seg = classify_segment(cone, R, a, b);
      L.tangency_drops += seg.tangency_drops;
      L.junction_events += seg.junction_events;
      double t0 = e.times[s], t1 = e.times[s + 1];
      for (auto ev : seg.events) {
        ev.t = t0 + ev.s * (t1 - t0);
        if (ev.piece == Piece::cap)
          L.n_cap[p] += ev.sign;
        else
          L.n_lat[p] += ev.sign;
        L.events[p].push_back(ev);
      }
    }
    if (L.n_cap[p] + L.n_lat[p] != L.chi_end[p] - L.chi_start[p])
      ++L.telescoping_failures;
  }
  std::vector<double> vc(e.n_paths), vl(e.n_paths), vt(e.n_paths);
  for (int p = 0; p < e.n_paths; ++p) {
    vc[p] = L.n_cap[p];
    vl[p] = L.n_lat[p];
    vt[p] = L.n_cap[p] + L.n_lat[p];
  }
  MeanSE mc = mean_se(vc), ml = mean_se(vl), mt = mean_se(vt);
  L.mean_cap = mc.mean;
  L.se_cap = mc.se;
  L.mean_lat = ml.mean;
  L.se_lat = ml.se;
  L.mean_total = mt.mean;
  return L;
}

FasTable fas_pathwise(const PathEnsemble& e, const ConeRegion& cone,
                      const std::vector<double>& r_list,
                      const VelocityEstimate& v) {
  FasTable tab;
  for (double R : r_list) {
    CrossingLedger L = crossing_count(e, cone, R);
    tab.telescoping_failures += L.telescoping_failures;
    std::vector<double> diff(e.n_paths);
    long agree = 0;
    for (int p = 0; p < e.n_paths; ++p) {
      int chi = cone.contains(v.p(p)) ? 1 : 0;
      int n_tot = L.n_cap[p] + L.n_lat[p];
      diff[p] = std::abs(n_tot - chi);
      if (n_tot == chi) ++agree;
    }
    MeanSE ms = mean_se(diff);
    FasRow row;
    row.R = R;
    row.mean_abs_diff = ms.mean;
    row.se = ms.se;
    row.agree_fraction = static_cast<double>(agree) / e.n_paths;
    tab.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < tab.rows.size(); ++i)
    if (tab.rows[i + 1].mean_abs_diff > tab.rows[i].mean_abs_diff + 1e-12)
      tab.diff_nonincreasing_in_R = false;
  return tab;
}

Settlement sic_pathwise(const PathEnsemble& e, const ConeRegion& cone,
                        const VelocityEstimate& v) {
  Settlement s;
  std::vector<double> in_cone(e.n_paths);
  long settled_in = 0, unsettled = 0;
  std::size_t ns = e.n_samples();
  std::size_t tail_begin = (3 * (ns - 1)) / 4;  // final quarter of samples
  for (int p = 0; p < e.n_paths; ++p) {
    in_cone[p] = cone.contains(v.p(p)) ? 1.0 : 0.0;
    bool end_member = cone.contains(e.sample(p, ns - 1));
    bool flipped = false;
    for (std::size_t t = tail_begin; t < ns; ++t)
      if (cone.contains(e.sample(p, t)) != end_member) {
        flipped = true;
        break;
      }
    if (flipped)
      ++unsettled;
    else if (end_member)
      ++settled_in;
  }
  MeanSE ms = mean_se(in_cone);
  s.mc_fraction = ms.mean;
  s.mc_se = ms.se;
  s.settled_in_cone = static_cast<double>(settled_in) / e.n_paths;
  s.unsettled = static_cast<double>(unsettled) / e.n_paths;
  return s;
}

WindowedCrossingSum windowed_crossing_sum(const CrossingLedger& ledger,
                                          const WindowFunction& phi) {
  std::vector<double> per_path(ledger.events.size(), 0.0);
  for (std::size_t p = 0; p < ledger.events.size(); ++p)
    for (const auto& ev : ledger.events[p]) per_path[p] += ev.sign * phi(ev.t);
  MeanSE ms = mean_se(per_path);
  return {ms.mean, ms.se};
}

}  // namespace scatterlab
