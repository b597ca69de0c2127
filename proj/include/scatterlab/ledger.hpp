// Path-level crossing ledgers and the estimators built on them.
#pragma once

#include <vector>

#include "scatterlab/cone.hpp"
#include "scatterlab/crossing.hpp"
#include "scatterlab/ensemble.hpp"
#include "scatterlab/velocity.hpp"
#include "scatterlab/window.hpp"

namespace scatterlab {

struct CrossingLedger {
  double R = 0.0;
  std::vector<std::vector<CrossingEvent>> events;  // per path, time-ordered
  std::vector<int> n_cap, n_lat;                   // signed counts per path
  std::vector<int> chi_start, chi_end;             // chi_D at t0 and T
  long tangency_drops = 0;
  long junction_events = 0;
  long telescoping_failures = 0;  // paths with n_cap+n_lat != chi_end-chi_start

  double mean_cap = 0.0, se_cap = 0.0;
  double mean_lat = 0.0, se_lat = 0.0;
  double mean_total = 0.0;
};

// Classifies every stored segment of every path against D = C u B_R-bar^c.
CrossingLedger crossing_count(const PathEnsemble& e, const ConeRegion& cone,
                              double R);

struct FasRow {
  double R = 0.0;
  double mean_abs_diff = 0.0;  // E|N_total - chi_C(p_+)|
  double se = 0.0;
  double agree_fraction = 0.0;  // paths with N_total == chi_C(p_+)
};

struct FasTable {
  std::vector<FasRow> rows;            // one per R, in input order
  bool diff_nonincreasing_in_R = true; // observed-convergence flag
  long telescoping_failures = 0;
};

FasTable fas_pathwise(const PathEnsemble& e, const ConeRegion& cone,
                      const std::vector<double>& r_list,
                      const VelocityEstimate& v);

struct Settlement {
  double mc_fraction = 0.0;  // mean chi_C(p_+)
  double mc_se = 0.0;
  double settled_in_cone = 0.0;  // settled paths ending in C
  double unsettled = 0.0;        // membership flip within the final quarter
};

// Membership settlement of chi_C(X_t) over the final quarter of the run.
Settlement sic_pathwise(const PathEnsemble& e, const ConeRegion& cone,
                        const VelocityEstimate& v);

// Per-path windowed event sum  sum_events sign * phi(t_event)  and its
// ensemble mean: the Monte Carlo side of the flux identity.
struct WindowedCrossingSum {
  double mean = 0.0;
  double se = 0.0;
};
WindowedCrossingSum windowed_crossing_sum(const CrossingLedger& ledger,
                                          const WindowFunction& phi);

}  // namespace scatterlab
