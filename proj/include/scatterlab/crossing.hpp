// Signed boundary-crossing detection for polyline paths against
// D = C \cap closure(B_R)^c.
#pragma once

#include <vector>

#include "scatterlab/cone.hpp"

namespace scatterlab {

enum class Piece { cap, lateral };

struct CrossingEvent {
  double s = 0.0;      // parameter along the segment, in [0, 1]
  double t = 0.0;      // absolute time, filled by the ledger
  Piece piece = Piece::cap;
  int sign = 0;        // +1 entering D, -1 leaving D
};

struct SegmentEvents {
  std::vector<CrossingEvent> events;  // ordered by s
  int tangency_drops = 0;             // grazing contacts discarded
  int junction_events = 0;            // events within 1e-9 R of the cap rim
};

// Classifies one segment a -> b.  Event signs are membership differences at
// midpoints between consecutive boundary hits, so for every segment
//   sum of signs == chi_D(b) - chi_D(a)
// holds exactly, and summing over a polyline telescopes exactly, for any
// segment length.  Tangential contacts (double roots with discriminant
// < 1e-18) produce no event.  Config validation keeps sampled SDE segments
// under R/2 so crossings of the continuous path are rarely missed.
SegmentEvents classify_segment(const ConeRegion& cone, double R,
                               const double* a, const double* b);

}  // namespace scatterlab
