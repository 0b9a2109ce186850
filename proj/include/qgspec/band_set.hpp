#pragma once

#include <string>
#include <vector>

namespace qgs {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Finite union of closed intervals. Degenerate intervals [x, x] are allowed
// and represent isolated points.
struct BandSet {
  std::vector<Interval> intervals;
  std::string provenance;
  double resolution = 0.0;    // endpoint resolution of the producing computation
  bool conservative = false;  // budget ran out somewhere; the set over-covers

  void add(double lo, double hi);
  // Sorts and merges intervals whose gap is <= merge_gap.
  void normalize(double merge_gap = 0.0);
  double measure() const;
  bool contains(double E, double slack = 0.0) const;
  double distance(double E) const;  // 0 inside
  // Every interval of *this lies inside some interval of other, up to slack.
  bool subset_of(const BandSet& other, double slack = 0.0) const;
  bool valid() const;  // sorted, disjoint, lo <= hi
};

BandSet unite(const BandSet& a, const BandSet& b);

struct MeasureEstimate {
  double total = 0.0;
  double diagnostic = 0.0;  // bound on the change when the resolution is halved
};

MeasureEstimate measure_estimate(const BandSet& bands);

std::string bands_csv(const BandSet& bands);

}  // namespace qgs
