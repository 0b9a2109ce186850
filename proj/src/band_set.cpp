#include "qgspec/band_set.hpp"

#include <algorithm>
#include <cmath>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"

namespace qgs {

void BandSet::add(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "interval must satisfy lo <= hi");
  intervals.push_back({lo, hi});
}

void BandSet::normalize(double merge_gap) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<Interval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo - merged.back().hi <= merge_gap) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  intervals = std::move(merged);
}

double BandSet::measure() const {
  double m = 0.0;
  for (const auto& iv : intervals) m += iv.length();
  return m;
}

double BandSet::distance(double E) const {
  double d = INFINITY;
  for (const auto& iv : intervals) {
    if (E >= iv.lo && E <= iv.hi) return 0.0;
    d = std::min(d, E < iv.lo ? iv.lo - E : E - iv.hi);
  }
  return d;
}

bool BandSet::contains(double E, double slack) const { return distance(E) <= slack; }

bool BandSet::subset_of(const BandSet& other, double slack) const {
  for (const auto& iv : intervals) {
    bool inside = false;
    for (const auto& big : other.intervals) {
      if (iv.lo >= big.lo - slack && iv.hi <= big.hi + slack) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

bool BandSet::valid() const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!(intervals[i].lo <= intervals[i].hi)) return false;
    if (i > 0 && !(intervals[i - 1].hi < intervals[i].lo)) return false;
  }
  return true;
}

BandSet unite(const BandSet& a, const BandSet& b) {
  BandSet out = a;
  out.intervals.insert(out.intervals.end(), b.intervals.begin(), b.intervals.end());
  out.conservative = a.conservative || b.conservative;
  out.resolution = std::max(a.resolution, b.resolution);
  out.normalize();
  return out;
}

MeasureEstimate measure_estimate(const BandSet& bands) {
  MeasureEstimate m;
  m.total = bands.measure();
  // each endpoint may move by up to one resolution cell
  m.diagnostic = 2.0 * static_cast<double>(bands.intervals.size()) * bands.resolution;
  return m;
}

std::string bands_csv(const BandSet& bands) {
  std::string out = csv_row({"lo", "hi"});
  for (const auto& iv : bands.intervals) out += csv_row({fmt(iv.lo), fmt(iv.hi)});
  return out;
}

}  // namespace qgs
