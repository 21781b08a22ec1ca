#pragma once

#include <string>
#include <vector>

#include "charges/rational.hpp"

namespace charges {

// Interval of rationals with independent endpoint openness.
struct QInterval {
  Rat lo;
  Rat hi;
  bool lo_open = false;
  bool hi_open = false;

  bool empty() const {
    if (lo < hi) return false;
    if (lo > hi) return true;
    return lo_open || hi_open;  // degenerate [a,a] is nonempty, anything else at a point is empty
  }
  bool is_point() const { return lo == hi && !lo_open && !hi_open; }
  bool contains(const Rat& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && lo_open) return false;
    if (x == hi && hi_open) return false;
    return true;
  }
  std::string to_string() const;
};

// Finite union of intervals, kept sorted and pairwise disjoint with gaps.
class QIntervalSet {
 public:
  QIntervalSet() = default;
  explicit QIntervalSet(std::vector<QInterval> parts);

  void add(QInterval iv);
  bool empty() const { return parts_.empty(); }
  bool contains(const Rat& x) const;
  // true when every component is a single point
  bool all_points() const;
  const std::vector<QInterval>& parts() const { return parts_; }
  std::string to_string() const;

 private:
  void normalize();
  std::vector<QInterval> parts_;
};

}  // namespace charges
