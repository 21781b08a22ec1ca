#include "charges/interval.hpp"

#include <algorithm>
#include <sstream>

namespace charges {

std::string QInterval::to_string() const {
  std::ostringstream os;
  os << (lo_open ? "(" : "[") << rat_to_string(lo) << "," << rat_to_string(hi)
     << (hi_open ? ")" : "]");
  return os.str();
}

QIntervalSet::QIntervalSet(std::vector<QInterval> parts) : parts_(std::move(parts)) { normalize(); }

void QIntervalSet::add(QInterval iv) {
  parts_.push_back(std::move(iv));
  normalize();
}

namespace {
// intervals touch or overlap: their union is again an interval
bool mergeable(const QInterval& a, const QInterval& b) {
  // assumes a.lo <= b.lo after sort
  if (b.lo < a.hi) return true;
  if (b.lo > a.hi) return false;
  return !(a.hi_open && b.lo_open);  // share the endpoint unless both sides exclude it
}
}  // namespace

void QIntervalSet::normalize() {
  parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                              [](const QInterval& iv) { return iv.empty(); }),
               parts_.end());
  std::sort(parts_.begin(), parts_.end(), [](const QInterval& a, const QInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_open != b.lo_open) return !a.lo_open;  // closed endpoint first
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.hi_open < b.hi_open;
  });
  std::vector<QInterval> out;
  for (auto& iv : parts_) {
    if (!out.empty() && mergeable(out.back(), iv)) {
      QInterval& prev = out.back();
      if (iv.hi > prev.hi || (iv.hi == prev.hi && !iv.hi_open)) {
        prev.hi = iv.hi;
        prev.hi_open = iv.hi_open;
      }
    } else {
      out.push_back(iv);
    }
  }
  parts_ = std::move(out);
}

bool QIntervalSet::contains(const Rat& x) const {
  for (const auto& iv : parts_)
    if (iv.contains(x)) return true;
  return false;
}

bool QIntervalSet::all_points() const {
  for (const auto& iv : parts_)
    if (!iv.is_point()) return false;
  return true;
}

std::string QIntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " u ";
    os << parts_[i].to_string();
  }
  return os.str();
}

}  // namespace charges
