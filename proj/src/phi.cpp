#include "charges/phi.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charges {

void PhiProfile::set(const Rat& z, const ExtRat& v) {
  if (v.is_zero()) return;
  map_[z] = v;
}

ExtRat PhiProfile::at(const Rat& z) const {
  auto it = map_.find(z);
  if (it != map_.end()) return it->second;
  if (prog_) {
    Rat k = (z - prog_->start) / prog_->step;
    if (denominator(k) == 1 && k >= 0) return ExtRat(prog_->value);
  }
  return ExtRat(Rat(0));
}

std::vector<Rat> PhiProfile::infinite_points() const {
  std::vector<Rat> out;
  for (const auto& [z, v] : map_)
    if (v.is_inf()) out.push_back(z);
  return out;
}

std::vector<Rat> PhiProfile::support_in(const Rat& lo, const Rat& hi) const {
  std::set<Rat> pts;
  for (const auto& [z, v] : map_)
    if (lo <= z && z <= hi) pts.insert(z);
  if (prog_) {
    // start + k*step in [lo, hi], k >= 0 integer
    Rat a = (lo - prog_->start) / prog_->step;
    Rat b = (hi - prog_->start) / prog_->step;
    if (a > b) std::swap(a, b);
    BigInt k0 = rat_ceil(a);
    if (k0 < 0) k0 = 0;
    BigInt k1 = rat_floor(b);
    if (k1 - k0 > BigInt(100000))
      throw ResourceError("PhiProfile::support_in: window holds too many progression points");
    for (BigInt k = k0; k <= k1; ++k) {
      Rat z = prog_->start + Rat(k) * prog_->step;
      if (lo <= z && z <= hi) pts.insert(z);
    }
  }
  return std::vector<Rat>(pts.begin(), pts.end());
}

Rat PhiProfile::zero_in(const Rat& lo, const Rat& hi) const {
  if (!(lo < hi)) throw InputError("PhiProfile::zero_in: window is empty");
  Rat mid = (lo + hi) / 2;
  if (at(mid).is_zero()) return mid;
  // the support inside the window is finite; take a gap midpoint
  std::vector<Rat> pts = support_in(lo, hi);
  std::vector<Rat> cuts;
  cuts.push_back(lo);
  for (const Rat& p : pts)
    if (lo < p && p < hi) cuts.push_back(p);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] < cuts[i + 1]) {
      Rat z = (cuts[i] + cuts[i + 1]) / 2;
      if (at(z).is_zero()) return z;
    }
  }
  throw InputError("PhiProfile::zero_in: no zero found, window degenerate");
}

std::vector<Rat> PhiProfile::finite_positive_values() const {
  std::set<Rat> vals;
  for (const auto& [z, v] : map_)
    if (!v.is_inf()) vals.insert(v.finite());
  if (prog_) vals.insert(prog_->value);
  return std::vector<Rat>(vals.begin(), vals.end());
}

std::string PhiProfile::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [z, v] : map_) {
    if (!first) os << ", ";
    first = false;
    os << rat_to_string(z) << " -> " << v.to_string();
  }
  os << "}";
  if (prog_) {
    os << " + arith(start=" << rat_to_string(prog_->start)
       << ", step=" << rat_to_string(prog_->step)
       << ", value=" << rat_to_string(prog_->value) << ")";
  }
  return os.str();
}

ExtRat phi_value(const ChargeSpace& space, const Func& f, const Rat& z) {
  if (!f.line_valued()) throw InputError("phi_value: needs a line-valued function");
  // the interval preimage stabilizes to the point preimage: every tail family
  // has discrete value sets, so small windows isolate the exact hits
  if (f.nat_domain()) return space.inner(f.pre_point(z));
  return space.mask_inner(f.mask_point(z));
}

PhiProfile phi_profile(const ChargeSpace& space, const Func& f) {
  if (!f.line_valued()) throw InputError("phi_profile: needs a line-valued function");
  PhiProfile prof;
  if (!f.nat_domain()) {
    for (const auto& [v, mask] : f.value_classes_q()) {
      (void)mask;
      prof.set(v, space.mask_inner(f.mask_point(v)));
    }
    return prof;
  }

  std::set<Rat> candidates;
  for (long long n = 0; n < f.prefix_len(); ++n) candidates.insert(f.value_q(n));
  switch (f.tail()) {
    case Func::Tail::Constant:
    case Func::Tail::Periodic:
      for (const Rat& v : f.tail_values_q()) candidates.insert(v);
      break;
    case Func::Tail::Affine: {
      if (space.tail_weight() > 0) {
        // every tail point carries the tail weight; prefix collisions are
        // folded into the finite map below, which takes precedence
        Rat a = f.affine_a();
        Rat b = f.affine_b();
        Rat start = a * Rat(f.prefix_len()) + b;
        prof.set_progression(PhiProgression{start, a, space.tail_weight()});
        // collision points need their exact total in the map
        for (long long n = 0; n < f.prefix_len(); ++n) {
          Rat v = f.value_q(n);
          Rat k = (v - b) / a;
          if (denominator(k) == 1 && Rat(f.prefix_len()) <= k) candidates.insert(v);
        }
      }
      break;
    }
    case Func::Tail::None:
      break;
  }
  for (const Rat& z : candidates) prof.set(z, space.inner(f.pre_point(z)));
  return prof;
}

}  // namespace charges
