#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charges/charge_space.hpp"
#include "charges/func.hpp"
#include "charges/rational.hpp"

namespace charges {

// Arithmetic progression of equal positive values: start, start+step, ...
// (all k >= 0). Arises from affine tails over a positive constant tail weight.
struct PhiProgression {
  Rat start;
  Rat step;   // nonzero
  Rat value;  // the common value, equal to the tail weight
};

// Closed form of z -> limiting inner charge of f^{-1}(z - d, z + d) as d -> 0.
// A finite map carries all exceptional values (possibly infinite); an optional
// progression covers the rest of an affine tail; everywhere else the value is 0.
// The map wins where it overlaps the progression.
class PhiProfile {
 public:
  void set(const Rat& z, const ExtRat& v);
  void set_progression(PhiProgression p) { prog_ = std::move(p); }

  ExtRat at(const Rat& z) const;
  const std::map<Rat, ExtRat>& support_map() const { return map_; }
  const std::optional<PhiProgression>& progression() const { return prog_; }
  std::vector<Rat> infinite_points() const;

  // all points with positive value inside [lo, hi]
  std::vector<Rat> support_in(const Rat& lo, const Rat& hi) const;
  // some point of (lo, hi) where the value is 0; needs lo < hi
  Rat zero_in(const Rat& lo, const Rat& hi) const;
  // distinct finite positive values (useful as an epsilon grid)
  std::vector<Rat> finite_positive_values() const;

  std::string to_string() const;

 private:
  std::map<Rat, ExtRat> map_;
  std::optional<PhiProgression> prog_;
};

// the pointwise limit, evaluated directly from preimages
ExtRat phi_value(const ChargeSpace& space, const Func& f, const Rat& z);
// the whole profile in closed form; must agree with phi_value everywhere
PhiProfile phi_profile(const ChargeSpace& space, const Func& f);

}  // namespace charges
