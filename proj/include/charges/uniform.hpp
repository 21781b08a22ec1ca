#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "charges/interval.hpp"
#include "charges/rational.hpp"

namespace charges {

// Uniform codomain presented by pseudometrics. Two shapes matter to the
// deciders: finitely many named points carrying one or more rational
// pseudometrics, and the rational line with d(u,v) = |u - v|. Weak families
// and finite products are lowered onto the multi-pseudometric finite shape at
// build time but remember their original form for serialization.
class Codomain {
 public:
  enum class Kind { FinitePoints, RationalLine };
  enum class Form { Line, Metric, Weak, Product };

  static Codomain rational_line();
  // entries (p, q, d) fill a total symmetric matrix; diagonal implied zero.
  // Axioms are validated; a triangle violation reports the witness triple.
  static Codomain finite_metric(std::vector<std::string> names,
                                std::vector<std::tuple<std::string, std::string, Rat>> entries);
  // one pseudometric per table: d_g(y, y') = |g(y) - g(y')|
  static Codomain weak_family(std::vector<std::string> names, std::vector<std::vector<Rat>> tables);
  // finite-point components only; the max combination arises from entourage
  // intersections over the pulled-back component metrics
  static Codomain product(std::vector<Codomain> components);

  Kind kind() const { return kind_; }
  Form form() const { return form_; }
  bool is_line() const { return kind_ == Kind::RationalLine; }

  int n_points() const;
  const std::vector<std::string>& point_names() const;
  int point_index(const std::string& name) const;
  int n_metrics() const;
  const Rat& dist(int metric, int i, int j) const;
  // sorted ascending, duplicates removed
  std::vector<Rat> distinct_positive_distances(int metric) const;
  // classes of the relation "all pseudometrics vanish"; index per point
  std::vector<int> zero_classes() const;

  const std::vector<std::vector<Rat>>& weak_tables() const { return weak_tables_; }
  const std::vector<Codomain>& product_components() const { return components_; }

 private:
  Codomain() : kind_(Kind::RationalLine), form_(Form::Line) {}
  Kind kind_;
  Form form_;
  std::vector<std::string> names_;
  // mats_[m] is a flattened n*n matrix
  std::vector<std::vector<Rat>> mats_;
  std::vector<std::vector<Rat>> weak_tables_;
  std::vector<Codomain> components_;
};

// One strict pseudometric constraint: pairs at distance < radius.
struct Primitive {
  int metric = 0;
  Rat radius;
};

// Finite intersection of primitives. Normalized: at most one primitive per
// pseudometric (the smallest radius wins), sorted by metric id.
class Entourage {
 public:
  Entourage() = default;
  explicit Entourage(std::vector<Primitive> prims);
  static Entourage radius(const Rat& r) { return Entourage({Primitive{0, r}}); }
  const std::vector<Primitive>& primitives() const { return prims_; }
  bool empty() const { return prims_.empty(); }
  // smallest radius bound on the given metric, or none
  const Rat* radius_for(int metric) const;
  std::string to_string() const;

 private:
  std::vector<Primitive> prims_;
};

bool entourage_contains(const Codomain& c, const Entourage& e, int i, int j);
bool entourage_contains_line(const Entourage& e, const Rat& u, const Rat& v);

std::uint32_t ball_mask(const Codomain& c, const Entourage& e, int center);
QInterval ball_interval(const Entourage& e, const Rat& center);

bool is_small_points(const Codomain& c, std::uint32_t mask, const Entourage& e);
bool is_small_values(const std::vector<Rat>& values, const Entourage& e);

// sufficient radius-halving test for D o D <= E
bool compose_contains(const Entourage& e, const Entourage& d);
// exact pointwise check, finite points only
bool compose_subset_exact(const Codomain& c, const Entourage& e, const Entourage& d);

// Cofinal descending chain. Finite points: per-metric distinct positive
// distances walked largest to smallest (shorter lists clamp at their minimum),
// ending at the minimal achievable relation. Line: harmonic grid 1, 1/2, ...,
// 1/8 joined with the positive criticals and half the smallest critical.
std::vector<Entourage> entourage_base(const Codomain& c, const std::vector<Rat>& line_criticals = {});

// Radii/endpoints where some ball-membership pattern over the given values
// can change: the values, pairwise distances, midpoints, half-distances.
std::vector<Rat> critical_thresholds_line(const std::vector<Rat>& values);
// pairwise distances among the given points, across all pseudometrics
std::vector<Rat> critical_thresholds_finite(const Codomain& c, const std::vector<int>& pts);

}  // namespace charges
