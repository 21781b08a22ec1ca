#pragma once

#include <cstdint>
#include <vector>

#include "charges/cset.hpp"
#include "charges/interval.hpp"
#include "charges/rational.hpp"
#include "charges/uniform.hpp"

namespace charges {

// Function from a ground space into a codomain.
//  - finite domain: explicit table indexed by point.
//  - nat domain: explicit prefix table plus a tail form. The periodic tail
//    value at n is cycle[n mod q] (absolute residue, not offset by the prefix
//    length). Affine tails a*n + b require the rational line and a != 0.
// Values are rationals when the codomain is the line, point indices otherwise.
class Func {
 public:
  enum class Tail { None, Constant, Periodic, Affine };

  static Func finite_to_line(std::vector<Rat> values);
  static Func finite_to_points(std::vector<int> values);
  static Func nat_to_line_const(std::vector<Rat> prefix, Rat y);
  static Func nat_to_line_periodic(std::vector<Rat> prefix, std::vector<Rat> cycle);
  static Func nat_to_line_affine(std::vector<Rat> prefix, Rat a, Rat b);
  static Func nat_to_points_const(std::vector<int> prefix, int y);
  static Func nat_to_points_periodic(std::vector<int> prefix, std::vector<int> cycle);

  bool nat_domain() const { return nat_; }
  bool line_valued() const { return line_; }
  Tail tail() const { return tail_; }
  long long prefix_len() const { return static_cast<long long>(line_ ? tq_.size() : tp_.size()); }
  int domain_size() const;  // finite domain only

  const std::vector<Rat>& table_q() const { return tq_; }
  const std::vector<int>& table_p() const { return tp_; }
  Rat value_q(long long x) const;
  int value_p(long long x) const;
  const std::vector<Rat>& cycle_q() const { return cq_; }
  const std::vector<int>& cycle_p() const { return cp_; }
  const Rat& affine_a() const { return a_; }
  const Rat& affine_b() const { return b_; }

  // distinct values across the whole domain; an affine tail has unboundedly
  // many, so only prefix values are listed and *unbounded is set
  std::vector<Rat> finite_range_q(bool* unbounded = nullptr) const;
  // distinct tail values (constant or periodic tails only)
  std::vector<Rat> tail_values_q() const;
  std::vector<int> tail_values_p() const;
  // sup of |f|, infinite for affine tails
  ExtRat sup_abs() const;

  // nat-domain preimages
  CSet pre_interval(const QInterval& iv) const;
  CSet pre_gt(const Rat& y) const;  // f(n) > y
  CSet pre_lt(const Rat& y) const;  // f(n) < y
  CSet pre_point(const Rat& z) const;
  CSet pre_points(std::uint32_t point_mask) const;

  // finite-domain preimages as point masks
  std::uint32_t mask_interval(const QInterval& iv) const;
  std::uint32_t mask_gt(const Rat& y) const;
  std::uint32_t mask_lt(const Rat& y) const;
  std::uint32_t mask_point(const Rat& z) const;
  std::uint32_t mask_points(std::uint32_t point_mask) const;

  // value classes on a finite domain: (value, preimage mask), values sorted
  std::vector<std::pair<Rat, std::uint32_t>> value_classes_q() const;
  std::vector<std::pair<int, std::uint32_t>> value_classes_p() const;

  Func positive_part() const;                           // max(f, 0)
  Func negative_part() const;                           // max(-f, 0)
  Func post_affine(const Rat& a, const Rat& b) const;   // x -> a*f(x) + b
  Func compose_table(const std::vector<Rat>& g) const;  // g after a point-valued f

  void validate(int domain_points, const Codomain& cod) const;  // domain_points < 0 for nat

 private:
  Func() = default;
  bool nat_ = false;
  bool line_ = true;
  Tail tail_ = Tail::None;
  std::vector<Rat> tq_;   // finite table or nat prefix
  std::vector<int> tp_;
  std::vector<Rat> cq_;   // periodic cycle
  std::vector<int> cp_;
  Rat const_q_;
  int const_p_ = 0;
  Rat a_, b_;
};

// smallest integer strictly above / at least t, and the mirror images
long long int_above(const Rat& t, bool strict);
long long int_below(const Rat& t, bool strict);

}  // namespace charges
