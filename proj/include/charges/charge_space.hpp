#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charges/cset.hpp"
#include "charges/rational.hpp"

namespace charges {

// Sandwich B <= A <= C with B, C in the field.
// gap_infimum = inf over all such sandwiches of mu(C \ B); membership in the
// completion is equivalent to gap_infimum == 0. Both backends attain the
// infimum with the returned pair.
struct PJSandwich {
  CSet inner_set;
  CSet outer_set;
  ExtRat gap_infimum;
};

struct PJResult {
  bool member = false;
  PJSandwich sandwich;
};

// Ground set + field of sets + finitely additive charge, exact values.
// Two backends:
//  - FiniteExplicit: named points, field generated by subsets, masses on atoms.
//  - FinCofNat: all of N, field = finite + cofinite sets, prefix weights,
//    a constant tail weight, and a separate mass at infinity.
class ChargeSpace {
 public:
  enum class Kind { FiniteExplicit, FinCofNat };

  static ChargeSpace finite_explicit(
      std::vector<std::string> points, std::vector<std::vector<std::string>> generators,
      std::vector<std::pair<std::vector<std::string>, Rat>> atom_masses);
  // tail_weight > 0 forces the mass at infinity to infinity (normalized here).
  static ChargeSpace fin_cof_nat(std::vector<Rat> prefix_weights, Rat tail_weight,
                                 ExtRat mass_at_infinity);

  Kind kind() const { return kind_; }
  bool is_finite_backend() const { return kind_ == Kind::FiniteExplicit; }

  // FiniteExplicit accessors (logic_error on the wrong backend)
  int n_points() const;
  const std::vector<std::string>& point_names() const;
  int point_index(const std::string& name) const;
  const std::vector<std::uint32_t>& field_masks() const;
  const std::vector<std::uint32_t>& atom_masks() const;
  std::uint32_t atom_of_point(int p) const;
  const Rat& atom_mass(std::uint32_t atom_mask) const;
  bool mask_in_field(std::uint32_t mask) const;
  // outer/inner on raw masks, used heavily by the deciders
  Rat mask_outer(std::uint32_t mask) const;
  Rat mask_inner(std::uint32_t mask) const;

  // FinCofNat accessors
  long long prefix_len() const;
  const std::vector<Rat>& prefix_weights() const;
  const Rat& tail_weight() const;
  const ExtRat& mass_at_infinity() const;
  Rat point_weight(long long n) const;

  ExtRat total() const;
  bool bounded() const { return !total().is_inf(); }
  CSet ground() const;

  bool field_contains(const CSet& a) const;
  ExtRat charge(const CSet& a) const;  // InputError when a is outside the field
  ExtRat outer(const CSet& a) const;
  ExtRat inner(const CSet& a) const;

  // cutoff only widens the FinCofNat sandwich window; the gap value is exact
  PJResult pj_membership(const CSet& a, long long cutoff = 64) const;
  ExtRat pj_charge(const CSet& a, long long cutoff = 64) const;

  struct CompletenessReport {
    bool complete = false;
    std::vector<std::uint32_t> offending_atoms;  // null atoms with more than one point
  };
  CompletenessReport completeness_check() const;  // FiniteExplicit only

 private:
  ChargeSpace() : kind_(Kind::FiniteExplicit) {}
  void require(Kind k, const char* op) const;
  std::uint32_t mask_of(const CSet& a) const;

  Kind kind_;

  std::vector<std::string> names_;
  std::vector<std::uint32_t> atoms_;       // sorted masks, partition of X
  std::vector<Rat> masses_;                // parallel to atoms_
  std::vector<int> atom_idx_of_point_;
  std::vector<std::uint32_t> field_;       // sorted, all unions of atoms

  std::vector<Rat> w_;
  Rat winf_;
  ExtRat minf_;

  static constexpr std::size_t kFieldCap = 4096;
};

}  // namespace charges
