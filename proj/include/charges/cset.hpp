#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charges/rational.hpp"

namespace charges {

/// Subset of the naturals in closed form: an explicit prefix below `start`
/// and a periodic tail from `start` on (membership of n >= start depends only
/// on n mod period).  Finite and cofinite sets are the all-zero / all-one
/// tail cases.  The representation is canonical after normalization (minimal
/// period, minimal start), so structural equality is set equality.
///
/// Finite ground spaces reuse the finite kind with elements below the point
/// count; complements are then taken against the ground range, not IN.
class CSet {
 public:
  enum class Kind { Finite, Cofinite, Periodic };

  CSet();  // empty

  static CSet empty();
  static CSet all();
  static CSet finite(std::vector<long long> elements);
  static CSet cofinite(std::vector<long long> excluded);
  /// { n : lo <= n < hi }
  static CSet range(long long lo, long long hi);
  /// { n >= lo }
  static CSet from(long long lo);
  /// prefix_members (all < start) plus { n >= start : n mod period in residues }.
  static CSet periodic(std::vector<long long> prefix_members, long long start,
                       long long period, std::vector<long long> residues);

  Kind kind() const;
  bool is_empty() const;
  bool is_all() const;
  bool is_finite() const { return kind() == Kind::Finite; }
  bool is_cofinite() const { return kind() == Kind::Cofinite; }
  bool is_infinite() const { return !is_finite(); }

  bool contains(long long n) const;

  CSet complement() const;
  CSet unite(const CSet& o) const;
  CSet intersect(const CSet& o) const;
  CSet minus(const CSet& o) const;
  bool subset_of(const CSet& o) const;

  /// Elements of a finite set, ascending.  Error on infinite sets.
  std::vector<long long> elements() const;
  /// Missing elements of a cofinite set, ascending.  Error otherwise.
  std::vector<long long> excluded() const;
  /// Members strictly below `bound`, ascending.
  std::vector<long long> members_below(long long bound) const;
  /// Number of elements of a finite set.
  long long size_finite() const;

  long long start() const { return start_; }
  long long period() const { return period_; }
  /// Residues of the periodic tail, ascending (empty for finite sets).
  std::vector<long long> residues() const;
  std::vector<long long> prefix_members() const;

  bool operator==(const CSet& o) const;
  bool operator!=(const CSet& o) const { return !(*this == o); }
  bool operator<(const CSet& o) const;  // arbitrary total order on canonical form

  std::string to_string() const;

 private:
  void normalize();
  // membership for n >= start_ by residue only
  bool tail_bit(long long n) const { return res_[static_cast<size_t>(n % period_)] != 0; }

  long long start_;
  long long period_;
  std::vector<char> prefix_;  // size start_
  std::vector<char> res_;     // size period_

  static constexpr long long kPeriodCap = 4096;
  static constexpr long long kStartCap = 1'000'000;
};

/// Bitmask view of a finite CSet over a ground set of n points (n <= 31).
std::uint32_t cset_to_mask(const CSet& s, int n_points);
CSet mask_to_cset(std::uint32_t mask, int n_points);

}  // namespace charges
