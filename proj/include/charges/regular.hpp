#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "charges/charge_space.hpp"
#include "charges/func.hpp"
#include "charges/rational.hpp"
#include "charges/verdict.hpp"

namespace charges {

// One level piece of the dyadic simple sequence at depth i: the preimage of
// (y_{ik}, y_{i,k+1}] on the positive side or [-y_{i,k+1}, -y_{ik}) on the
// negative side, where y_{ik} = k * 2^{-i} * delta and k runs to i*2^i - 1.
struct RegularPiece {
  int depth = 0;
  long long k = 0;
  bool positive = true;
  CSet part;
  bool member = false;
  ExtRat gap;
};

struct DepthErrors {
  int depth = 0;
  // (epsilon, outer charge of the mismatch set {|s_i - f| > epsilon})
  std::vector<std::pair<Rat, ExtRat>> by_eps;
};

struct RegularSequence {
  Rat delta;
  int depth = 0;
  long long pieces_checked = 0;
  bool pieces_ok = true;
  std::optional<RegularPiece> bad_piece;
  std::vector<DepthErrors> errors;
  // every epsilon of the critical grid reaches outer mass exactly 0 at the
  // final depth (and stays there: past the final depth the pieces only refine)
  bool converged = false;
};

// First candidate scale * p / 3^j whose dyadic level grid k * 2^{-i} (i up to
// depth_bound) avoids the positive support of the boundary-mass profile.
// Affine progressions are tested through the divisibility of their residues,
// without enumeration. nullopt when every candidate is hit.
std::optional<Rat> find_regular_delta(const ChargeSpace& s, const Func& f, int depth_bound);

RegularSequence build_regular_sequence(const ChargeSpace& s, const Func& f, const Rat& delta,
                                       int depth);

// the epsilon grid the convergence check runs over
std::vector<Rat> regular_epsilon_grid(const Func& f);

}  // namespace charges
