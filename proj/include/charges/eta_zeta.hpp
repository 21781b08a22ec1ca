#pragma once

#include <cstdint>
#include <vector>

#include "charges/charge_space.hpp"
#include "charges/func.hpp"
#include "charges/phi.hpp"
#include "charges/uniform.hpp"

namespace charges {

// Ray pullbacks along a single real-valued generator g on the codomain.
// A ray qualifies for the open family when the boundary mass of g after f
// is finite at the cut, and for the zero family when it vanishes there.
struct EtaZetaEntry {
  std::vector<Rat> table;      // g, one value per codomain point
  PhiProfile profile;          // boundary mass of g composed with f
  std::vector<Rat> eta_bad;    // cuts with infinite boundary mass
  std::vector<Rat> zeta_bad;   // cuts with positive finite boundary mass
  bool zeta_bad_progression = false;  // positive cuts recur arithmetically

  // realizable pullback masks, with the cut that realizes each pair;
  // cut c contributes both {g < c} and {g > c}
  std::vector<Rat> eta_cuts;
  std::vector<std::uint32_t> eta_masks;
  std::vector<Rat> zeta_cuts;
  std::vector<std::uint32_t> zeta_masks;
};

struct EtaZetaReport {
  std::vector<EtaZetaEntry> entries;

  // every open ball is a union of finite intersections of family elements
  bool eta_topological_subbase = false;
  bool zeta_topological_subbase = false;

  // the least relation the ray-section entourages can cut down to sits
  // inside the zero diagonal of the codomain
  bool ee_entourage_subbase = false;
  bool zz_entourage_subbase = false;

  // two codomain points in distinct zero classes that no generator separates
  // (filled exactly when a subbase verdict above is false)
  std::vector<int> separation_failure;
};

// The generators must be constant on zero classes of the codomain; anything
// else cannot be uniformly continuous for a pseudometric that ignores the
// difference. Finite-point codomains only.
EtaZetaReport build_eta_zeta(const ChargeSpace& space, const Codomain& cod,
                             const std::vector<std::vector<Rat>>& generators, const Func& f);

}  // namespace charges
