#pragma once

#include <string>
#include <vector>

#include "charges/charge_space.hpp"
#include "charges/func.hpp"
#include "charges/uniform.hpp"

namespace charges {

// A fully assembled problem: ground space, codomain, and the map between.
struct Instance {
  std::string name;
  ChargeSpace space;
  Codomain cod;
  Func f;
};

// Built-in fixtures FIX1..FIX7. FIX1..FIX6 are instances over the rational
// line; FIX7 is a three-point metric codomain with no attached map.
//   FIX1  one point of mass 1, f = 0
//   FIX2  {a,b,c}, field generated by {a}, masses 1 and 2, f = (0,1,2)
//   FIX3  {a,b}, trivial field, total mass 0, f = (0,1)
//   FIX4  naturals, unit tail weight, f(n) = n
//   FIX5  same space, f = parity
//   FIX6  naturals, weight 1 at 0, unit lump at infinity, f = (5,0,0,...)
//   FIX7  {p,q,r} with d(p,q) = d(q,r) = 1, d(p,r) = 2
std::vector<std::string> fixture_names();
bool fixture_exists(const std::string& name);
ChargeSpace fixture_space(const std::string& name);
Codomain fixture_codomain(const std::string& name);
Func fixture_func(const std::string& name);
Instance fixture_instance(const std::string& name);

}  // namespace charges
