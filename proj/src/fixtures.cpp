#include "charges/fixtures.hpp"

#include <algorithm>

namespace charges {

std::vector<std::string> fixture_names() {
  return {"FIX1", "FIX2", "FIX3", "FIX4", "FIX5", "FIX6", "FIX7"};
}

bool fixture_exists(const std::string& name) {
  auto names = fixture_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ChargeSpace fixture_space(const std::string& name) {
  if (name == "FIX1") return ChargeSpace::finite_explicit({"0"}, {}, {{{"0"}, Rat(1)}});
  if (name == "FIX2")
    return ChargeSpace::finite_explicit({"a", "b", "c"}, {{"a"}},
                                        {{{"a"}, Rat(1)}, {{"b", "c"}, Rat(2)}});
  if (name == "FIX3") return ChargeSpace::finite_explicit({"a", "b"}, {}, {{{"a", "b"}, Rat(0)}});
  if (name == "FIX4" || name == "FIX5") return ChargeSpace::fin_cof_nat({}, Rat(1), ExtRat(Rat(0)));
  if (name == "FIX6") return ChargeSpace::fin_cof_nat({Rat(1)}, Rat(0), ExtRat(Rat(1)));
  throw InputError("no ground space for fixture " + name);
}

Codomain fixture_codomain(const std::string& name) {
  if (name == "FIX7")
    return Codomain::finite_metric({"p", "q", "r"},
                                   {{"p", "q", Rat(1)}, {"q", "r", Rat(1)}, {"p", "r", Rat(2)}});
  if (fixture_exists(name)) return Codomain::rational_line();
  throw InputError("no codomain for fixture " + name);
}

Func fixture_func(const std::string& name) {
  if (name == "FIX1") return Func::finite_to_line({Rat(0)});
  if (name == "FIX2") return Func::finite_to_line({Rat(0), Rat(1), Rat(2)});
  if (name == "FIX3") return Func::finite_to_line({Rat(0), Rat(1)});
  if (name == "FIX4") return Func::nat_to_line_affine({}, Rat(1), Rat(0));
  if (name == "FIX5") return Func::nat_to_line_periodic({}, {Rat(0), Rat(1)});
  if (name == "FIX6") return Func::nat_to_line_const({Rat(5)}, Rat(0));
  throw InputError("no map for fixture " + name);
}

Instance fixture_instance(const std::string& name) {
  return Instance{name, fixture_space(name), fixture_codomain(name), fixture_func(name)};
}

}  // namespace charges
