#pragma once

#include <vector>

#include "charges/charge_space.hpp"
#include "charges/func.hpp"
#include "charges/uniform.hpp"
#include "charges/verdict.hpp"

namespace charges {

enum class RaySide { Left, Right, Both };

// Decisive data for a line codomain: every verdict below is constant in the
// radius between consecutive critical thresholds, so the finite chain built
// from them is cofinal enough to settle the full entourage quantifier.
std::vector<Rat> instance_criticals(const Codomain& cod, const Func& f);
std::vector<Entourage> instance_base(const Codomain& cod, const Func& f);

Verdict decide_t1(const ChargeSpace& s, const Codomain& c, const Func& f);
Verdict decide_t2(const ChargeSpace& s, const Codomain& c, const Func& f);
Verdict decide_smooth(const ChargeSpace& s, const Codomain& c, const Func& f);
Verdict decide_base(const ChargeSpace& s, const Codomain& c, const Func& f);
Verdict decide_ubm(const ChargeSpace& s, const Codomain& c, const Func& f);
// field = sigma-field is needed; rejects the finite-cofinite backend
Verdict decide_conventional(const ChargeSpace& s, const Codomain& c, const Func& f);
Verdict decide_ray(const ChargeSpace& s, const Func& f, RaySide side);
Verdict decide_greco(const ChargeSpace& s, const Func& f);
// defined in regular.cpp next to the sequence machinery
Verdict decide_regular(const ChargeSpace& s, const Func& f);

Verdict decide(Property p, const ChargeSpace& s, const Codomain& c, const Func& f);

}  // namespace charges
