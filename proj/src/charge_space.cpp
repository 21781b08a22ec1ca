#include "charges/charge_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace charges {

void ChargeSpace::require(Kind k, const char* op) const {
  if (kind_ != k) throw InputError(std::string(op) + ": wrong backend for this operation");
}

ChargeSpace ChargeSpace::finite_explicit(
    std::vector<std::string> points, std::vector<std::vector<std::string>> generators,
    std::vector<std::pair<std::vector<std::string>, Rat>> atom_masses) {
  if (points.empty()) throw InputError("space needs at least one point");
  if (points.size() > 20) throw ResourceError("too many points for the finite backend");
  ChargeSpace s;
  s.kind_ = Kind::FiniteExplicit;
  s.names_ = std::move(points);
  {
    std::set<std::string> seen(s.names_.begin(), s.names_.end());
    if (seen.size() != s.names_.size()) throw InputError("duplicate point name");
  }
  int n = static_cast<int>(s.names_.size());

  std::vector<std::uint32_t> gen_masks;
  for (const auto& g : generators) {
    std::uint32_t m = 0;
    for (const auto& name : g) m |= (1u << s.point_index(name));
    gen_masks.push_back(m);
  }

  // atoms = classes of equal membership signature across the generators
  std::map<std::vector<int>, std::uint32_t> classes;
  for (int p = 0; p < n; ++p) {
    std::vector<int> sig;
    for (std::uint32_t g : gen_masks) sig.push_back((g >> p) & 1u);
    classes[sig] |= (1u << p);
  }
  for (auto& [sig, mask] : classes) s.atoms_.push_back(mask);
  std::sort(s.atoms_.begin(), s.atoms_.end());
  if (s.atoms_.size() > 12)
    throw ResourceError("field closure exceeds cap: " + std::to_string(std::size_t(1) << s.atoms_.size()) +
                        " > " + std::to_string(kFieldCap));

  s.atom_idx_of_point_.assign(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < s.atoms_.size(); ++i)
    for (int p = 0; p < n; ++p)
      if (s.atoms_[i] & (1u << p)) s.atom_idx_of_point_[static_cast<size_t>(p)] = static_cast<int>(i);

  // masses must be given exactly on the atoms, once each
  s.masses_.assign(s.atoms_.size(), Rat(0));
  std::vector<bool> given(s.atoms_.size(), false);
  for (const auto& [pts, mass] : atom_masses) {
    std::uint32_t m = 0;
    for (const auto& name : pts) m |= (1u << s.point_index(name));
    auto it = std::find(s.atoms_.begin(), s.atoms_.end(), m);
    if (it == s.atoms_.end())
      throw InputError("mass given on a set that is not an atom of the generated field");
    size_t idx = static_cast<size_t>(it - s.atoms_.begin());
    if (given[idx]) throw InputError("duplicate mass for one atom");
    if (mass < 0) throw InputError("negative mass");
    s.masses_[idx] = mass;
    given[idx] = true;
  }
  for (size_t i = 0; i < s.atoms_.size(); ++i)
    if (!given[i]) throw InputError("missing mass for an atom of the generated field");

  // materialize the field: every union of atoms
  size_t k = s.atoms_.size();
  for (std::uint32_t sel = 0; sel < (1u << k); ++sel) {
    std::uint32_t m = 0;
    for (size_t i = 0; i < k; ++i)
      if (sel & (1u << i)) m |= s.atoms_[i];
    s.field_.push_back(m);
  }
  std::sort(s.field_.begin(), s.field_.end());
  return s;
}

ChargeSpace ChargeSpace::fin_cof_nat(std::vector<Rat> prefix_weights, Rat tail_weight,
                                     ExtRat mass_at_infinity) {
  ChargeSpace s;
  s.kind_ = Kind::FinCofNat;
  for (const Rat& w : prefix_weights)
    if (w < 0) throw InputError("negative weight");
  if (tail_weight < 0) throw InputError("negative tail weight");
  if (!mass_at_infinity.is_inf() && mass_at_infinity.finite() < 0)
    throw InputError("negative mass at infinity");
  s.w_ = std::move(prefix_weights);
  s.winf_ = std::move(tail_weight);
  // positive tail weight already forces infinite cofinite mass
  s.minf_ = (s.winf_ > 0) ? ExtRat::inf() : mass_at_infinity;
  return s;
}

int ChargeSpace::n_points() const {
  require(Kind::FiniteExplicit, "n_points");
  return static_cast<int>(names_.size());
}

const std::vector<std::string>& ChargeSpace::point_names() const {
  require(Kind::FiniteExplicit, "point_names");
  return names_;
}

int ChargeSpace::point_index(const std::string& name) const {
  require(Kind::FiniteExplicit, "point_index");
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw InputError("unknown point name: " + name);
}

const std::vector<std::uint32_t>& ChargeSpace::field_masks() const {
  require(Kind::FiniteExplicit, "field_masks");
  return field_;
}

const std::vector<std::uint32_t>& ChargeSpace::atom_masks() const {
  require(Kind::FiniteExplicit, "atom_masks");
  return atoms_;
}

std::uint32_t ChargeSpace::atom_of_point(int p) const {
  require(Kind::FiniteExplicit, "atom_of_point");
  return atoms_[static_cast<size_t>(atom_idx_of_point_[static_cast<size_t>(p)])];
}

const Rat& ChargeSpace::atom_mass(std::uint32_t atom_mask) const {
  require(Kind::FiniteExplicit, "atom_mass");
  auto it = std::find(atoms_.begin(), atoms_.end(), atom_mask);
  if (it == atoms_.end()) throw std::logic_error("atom_mass: not an atom");
  return masses_[static_cast<size_t>(it - atoms_.begin())];
}

bool ChargeSpace::mask_in_field(std::uint32_t mask) const {
  require(Kind::FiniteExplicit, "mask_in_field");
  return std::binary_search(field_.begin(), field_.end(), mask);
}

Rat ChargeSpace::mask_outer(std::uint32_t mask) const {
  require(Kind::FiniteExplicit, "mask_outer");
  Rat sum(0);
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] & mask) sum += masses_[i];
  return sum;
}

Rat ChargeSpace::mask_inner(std::uint32_t mask) const {
  require(Kind::FiniteExplicit, "mask_inner");
  Rat sum(0);
  for (size_t i = 0; i < atoms_.size(); ++i)
    if ((atoms_[i] & mask) == atoms_[i]) sum += masses_[i];
  return sum;
}

long long ChargeSpace::prefix_len() const {
  require(Kind::FinCofNat, "prefix_len");
  return static_cast<long long>(w_.size());
}

const std::vector<Rat>& ChargeSpace::prefix_weights() const {
  require(Kind::FinCofNat, "prefix_weights");
  return w_;
}

const Rat& ChargeSpace::tail_weight() const {
  require(Kind::FinCofNat, "tail_weight");
  return winf_;
}

const ExtRat& ChargeSpace::mass_at_infinity() const {
  require(Kind::FinCofNat, "mass_at_infinity");
  return minf_;
}

Rat ChargeSpace::point_weight(long long n) const {
  require(Kind::FinCofNat, "point_weight");
  if (n < 0) throw std::logic_error("point_weight: negative index");
  if (n < static_cast<long long>(w_.size())) return w_[static_cast<size_t>(n)];
  return winf_;
}

ExtRat ChargeSpace::total() const {
  if (kind_ == Kind::FiniteExplicit) {
    Rat sum(0);
    for (const Rat& m : masses_) sum += m;
    return ExtRat(sum);
  }
  if (winf_ > 0 || minf_.is_inf()) return ExtRat::inf();
  Rat sum = minf_.finite();
  for (const Rat& w : w_) sum += w;
  return ExtRat(sum);
}

CSet ChargeSpace::ground() const {
  if (kind_ == Kind::FiniteExplicit) return CSet::range(0, n_points());
  return CSet::all();
}

std::uint32_t ChargeSpace::mask_of(const CSet& a) const {
  if (a.kind() != CSet::Kind::Finite)
    throw InputError("infinite set over a finite ground set");
  return cset_to_mask(a, n_points());
}

bool ChargeSpace::field_contains(const CSet& a) const {
  if (kind_ == Kind::FiniteExplicit) return mask_in_field(mask_of(a));
  return a.kind() != CSet::Kind::Periodic;
}

ExtRat ChargeSpace::charge(const CSet& a) const {
  if (!field_contains(a)) throw InputError("charge: set is outside the field");
  if (kind_ == Kind::FiniteExplicit) return ExtRat(mask_inner(mask_of(a)));
  if (a.kind() == CSet::Kind::Finite) {
    Rat sum(0);
    for (long long n : a.elements()) sum += point_weight(n);
    return ExtRat(sum);
  }
  // cofinite
  if (winf_ > 0 || minf_.is_inf()) return ExtRat::inf();
  Rat sum = minf_.finite();
  for (long long n = 0; n < prefix_len(); ++n)
    if (a.contains(n)) sum += w_[static_cast<size_t>(n)];
  return ExtRat(sum);
}

ExtRat ChargeSpace::outer(const CSet& a) const {
  if (kind_ == Kind::FiniteExplicit) return ExtRat(mask_outer(mask_of(a)));
  if (a.kind() != CSet::Kind::Periodic) return charge(a);
  // infinite and coinfinite: any field superset is cofinite
  if (winf_ > 0 || minf_.is_inf()) return ExtRat::inf();
  Rat sum = minf_.finite();
  for (long long n = 0; n < prefix_len(); ++n)
    if (a.contains(n)) sum += w_[static_cast<size_t>(n)];
  return ExtRat(sum);
}

ExtRat ChargeSpace::inner(const CSet& a) const {
  if (kind_ == Kind::FiniteExplicit) return ExtRat(mask_inner(mask_of(a)));
  if (a.kind() != CSet::Kind::Periodic) return charge(a);
  // sup over finite subsets: diverges as soon as the tail weight is positive
  if (winf_ > 0) return ExtRat::inf();
  Rat sum(0);
  for (long long n = 0; n < prefix_len(); ++n)
    if (a.contains(n)) sum += w_[static_cast<size_t>(n)];
  return ExtRat(sum);
}

PJResult ChargeSpace::pj_membership(const CSet& a, long long cutoff) const {
  PJResult r;
  if (kind_ == Kind::FiniteExplicit) {
    std::uint32_t m = mask_of(a);
    std::uint32_t inner_mask = 0, outer_mask = 0;
    Rat gap(0);
    for (size_t i = 0; i < atoms_.size(); ++i) {
      std::uint32_t hit = atoms_[i] & m;
      if (hit == 0) continue;
      outer_mask |= atoms_[i];
      if (hit == atoms_[i]) {
        inner_mask |= atoms_[i];
      } else {
        gap += masses_[i];  // straddling atom
      }
    }
    r.sandwich.inner_set = mask_to_cset(inner_mask, n_points());
    r.sandwich.outer_set = mask_to_cset(outer_mask, n_points());
    r.sandwich.gap_infimum = ExtRat(gap);
    r.member = gap == 0;
    return r;
  }
  if (a.kind() != CSet::Kind::Periodic) {
    r.member = true;
    r.sandwich.inner_set = a;
    r.sandwich.outer_set = a;
    r.sandwich.gap_infimum = ExtRat(Rat(0));
    return r;
  }
  // infinite coinfinite: B = A below t, C = A plus everything from t on.
  // C \ B = [t, inf), whose charge is the mass at infinity once t clears the
  // prefix, and that is the least charge any cofinite difference can have.
  long long t = std::max({prefix_len(), a.start(), cutoff});
  r.sandwich.inner_set = CSet::finite(a.members_below(t));
  r.sandwich.outer_set = a.unite(CSet::from(t));
  r.sandwich.gap_infimum = (winf_ > 0) ? ExtRat::inf() : minf_;
  r.member = r.sandwich.gap_infimum.is_zero();
  return r;
}

ExtRat ChargeSpace::pj_charge(const CSet& a, long long cutoff) const {
  PJResult r = pj_membership(a, cutoff);
  if (!r.member) throw InputError("pj_charge: set is outside the completion");
  return outer(a);
}

ChargeSpace::CompletenessReport ChargeSpace::completeness_check() const {
  if (kind_ != Kind::FiniteExplicit)
    throw InputError("completeness_check is only defined on the finite backend");
  CompletenessReport rep;
  rep.complete = true;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (masses_[i] == 0 && __builtin_popcount(atoms_[i]) > 1) {
      rep.complete = false;
      rep.offending_atoms.push_back(atoms_[i]);
    }
  }
  return rep;
}

}  // namespace charges
