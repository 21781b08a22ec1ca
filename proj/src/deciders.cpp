#include "charges/deciders.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charges {

namespace {

// finite value list that pins down every ball-membership pattern; affine
// tails contribute the first few tail values and the ones nearest each
// prefix value, which bounds every relevant distance from below
std::vector<Rat> decisive_values(const Func& f) {
  bool unbounded = false;
  std::vector<Rat> vals = f.finite_range_q(&unbounded);
  if (f.tail() != Func::Tail::Affine) return vals;
  std::set<Rat> out(vals.begin(), vals.end());
  long long m = f.prefix_len();
  const Rat& a = f.affine_a();
  const Rat& b = f.affine_b();
  auto add = [&](long long n) {
    if (n >= m) out.insert(a * Rat(n) + b);
  };
  for (long long d = 0; d < 3; ++d) add(m + d);
  for (const Rat& v : vals) {
    long long n0 = int_below((v - b) / a, false);
    for (long long d = -2; d <= 2; ++d) add(n0 + d);
  }
  return std::vector<Rat>(out.begin(), out.end());
}

std::vector<Rat> mask_values_q(const Func& f, std::uint32_t mask) {
  std::set<Rat> vals;
  for (int p = 0; p < f.domain_size(); ++p)
    if (mask & (1u << p)) vals.insert(f.value_q(p));
  return std::vector<Rat>(vals.begin(), vals.end());
}

std::uint32_t mask_image_p(const Func& f, std::uint32_t mask) {
  std::uint32_t img = 0;
  for (int p = 0; p < f.domain_size(); ++p)
    if (mask & (1u << p)) img |= 1u << f.value_p(p);
  return img;
}

// codomain point mask of the tail values of a point-valued nat function
std::uint32_t mask_image_p_of_list(const Func& f) {
  std::uint32_t img = 0;
  for (int v : f.tail_values_p()) img |= 1u << v;
  return img;
}

CSet preimage_points(const ChargeSpace& s, const Func& f, std::uint32_t ymask) {
  if (f.nat_domain()) return f.pre_points(ymask);
  return mask_to_cset(f.mask_points(ymask), s.n_points());
}

CSet preimage_interval(const ChargeSpace& s, const Func& f, const QInterval& iv) {
  if (f.nat_domain()) return f.pre_interval(iv);
  return mask_to_cset(f.mask_interval(iv), s.n_points());
}

CSet preimage_gt(const ChargeSpace& s, const Func& f, const Rat& y) {
  if (f.nat_domain()) return f.pre_gt(y);
  return mask_to_cset(f.mask_gt(y), s.n_points());
}

CSet preimage_lt(const ChargeSpace& s, const Func& f, const Rat& y) {
  if (f.nat_domain()) return f.pre_lt(y);
  return mask_to_cset(f.mask_lt(y), s.n_points());
}

// whole tail mass once every point below t is handled one by one;
// exact because the cofinite set [t, inf) carries no prefix weight
ExtRat tail_discard_cost(const ChargeSpace& s) { return s.mass_at_infinity(); }

long long tail_cut(const ChargeSpace& s, const Func& f) {
  return std::max(f.prefix_len(), s.prefix_len());
}

bool zero_tail_mass(const ChargeSpace& s) {
  return s.tail_weight() == 0 && s.mass_at_infinity().is_zero();
}

// line-entourage radius (entourages over the line have the single metric 0)
const Rat& line_radius(const Entourage& e) {
  const Rat* r = e.radius_for(0);
  if (!r) throw InputError("line entourage without a radius");
  return *r;
}

void validate_instance(const ChargeSpace& s, const Codomain& c, const Func& f) {
  f.validate(s.is_finite_backend() ? s.n_points() : -1, c);
}

void fail_with(Verdict& v, Obstruction o) {
  v.holds = false;
  if (!v.obstruction) v.obstruction = std::move(o);
}

}  // namespace

std::vector<Rat> instance_criticals(const Codomain& cod, const Func& f) {
  if (!cod.is_line()) return {};
  return critical_thresholds_line(decisive_values(f));
}

std::vector<Entourage> instance_base(const Codomain& cod, const Func& f) {
  if (cod.is_line()) return entourage_base(cod, instance_criticals(cod, f));
  return entourage_base(cod);
}

// ---------------------------------------------------------------------------
// T2: finite partitions A_0, A_1, ..., A_n with every f(A_i) small and the
// discarded mass mu(A_0) arbitrarily small. Per entourage the infimum is
// computed exactly; holding means it is 0 at every base entourage.

Verdict decide_t2(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  Verdict v;
  v.property = Property::T2;
  v.holds = true;
  for (const Entourage& e : instance_base(c, f)) {
    EntourageEntry entry;
    entry.entourage = e;
    entry.infimum = ExtRat(Rat(0));
    if (s.is_finite_backend()) {
      // a cell of the partition is a union of atoms and its image contains
      // each member atom's image, so non-small atoms are forced into A_0;
      // small positive atoms stand alone as their own cells
      Rat inf(0);
      std::uint32_t exceptional = 0;
      for (std::uint32_t atom : s.atom_masks()) {
        bool small = c.is_line() ? is_small_values(mask_values_q(f, atom), e)
                                 : is_small_points(c, mask_image_p(f, atom), e);
        bool null_atom = s.atom_mass(atom) == 0;
        if (small && !null_atom) {
          SimpleCell cell;
          cell.part = mask_to_cset(atom, s.n_points());
          entry.cells.push_back(std::move(cell));
        } else {
          exceptional |= atom;
          if (!small && !null_atom) inf += s.atom_mass(atom);
        }
      }
      entry.exceptional = mask_to_cset(exceptional, s.n_points());
      entry.infimum = ExtRat(inf);
    } else {
      bool small_tail = false;
      if (f.tail() != Func::Tail::Affine) {
        small_tail = c.is_line() ? is_small_values(f.tail_values_q(), e)
                                 : is_small_points(c, mask_image_p_of_list(f), e);
      }
      long long t = tail_cut(s, f);
      for (long long n = 0; n < t; ++n)
        entry.cells.push_back(SimpleCell{CSet::finite({n}), false, Rat(0), 0});
      if (small_tail) {
        entry.cells.push_back(SimpleCell{CSet::from(t), false, Rat(0), 0});
        entry.exceptional = CSet::empty();
      } else {
        entry.exceptional = CSet::from(t);
        entry.infimum = zero_tail_mass(s) ? ExtRat(Rat(0)) : tail_discard_cost(s);
      }
    }
    if (!entry.infimum.is_zero()) {
      fail_with(v, Obstruction{"entourage", "no small-image partition with negligible discard",
                               entry.infimum, e});
    }
    v.entries.push_back(std::move(entry));
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict decide_t1(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  Verdict v;
  v.property = Property::T1;
  v.holds = true;
  for (const Entourage& e : instance_base(c, f)) {
    EntourageEntry entry;
    entry.entourage = e;
    entry.infimum = ExtRat(Rat(0));
    if (s.is_finite_backend()) {
      // outer mass counts whole atoms, so the best simple function aligns
      // cells with atoms and centers each coverable atom's image
      Rat inf(0);
      std::uint32_t exceptional = 0;
      for (std::uint32_t atom : s.atom_masks()) {
        SimpleCell cell;
        cell.part = mask_to_cset(atom, s.n_points());
        bool coverable = false;
        if (c.is_line()) {
          std::vector<Rat> vals = mask_values_q(f, atom);
          Rat diam = vals.back() - vals.front();
          if (diam < 2 * line_radius(e)) {
            coverable = true;
            cell.center_is_q = true;
            cell.center_q = (vals.front() + vals.back()) / 2;
          }
        } else {
          std::uint32_t img = mask_image_p(f, atom);
          for (int y = 0; y < c.n_points() && !coverable; ++y) {
            if ((img & ~ball_mask(c, e, y)) == 0) {
              coverable = true;
              cell.center_p = y;
            }
          }
        }
        if (coverable) {
          entry.cells.push_back(std::move(cell));
        } else {
          exceptional |= atom;
          if (s.atom_mass(atom) > 0) inf += s.atom_mass(atom);
        }
      }
      entry.exceptional = mask_to_cset(exceptional, s.n_points());
      entry.infimum = ExtRat(inf);
    } else {
      long long t = tail_cut(s, f);
      for (long long n = 0; n < t; ++n) {
        SimpleCell cell;
        cell.part = CSet::finite({n});
        if (c.is_line()) {
          cell.center_is_q = true;
          cell.center_q = f.value_q(n);
        } else {
          cell.center_p = f.value_p(n);
        }
        entry.cells.push_back(std::move(cell));
      }
      SimpleCell tail_cell;
      tail_cell.part = CSet::from(t);
      bool coverable = false;
      if (f.tail() != Func::Tail::Affine) {
        if (c.is_line()) {
          std::vector<Rat> vals = f.tail_values_q();
          std::sort(vals.begin(), vals.end());
          if (vals.back() - vals.front() < 2 * line_radius(e)) {
            coverable = true;
            tail_cell.center_is_q = true;
            tail_cell.center_q = (vals.front() + vals.back()) / 2;
          }
        } else {
          std::uint32_t img = mask_image_p_of_list(f);
          for (int y = 0; y < c.n_points() && !coverable; ++y) {
            if ((img & ~ball_mask(c, e, y)) == 0) {
              coverable = true;
              tail_cell.center_p = y;
            }
          }
        }
      }
      if (coverable) {
        entry.exceptional = CSet::empty();
      } else {
        // best effort center, then the mismatch region is (part of) the tail
        if (c.is_line()) {
          tail_cell.center_is_q = true;
          tail_cell.center_q = f.value_q(t);
          QInterval ball = ball_interval(e, tail_cell.center_q);
          entry.exceptional = CSet::from(t).minus(f.pre_interval(ball));
        } else {
          tail_cell.center_p = f.value_p(t);
          entry.exceptional = CSet::from(t).minus(f.pre_points(ball_mask(c, e, tail_cell.center_p)));
        }
        entry.infimum = zero_tail_mass(s) ? ExtRat(Rat(0)) : tail_discard_cost(s);
      }
      entry.cells.push_back(std::move(tail_cell));
    }
    if (!entry.infimum.is_zero()) {
      fail_with(v, Obstruction{"entourage", "no simple function matches within the entourage",
                               entry.infimum, e});
    }
    v.entries.push_back(std::move(entry));
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict decide_smooth(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  Verdict v;
  v.property = Property::Smooth;
  v.holds = true;
  for (const Entourage& e : instance_base(c, f)) {
    EntourageEntry entry;
    entry.entourage = e;
    entry.infimum = ExtRat(Rat(0));
    entry.exceptional = CSet::empty();
    bool bounded_range = f.tail() != Func::Tail::Affine;
    if (c.is_line()) {
      entry.cover_values = decisive_values(f);  // singletons are small at any radius
    } else {
      std::uint32_t img = 0;
      if (s.is_finite_backend()) {
        img = mask_image_p(f, (1u << s.n_points()) - 1u);
      } else {
        for (long long n = 0; n < f.prefix_len(); ++n) img |= 1u << f.value_p(n);
        img |= mask_image_p_of_list(f);
      }
      for (int y = 0; y < c.n_points(); ++y)
        if (img & (1u << y)) entry.cover_masks.push_back(1u << y);
    }
    if (!s.is_finite_backend() && !bounded_range && !zero_tail_mass(s)) {
      // every finite family of small sets is bounded on the line, so a
      // cofinal part of the tail stays uncovered
      long long t = tail_cut(s, f);
      CSet covered = CSet::empty();
      for (const Rat& w : entry.cover_values) covered = covered.unite(f.pre_point(w));
      entry.exceptional = CSet::from(t).minus(covered);
      entry.infimum = tail_discard_cost(s);
      fail_with(v, Obstruction{"entourage", "unbounded values: small covers always miss tail mass",
                               entry.infimum, e});
    }
    v.entries.push_back(std::move(entry));
  }
  return v;
}

// ---------------------------------------------------------------------------
// base/ubm. Finite codomain: the topology is the zero-class quotient, every
// neighbourhood base at y must contain the class of y, and the minimal
// entourage realizes exactly those classes as balls; so both notions reduce
// to class preimages, reached through deliberately different routes below.
// Line codomain: below half the least critical distance a ball holds at most
// one decisive value, so membership of the stabilized ball preimages decides.

namespace {

std::vector<std::pair<int, std::uint32_t>> zero_class_masks(const Codomain& c) {
  std::vector<int> cls = c.zero_classes();
  std::vector<std::pair<int, std::uint32_t>> out;  // (representative, mask)
  for (int k = 0;; ++k) {
    std::uint32_t mask = 0;
    int rep = -1;
    for (int y = 0; y < c.n_points(); ++y) {
      if (cls[y] == k) {
        if (rep < 0) rep = y;
        mask |= 1u << y;
      }
    }
    if (rep < 0) break;
    out.emplace_back(rep, mask);
  }
  return out;
}

}  // namespace

Verdict decide_base(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  Verdict v;
  v.property = Property::Base;
  v.holds = true;
  if (!c.is_line()) {
    std::vector<Entourage> chain = instance_base(c, f);
    const Entourage& emin = chain.back();
    for (const auto& [rep, cls_mask] : zero_class_masks(c)) {
      BallEvidence ev;
      ev.center_p = rep;
      ev.radius = emin.primitives().front().radius;
      ev.preimage = preimage_points(s, f, ball_mask(c, emin, rep));
      ev.pj = s.pj_membership(ev.preimage);
      if (!ev.pj.member) {
        fail_with(v, Obstruction{"center",
                                 "class of " + c.point_names()[rep] + " pulls back outside the completion",
                                 ev.pj.sandwich.gap_infimum, emin});
      }
      v.balls.push_back(std::move(ev));
    }
    return v;
  }
  // per-center stabilization radius: half the least distance from the center
  // to any other decisive value
  std::vector<Rat> vals = decisive_values(f);
  for (const Rat& y : vals) {
    Rat nearest(0);
    bool have = false;
    for (const Rat& u : vals) {
      if (u == y) continue;
      Rat d = rat_abs(u - y);
      if (!have || d < nearest) {
        nearest = d;
        have = true;
      }
    }
    Rat r = have ? nearest / 2 : Rat(1);
    if (r > 1) r = 1;
    BallEvidence ev;
    ev.center_is_q = true;
    ev.center_q = y;
    ev.radius = r;
    ev.preimage = preimage_interval(s, f, QInterval{y - r, y + r, true, true});
    ev.pj = s.pj_membership(ev.preimage);
    if (!ev.pj.member) {
      fail_with(v, Obstruction{"center", "ball at " + rat_to_string(y) + " pulls back outside the completion",
                               ev.pj.sandwich.gap_infimum, Entourage::radius(r)});
    }
    v.balls.push_back(std::move(ev));
  }
  return v;
}

Verdict decide_ubm(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  Verdict v;
  v.property = Property::Ubm;
  v.holds = true;
  if (!c.is_line()) {
    // walk the whole chain: a uniform base must reach the minimal entourage,
    // and the larger chain elements give coarser ball unions on the way down
    std::vector<Entourage> chain = instance_base(c, f);
    for (const Entourage& e : chain) {
      for (int y = 0; y < c.n_points(); ++y) {
        BallEvidence ev;
        ev.center_p = y;
        ev.radius = e.primitives().front().radius;
        ev.preimage = preimage_points(s, f, ball_mask(c, e, y));
        ev.pj = s.pj_membership(ev.preimage);
        if (!ev.pj.member) {
          fail_with(v, Obstruction{"center",
                                   "ball of " + c.point_names()[y] + " pulls back outside the completion",
                                   ev.pj.sandwich.gap_infimum, e});
        }
        v.balls.push_back(std::move(ev));
      }
    }
    return v;
  }
  // one shared radius below every critical threshold
  std::vector<Rat> crit = instance_criticals(c, f);
  Rat rstar(1);
  for (const Rat& t : crit) {
    if (t > 0 && t / 2 < rstar) rstar = t / 2;
  }
  v.shared_radius = rstar;
  for (const Rat& y : decisive_values(f)) {
    BallEvidence ev;
    ev.center_is_q = true;
    ev.center_q = y;
    ev.radius = rstar;
    ev.preimage = preimage_interval(s, f, QInterval{y - rstar, y + rstar, true, true});
    ev.pj = s.pj_membership(ev.preimage);
    if (!ev.pj.member) {
      fail_with(v, Obstruction{"center", "ball at " + rat_to_string(y) + " pulls back outside the completion",
                               ev.pj.sandwich.gap_infimum, Entourage::radius(rstar)});
    }
    v.balls.push_back(std::move(ev));
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict decide_conventional(const ChargeSpace& s, const Codomain& c, const Func& f) {
  validate_instance(s, c, f);
  if (!s.is_finite_backend())
    throw InputError("decide_conventional: the finite-cofinite field is not a sigma-field");
  Verdict v;
  v.property = Property::Conventional;
  v.holds = true;
  if (c.is_line()) {
    // opens realize every subset of the finite range, and the field is
    // union-closed, so single value classes decide
    for (const auto& [val, mask] : f.value_classes_q()) {
      ClassEvidence ce;
      ce.value = val;
      ce.preimage = mask_to_cset(mask, s.n_points());
      ce.in_field = s.mask_in_field(mask);
      if (!ce.in_field) {
        fail_with(v, Obstruction{"open-set",
                                 "preimage of a small interval around " + rat_to_string(val) +
                                     " is outside the field",
                                 std::nullopt, std::nullopt});
      }
      v.value_classes.push_back(std::move(ce));
    }
  } else {
    // opens are the unions of zero classes
    for (const auto& [rep, cls_mask] : zero_class_masks(c)) {
      std::uint32_t pre = f.mask_points(cls_mask);
      ClassEvidence ce;
      ce.value = Rat(rep);  // representative codomain point index
      ce.preimage = mask_to_cset(pre, s.n_points());
      ce.in_field = s.mask_in_field(pre);
      if (!ce.in_field) {
        fail_with(v, Obstruction{"open-set",
                                 "preimage of the class of " + c.point_names()[rep] +
                                     " is outside the field",
                                 std::nullopt, std::nullopt});
      }
      v.value_classes.push_back(std::move(ce));
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// ray measurability: the bad-threshold set has empty interior. Superlevel
// patterns are constant on [v_i, v_{i+1}) and sublevel patterns on
// (v_i, v_{i+1}], over consecutive decisive values.

namespace {

void ray_scan(const ChargeSpace& s, const Func& f, bool upper, Verdict& v,
              std::vector<QInterval>& bad) {
  if (f.tail() == Func::Tail::Affine) {
    // rays pull back to finite or cofinite sets at every threshold
    std::vector<Rat> samples = decisive_values(f);
    for (const Rat& t : samples) {
      RayEvidence ev;
      ev.threshold = t;
      ev.upper = upper;
      ev.preimage = upper ? f.pre_gt(t) : f.pre_lt(t);
      ev.gap = s.pj_membership(ev.preimage).sandwich.gap_infimum;
      v.ray_evidence.push_back(std::move(ev));
    }
    return;
  }
  bool unbounded = false;
  std::vector<Rat> vals = f.finite_range_q(&unbounded);
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    Rat rep = upper ? vals[i] : vals[i + 1];
    RayEvidence ev;
    ev.threshold = rep;
    ev.upper = upper;
    ev.preimage = upper ? preimage_gt(s, f, rep) : preimage_lt(s, f, rep);
    PJResult pj = s.pj_membership(ev.preimage);
    ev.gap = pj.sandwich.gap_infimum;
    if (!pj.member) {
      QInterval iv{vals[i], vals[i + 1], !upper, upper};
      bad.push_back(iv);
      fail_with(v, Obstruction{"threshold-interval",
                               "rays over " + iv.to_string() + " pull back outside the completion",
                               ev.gap, std::nullopt});
    }
    v.ray_evidence.push_back(std::move(ev));
  }
}

}  // namespace

Verdict decide_ray(const ChargeSpace& s, const Func& f, RaySide side) {
  if (!f.line_valued()) throw InputError("decide_ray: needs a line-valued function");
  if (s.is_finite_backend()) f.validate(s.n_points(), Codomain::rational_line());
  Verdict v;
  v.property = side == RaySide::Left    ? Property::RayLeft
               : side == RaySide::Right ? Property::RayRight
                                        : Property::Ray;
  v.holds = true;
  std::vector<QInterval> bad;
  if (side != RaySide::Left) ray_scan(s, f, true, v, bad);
  if (side != RaySide::Right) ray_scan(s, f, false, v, bad);
  v.bad_thresholds = QIntervalSet(bad);
  v.holds = v.bad_thresholds.all_points();
  return v;
}

// ---------------------------------------------------------------------------
// Greco sandwiches on the positive and negative parts, with the completion as
// the sandwich family. Superlevel thresholds reduce to finitely many pattern
// intervals; each ordered pair of patterns needs one H between them.

namespace {

struct GrecoPattern {
  Rat rep_low;   // two representatives inside the pattern interval
  Rat rep_high;
};

// positive-threshold pattern intervals: (0, w1), [w1, w2), ..., [wk, inf)
std::vector<GrecoPattern> greco_patterns(const std::vector<Rat>& pos_values) {
  std::vector<GrecoPattern> out;
  if (pos_values.empty()) {
    out.push_back(GrecoPattern{Rat(1), Rat(2)});
    return out;
  }
  out.push_back(GrecoPattern{pos_values[0] / 3, 2 * pos_values[0] / 3});
  for (std::size_t i = 0; i + 1 < pos_values.size(); ++i) {
    Rat gap = pos_values[i + 1] - pos_values[i];
    out.push_back(GrecoPattern{pos_values[i] + gap / 3, pos_values[i] + 2 * gap / 3});
  }
  out.push_back(GrecoPattern{pos_values.back() + 1, pos_values.back() + 2});
  return out;
}

// preimage of (t, inf) under the positive part (upper) or of (-inf, -t)
// under f itself, which is the superlevel set of the negative part
CSet side_pre(const ChargeSpace& s, const Func& f, bool positive_side, const Rat& t) {
  return positive_side ? preimage_gt(s, f, t) : preimage_lt(s, f, -t);
}

void greco_side(const ChargeSpace& s, const Func& f, bool positive_side, Verdict& v) {
  std::vector<Rat> vals = decisive_values(f);
  std::vector<Rat> pos;
  for (const Rat& w : vals) {
    Rat t = positive_side ? w : -w;
    if (t > 0) pos.push_back(t);
  }
  std::sort(pos.begin(), pos.end());
  std::vector<GrecoPattern> pats = greco_patterns(pos);
  for (std::size_t j = 0; j < pats.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      GrecoPairEvidence ev;
      ev.positive_side = positive_side;
      ev.a = (i == j) ? pats[j].rep_high : (pats[j].rep_low + pats[j].rep_high) / 2;
      ev.b = (i == j) ? pats[i].rep_low : (pats[i].rep_low + pats[i].rep_high) / 2;
      ev.upper = side_pre(s, f, positive_side, ev.a);
      ev.lower = side_pre(s, f, positive_side, ev.b);
      ev.defect = ExtRat(Rat(0));
      if (s.is_finite_backend()) {
        std::uint32_t ua = cset_to_mask(ev.upper, s.n_points());
        std::uint32_t ub = cset_to_mask(ev.lower, s.n_points());
        std::uint32_t h = ua;
        Rat defect(0);
        for (std::uint32_t atom : s.atom_masks()) {
          if (!(atom & ua) || s.atom_mass(atom) == 0) continue;
          if ((atom & ~ub) != 0) {
            defect += s.atom_mass(atom);
          } else {
            h |= atom;  // absorb the straddled non-null atom inside U_b
          }
        }
        ev.found = defect == 0;
        ev.defect = ExtRat(defect);
        if (ev.found) ev.h = mask_to_cset(h, s.n_points());
      } else {
        if (zero_tail_mass(s)) {
          ev.found = true;
          ev.h = ev.upper;  // the completion holds every subset
        } else if (s.field_contains(ev.upper)) {
          ev.found = true;
          ev.h = ev.upper;
        } else if (s.field_contains(ev.lower)) {
          ev.found = true;
          ev.h = ev.lower;
        } else {
          // both pattern sets are infinite and coinfinite: no finite or
          // cofinite H fits between them, and the defect is the tail mass
          ev.found = false;
          ev.defect = tail_discard_cost(s);
        }
      }
      if (!ev.found) {
        std::ostringstream os;
        os << "no sandwich between thresholds " << rat_to_string(ev.a) << " and "
           << rat_to_string(ev.b) << " on the " << (positive_side ? "positive" : "negative")
           << " part";
        fail_with(v, Obstruction{"threshold-pair", os.str(), ev.defect, std::nullopt});
      }
      v.greco_pairs.push_back(std::move(ev));
    }
  }
}

}  // namespace

Verdict decide_greco(const ChargeSpace& s, const Func& f) {
  if (!f.line_valued()) throw InputError("decide_greco: needs a line-valued function");
  if (s.is_finite_backend()) f.validate(s.n_points(), Codomain::rational_line());
  Verdict v;
  v.property = Property::Greco;
  v.holds = true;
  greco_side(s, f, true, v);
  greco_side(s, f, false, v);
  for (const auto& p : v.greco_pairs)
    if (!p.found) v.holds = false;
  return v;
}

Verdict decide(Property p, const ChargeSpace& s, const Codomain& c, const Func& f) {
  switch (p) {
    case Property::T1: return decide_t1(s, c, f);
    case Property::T2: return decide_t2(s, c, f);
    case Property::Smooth: return decide_smooth(s, c, f);
    case Property::Base: return decide_base(s, c, f);
    case Property::Ubm: return decide_ubm(s, c, f);
    case Property::Conventional: return decide_conventional(s, c, f);
    case Property::RayLeft: return decide_ray(s, f, RaySide::Left);
    case Property::RayRight: return decide_ray(s, f, RaySide::Right);
    case Property::Ray: return decide_ray(s, f, RaySide::Both);
    case Property::Greco: return decide_greco(s, f);
    case Property::Regular: return decide_regular(s, f);
  }
  throw InputError("decide: unknown property");
}

}  // namespace charges
