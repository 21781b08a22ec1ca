#include "charges/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "charges/phi.hpp"
#include "charges/regular.hpp"

namespace charges {

namespace {

// ============================ finite backend model ===========================
// The field of a finite space is exactly the set of unions of its atoms, so
// charge, outer, inner, completion gap, and completion membership can all be
// tabulated per point mask by full scans. Everything downstream of here works
// off these tables by literal enumeration.

struct FinModel {
  int n = 0;
  std::uint32_t full = 0;
  std::vector<std::uint32_t> atoms;
  std::vector<std::uint32_t> field;
  std::vector<Rat> mu_tab;     // per field mask
  std::vector<char> in_field;  // per mask
  std::vector<Rat> outer_tab, inner_tab, gap_tab;
  std::vector<char> fbar;

  bool member(std::uint32_t mask) const { return fbar[mask] != 0; }
};

FinModel build_fin(const ChargeSpace& s) {
  FinModel m;
  m.n = s.n_points();
  if (m.n > 10) throw ResourceError("oracle: too many ground points to tabulate");
  m.full = (1u << m.n) - 1u;
  m.atoms = s.atom_masks();
  if (m.atoms.size() > 6) throw ResourceError("oracle: too many atoms to tabulate");
  std::size_t nmask = static_cast<std::size_t>(m.full) + 1;
  m.in_field.assign(nmask, 0);
  m.mu_tab.assign(nmask, Rat(0));
  std::size_t na = m.atoms.size();
  for (std::uint32_t pick = 0; pick < (1u << na); ++pick) {
    std::uint32_t mask = 0;
    Rat mass(0);
    for (std::size_t i = 0; i < na; ++i) {
      if (pick & (1u << i)) {
        mask |= m.atoms[i];
        mass += s.atom_mass(m.atoms[i]);
      }
    }
    if (!m.in_field[mask]) {
      m.field.push_back(mask);
      m.in_field[mask] = 1;
      m.mu_tab[mask] = mass;
    }
  }
  std::sort(m.field.begin(), m.field.end());
  m.outer_tab.assign(nmask, Rat(0));
  m.inner_tab.assign(nmask, Rat(0));
  m.gap_tab.assign(nmask, Rat(0));
  m.fbar.assign(nmask, 0);
  for (std::uint32_t a = 0; a < nmask; ++a) {
    bool have_o = false, have_i = false, have_g = false;
    Rat o(0), in(0), g(0);
    for (std::uint32_t cc : m.field) {
      if ((a & ~cc) == 0 && (!have_o || m.mu_tab[cc] < o)) {
        o = m.mu_tab[cc];
        have_o = true;
      }
      if ((cc & ~a) == 0 && (!have_i || m.mu_tab[cc] > in)) {
        in = m.mu_tab[cc];
        have_i = true;
      }
    }
    for (std::uint32_t b : m.field) {
      if ((b & ~a) != 0) continue;
      for (std::uint32_t cc : m.field) {
        if ((a & ~cc) != 0) continue;
        const Rat& diff = m.mu_tab[cc & ~b];  // a difference of field sets is a field set
        if (!have_g || diff < g) {
          g = diff;
          have_g = true;
        }
      }
    }
    m.outer_tab[a] = o;
    m.inner_tab[a] = in;
    m.gap_tab[a] = g;
    m.fbar[a] = g == 0;
  }
  return m;
}

// every partition of k items, as restricted-growth assignments
void for_each_partition(std::size_t k, const std::function<void(const std::vector<int>&, int)>& emit) {
  if (k == 0) {
    std::vector<int> none;
    emit(none, 0);
    return;
  }
  std::vector<int> assign(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int groups) {
    if (i == k) {
      emit(assign, groups);
      return;
    }
    for (int g = 0; g <= groups; ++g) {
      assign[i] = g;
      rec(i + 1, std::max(groups, g + 1));
    }
  };
  rec(1, 1);
}

// =========================== truncated nat model ============================
// Ground points below the cutoff are explicit; the rest of the tail is one
// indivisible block. The block is not an approximation for partitions: the
// finite-or-cofinite field admits exactly one infinite cell, so any partition
// handles the far tail as a unit anyway.

struct NatModel {
  const ChargeSpace* s = nullptr;
  const Func* f = nullptr;
  long long N = 0;
  bool unbounded = false;        // affine tail values
  std::vector<Rat> tail_q;       // line tail value set
  std::vector<int> tail_p;       // point tail value set

  Rat weight(long long n) const { return s->point_weight(n); }

  // charge of [t, inf) by the direct summation rule
  ExtRat mass_from(long long t) const {
    if (s->tail_weight() > 0 || s->mass_at_infinity().is_inf()) return ExtRat::inf();
    Rat total = s->mass_at_infinity().finite();
    for (long long n = t; n < s->prefix_len(); ++n) total += weight(n);
    return ExtRat(total);
  }

  ExtRat outer(const CSet& a) const {
    if (a.is_finite()) {
      Rat sum(0);
      for (long long n : a.elements()) sum += weight(n);
      return ExtRat(sum);
    }
    // minimal covers are a u [t, inf): scan the cut
    std::optional<ExtRat> best;
    for (long long t = 0; t <= N; ++t) {
      ExtRat tail = mass_from(t);
      if (tail.is_inf()) return ExtRat::inf();
      Rat sum = tail.finite();
      for (long long n : a.members_below(t)) sum += weight(n);
      ExtRat cand{sum};
      if (!best || cand < *best) best = cand;
    }
    return *best;
  }

  ExtRat inner(const CSet& a) const {
    if (a.is_finite()) {
      Rat sum(0);
      for (long long n : a.elements()) sum += weight(n);
      return ExtRat(sum);
    }
    if (s->tail_weight() > 0) return ExtRat::inf();  // infinitely many members, each past the prefix weighing the tail weight
    Rat sum(0);
    for (long long n : a.members_below(std::max(N, s->prefix_len()))) sum += weight(n);
    if (a.is_cofinite() && !s->mass_at_infinity().is_inf()) sum += s->mass_at_infinity().finite();
    if (a.is_cofinite() && s->mass_at_infinity().is_inf()) return ExtRat::inf();
    return ExtRat(sum);
  }

  // completion gap: finite and cofinite sets are in the field; otherwise the
  // optimal sandwich keeps everything below a cut and concedes [t, inf)
  ExtRat gap(const CSet& a) const {
    if (a.is_finite() || a.is_cofinite()) return ExtRat(Rat(0));
    std::optional<ExtRat> best;
    for (long long t = 0; t <= N; ++t) {
      ExtRat g = mass_from(t);
      if (!best || g < *best) best = g;
    }
    return *best;
  }
};

NatModel build_nat(const ChargeSpace& s, const Func& f, long long cutoff) {
  NatModel m;
  m.s = &s;
  m.f = &f;
  m.N = std::max({cutoff, s.prefix_len(), f.prefix_len()});
  if (f.tail() == Func::Tail::Affine) {
    m.unbounded = true;
  } else if (f.line_valued()) {
    m.tail_q = f.tail_values_q();
  } else {
    m.tail_p = f.tail_values_p();
  }
  return m;
}

// =============================== shared pieces ===============================

std::vector<Rat> oracle_value_list(const Func& f) {
  std::set<Rat> out;
  if (!f.nat_domain()) {
    for (int p = 0; p < f.domain_size(); ++p) out.insert(f.value_q(p));
    return std::vector<Rat>(out.begin(), out.end());
  }
  for (long long n = 0; n < f.prefix_len(); ++n) out.insert(f.value_q(n));
  if (f.tail() == Func::Tail::Affine) {
    long long mstart = f.prefix_len();
    for (long long d = 0; d < 8; ++d) out.insert(f.affine_a() * Rat(mstart + d) + f.affine_b());
    for (long long n = 0; n < f.prefix_len(); ++n) {
      long long n0 = int_below((f.value_q(n) - f.affine_b()) / f.affine_a(), false);
      for (long long d = -2; d <= 2; ++d)
        if (n0 + d >= mstart) out.insert(f.affine_a() * Rat(n0 + d) + f.affine_b());
    }
  } else {
    for (const Rat& w : f.tail_values_q()) out.insert(w);
  }
  return std::vector<Rat>(out.begin(), out.end());
}

std::vector<int> oracle_point_values(const Func& f, const ChargeSpace& s) {
  std::set<int> out;
  if (!f.nat_domain()) {
    for (int p = 0; p < f.domain_size(); ++p) out.insert(f.value_p(p));
  } else {
    for (long long n = 0; n < f.prefix_len(); ++n) out.insert(f.value_p(n));
    for (int v : f.tail_values_p()) out.insert(v);
  }
  (void)s;
  return std::vector<int>(out.begin(), out.end());
}

std::vector<Entourage> oracle_entourages(const Codomain& c, const Func& f) {
  if (!c.is_line()) return entourage_base(c);
  std::set<Rat, std::greater<Rat>> radii;
  Rat r(1);
  for (int k = 0; k <= 8; ++k, r /= 2) radii.insert(r);
  for (const Rat& t : critical_thresholds_line(oracle_value_list(f)))
    if (t > 0) radii.insert(t);
  std::vector<Entourage> out;
  for (const Rat& rr : radii) out.push_back(Entourage::radius(rr));
  return out;
}

bool small_values_lit(const std::vector<Rat>& vals, const Entourage& e) {
  for (const Rat& u : vals)
    for (const Rat& v : vals)
      if (!entourage_contains_line(e, u, v)) return false;
  return true;
}

bool small_points_lit(const Codomain& c, const std::vector<int>& pts, const Entourage& e) {
  for (int u : pts)
    for (int v : pts)
      if (!entourage_contains(c, e, u, v)) return false;
  return true;
}

std::vector<Rat> line_centers(const std::vector<Rat>& vals) {
  std::set<Rat> cand(vals.begin(), vals.end());
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) cand.insert((vals[i] + vals[j]) / 2);
  return std::vector<Rat>(cand.begin(), cand.end());
}

// ======================== finite-backend per-entourage =======================

std::vector<Rat> fin_mask_values(const Func& f, std::uint32_t mask) {
  std::vector<Rat> out;
  for (int p = 0; p < f.domain_size(); ++p)
    if (mask & (1u << p)) out.push_back(f.value_q(p));
  return out;
}

std::vector<int> fin_mask_points(const Func& f, std::uint32_t mask) {
  std::vector<int> out;
  for (int p = 0; p < f.domain_size(); ++p)
    if (mask & (1u << p)) out.push_back(f.value_p(p));
  return out;
}

// least discarded charge mu(A0) over field sets A0 whose complement splits
// into small-image field cells; cells are scanned as every grouping of the
// remaining atoms
ExtRat fin_t2_inf(const FinModel& m, const Codomain& c, const Func& f, const Entourage& e) {
  std::optional<Rat> best;
  for (std::uint32_t a0 : m.field) {
    std::vector<std::uint32_t> rest;
    for (std::uint32_t atom : m.atoms)
      if ((atom & a0) == 0) rest.push_back(atom);
    bool ok = false;
    for_each_partition(rest.size(), [&](const std::vector<int>& assign, int groups) {
      if (ok) return;
      for (int g = 0; g < groups; ++g) {
        std::uint32_t cell = 0;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (assign[i] == g) cell |= rest[i];
        bool small = c.is_line() ? small_values_lit(fin_mask_values(f, cell), e)
                                 : small_points_lit(c, fin_mask_points(f, cell), e);
        if (!small) return;
      }
      ok = true;
    });
    if (ok && (!best || m.mu_tab[a0] < *best)) best = m.mu_tab[a0];
  }
  return ExtRat(*best);  // a0 = everything always qualifies
}

// least outer mismatch mass over simple functions: every grouping of the
// atoms, every joint assignment of centers from the candidate list
ExtRat fin_t1_inf(const FinModel& m, const Codomain& c, const Func& f, const Entourage& e) {
  std::vector<Rat> cand_q;
  int ncand;
  if (c.is_line()) {
    cand_q = line_centers(oracle_value_list(f));
    ncand = static_cast<int>(cand_q.size());
  } else {
    ncand = c.n_points();
  }
  // coverage[cand][point]: is the point's value inside the candidate's ball
  std::vector<std::vector<char>> cover(static_cast<std::size_t>(ncand),
                                       std::vector<char>(static_cast<std::size_t>(m.n), 0));
  for (int k = 0; k < ncand; ++k)
    for (int p = 0; p < m.n; ++p)
      cover[k][p] = c.is_line() ? entourage_contains_line(e, cand_q[static_cast<std::size_t>(k)], f.value_q(p))
                                : entourage_contains(c, e, k, f.value_p(p));
  std::optional<Rat> best;
  for_each_partition(m.atoms.size(), [&](const std::vector<int>& assign, int groups) {
    std::vector<std::uint32_t> cells(static_cast<std::size_t>(groups), 0);
    for (std::size_t i = 0; i < m.atoms.size(); ++i) cells[static_cast<std::size_t>(assign[i])] |= m.atoms[i];
    // joint center choice, odometer style
    std::vector<int> pick(static_cast<std::size_t>(groups), 0);
    while (true) {
      std::uint32_t mismatch = 0;
      for (int g = 0; g < groups; ++g)
        for (int p = 0; p < m.n; ++p)
          if ((cells[static_cast<std::size_t>(g)] & (1u << p)) && !cover[pick[static_cast<std::size_t>(g)]][p])
            mismatch |= 1u << p;
      const Rat& cost = m.outer_tab[mismatch];
      if (!best || cost < *best) best = cost;
      int g = 0;
      while (g < groups && ++pick[static_cast<std::size_t>(g)] == ncand) pick[static_cast<std::size_t>(g++)] = 0;
      if (g == groups) break;
    }
    if (groups == 0 && !best) best = m.outer_tab[0];
  });
  return ExtRat(*best);
}

// least uncovered outer mass over finite families of small value sets; on a
// finite range the per-value singletons already cover everything, and the
// scan confirms the infimum is reached at zero
ExtRat fin_smooth_inf(const FinModel& m, const Codomain& c, const Func& f, const Entourage& e) {
  std::optional<Rat> best;
  if (c.is_line()) {
    std::vector<Rat> vals = oracle_value_list(f);
    std::size_t k = vals.size();
    for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
      std::uint32_t uncovered = 0;
      for (int p = 0; p < m.n; ++p) {
        bool in = false;
        for (std::size_t i = 0; i < k; ++i)
          if ((pick & (1u << i)) && f.value_q(p) == vals[i]) in = true;
        if (!in) uncovered |= 1u << p;
      }
      const Rat& cost = m.outer_tab[uncovered];
      if (!best || cost < *best) best = cost;
    }
  } else {
    int k = c.n_points();
    for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
      std::uint32_t uncovered = 0;
      for (int p = 0; p < m.n; ++p)
        if (!(pick & (1u << f.value_p(p)))) uncovered |= 1u << p;
      const Rat& cost = m.outer_tab[uncovered];
      if (!best || cost < *best) best = cost;
    }
  }
  (void)e;  // singletons are small under every entourage
  return ExtRat(*best);
}

// ========================== nat-backend per-entourage ========================

ExtRat nat_discard_inf(const NatModel& m) {
  std::optional<ExtRat> best;
  for (long long t = 0; t <= m.N; ++t) {
    ExtRat g = m.mass_from(t);
    if (!best || g < *best) best = g;
  }
  return *best;
}

ExtRat nat_t2_inf(const NatModel& m, const Codomain& c, const Entourage& e) {
  bool small = false;
  if (!m.unbounded)
    small = c.is_line() ? small_values_lit(m.tail_q, e) : small_points_lit(c, m.tail_p, e);
  // ground singletons are small field cells; the single admissible infinite
  // cell must absorb the whole far tail, or the tail goes to A0
  return small ? ExtRat(Rat(0)) : nat_discard_inf(m);
}

ExtRat nat_t1_inf(const NatModel& m, const Codomain& c, const Entourage& e) {
  bool coverable = false;
  if (!m.unbounded) {
    if (c.is_line()) {
      for (const Rat& v : line_centers(m.tail_q)) {
        bool all = true;
        for (const Rat& w : m.tail_q)
          if (!entourage_contains_line(e, v, w)) all = false;
        if (all) coverable = true;
      }
    } else {
      for (int y = 0; y < c.n_points() && !coverable; ++y) {
        bool all = true;
        for (int w : m.tail_p)
          if (!entourage_contains(c, e, y, w)) all = false;
        if (all) coverable = true;
      }
    }
  }
  return coverable ? ExtRat(Rat(0)) : nat_discard_inf(m);
}

ExtRat nat_smooth_inf(const NatModel& m, const Codomain& c, const Entourage& e) {
  (void)e;
  if (!c.is_line() || !m.unbounded) return ExtRat(Rat(0));  // finite value set, singleton cover
  // any finite family of small line sets is bounded; scan cut heights
  std::optional<ExtRat> best;
  Rat k(1);
  for (int step = 0; step <= 12; ++step, k *= 2) {
    CSet uncovered = m.f->pre_gt(k).unite(m.f->pre_lt(-k));
    ExtRat cost = m.outer(uncovered);
    if (!best || cost < *best) best = cost;
  }
  return *best;
}

// ============================ property level loops ===========================

Verdict oracle_partition_like(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                              long long cutoff) {
  Verdict v;
  v.property = p;
  v.holds = true;
  for (const Entourage& e : oracle_entourages(c, f)) {
    ExtRat inf = oracle_infimum_at(p, s, c, f, e, cutoff);
    if (!inf.is_zero() && v.holds) {
      v.holds = false;
      v.obstruction = Obstruction{"definition", "exhaustive scan leaves positive mass", inf, e};
    }
  }
  return v;
}

Rat stabilized_radius(const std::vector<Rat>& vals) {
  Rat r(1);
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      Rat d = rat_abs(vals[i] - vals[j]) / 2;
      if (d > 0 && d < r) r = d;
    }
  return r;
}

Verdict oracle_base_like(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                         long long cutoff) {
  Verdict v;
  v.property = p;
  v.holds = true;
  auto check = [&](const CSet& pre, const std::string& what) {
    ExtRat g = oracle_pj_gap(s, pre, cutoff);
    if (!g.is_zero() && v.holds) {
      v.holds = false;
      v.obstruction = Obstruction{"center", what + " pulls back outside the completion", g, std::nullopt};
    }
  };
  if (c.is_line()) {
    std::vector<Rat> vals = oracle_value_list(f);
    Rat r = stabilized_radius(vals);
    for (const Rat& y : vals) {
      CSet pre = f.nat_domain() ? f.pre_interval(QInterval{y - r, y + r, true, true})
                                : mask_to_cset(f.mask_interval(QInterval{y - r, y + r, true, true}),
                                               s.n_points());
      check(pre, "ball at " + rat_to_string(y));
    }
    return v;
  }
  // finite codomain: every neighbourhood base must contain the zero class,
  // and the minimal entourage's sections are exactly the zero classes
  std::vector<int> cls = c.zero_classes();
  for (int k = 0;; ++k) {
    std::uint32_t mask = 0;
    int rep = -1;
    for (int y = 0; y < c.n_points(); ++y)
      if (cls[static_cast<std::size_t>(y)] == k) {
        mask |= 1u << y;
        if (rep < 0) rep = y;
      }
    if (rep < 0) break;
    CSet pre = f.nat_domain() ? f.pre_points(mask) : mask_to_cset(f.mask_points(mask), s.n_points());
    check(pre, "class of " + c.point_names()[static_cast<std::size_t>(rep)]);
  }
  return v;
}

std::vector<Rat> ray_samples(const Func& f) {
  std::vector<Rat> vals = oracle_value_list(f);
  std::set<Rat> t(vals.begin(), vals.end());
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) t.insert((vals[i] + vals[i + 1]) / 2);
  if (!vals.empty()) {
    t.insert(vals.front() - 1);
    t.insert(vals.back() + 1);
  }
  return std::vector<Rat>(t.begin(), t.end());
}

Verdict oracle_ray(Property p, const ChargeSpace& s, const Func& f, long long cutoff) {
  Verdict v;
  v.property = p;
  v.holds = true;
  bool upper = p != Property::RayLeft;
  bool lower = p != Property::RayRight;
  for (const Rat& t : ray_samples(f)) {
    if (upper) {
      CSet pre = f.nat_domain() ? f.pre_gt(t) : mask_to_cset(f.mask_gt(t), s.n_points());
      ExtRat g = oracle_pj_gap(s, pre, cutoff);
      if (!g.is_zero() && v.holds) {
        v.holds = false;
        v.obstruction = Obstruction{"threshold", "superlevel preimage at " + rat_to_string(t), g,
                                    std::nullopt};
      }
    }
    if (lower) {
      CSet pre = f.nat_domain() ? f.pre_lt(t) : mask_to_cset(f.mask_lt(t), s.n_points());
      ExtRat g = oracle_pj_gap(s, pre, cutoff);
      if (!g.is_zero() && v.holds) {
        v.holds = false;
        v.obstruction = Obstruction{"threshold", "sublevel preimage at " + rat_to_string(t), g,
                                    std::nullopt};
      }
    }
  }
  return v;
}

std::vector<Rat> greco_grid(const Func& f, bool positive_side) {
  std::vector<Rat> vals = oracle_value_list(f);
  std::set<Rat> pos;
  for (const Rat& w : vals) {
    Rat t = positive_side ? w : -w;
    if (t > 0) pos.insert(t);
  }
  std::set<Rat> grid;
  if (pos.empty()) {
    grid.insert(Rat(1));
    grid.insert(Rat(2));
  } else {
    std::vector<Rat> ordered(pos.begin(), pos.end());
    grid.insert(ordered.front() / 2);
    for (const Rat& w : ordered) grid.insert(w);
    for (std::size_t i = 0; i + 1 < ordered.size(); ++i)
      grid.insert((ordered[i] + ordered[i + 1]) / 2);
    grid.insert(ordered.back() + 1);
    grid.insert(ordered.back() + 2);
  }
  return std::vector<Rat>(grid.begin(), grid.end());
}

Verdict oracle_greco(const ChargeSpace& s, const Codomain& c, const Func& f, long long cutoff) {
  (void)c;
  Verdict v;
  v.property = Property::Greco;
  v.holds = true;
  std::optional<FinModel> fin;
  std::optional<NatModel> nat;
  if (s.is_finite_backend())
    fin = build_fin(s);
  else
    nat = build_nat(s, f, cutoff);
  for (bool positive_side : {true, false}) {
    std::vector<Rat> grid = greco_grid(f, positive_side);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const Rat& a = grid[j];
        const Rat& b = grid[i];
        bool found = false;
        if (fin) {
          std::uint32_t ua = positive_side ? f.mask_gt(a) : f.mask_lt(-a);
          std::uint32_t ub = positive_side ? f.mask_gt(b) : f.mask_lt(-b);
          for (std::uint32_t h = 0; h <= fin->full && !found; ++h)
            if (fin->member(h) && (ua & ~h) == 0 && (h & ~ub) == 0) found = true;
        } else {
          CSet ua = positive_side ? f.pre_gt(a) : f.pre_lt(-a);
          CSet ub = positive_side ? f.pre_gt(b) : f.pre_lt(-b);
          // an H in the completion between two sets must be finite (then the
          // upper set already is), cofinite (then the lower set already is),
          // or anything at all when the completion swallows every set
          found = nat->gap(ua).is_zero() || ua.is_finite() || ua.is_cofinite() ||
                  ub.is_finite() || ub.is_cofinite();
        }
        if (!found && v.holds) {
          v.holds = false;
          v.obstruction = Obstruction{
              "threshold-pair",
              "no completion set between " + rat_to_string(a) + " and " + rat_to_string(b),
              std::nullopt, std::nullopt};
        }
      }
    }
  }
  return v;
}

Verdict oracle_conventional(const ChargeSpace& s, const Codomain& c, const Func& f) {
  if (!s.is_finite_backend())
    throw InputError("oracle: conventional measurability needs a sigma-field backend");
  FinModel m = build_fin(s);
  Verdict v;
  v.property = Property::Conventional;
  v.holds = true;
  if (c.is_line()) {
    // every subset of the range is realized by a union of small intervals
    std::vector<Rat> vals = oracle_value_list(f);
    Rat r = stabilized_radius(vals);
    std::size_t k = vals.size();
    for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
      std::uint32_t pre = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (pick & (1u << i))
          pre |= f.mask_interval(QInterval{vals[i] - r, vals[i] + r, true, true});
      if (!m.in_field[pre] && v.holds) {
        v.holds = false;
        v.obstruction = Obstruction{"open-set", "an open preimage escapes the field", std::nullopt,
                                    std::nullopt};
      }
    }
  } else {
    // opens are the unions of zero classes
    std::vector<int> cls = c.zero_classes();
    int nclasses = 1 + *std::max_element(cls.begin(), cls.end());
    for (std::uint32_t pick = 0; pick < (1u << nclasses); ++pick) {
      std::uint32_t open = 0;
      for (int y = 0; y < c.n_points(); ++y)
        if (pick & (1u << cls[static_cast<std::size_t>(y)])) open |= 1u << y;
      std::uint32_t pre = f.mask_points(open);
      if (!m.in_field[pre] && v.holds) {
        v.holds = false;
        v.obstruction = Obstruction{"open-set", "an open preimage escapes the field", std::nullopt,
                                    std::nullopt};
      }
    }
  }
  return v;
}

Verdict oracle_regular(const ChargeSpace& s, const Func& f, long long cutoff) {
  Verdict v;
  v.property = Property::Regular;
  std::optional<Rat> delta = find_regular_delta(s, f, 24);
  if (!delta) {
    v.holds = false;
    v.obstruction = Obstruction{"delta", "no candidate scale clears the boundary-mass support",
                                std::nullopt, std::nullopt};
    return v;
  }
  // probe the scale against the profile support by literal dyadic scan
  for (const Rat& z : oracle_value_list(f)) {
    if (z == 0) continue;
    if (!oracle_phi(s, f, z, cutoff).is_zero()) {
      Rat q = rat_abs(z / *delta);
      Rat p2(1);
      for (int i = 0; i <= 14; ++i, p2 *= 2) {
        if (denominator(q * p2) == 1) {
          v.holds = false;
          v.obstruction = Obstruction{"delta", "scale hits a dyadic multiple of a support point",
                                      std::nullopt, std::nullopt};
          return v;
        }
      }
    }
  }
  // own depth choice mirroring the stability conditions, then literal checks
  std::vector<Rat> grid = regular_epsilon_grid(f);
  Rat target = grid.front();
  for (const Rat& e : grid)
    if (e < target) target = e;
  std::vector<Rat> vals = oracle_value_list(f);
  std::set<Rat> absvals;
  for (const Rat& w : vals) absvals.insert(rat_abs(w));
  Rat prev(-1);
  for (const Rat& w : absvals) {
    if (w > 0 && w < target) target = w;
    if (prev >= 0 && w - prev > 0 && w - prev < target) target = w - prev;
    prev = w;
  }
  Rat reach(0);
  ExtRat sup = f.sup_abs();
  if (!sup.is_inf()) {
    reach = sup.finite();
  } else {
    for (const Rat& w : vals)
      if (rat_abs(w) > reach) reach = rat_abs(w);
  }
  int depth = 2;
  const int cap = s.is_finite_backend() ? 8 : 14;
  Rat p2(4);
  while (depth < cap && (Rat(depth) * *delta < reach || *delta / p2 >= target)) {
    ++depth;
    p2 *= 2;
  }
  RegularSequence seq = build_regular_sequence(s, f, *delta, depth);
  bool pieces_ok = seq.pieces_ok;
  if (seq.bad_piece) {
    // confirm the reported bad piece against the enumerated completion gap
    if (oracle_pj_gap(s, seq.bad_piece->part, cutoff).is_zero()) pieces_ok = true;
  }
  v.holds = pieces_ok && seq.converged;
  v.regular_delta = *delta;
  v.regular_depth = depth;
  if (!pieces_ok) {
    v.obstruction = Obstruction{"piece", "a level piece pulls back outside the completion",
                                seq.bad_piece ? std::optional<ExtRat>(seq.bad_piece->gap) : std::nullopt,
                                std::nullopt};
  } else if (!seq.converged) {
    v.obstruction =
        Obstruction{"divergence", "mismatch mass never vanishes", std::nullopt, std::nullopt};
  }
  return v;
}

}  // namespace

// ================================ public api =================================

ExtRat oracle_pj_gap(const ChargeSpace& s, const CSet& a, long long cutoff) {
  if (s.is_finite_backend()) {
    FinModel m = build_fin(s);
    return ExtRat(m.gap_tab[cset_to_mask(a, s.n_points())]);
  }
  NatModel m;
  m.s = &s;
  m.N = std::max(cutoff, s.prefix_len());
  return m.gap(a);
}

bool oracle_pj_member(const ChargeSpace& s, const CSet& a, long long cutoff) {
  return oracle_pj_gap(s, a, cutoff).is_zero();
}

ExtRat oracle_outer(const ChargeSpace& s, const CSet& a, long long cutoff) {
  if (s.is_finite_backend()) {
    FinModel m = build_fin(s);
    return ExtRat(m.outer_tab[cset_to_mask(a, s.n_points())]);
  }
  NatModel m;
  m.s = &s;
  m.N = std::max(cutoff, s.prefix_len());
  return m.outer(a);
}

ExtRat oracle_inner(const ChargeSpace& s, const CSet& a, long long cutoff) {
  if (s.is_finite_backend()) {
    FinModel m = build_fin(s);
    return ExtRat(m.inner_tab[cset_to_mask(a, s.n_points())]);
  }
  NatModel m;
  m.s = &s;
  m.N = std::max(cutoff, s.prefix_len());
  return m.inner(a);
}

ExtRat oracle_phi(const ChargeSpace& s, const Func& f, const Rat& z, long long cutoff) {
  // shrink the window until two consecutive inner charges agree
  std::optional<ExtRat> last;
  Rat r(1);
  for (int j = 0; j <= 20; ++j, r /= 2) {
    CSet pre = f.nat_domain()
                   ? f.pre_interval(QInterval{z - r, z + r, true, true})
                   : mask_to_cset(f.mask_interval(QInterval{z - r, z + r, true, true}), s.n_points());
    ExtRat v = oracle_inner(s, pre, cutoff);
    if (last && *last == v) return v;
    last = v;
  }
  return *last;
}

ExtRat oracle_infimum_at(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                         const Entourage& e, long long cutoff) {
  f.validate(s.is_finite_backend() ? s.n_points() : -1, c);
  if (s.is_finite_backend()) {
    FinModel m = build_fin(s);
    switch (p) {
      case Property::T2: return fin_t2_inf(m, c, f, e);
      case Property::T1: return fin_t1_inf(m, c, f, e);
      case Property::Smooth: return fin_smooth_inf(m, c, f, e);
      default: throw InputError("oracle_infimum_at: only the partition-style properties");
    }
  }
  NatModel m = build_nat(s, f, cutoff);
  switch (p) {
    case Property::T2: return nat_t2_inf(m, c, e);
    case Property::T1: return nat_t1_inf(m, c, e);
    case Property::Smooth: return nat_smooth_inf(m, c, e);
    default: throw InputError("oracle_infimum_at: only the partition-style properties");
  }
}

Verdict oracle_decide(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                      long long cutoff) {
  f.validate(s.is_finite_backend() ? s.n_points() : -1, c);
  switch (p) {
    case Property::T1:
    case Property::T2:
    case Property::Smooth:
      return oracle_partition_like(p, s, c, f, cutoff);
    case Property::Base:
    case Property::Ubm:
      // both reduce to the same forced sections on these codomains; the
      // deciders reach them along different routes, this scan is the referee
      return oracle_base_like(p, s, c, f, cutoff);
    case Property::Conventional:
      return oracle_conventional(s, c, f);
    case Property::RayLeft:
    case Property::RayRight:
    case Property::Ray:
      return oracle_ray(p, s, f, cutoff);
    case Property::Greco:
      return oracle_greco(s, c, f, cutoff);
    case Property::Regular:
      return oracle_regular(s, f, cutoff);
  }
  throw InputError("oracle_decide: unknown property");
}

// =============================== replay ======================================

namespace {

bool replay_fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

CSet ground_set(const ChargeSpace& s) {
  if (s.is_finite_backend()) return mask_to_cset((1u << s.n_points()) - 1u, s.n_points());
  return CSet::all();
}

bool cells_disjoint(const std::vector<SimpleCell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (!cells[i].part.intersect(cells[j].part).is_finite() ||
          !cells[i].part.intersect(cells[j].part).elements().empty())
        return false;
  return true;
}

bool in_field_oracle(const ChargeSpace& s, const CSet& a) {
  if (!s.is_finite_backend()) return a.is_finite() || a.is_cofinite();
  FinModel m = build_fin(s);
  return m.in_field[cset_to_mask(a, s.n_points())] != 0;
}

bool cell_covered(const Codomain& c, const Func& f, const ChargeSpace& s, const SimpleCell& cell,
                  const Entourage& e, const CSet& exceptional, long long cutoff) {
  // every point of the cell outside the exceptional region maps into the
  // center's ball; on the nat backend the check walks ground points to the
  // cutoff and closes the tail by its finite value set
  auto ok_value_q = [&](const Rat& w) { return entourage_contains_line(e, cell.center_q, w); };
  auto ok_value_p = [&](int w) { return entourage_contains(c, e, cell.center_p, w); };
  if (!f.nat_domain()) {
    for (int p = 0; p < s.n_points(); ++p) {
      if (!cell.part.contains(p) || exceptional.contains(p)) continue;
      if (c.is_line() ? !ok_value_q(f.value_q(p)) : !ok_value_p(f.value_p(p))) return false;
    }
    return true;
  }
  for (long long n = 0; n <= std::max(cutoff, f.prefix_len() + 4); ++n) {
    if (!cell.part.contains(n) || exceptional.contains(n)) continue;
    if (c.is_line() ? !ok_value_q(f.value_q(n)) : !ok_value_p(f.value_p(n))) return false;
  }
  if (cell.part.is_infinite() && f.tail() == Func::Tail::Affine) {
    // an affine tail escapes every ball; the cell must be excused beyond
    // some point by the exceptional region
    CSet residual = cell.part.minus(exceptional);
    if (!residual.is_finite()) return false;
  }
  return true;
}

bool replay_entries(const ChargeSpace& s, const Codomain& c, const Func& f, const Verdict& v,
                    long long cutoff, std::string* why) {
  for (const EntourageEntry& entry : v.entries) {
    CSet covered = entry.exceptional;
    for (const SimpleCell& cell : entry.cells) covered = covered.unite(cell.part);
    if (!(covered == ground_set(s)))
      return replay_fail(why, "cells and discard do not cover the ground set");
    if (!cells_disjoint(entry.cells)) return replay_fail(why, "cells overlap");
    if (v.property == Property::T2) {
      for (const SimpleCell& cell : entry.cells) {
        if (!in_field_oracle(s, cell.part)) return replay_fail(why, "a cell escapes the field");
        bool small;
        if (c.is_line()) {
          std::vector<Rat> vals;
          if (!f.nat_domain()) {
            vals = fin_mask_values(f, cset_to_mask(cell.part, s.n_points()));
          } else {
            for (long long n : cell.part.members_below(cutoff)) vals.push_back(f.value_q(n));
            if (cell.part.is_infinite())
              for (const Rat& w : f.tail_values_q()) vals.push_back(w);
          }
          small = small_values_lit(vals, entry.entourage);
        } else {
          std::vector<int> pts;
          if (!f.nat_domain()) {
            pts = fin_mask_points(f, cset_to_mask(cell.part, s.n_points()));
          } else {
            for (long long n : cell.part.members_below(cutoff)) pts.push_back(f.value_p(n));
            if (cell.part.is_infinite())
              for (int w : f.tail_values_p()) pts.push_back(w);
          }
          small = small_points_lit(c, pts, entry.entourage);
        }
        if (!small) return replay_fail(why, "a kept cell has a non-small image");
      }
      if (!in_field_oracle(s, entry.exceptional))
        return replay_fail(why, "the discarded part escapes the field");
      ExtRat mass = s.is_finite_backend()
                        ? ExtRat(build_fin(s).mu_tab[cset_to_mask(entry.exceptional, s.n_points())])
                        : s.charge(entry.exceptional);
      if (!(mass == entry.infimum))
        return replay_fail(why, "discarded charge differs from the recorded infimum");
    }
    if (v.property == Property::T1) {
      for (const SimpleCell& cell : entry.cells)
        if (!cell_covered(c, f, s, cell, entry.entourage, entry.exceptional, cutoff))
          return replay_fail(why, "a cell point escapes its center's ball");
      ExtRat mass = oracle_outer(s, entry.exceptional, cutoff);
      if (!(mass == entry.infimum))
        return replay_fail(why, "mismatch outer mass differs from the recorded infimum");
    }
    if (v.property == Property::Smooth) {
      ExtRat mass = oracle_outer(s, entry.exceptional, cutoff);
      if (!(mass == entry.infimum))
        return replay_fail(why, "uncovered outer mass differs from the recorded infimum");
    }
    ExtRat check = oracle_infimum_at(v.property, s, c, f, entry.entourage, cutoff);
    if (!(check == entry.infimum))
      return replay_fail(why, "recorded infimum differs from the definitional scan");
  }
  return true;
}

bool replay_balls(const ChargeSpace& s, const Codomain& c, const Func& f, const Verdict& v,
                  long long cutoff, std::string* why) {
  for (const BallEvidence& ev : v.balls) {
    if (ev.center_is_q) {
      QInterval ball{ev.center_q - ev.radius, ev.center_q + ev.radius, true, true};
      CSet pre = f.nat_domain() ? f.pre_interval(ball)
                                : mask_to_cset(f.mask_interval(ball), s.n_points());
      if (!(pre == ev.preimage)) return replay_fail(why, "ball preimage differs on recompute");
    } else if (c.n_metrics() == 1) {
      std::uint32_t mask = ball_mask(c, Entourage::radius(ev.radius), ev.center_p);
      CSet pre = f.nat_domain() ? f.pre_points(mask) : mask_to_cset(f.mask_points(mask), s.n_points());
      if (!(pre == ev.preimage)) return replay_fail(why, "ball preimage differs on recompute");
    }
    ExtRat g = oracle_pj_gap(s, ev.preimage, cutoff);
    if (!(g == ev.pj.sandwich.gap_infimum))
      return replay_fail(why, "completion gap differs from the enumerated gap");
    if (ev.pj.member != g.is_zero())
      return replay_fail(why, "membership flag contradicts the gap");
  }
  if (v.holds) {
    for (const BallEvidence& ev : v.balls)
      if (!ev.pj.member) return replay_fail(why, "holds, yet a recorded ball is not a member");
  } else {
    bool some = v.balls.empty();
    for (const BallEvidence& ev : v.balls)
      if (!ev.pj.member) some = true;
    if (!some) return replay_fail(why, "fails, yet every recorded ball is a member");
  }
  return true;
}

bool replay_rays(const ChargeSpace& s, const Func& f, const Verdict& v, long long cutoff,
                 std::string* why) {
  bool any_bad = false;
  for (const RayEvidence& ev : v.ray_evidence) {
    CSet pre = ev.upper
                   ? (f.nat_domain() ? f.pre_gt(ev.threshold)
                                     : mask_to_cset(f.mask_gt(ev.threshold), s.n_points()))
                   : (f.nat_domain() ? f.pre_lt(ev.threshold)
                                     : mask_to_cset(f.mask_lt(ev.threshold), s.n_points()));
    if (!(pre == ev.preimage)) return replay_fail(why, "ray preimage differs on recompute");
    ExtRat g = oracle_pj_gap(s, ev.preimage, cutoff);
    if (!(g == ev.gap)) return replay_fail(why, "ray gap differs from the enumerated gap");
    if (!g.is_zero()) {
      any_bad = true;
      if (!v.bad_thresholds.contains(ev.threshold))
        return replay_fail(why, "a failing threshold is outside the recorded bad set");
    }
  }
  if (v.holds && any_bad) return replay_fail(why, "holds, yet a sampled ray fails");
  if (v.holds != v.bad_thresholds.all_points())
    return replay_fail(why, "verdict contradicts the recorded bad set");
  return true;
}

bool replay_greco(const ChargeSpace& s, const Func& f, const Verdict& v, long long cutoff,
                  std::string* why) {
  for (const GrecoPairEvidence& ev : v.greco_pairs) {
    CSet ua = ev.positive_side
                  ? (f.nat_domain() ? f.pre_gt(ev.a) : mask_to_cset(f.mask_gt(ev.a), s.n_points()))
                  : (f.nat_domain() ? f.pre_lt(-ev.a) : mask_to_cset(f.mask_lt(-ev.a), s.n_points()));
    CSet ub = ev.positive_side
                  ? (f.nat_domain() ? f.pre_gt(ev.b) : mask_to_cset(f.mask_gt(ev.b), s.n_points()))
                  : (f.nat_domain() ? f.pre_lt(-ev.b) : mask_to_cset(f.mask_lt(-ev.b), s.n_points()));
    if (!(ua == ev.upper) || !(ub == ev.lower))
      return replay_fail(why, "pattern preimages differ on recompute");
    if (!(ev.a > ev.b) || ev.b <= 0) return replay_fail(why, "threshold pair out of order");
    if (ev.found) {
      if (!ua.subset_of(ev.h) || !ev.h.subset_of(ub))
        return replay_fail(why, "recorded sandwich set does not fit between the patterns");
      if (!oracle_pj_member(s, ev.h, cutoff))
        return replay_fail(why, "recorded sandwich set is outside the completion");
    } else {
      if (s.is_finite_backend()) {
        FinModel m = build_fin(s);
        std::uint32_t uam = cset_to_mask(ua, s.n_points());
        std::uint32_t ubm = cset_to_mask(ub, s.n_points());
        for (std::uint32_t h = 0; h <= m.full; ++h)
          if (m.member(h) && (uam & ~h) == 0 && (h & ~ubm) == 0)
            return replay_fail(why, "a sandwich exists though the pair is marked unmet");
      } else {
        if (oracle_pj_gap(s, ua, cutoff).is_zero() || ua.is_finite() || ua.is_cofinite() ||
            ub.is_finite() || ub.is_cofinite())
          return replay_fail(why, "a sandwich exists though the pair is marked unmet");
      }
    }
  }
  bool all_found = true;
  for (const GrecoPairEvidence& ev : v.greco_pairs)
    if (!ev.found) all_found = false;
  if (v.holds != all_found) return replay_fail(why, "verdict contradicts the recorded pairs");
  return true;
}

bool replay_classes(const ChargeSpace& s, const Codomain& c, const Func& f, const Verdict& v,
                    std::string* why) {
  if (!s.is_finite_backend()) return replay_fail(why, "class evidence on the wrong backend");
  FinModel m = build_fin(s);
  bool all = true;
  for (const ClassEvidence& ev : v.value_classes) {
    std::uint32_t pre;
    if (c.is_line()) {
      pre = f.mask_point(ev.value);
    } else {
      int rep = static_cast<int>(numerator(ev.value));
      std::vector<int> cls = c.zero_classes();
      std::uint32_t cmask = 0;
      for (int y = 0; y < c.n_points(); ++y)
        if (cls[static_cast<std::size_t>(y)] == cls[static_cast<std::size_t>(rep)]) cmask |= 1u << y;
      pre = f.mask_points(cmask);
    }
    if (!(mask_to_cset(pre, s.n_points()) == ev.preimage))
      return replay_fail(why, "class preimage differs on recompute");
    if (ev.in_field != (m.in_field[pre] != 0))
      return replay_fail(why, "field membership differs from the tabulated field");
    if (!ev.in_field) all = false;
  }
  if (v.holds != all) return replay_fail(why, "verdict contradicts the recorded classes");
  return true;
}

bool replay_regular(const ChargeSpace& s, const Func& f, const Verdict& v, long long cutoff,
                    std::string* why) {
  if (!v.regular_delta) {
    if (v.holds) return replay_fail(why, "holds without a recorded scale");
    return v.obstruction && v.obstruction->kind == "delta"
               ? true
               : replay_fail(why, "missing scale without a delta obstruction");
  }
  for (const Rat& z : oracle_value_list(f)) {
    if (z == 0 || oracle_phi(s, f, z, cutoff).is_zero()) continue;
    Rat q = rat_abs(z / *v.regular_delta);
    Rat p2(1);
    for (int i = 0; i <= std::max(14, v.regular_depth); ++i, p2 *= 2)
      if (denominator(q * p2) == 1)
        return replay_fail(why, "recorded scale hits a dyadic multiple of a support point");
  }
  RegularSequence seq = build_regular_sequence(s, f, *v.regular_delta, std::max(1, v.regular_depth));
  if (seq.bad_piece && !oracle_pj_gap(s, seq.bad_piece->part, cutoff).is_zero()) {
    if (v.holds) return replay_fail(why, "holds, yet a level piece escapes the completion");
  } else if (!seq.converged) {
    if (v.holds) return replay_fail(why, "holds, yet the mismatch mass does not vanish");
  } else if (!v.holds && seq.pieces_ok) {
    return replay_fail(why, "fails, yet pieces and errors both close");
  }
  return true;
}

}  // namespace

bool replay_certificate(const ChargeSpace& s, const Codomain& c, const Func& f, const Verdict& v,
                        long long cutoff, std::string* why) {
  if (v.holds && v.obstruction) return replay_fail(why, "holds with an obstruction attached");
  if (!v.holds && !v.obstruction) return replay_fail(why, "fails without an obstruction");
  switch (v.property) {
    case Property::T1:
    case Property::T2:
    case Property::Smooth: {
      if (!replay_entries(s, c, f, v, cutoff, why)) return false;
      bool all_zero = true;
      for (const EntourageEntry& e : v.entries)
        if (!e.infimum.is_zero()) all_zero = false;
      if (v.holds != all_zero) return replay_fail(why, "verdict contradicts the recorded infima");
      return true;
    }
    case Property::Base:
    case Property::Ubm:
      return replay_balls(s, c, f, v, cutoff, why);
    case Property::RayLeft:
    case Property::RayRight:
    case Property::Ray:
      return replay_rays(s, f, v, cutoff, why);
    case Property::Greco:
      return replay_greco(s, f, v, cutoff, why);
    case Property::Conventional:
      return replay_classes(s, c, f, v, why);
    case Property::Regular:
      return replay_regular(s, f, v, cutoff, why);
  }
  return replay_fail(why, "unknown property");
}

}  // namespace charges
