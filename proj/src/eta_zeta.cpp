#include "charges/eta_zeta.hpp"

#include <algorithm>
#include <set>

namespace charges {

namespace {

// pick a cut in (lo, hi) with finite boundary mass; the infinite set is
// finite so a zero of the profile always works as a fallback
Rat finite_cut(const PhiProfile& prof, const Rat& lo, const Rat& hi) {
  Rat mid = (lo + hi) / 2;
  if (!prof.at(mid).is_inf()) return mid;
  return prof.zero_in(lo, hi);
}

Rat zero_cut(const PhiProfile& prof, const Rat& lo, const Rat& hi) {
  Rat mid = (lo + hi) / 2;
  if (prof.at(mid).is_zero()) return mid;
  return prof.zero_in(lo, hi);
}

std::uint32_t mask_gt(const std::vector<Rat>& g, const Rat& cut) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] > cut) m |= 1u << i;
  return m;
}

std::uint32_t mask_lt(const std::vector<Rat>& g, const Rat& cut) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] < cut) m |= 1u << i;
  return m;
}

// all open balls, one mask per center and sweep radius; radii beyond the
// largest distance add the full space, radii at the least positive distance
// reach the zero class
std::vector<std::uint32_t> ball_masks(const Codomain& c) {
  std::vector<std::uint32_t> out;
  int n = c.n_points();
  for (int m = 0; m < c.n_metrics(); ++m) {
    std::vector<Rat> radii = c.distinct_positive_distances(m);
    Rat top = radii.empty() ? Rat(1) : radii.back() + 1;
    radii.push_back(top);
    for (int center = 0; center < n; ++center) {
      for (const Rat& r : radii) {
        std::uint32_t mask = 0;
        for (int j = 0; j < n; ++j)
          if (c.dist(m, center, j) < r) mask |= 1u << j;
        out.push_back(mask);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

EtaZetaReport build_eta_zeta(const ChargeSpace& space, const Codomain& cod,
                             const std::vector<std::vector<Rat>>& generators, const Func& f) {
  if (cod.kind() != Codomain::Kind::FinitePoints)
    throw InputError("build_eta_zeta: the subbase check needs a finite codomain");
  if (generators.empty()) throw InputError("build_eta_zeta: needs at least one generator");
  f.validate(space.is_finite_backend() ? space.n_points() : -1, cod);
  int n = cod.n_points();
  std::vector<int> classes = cod.zero_classes();
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n)
      throw InputError("build_eta_zeta: generator table size differs from the codomain");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (classes[i] == classes[j] && g[i] != g[j])
          throw InputError(
              "build_eta_zeta: generator splits a zero class, so it is not uniformly continuous");
  }

  EtaZetaReport rep;
  for (const auto& g : generators) {
    EtaZetaEntry entry;
    entry.table = g;
    entry.profile = phi_profile(space, f.compose_table(g));

    for (const auto& [z, v] : entry.profile.support_map()) {
      if (v.is_inf())
        entry.eta_bad.push_back(z);
      else
        entry.zeta_bad.push_back(z);
    }
    entry.zeta_bad_progression = entry.profile.progression().has_value();

    // one cut strictly inside each gap of the value set realizes every
    // strict sublevel and superlevel pattern; the witnesses are genuine
    // profile evaluations, not assumptions
    std::set<Rat> vals(g.begin(), g.end());
    std::vector<Rat> cuts_lo, cuts_hi;
    Rat lo = *vals.begin() - 1;
    for (const Rat& v : vals) {
      cuts_lo.push_back(lo);
      cuts_hi.push_back(v);
      lo = v;
    }
    cuts_lo.push_back(lo);
    cuts_hi.push_back(lo + 2);
    for (std::size_t i = 0; i < cuts_lo.size(); ++i) {
      Rat ec = finite_cut(entry.profile, cuts_lo[i], cuts_hi[i]);
      entry.eta_cuts.push_back(ec);
      entry.eta_masks.push_back(mask_lt(g, ec));
      entry.eta_masks.push_back(mask_gt(g, ec));
      Rat zc = zero_cut(entry.profile, cuts_lo[i], cuts_hi[i]);
      entry.zeta_cuts.push_back(zc);
      entry.zeta_masks.push_back(mask_lt(g, zc));
      entry.zeta_masks.push_back(mask_gt(g, zc));
    }
    rep.entries.push_back(std::move(entry));
  }

  std::uint32_t full = n >= 32 ? ~0u : (1u << n) - 1u;

  // minimal generated open around each point: intersect the family members
  // that contain it
  auto minimal_opens = [&](bool zeta) {
    std::vector<std::uint32_t> t(static_cast<std::size_t>(n), full);
    for (const EtaZetaEntry& e : rep.entries)
      for (std::uint32_t m : (zeta ? e.zeta_masks : e.eta_masks))
        for (int y = 0; y < n; ++y)
          if (m & (1u << y)) t[static_cast<std::size_t>(y)] &= m;
    return t;
  };
  auto covers_balls = [&](const std::vector<std::uint32_t>& t) {
    for (std::uint32_t ball : ball_masks(cod))
      for (int y = 0; y < n; ++y)
        if ((ball & (1u << y)) && (t[static_cast<std::size_t>(y)] & ~ball)) return false;
    return true;
  };
  rep.eta_topological_subbase = covers_balls(minimal_opens(false));
  rep.zeta_topological_subbase = covers_balls(minimal_opens(true));

  // Entourage route: a qualifying entourage of the line assigns every real a
  // ray section covering a small closed neighbourhood, so per generator the
  // sharpest sections keep, at each value, either everything above it or
  // everything below it. Intersecting the two one-sided relations leaves the
  // relation "equal under every generator"; the family reaches the zero
  // diagonal exactly when that relation refines it.
  auto weak_relation = [&](bool zeta) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), full);
    for (const EtaZetaEntry& e : rep.entries) {
      std::set<Rat> vals(e.table.begin(), e.table.end());
      for (int y = 0; y < n; ++y) {
        const Rat& v = e.table[static_cast<std::size_t>(y)];
        auto it = vals.find(v);
        Rat below = it == vals.begin() ? v - 1 : *std::prev(it);
        auto nx = std::next(it);
        Rat above = nx == vals.end() ? v + 1 : *nx;
        Rat w_up = zeta ? zero_cut(e.profile, below, v) : finite_cut(e.profile, below, v);
        Rat w_dn = zeta ? zero_cut(e.profile, v, above) : finite_cut(e.profile, v, above);
        rows[static_cast<std::size_t>(y)] &= mask_gt(e.table, w_up);
        rows[static_cast<std::size_t>(y)] &= mask_lt(e.table, w_dn);
      }
    }
    return rows;
  };
  auto inside_zero_diagonal = [&](const std::vector<std::uint32_t>& rows) {
    for (int y = 0; y < n; ++y)
      for (int j = 0; j < n; ++j)
        if ((rows[static_cast<std::size_t>(y)] & (1u << j)) && classes[y] != classes[j]) {
          if (rep.separation_failure.empty()) rep.separation_failure = {y, j};
          return false;
        }
    return true;
  };
  rep.ee_entourage_subbase = inside_zero_diagonal(weak_relation(false));
  rep.zz_entourage_subbase = inside_zero_diagonal(weak_relation(true));

  if (!rep.eta_topological_subbase && rep.separation_failure.empty()) {
    // the topological route failed; find the unseparated pair it implies
    auto t = minimal_opens(false);
    for (int y = 0; y < n && rep.separation_failure.empty(); ++y)
      for (int j = 0; j < n; ++j)
        if ((t[static_cast<std::size_t>(y)] & (1u << j)) && classes[y] != classes[j]) {
          rep.separation_failure = {y, j};
          break;
        }
  }
  return rep;
}

}  // namespace charges
