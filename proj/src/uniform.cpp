#include "charges/uniform.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charges {

Codomain Codomain::rational_line() {
  Codomain c;
  c.kind_ = Kind::RationalLine;
  c.form_ = Form::Line;
  return c;
}

Codomain Codomain::finite_metric(std::vector<std::string> names,
                                 std::vector<std::tuple<std::string, std::string, Rat>> entries) {
  Codomain c;
  c.kind_ = Kind::FinitePoints;
  c.form_ = Form::Metric;
  c.names_ = std::move(names);
  if (c.names_.empty()) throw InputError("codomain needs at least one point");
  {
    std::set<std::string> seen(c.names_.begin(), c.names_.end());
    if (seen.size() != c.names_.size()) throw InputError("duplicate codomain point name");
  }
  int n = static_cast<int>(c.names_.size());
  std::vector<Rat> mat(static_cast<size_t>(n) * n, Rat(0));
  std::vector<char> have(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) have[static_cast<size_t>(i) * n + i] = 1;
  for (auto& [a, b, d] : entries) {
    int i = c.point_index(a), j = c.point_index(b);
    if (i == j) {
      if (d != 0) throw InputError("nonzero diagonal distance at " + a);
      continue;
    }
    if (d < 0) throw InputError("negative distance");
    if (have[static_cast<size_t>(i) * n + j] && mat[static_cast<size_t>(i) * n + j] != d)
      throw InputError("asymmetric or conflicting distance between " + a + " and " + b);
    mat[static_cast<size_t>(i) * n + j] = d;
    mat[static_cast<size_t>(j) * n + i] = d;
    have[static_cast<size_t>(i) * n + j] = 1;
    have[static_cast<size_t>(j) * n + i] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!have[static_cast<size_t>(i) * n + j])
        throw InputError("missing distance between " + c.names_[static_cast<size_t>(i)] + " and " +
                         c.names_[static_cast<size_t>(j)]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rat& dij = mat[static_cast<size_t>(i) * n + j];
        const Rat& djk = mat[static_cast<size_t>(j) * n + k];
        const Rat& dik = mat[static_cast<size_t>(i) * n + k];
        if (dij + djk < dik)
          throw InputError("triangle inequality fails at (" + c.names_[static_cast<size_t>(i)] +
                           "," + c.names_[static_cast<size_t>(j)] + "," +
                           c.names_[static_cast<size_t>(k)] + "): " + rat_to_string(dij) + "+" +
                           rat_to_string(djk) + " < " + rat_to_string(dik));
      }
  c.mats_.push_back(std::move(mat));
  return c;
}

Codomain Codomain::weak_family(std::vector<std::string> names,
                               std::vector<std::vector<Rat>> tables) {
  Codomain c;
  c.kind_ = Kind::FinitePoints;
  c.form_ = Form::Weak;
  c.names_ = std::move(names);
  if (c.names_.empty()) throw InputError("codomain needs at least one point");
  if (tables.empty()) throw InputError("weak family needs at least one table");
  size_t n = c.names_.size();
  for (const auto& g : tables) {
    if (g.size() != n) throw InputError("weak family table is not total");
    std::vector<Rat> mat(n * n, Rat(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) mat[i * n + j] = rat_abs(g[i] - g[j]);
    c.mats_.push_back(std::move(mat));
  }
  c.weak_tables_ = std::move(tables);
  return c;
}

Codomain Codomain::product(std::vector<Codomain> components) {
  if (components.size() < 2) throw InputError("product needs at least two components");
  for (const auto& comp : components)
    if (comp.is_line()) throw InputError("product components must have finitely many points");
  Codomain c;
  c.kind_ = Kind::FinitePoints;
  c.form_ = Form::Product;

  size_t total = 1;
  for (const auto& comp : components) total *= comp.names_.size();
  if (total > 32) throw ResourceError("product codomain too large");

  // tuples in row-major order, last component fastest
  std::vector<std::vector<int>> tuples(total);
  for (size_t t = 0; t < total; ++t) {
    size_t rem = t;
    std::vector<int> idx(components.size());
    for (size_t k = components.size(); k-- > 0;) {
      size_t nk = components[k].names_.size();
      idx[k] = static_cast<int>(rem % nk);
      rem /= nk;
    }
    tuples[t] = std::move(idx);
    std::string nm;
    for (size_t k = 0; k < components.size(); ++k) {
      if (k) nm += "|";
      nm += components[k].names_[static_cast<size_t>(tuples[t][k])];
    }
    c.names_.push_back(nm);
  }
  for (size_t k = 0; k < components.size(); ++k) {
    for (const auto& cmat : components[k].mats_) {
      size_t nk = components[k].names_.size();
      std::vector<Rat> mat(total * total, Rat(0));
      for (size_t a = 0; a < total; ++a)
        for (size_t b = 0; b < total; ++b)
          mat[a * total + b] =
              cmat[static_cast<size_t>(tuples[a][k]) * nk + static_cast<size_t>(tuples[b][k])];
      c.mats_.push_back(std::move(mat));
    }
  }
  c.components_ = std::move(components);
  return c;
}

int Codomain::n_points() const {
  if (is_line()) throw std::logic_error("n_points on the line");
  return static_cast<int>(names_.size());
}

const std::vector<std::string>& Codomain::point_names() const {
  if (is_line()) throw std::logic_error("point_names on the line");
  return names_;
}

int Codomain::point_index(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw InputError("unknown codomain point: " + name);
}

int Codomain::n_metrics() const { return is_line() ? 1 : static_cast<int>(mats_.size()); }

const Rat& Codomain::dist(int metric, int i, int j) const {
  return mats_[static_cast<size_t>(metric)][static_cast<size_t>(i) * names_.size() +
                                            static_cast<size_t>(j)];
}

std::vector<Rat> Codomain::distinct_positive_distances(int metric) const {
  std::set<Rat> vals;
  int n = n_points();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(metric, i, j) > 0) vals.insert(dist(metric, i, j));
  return std::vector<Rat>(vals.begin(), vals.end());
}

std::vector<int> Codomain::zero_classes() const {
  int n = n_points();
  std::vector<int> cls(static_cast<size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[static_cast<size_t>(i)] >= 0) continue;
    cls[static_cast<size_t>(i)] = next;
    for (int j = i + 1; j < n; ++j) {
      bool zero = true;
      for (int m = 0; m < n_metrics() && zero; ++m)
        if (dist(m, i, j) != 0) zero = false;
      if (zero) cls[static_cast<size_t>(j)] = next;
    }
    ++next;
  }
  return cls;
}

Entourage::Entourage(std::vector<Primitive> prims) {
  for (auto& p : prims) {
    if (p.radius <= 0) throw InputError("entourage radius must be positive");
    bool merged = false;
    for (auto& q : prims_) {
      if (q.metric == p.metric) {
        if (p.radius < q.radius) q.radius = p.radius;
        merged = true;
        break;
      }
    }
    if (!merged) prims_.push_back(p);
  }
  std::sort(prims_.begin(), prims_.end(),
            [](const Primitive& a, const Primitive& b) { return a.metric < b.metric; });
  if (prims_.empty()) throw InputError("entourage needs at least one primitive");
}

const Rat* Entourage::radius_for(int metric) const {
  for (const auto& p : prims_)
    if (p.metric == metric) return &p.radius;
  return nullptr;
}

std::string Entourage::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < prims_.size(); ++i) {
    if (i) os << " & ";
    if (prims_.size() > 1 || prims_[0].metric != 0) os << "d" << prims_[i].metric << ":";
    os << "r<" << rat_to_string(prims_[i].radius);
  }
  return os.str();
}

bool entourage_contains(const Codomain& c, const Entourage& e, int i, int j) {
  for (const auto& p : e.primitives())
    if (!(c.dist(p.metric, i, j) < p.radius)) return false;
  return true;
}

bool entourage_contains_line(const Entourage& e, const Rat& u, const Rat& v) {
  Rat d = rat_abs(u - v);
  for (const auto& p : e.primitives())
    if (!(d < p.radius)) return false;
  return true;
}

std::uint32_t ball_mask(const Codomain& c, const Entourage& e, int center) {
  std::uint32_t m = 0;
  for (int j = 0; j < c.n_points(); ++j)
    if (entourage_contains(c, e, center, j)) m |= (1u << j);
  return m;
}

QInterval ball_interval(const Entourage& e, const Rat& center) {
  Rat r = e.primitives()[0].radius;
  for (const auto& p : e.primitives())
    if (p.radius < r) r = p.radius;
  return QInterval{center - r, center + r, true, true};
}

bool is_small_points(const Codomain& c, std::uint32_t mask, const Entourage& e) {
  for (int i = 0; i < c.n_points(); ++i) {
    if (!(mask & (1u << i))) continue;
    for (int j = i; j < c.n_points(); ++j) {
      if (!(mask & (1u << j))) continue;
      if (!entourage_contains(c, e, i, j)) return false;
    }
  }
  return true;
}

bool is_small_values(const std::vector<Rat>& values, const Entourage& e) {
  if (values.empty()) return true;
  Rat lo = values[0], hi = values[0];
  for (const Rat& v : values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  Rat diam = hi - lo;
  for (const auto& p : e.primitives())
    if (!(diam < p.radius)) return false;
  return true;
}

bool compose_contains(const Entourage& e, const Entourage& d) {
  for (const auto& pe : e.primitives()) {
    const Rat* s = d.radius_for(pe.metric);
    if (s == nullptr || !(*s + *s <= pe.radius)) return false;
  }
  return true;
}

bool compose_subset_exact(const Codomain& c, const Entourage& e, const Entourage& d) {
  int n = c.n_points();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!entourage_contains(c, d, i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (entourage_contains(c, d, j, k) && !entourage_contains(c, e, i, k)) return false;
    }
  return true;
}

namespace {
constexpr int kLineGridDepth = 8;
}

std::vector<Entourage> entourage_base(const Codomain& c, const std::vector<Rat>& line_criticals) {
  std::vector<Entourage> base;
  if (c.is_line()) {
    std::set<Rat, std::greater<Rat>> radii;
    for (int k = 1; k <= kLineGridDepth; ++k) radii.insert(Rat(1) / k);
    Rat min_crit(0);
    bool have_crit = false;
    for (const Rat& r : line_criticals) {
      if (r <= 0) continue;
      radii.insert(r);
      if (!have_crit || r < min_crit) {
        min_crit = r;
        have_crit = true;
      }
    }
    if (have_crit) radii.insert(min_crit / 2);
    for (const Rat& r : radii) base.push_back(Entourage::radius(r));
    return base;
  }
  std::vector<std::vector<Rat>> chains;  // per metric, descending
  size_t longest = 0;
  for (int m = 0; m < c.n_metrics(); ++m) {
    auto v = c.distinct_positive_distances(m);
    std::reverse(v.begin(), v.end());
    longest = std::max(longest, v.size());
    chains.push_back(std::move(v));
  }
  if (longest == 0) {
    base.push_back(Entourage::radius(Rat(1)));  // everything is uniformly indistinct
    return base;
  }
  for (size_t step = 0; step < longest; ++step) {
    std::vector<Primitive> prims;
    for (int m = 0; m < c.n_metrics(); ++m) {
      const auto& ch = chains[static_cast<size_t>(m)];
      if (ch.empty()) continue;
      prims.push_back(Primitive{m, ch[std::min(step, ch.size() - 1)]});
    }
    base.push_back(Entourage(std::move(prims)));
  }
  return base;
}

std::vector<Rat> critical_thresholds_line(const std::vector<Rat>& values) {
  std::set<Rat> out(values.begin(), values.end());
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j) {
      Rat d = rat_abs(values[i] - values[j]);
      out.insert(d);
      out.insert(d / 2);
      out.insert((values[i] + values[j]) / 2);
    }
  return std::vector<Rat>(out.begin(), out.end());
}

std::vector<Rat> critical_thresholds_finite(const Codomain& c, const std::vector<int>& pts) {
  std::set<Rat> out;
  for (int m = 0; m < c.n_metrics(); ++m)
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        Rat d = c.dist(m, pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
        if (d > 0) out.insert(d);
      }
  return std::vector<Rat>(out.begin(), out.end());
}

}  // namespace charges
