#include "charges/func.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace charges {

namespace {
constexpr long long kIndexCap = 1'000'000'000;

long long to_ll(const BigInt& b) {
  if (b > kIndexCap || b < -kIndexCap) throw ResourceError("ground index out of range");
  return b.convert_to<long long>();
}
}  // namespace

long long int_above(const Rat& t, bool strict) {
  return strict ? to_ll(rat_floor(t)) + 1 : to_ll(rat_ceil(t));
}

long long int_below(const Rat& t, bool strict) {
  return strict ? to_ll(rat_ceil(t)) - 1 : to_ll(rat_floor(t));
}

Func Func::finite_to_line(std::vector<Rat> values) {
  Func f;
  f.nat_ = false;
  f.line_ = true;
  f.tq_ = std::move(values);
  return f;
}

Func Func::finite_to_points(std::vector<int> values) {
  Func f;
  f.nat_ = false;
  f.line_ = false;
  f.tp_ = std::move(values);
  return f;
}

Func Func::nat_to_line_const(std::vector<Rat> prefix, Rat y) {
  Func f;
  f.nat_ = true;
  f.line_ = true;
  f.tail_ = Tail::Constant;
  f.tq_ = std::move(prefix);
  f.const_q_ = std::move(y);
  return f;
}

Func Func::nat_to_line_periodic(std::vector<Rat> prefix, std::vector<Rat> cycle) {
  if (cycle.empty()) throw InputError("periodic tail needs at least one value");
  Func f;
  f.nat_ = true;
  f.line_ = true;
  f.tail_ = Tail::Periodic;
  f.tq_ = std::move(prefix);
  f.cq_ = std::move(cycle);
  return f;
}

Func Func::nat_to_line_affine(std::vector<Rat> prefix, Rat a, Rat b) {
  if (a == 0) throw InputError("affine tail needs a nonzero slope");
  Func f;
  f.nat_ = true;
  f.line_ = true;
  f.tail_ = Tail::Affine;
  f.tq_ = std::move(prefix);
  f.a_ = std::move(a);
  f.b_ = std::move(b);
  return f;
}

Func Func::nat_to_points_const(std::vector<int> prefix, int y) {
  Func f;
  f.nat_ = true;
  f.line_ = false;
  f.tail_ = Tail::Constant;
  f.tp_ = std::move(prefix);
  f.const_p_ = y;
  return f;
}

Func Func::nat_to_points_periodic(std::vector<int> prefix, std::vector<int> cycle) {
  if (cycle.empty()) throw InputError("periodic tail needs at least one value");
  Func f;
  f.nat_ = true;
  f.line_ = false;
  f.tail_ = Tail::Periodic;
  f.tp_ = std::move(prefix);
  f.cp_ = std::move(cycle);
  return f;
}

int Func::domain_size() const {
  if (nat_) throw std::logic_error("domain_size on a nat-domain function");
  return static_cast<int>(line_ ? tq_.size() : tp_.size());
}

Rat Func::value_q(long long x) const {
  if (!line_) throw std::logic_error("value_q on a point-valued function");
  if (x < static_cast<long long>(tq_.size())) return tq_[static_cast<size_t>(x)];
  if (!nat_) throw std::logic_error("value_q past the table");
  switch (tail_) {
    case Tail::Constant: return const_q_;
    case Tail::Periodic: return cq_[static_cast<size_t>(x % static_cast<long long>(cq_.size()))];
    case Tail::Affine: return a_ * Rat(x) + b_;
    default: throw std::logic_error("nat function without a tail");
  }
}

int Func::value_p(long long x) const {
  if (line_) throw std::logic_error("value_p on a line-valued function");
  if (x < static_cast<long long>(tp_.size())) return tp_[static_cast<size_t>(x)];
  if (!nat_) throw std::logic_error("value_p past the table");
  switch (tail_) {
    case Tail::Constant: return const_p_;
    case Tail::Periodic: return cp_[static_cast<size_t>(x % static_cast<long long>(cp_.size()))];
    default: throw std::logic_error("affine tail is point-valued");
  }
}

std::vector<Rat> Func::finite_range_q(bool* unbounded) const {
  if (unbounded) *unbounded = false;
  std::set<Rat> vals(tq_.begin(), tq_.end());
  if (nat_) {
    switch (tail_) {
      case Tail::Constant: vals.insert(const_q_); break;
      case Tail::Periodic: vals.insert(cq_.begin(), cq_.end()); break;
      case Tail::Affine:
        if (unbounded) *unbounded = true;
        break;
      default: break;
    }
  }
  return std::vector<Rat>(vals.begin(), vals.end());
}

std::vector<Rat> Func::tail_values_q() const {
  if (tail_ == Tail::Constant) return {const_q_};
  if (tail_ == Tail::Periodic) {
    std::set<Rat> vals(cq_.begin(), cq_.end());
    return std::vector<Rat>(vals.begin(), vals.end());
  }
  throw std::logic_error("tail_values_q needs a bounded tail");
}

std::vector<int> Func::tail_values_p() const {
  if (tail_ == Tail::Constant) return {const_p_};
  if (tail_ == Tail::Periodic) {
    std::set<int> vals(cp_.begin(), cp_.end());
    return std::vector<int>(vals.begin(), vals.end());
  }
  throw std::logic_error("tail_values_p needs a bounded tail");
}

ExtRat Func::sup_abs() const {
  if (nat_ && tail_ == Tail::Affine) return ExtRat::inf();
  Rat best(0);
  for (const Rat& v : finite_range_q())
    if (rat_abs(v) > best) best = rat_abs(v);
  return ExtRat(best);
}

CSet Func::pre_interval(const QInterval& iv) const {
  if (!nat_ || !line_) throw std::logic_error("pre_interval needs a nat-domain line-valued function");
  std::vector<long long> hits;
  long long m = prefix_len();
  for (long long n = 0; n < m; ++n)
    if (iv.contains(tq_[static_cast<size_t>(n)])) hits.push_back(n);
  CSet prefix_part = CSet::finite(std::move(hits));
  switch (tail_) {
    case Tail::Constant:
      return iv.contains(const_q_) ? prefix_part.unite(CSet::from(m)) : prefix_part;
    case Tail::Periodic: {
      std::vector<long long> res;
      long long q = static_cast<long long>(cq_.size());
      for (long long r = 0; r < q; ++r)
        if (iv.contains(cq_[static_cast<size_t>(r)])) res.push_back(r);
      if (res.empty()) return prefix_part;
      return prefix_part.unite(CSet::periodic({}, m, q, res));
    }
    case Tail::Affine: {
      if (iv.empty()) return prefix_part;
      Rat lo = (iv.lo - b_) / a_, hi = (iv.hi - b_) / a_;
      bool lo_open = iv.lo_open, hi_open = iv.hi_open;
      if (a_ < 0) {
        std::swap(lo, hi);
        std::swap(lo_open, hi_open);
      }
      long long nlo = std::max(m, int_above(lo, lo_open));
      long long nhi = int_below(hi, hi_open);
      std::vector<long long> tail_hits;
      for (long long n = nlo; n <= nhi; ++n) tail_hits.push_back(n);
      return prefix_part.unite(CSet::finite(std::move(tail_hits)));
    }
    default: throw std::logic_error("nat function without a tail");
  }
}

CSet Func::pre_gt(const Rat& y) const {
  if (!nat_ || !line_) throw std::logic_error("pre_gt needs a nat-domain line-valued function");
  std::vector<long long> hits;
  long long m = prefix_len();
  for (long long n = 0; n < m; ++n)
    if (tq_[static_cast<size_t>(n)] > y) hits.push_back(n);
  CSet prefix_part = CSet::finite(std::move(hits));
  switch (tail_) {
    case Tail::Constant:
      return const_q_ > y ? prefix_part.unite(CSet::from(m)) : prefix_part;
    case Tail::Periodic: {
      std::vector<long long> res;
      long long q = static_cast<long long>(cq_.size());
      for (long long r = 0; r < q; ++r)
        if (cq_[static_cast<size_t>(r)] > y) res.push_back(r);
      if (res.empty()) return prefix_part;
      return prefix_part.unite(CSet::periodic({}, m, q, res));
    }
    case Tail::Affine: {
      Rat t = (y - b_) / a_;
      if (a_ > 0) return prefix_part.unite(CSet::from(std::max(m, int_above(t, true))));
      long long nhi = int_below(t, true);
      std::vector<long long> tail_hits;
      for (long long n = m; n <= nhi; ++n) tail_hits.push_back(n);
      return prefix_part.unite(CSet::finite(std::move(tail_hits)));
    }
    default: throw std::logic_error("nat function without a tail");
  }
}

CSet Func::pre_lt(const Rat& y) const {
  if (!nat_ || !line_) throw std::logic_error("pre_lt needs a nat-domain line-valued function");
  std::vector<long long> hits;
  long long m = prefix_len();
  for (long long n = 0; n < m; ++n)
    if (tq_[static_cast<size_t>(n)] < y) hits.push_back(n);
  CSet prefix_part = CSet::finite(std::move(hits));
  switch (tail_) {
    case Tail::Constant:
      return const_q_ < y ? prefix_part.unite(CSet::from(m)) : prefix_part;
    case Tail::Periodic: {
      std::vector<long long> res;
      long long q = static_cast<long long>(cq_.size());
      for (long long r = 0; r < q; ++r)
        if (cq_[static_cast<size_t>(r)] < y) res.push_back(r);
      if (res.empty()) return prefix_part;
      return prefix_part.unite(CSet::periodic({}, m, q, res));
    }
    case Tail::Affine: {
      Rat t = (y - b_) / a_;
      if (a_ < 0) return prefix_part.unite(CSet::from(std::max(m, int_above(t, true))));
      long long nhi = int_below(t, true);
      std::vector<long long> tail_hits;
      for (long long n = m; n <= nhi; ++n) tail_hits.push_back(n);
      return prefix_part.unite(CSet::finite(std::move(tail_hits)));
    }
    default: throw std::logic_error("nat function without a tail");
  }
}

CSet Func::pre_point(const Rat& z) const {
  return pre_interval(QInterval{z, z, false, false});
}

CSet Func::pre_points(std::uint32_t point_mask) const {
  if (!nat_ || line_) throw std::logic_error("pre_points needs a nat-domain point-valued function");
  std::vector<long long> hits;
  long long m = prefix_len();
  for (long long n = 0; n < m; ++n)
    if (point_mask & (1u << tp_[static_cast<size_t>(n)])) hits.push_back(n);
  CSet prefix_part = CSet::finite(std::move(hits));
  if (tail_ == Tail::Constant)
    return (point_mask & (1u << const_p_)) ? prefix_part.unite(CSet::from(m)) : prefix_part;
  std::vector<long long> res;
  long long q = static_cast<long long>(cp_.size());
  for (long long r = 0; r < q; ++r)
    if (point_mask & (1u << cp_[static_cast<size_t>(r)])) res.push_back(r);
  if (res.empty()) return prefix_part;
  return prefix_part.unite(CSet::periodic({}, m, q, res));
}

std::uint32_t Func::mask_interval(const QInterval& iv) const {
  std::uint32_t m = 0;
  for (size_t x = 0; x < tq_.size(); ++x)
    if (iv.contains(tq_[x])) m |= (1u << x);
  return m;
}

std::uint32_t Func::mask_gt(const Rat& y) const {
  std::uint32_t m = 0;
  for (size_t x = 0; x < tq_.size(); ++x)
    if (tq_[x] > y) m |= (1u << x);
  return m;
}

std::uint32_t Func::mask_lt(const Rat& y) const {
  std::uint32_t m = 0;
  for (size_t x = 0; x < tq_.size(); ++x)
    if (tq_[x] < y) m |= (1u << x);
  return m;
}

std::uint32_t Func::mask_point(const Rat& z) const {
  std::uint32_t m = 0;
  for (size_t x = 0; x < tq_.size(); ++x)
    if (tq_[x] == z) m |= (1u << x);
  return m;
}

std::uint32_t Func::mask_points(std::uint32_t point_mask) const {
  std::uint32_t m = 0;
  for (size_t x = 0; x < tp_.size(); ++x)
    if (point_mask & (1u << tp_[x])) m |= (1u << x);
  return m;
}

std::vector<std::pair<Rat, std::uint32_t>> Func::value_classes_q() const {
  std::map<Rat, std::uint32_t> classes;
  for (size_t x = 0; x < tq_.size(); ++x) classes[tq_[x]] |= (1u << x);
  return std::vector<std::pair<Rat, std::uint32_t>>(classes.begin(), classes.end());
}

std::vector<std::pair<int, std::uint32_t>> Func::value_classes_p() const {
  std::map<int, std::uint32_t> classes;
  for (size_t x = 0; x < tp_.size(); ++x) classes[tp_[x]] |= (1u << x);
  return std::vector<std::pair<int, std::uint32_t>>(classes.begin(), classes.end());
}

namespace {
Rat pos(const Rat& v) { return v > 0 ? v : Rat(0); }
Rat neg(const Rat& v) { return v < 0 ? -v : Rat(0); }
}  // namespace

Func Func::positive_part() const {
  if (!line_) throw std::logic_error("positive_part needs a line-valued function");
  std::vector<Rat> t;
  for (const Rat& v : tq_) t.push_back(pos(v));
  if (!nat_) return finite_to_line(std::move(t));
  switch (tail_) {
    case Tail::Constant: return nat_to_line_const(std::move(t), pos(const_q_));
    case Tail::Periodic: {
      std::vector<Rat> c;
      for (const Rat& v : cq_) c.push_back(pos(v));
      return nat_to_line_periodic(std::move(t), std::move(c));
    }
    case Tail::Affine: {
      // extend the prefix past the sign change, then the tail form is exact
      long long cross = int_above(-b_ / a_, false);  // first n with a*n+b >= 0 when a > 0
      long long m = std::max(prefix_len(), a_ > 0 ? cross : int_above(-b_ / a_, true));
      std::vector<Rat> ext = t;
      for (long long n = prefix_len(); n < m; ++n) ext.push_back(pos(a_ * Rat(n) + b_));
      if (a_ > 0) return nat_to_line_affine(std::move(ext), a_, b_);
      return nat_to_line_const(std::move(ext), Rat(0));
    }
    default: throw std::logic_error("nat function without a tail");
  }
}

Func Func::negative_part() const { return post_affine(Rat(-1), Rat(0)).positive_part(); }

Func Func::post_affine(const Rat& a, const Rat& b) const {
  if (!line_) throw std::logic_error("post_affine needs a line-valued function");
  std::vector<Rat> t;
  for (const Rat& v : tq_) t.push_back(a * v + b);
  if (!nat_) return finite_to_line(std::move(t));
  switch (tail_) {
    case Tail::Constant: return nat_to_line_const(std::move(t), a * const_q_ + b);
    case Tail::Periodic: {
      std::vector<Rat> c;
      for (const Rat& v : cq_) c.push_back(a * v + b);
      return nat_to_line_periodic(std::move(t), std::move(c));
    }
    case Tail::Affine:
      if (a == 0) return nat_to_line_const(std::move(t), b);
      return nat_to_line_affine(std::move(t), a * a_, a * b_ + b);
    default: throw std::logic_error("nat function without a tail");
  }
}

Func Func::compose_table(const std::vector<Rat>& g) const {
  if (line_) throw std::logic_error("compose_table needs a point-valued function");
  std::vector<Rat> t;
  for (int p : tp_) t.push_back(g[static_cast<size_t>(p)]);
  if (!nat_) return finite_to_line(std::move(t));
  if (tail_ == Tail::Constant)
    return nat_to_line_const(std::move(t), g[static_cast<size_t>(const_p_)]);
  std::vector<Rat> c;
  for (int p : cp_) c.push_back(g[static_cast<size_t>(p)]);
  return nat_to_line_periodic(std::move(t), std::move(c));
}

void Func::validate(int domain_points, const Codomain& cod) const {
  if (line_ != cod.is_line())
    throw InputError("function values do not match the codomain kind");
  if (nat_ != (domain_points < 0))
    throw InputError("function domain does not match the space backend");
  if (!nat_) {
    size_t want = static_cast<size_t>(domain_points);
    if ((line_ ? tq_.size() : tp_.size()) != want)
      throw InputError("function table does not cover every point exactly once");
  } else if (tail_ == Tail::None) {
    throw InputError("nat-domain function needs a tail");
  } else if (tail_ == Tail::Affine && !line_) {
    throw InputError("affine tails need the rational-line codomain");
  }
  if (!line_) {
    int n = cod.n_points();
    for (int v : tp_)
      if (v < 0 || v >= n) throw InputError("function value is not a codomain point");
    for (int v : cp_)
      if (v < 0 || v >= n) throw InputError("function value is not a codomain point");
    if (nat_ && tail_ == Tail::Constant && (const_p_ < 0 || const_p_ >= n))
      throw InputError("function value is not a codomain point");
  }
}

}  // namespace charges
