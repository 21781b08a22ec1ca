#include "charges/cset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace charges {

namespace {
long long lcm_checked(long long a, long long b, long long cap) {
  long long g = std::gcd(a, b);
  long long l = a / g * b;
  if (l > cap) throw ResourceError("CSet period exceeds cap " + std::to_string(cap));
  return l;
}
}  // namespace

CSet::CSet() : start_(0), period_(1), res_(1, 0) {}

CSet CSet::empty() { return CSet(); }

CSet CSet::all() {
  CSet s;
  s.res_[0] = 1;
  return s;
}

CSet CSet::finite(std::vector<long long> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  CSet s;
  if (elements.empty()) return s;
  if (elements.front() < 0) throw InputError("CSet element below zero");
  long long hi = elements.back() + 1;
  if (hi > kStartCap) throw ResourceError("CSet prefix exceeds cap");
  s.start_ = hi;
  s.prefix_.assign(static_cast<size_t>(hi), 0);
  for (long long e : elements) s.prefix_[static_cast<size_t>(e)] = 1;
  s.normalize();
  return s;
}

CSet CSet::cofinite(std::vector<long long> excluded) { return finite(std::move(excluded)).complement(); }

CSet CSet::range(long long lo, long long hi) {
  std::vector<long long> v;
  for (long long n = std::max<long long>(lo, 0); n < hi; ++n) v.push_back(n);
  return finite(std::move(v));
}

CSet CSet::from(long long lo) { return range(0, std::max<long long>(lo, 0)).complement(); }

CSet CSet::periodic(std::vector<long long> prefix_members, long long start, long long period,
                    std::vector<long long> residues) {
  if (period < 1) throw InputError("CSet period must be positive");
  if (period > kPeriodCap) throw ResourceError("CSet period exceeds cap");
  if (start < 0 || start > kStartCap) throw InputError("CSet tail start out of range");
  CSet s;
  s.start_ = start;
  s.period_ = period;
  s.prefix_.assign(static_cast<size_t>(start), 0);
  s.res_.assign(static_cast<size_t>(period), 0);
  for (long long p : prefix_members) {
    if (p < 0 || p >= start) throw InputError("CSet prefix member outside [0, start)");
    s.prefix_[static_cast<size_t>(p)] = 1;
  }
  for (long long r : residues) {
    if (r < 0 || r >= period) throw InputError("CSet residue outside [0, period)");
    s.res_[static_cast<size_t>(r)] = 1;
  }
  s.normalize();
  return s;
}

void CSet::normalize() {
  // minimal period: smallest divisor d of period_ with res d-periodic
  for (long long d = 1; d <= period_; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for (long long i = d; i < period_ && ok; ++i)
      if (res_[static_cast<size_t>(i)] != res_[static_cast<size_t>(i % d)]) ok = false;
    if (ok) {
      res_.resize(static_cast<size_t>(d));
      period_ = d;
      break;
    }
  }
  // minimal start: absorb prefix cells that already match the tail pattern
  while (start_ > 0 && prefix_[static_cast<size_t>(start_ - 1)] == (tail_bit(start_ - 1) ? 1 : 0)) {
    --start_;
    prefix_.pop_back();
  }
}

CSet::Kind CSet::kind() const {
  bool any = false, allb = true;
  for (char b : res_) {
    any |= (b != 0);
    allb &= (b != 0);
  }
  if (!any) return Kind::Finite;
  if (allb) return Kind::Cofinite;
  return Kind::Periodic;
}

bool CSet::is_empty() const {
  if (kind() != Kind::Finite) return false;
  for (char b : prefix_)
    if (b) return false;
  return true;
}

bool CSet::is_all() const {
  if (kind() != Kind::Cofinite) return false;
  for (char b : prefix_)
    if (!b) return false;
  return true;
}

bool CSet::contains(long long n) const {
  if (n < 0) return false;
  if (n < start_) return prefix_[static_cast<size_t>(n)] != 0;
  return tail_bit(n);
}

CSet CSet::complement() const {
  CSet s = *this;
  for (char& b : s.prefix_) b = b ? 0 : 1;
  for (char& b : s.res_) b = b ? 0 : 1;
  s.normalize();
  return s;
}

CSet CSet::unite(const CSet& o) const {
  long long q = lcm_checked(period_, o.period_, kPeriodCap);
  long long st = std::max(start_, o.start_);
  CSet s;
  s.start_ = st;
  s.period_ = q;
  s.prefix_.assign(static_cast<size_t>(st), 0);
  s.res_.assign(static_cast<size_t>(q), 0);
  for (long long n = 0; n < st; ++n)
    s.prefix_[static_cast<size_t>(n)] = (contains(n) || o.contains(n)) ? 1 : 0;
  for (long long r = 0; r < q; ++r) {
    long long n = st + ((r - st) % q + q) % q;  // first n >= st with n ≡ r (mod q)
    s.res_[static_cast<size_t>(n % q)] = (contains(n) || o.contains(n)) ? 1 : 0;
  }
  s.normalize();
  return s;
}

CSet CSet::intersect(const CSet& o) const { return complement().unite(o.complement()).complement(); }

CSet CSet::minus(const CSet& o) const { return intersect(o.complement()); }

bool CSet::subset_of(const CSet& o) const { return minus(o).is_empty(); }

std::vector<long long> CSet::elements() const {
  if (kind() != Kind::Finite) throw std::logic_error("CSet::elements on infinite set");
  std::vector<long long> out;
  for (long long n = 0; n < start_; ++n)
    if (prefix_[static_cast<size_t>(n)]) out.push_back(n);
  return out;
}

std::vector<long long> CSet::excluded() const {
  if (kind() != Kind::Cofinite) throw std::logic_error("CSet::excluded on non-cofinite set");
  std::vector<long long> out;
  for (long long n = 0; n < start_; ++n)
    if (!prefix_[static_cast<size_t>(n)]) out.push_back(n);
  return out;
}

std::vector<long long> CSet::members_below(long long bound) const {
  std::vector<long long> out;
  for (long long n = 0; n < bound; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

long long CSet::size_finite() const { return static_cast<long long>(elements().size()); }

std::vector<long long> CSet::residues() const {
  std::vector<long long> out;
  for (long long r = 0; r < period_; ++r)
    if (res_[static_cast<size_t>(r)]) out.push_back(r);
  return out;
}

std::vector<long long> CSet::prefix_members() const {
  std::vector<long long> out;
  for (long long n = 0; n < start_; ++n)
    if (prefix_[static_cast<size_t>(n)]) out.push_back(n);
  return out;
}

bool CSet::operator==(const CSet& o) const {
  return start_ == o.start_ && period_ == o.period_ && prefix_ == o.prefix_ && res_ == o.res_;
}

bool CSet::operator<(const CSet& o) const {
  if (start_ != o.start_) return start_ < o.start_;
  if (period_ != o.period_) return period_ < o.period_;
  if (prefix_ != o.prefix_) return prefix_ < o.prefix_;
  return res_ < o.res_;
}

std::string CSet::to_string() const {
  std::ostringstream os;
  auto list = [&os](const std::vector<long long>& v) {
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
  };
  switch (kind()) {
    case Kind::Finite:
      list(elements());
      break;
    case Kind::Cofinite:
      os << "co";
      list(excluded());
      break;
    case Kind::Periodic: {
      list(prefix_members());
      os << "+tail(start=" << start_ << ",mod=" << period_ << ",res=";
      list(residues());
      os << ")";
      break;
    }
  }
  return os.str();
}

std::uint32_t cset_to_mask(const CSet& s, int n_points) {
  std::uint32_t m = 0;
  for (long long e : s.elements()) {
    if (e >= n_points) throw std::logic_error("cset_to_mask: element beyond ground set");
    m |= (1u << e);
  }
  return m;
}

CSet mask_to_cset(std::uint32_t mask, int n_points) {
  std::vector<long long> v;
  for (int i = 0; i < n_points; ++i)
    if (mask & (1u << i)) v.push_back(i);
  return CSet::finite(std::move(v));
}

}  // namespace charges
