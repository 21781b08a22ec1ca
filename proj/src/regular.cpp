#include "charges/regular.hpp"

#include <algorithm>
#include <set>

#include "charges/deciders.hpp"
#include "charges/phi.hpp"

namespace charges {

namespace {

// |q| = k * 2^{-i} for integers k >= 1, i <= bound?
bool dyadic_within(const Rat& q, int bound) {
  if (q == 0) return false;
  BigInt den = denominator(rat_abs(q));
  if ((den & (den - 1)) != 0) return false;  // not a power of two
  int i = 0;
  while (den > 1) {
    den >>= 1;
    ++i;
  }
  return i <= bound;
}

BigInt odd_part(BigInt n) {
  while (n > 0 && (n & 1) == 0) n >>= 1;
  return n;
}

// does start + k*step hit delta * (dyadic within bound) at some k >= 0 with a
// nonzero value? The values z_k / delta form the class s0 + k*u; reduced over
// the odd part of the common denominator this is a solvable congruence test.
bool progression_hits(const PhiProgression& p, const Rat& delta, int bound) {
  Rat s0 = p.start / delta;
  Rat u = p.step / delta;
  BigInt L = boost::multiprecision::lcm(denominator(s0), denominator(u));
  BigInt o = odd_part(L);
  // the power-of-two part of L caps the dyadic depth a hit can need
  BigInt two_part = L / o;
  int i = 0;
  while (two_part > 1) {
    two_part >>= 1;
    ++i;
  }
  if (i > bound) return false;
  if (o == 1) return true;  // every z_k / delta is dyadic already
  BigInt A = numerator(s0) * (L / denominator(s0)) % o;
  BigInt B = numerator(u) * (L / denominator(u)) % o;
  if (A < 0) A += o;
  if (B < 0) B += o;
  BigInt g = boost::multiprecision::gcd(B, o);
  // solvable => infinitely many k hit, so some hit has z_k != 0
  return A % g == 0;
}

Rat delta_scale(const Func& f) {
  Rat scale(1);
  ExtRat sup = f.sup_abs();
  if (!sup.is_inf()) {
    if (sup.finite() > scale) scale = sup.finite();
    return scale;
  }
  auto grow = [&scale](const Rat& v) {
    Rat a = rat_abs(v);
    if (a > scale) scale = a;
  };
  for (long long n = 0; n < f.prefix_len(); ++n) grow(f.value_q(n));
  grow(f.affine_a());
  grow(f.affine_b());
  return scale;
}

Rat pow2(int i) { return Rat(BigInt(1) << i); }

// s_i at a single value: the lower level of the dyadic cell holding |v|,
// signed; 0 below the first level or beyond the top level
Rat si_value(const Rat& v, const Rat& step, long long ni) {
  if (v == 0) return Rat(0);
  Rat u = rat_abs(v);
  BigInt k = rat_ceil(u / step) - 1;
  if (k < 1 || k > ni) return Rat(0);
  Rat lvl = Rat(k) * step;
  return v > 0 ? lvl : -lvl;
}

CSet mismatch_set_nat(const ChargeSpace& s, const Func& f, const Rat& delta, int i,
                      const Rat& eps) {
  Rat step = delta / pow2(i);
  long long ni = i * (1LL << i) - 1;
  std::vector<long long> pts;
  for (long long n = 0; n < f.prefix_len(); ++n) {
    Rat v = f.value_q(n);
    if (rat_abs(v - si_value(v, step, ni)) > eps) pts.push_back(n);
  }
  CSet out = CSet::finite(pts);
  long long m = f.prefix_len();
  switch (f.tail()) {
    case Func::Tail::Constant: {
      Rat v = f.value_q(m);
      if (rat_abs(v - si_value(v, step, ni)) > eps) out = out.unite(CSet::from(m));
      break;
    }
    case Func::Tail::Periodic: {
      const std::vector<Rat>& cyc = f.cycle_q();
      std::vector<long long> residues;
      for (long long r = 0; r < static_cast<long long>(cyc.size()); ++r) {
        const Rat& v = cyc[static_cast<std::size_t>(r)];
        if (rat_abs(v - si_value(v, step, ni)) > eps) residues.push_back(r);
      }
      if (!residues.empty())
        out = out.unite(CSet::periodic({}, m, static_cast<long long>(cyc.size()), residues));
      break;
    }
    case Func::Tail::Affine: {
      // beyond the top level the approximation is 0 and the gap is |f| itself
      Rat top = Rat(i) * delta;
      Rat bound = std::max(top, eps);
      out = out.unite(f.pre_gt(bound).intersect(CSet::from(m)));
      out = out.unite(f.pre_lt(-bound).intersect(CSet::from(m)));
      // inside the level range only fractional gaps up to the step remain
      if (eps < step) {
        const Rat& a = f.affine_a();
        const Rat& b = f.affine_b();
        long long lo = int_above((-top - b) / rat_abs(a), false);
        long long hi = int_below((top - b) / rat_abs(a), false);
        if (a < 0) {
          lo = int_above((b - top) / rat_abs(a), false);
          hi = int_below((b + top) / rat_abs(a), false);
        }
        lo = std::max(lo, m);
        if (hi - lo > 200000) throw ResourceError("regular sequence: affine window too wide");
        std::vector<long long> extra;
        for (long long n = lo; n <= hi; ++n) {
          Rat v = a * Rat(n) + b;
          if (rat_abs(v - si_value(v, step, ni)) > eps) extra.push_back(n);
        }
        out = out.unite(CSet::finite(extra));
      }
      break;
    }
    case Func::Tail::None:
      break;
  }
  (void)s;
  return out;
}

ExtRat depth_error(const ChargeSpace& s, const Func& f, const Rat& delta, int i, const Rat& eps) {
  if (s.is_finite_backend()) {
    Rat step = delta / pow2(i);
    long long ni = i * (1LL << i) - 1;
    std::uint32_t mask = 0;
    for (int p = 0; p < f.domain_size(); ++p) {
      Rat v = f.value_q(p);
      if (rat_abs(v - si_value(v, step, ni)) > eps) mask |= 1u << p;
    }
    return ExtRat(s.mask_outer(mask));
  }
  return s.outer(mismatch_set_nat(s, f, delta, i, eps));
}

}  // namespace

std::vector<Rat> regular_epsilon_grid(const Func& f) {
  std::vector<Rat> grid;
  for (const Rat& t : instance_criticals(Codomain::rational_line(), f))
    if (t > 0) grid.push_back(t);
  if (grid.empty()) grid.push_back(Rat(1));
  return grid;
}

std::optional<Rat> find_regular_delta(const ChargeSpace& s, const Func& f, int depth_bound) {
  PhiProfile prof = phi_profile(s, f);
  Rat scale = delta_scale(f);
  static const int kThirds[] = {1, 0, 2, 3};
  static const long long kNums[] = {1,  2,  4,  5,  7,  8,  11, 13, 17,
                                    19, 23, 25, 29, 31, 37, 41, 43, 49};
  for (int j : kThirds) {
    Rat third = Rat(1);
    for (int t = 0; t < j; ++t) third /= 3;
    for (long long p : kNums) {
      Rat delta = scale * Rat(p) * third;
      bool ok = true;
      for (const auto& [z, v] : prof.support_map()) {
        (void)v;
        if (z != 0 && dyadic_within(z / delta, depth_bound)) {
          ok = false;
          break;
        }
      }
      if (ok && prof.progression() && progression_hits(*prof.progression(), delta, depth_bound))
        ok = false;
      if (ok) return delta;
    }
  }
  return std::nullopt;
}

RegularSequence build_regular_sequence(const ChargeSpace& s, const Func& f, const Rat& delta,
                                       int depth) {
  if (delta <= 0) throw InputError("build_regular_sequence: delta must be positive");
  if (depth < 1) throw InputError("build_regular_sequence: depth must be at least 1");
  if (depth > 16) throw ResourceError("build_regular_sequence: depth beyond the piece budget");
  RegularSequence seq;
  seq.delta = delta;
  seq.depth = depth;
  for (int i = 1; i <= depth; ++i) {
    Rat step = delta / pow2(i);
    long long ni = i * (1LL << i) - 1;
    for (long long k = 1; k <= ni && seq.pieces_ok; ++k) {
      Rat lo = Rat(k) * step;
      Rat hi = Rat(k + 1) * step;
      for (int sign = 0; sign < 2; ++sign) {
        bool positive = sign == 0;
        QInterval window = positive ? QInterval{lo, hi, true, false} : QInterval{-hi, -lo, false, true};
        CSet part = f.nat_domain() ? f.pre_interval(window)
                                   : mask_to_cset(f.mask_interval(window), s.n_points());
        PJResult pj = s.pj_membership(part);
        ++seq.pieces_checked;
        if (!pj.member) {
          seq.pieces_ok = false;
          seq.bad_piece = RegularPiece{i, k, positive, part, false, pj.sandwich.gap_infimum};
          break;
        }
      }
    }
  }
  std::vector<Rat> grid = regular_epsilon_grid(f);
  for (int i = 1; i <= depth; ++i) {
    DepthErrors de;
    de.depth = i;
    for (const Rat& eps : grid) de.by_eps.emplace_back(eps, depth_error(s, f, delta, i, eps));
    seq.errors.push_back(std::move(de));
  }
  seq.converged = true;
  for (const auto& [eps, err] : seq.errors.back().by_eps)
    if (!err.is_zero()) seq.converged = false;
  return seq;
}

Verdict decide_regular(const ChargeSpace& s, const Func& f) {
  if (!f.line_valued()) throw InputError("decide_regular: needs a line-valued function");
  if (s.is_finite_backend()) f.validate(s.n_points(), Codomain::rational_line());
  Verdict v;
  v.property = Property::Regular;
  const int kBound = 24;
  std::optional<Rat> delta = find_regular_delta(s, f, kBound);
  if (!delta) {
    v.holds = false;
    v.obstruction = Obstruction{"delta", "every candidate scale hits the boundary-mass support",
                                std::nullopt, std::nullopt};
    return v;
  }
  v.regular_delta = *delta;

  // Depth high enough that (a) the levels reach past the bounded values and
  // (b) one dyadic step falls under both the epsilon grid and the least gap
  // between distinct absolute values. Past such a depth the pieces only
  // refine single-value cells and the mismatch sets only shrink, so the
  // verdict is stable for every deeper level of the definition.
  std::vector<Rat> grid = regular_epsilon_grid(f);
  Rat target = grid.front();
  for (const Rat& e : grid)
    if (e < target) target = e;
  std::set<Rat> absvals;
  bool unbounded = false;
  for (const Rat& w : f.finite_range_q(&unbounded)) absvals.insert(rat_abs(w));
  if (f.tail() == Func::Tail::Periodic)
    for (const Rat& w : f.tail_values_q()) absvals.insert(rat_abs(w));
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
    // unbounded tail: it is enough to outgrow every point that carries
    // individual weight, i.e. the function prefix and the space prefix
    for (long long n = 0; n < f.prefix_len(); ++n)
      if (rat_abs(f.value_q(n)) > reach) reach = rat_abs(f.value_q(n));
    long long hi = std::max(f.prefix_len(), s.prefix_len());
    for (long long n = f.prefix_len(); n < hi; ++n) {
      Rat w = rat_abs(f.affine_a() * Rat(n) + f.affine_b());
      if (w > reach) reach = w;
    }
  }
  int depth = 2;
  const int cap = s.is_finite_backend() ? 8 : 14;
  while (depth < cap &&
         (Rat(depth) * *delta < reach || *delta / pow2(depth) >= target))
    ++depth;
  if (Rat(depth) * *delta < reach || *delta / pow2(depth) >= target)
    throw ResourceError("decide_regular: needed depth exceeds the piece budget");

  RegularSequence seq = build_regular_sequence(s, f, *delta, depth);
  v.regular_depth = depth;
  v.holds = seq.pieces_ok && seq.converged;
  if (!seq.pieces_ok) {
    const RegularPiece& bp = *seq.bad_piece;
    std::string side = bp.positive ? "positive" : "negative";
    v.obstruction = Obstruction{
        "piece",
        "level piece depth " + std::to_string(bp.depth) + ", k " + std::to_string(bp.k) + ", " +
            side + " side pulls back outside the completion",
        bp.gap, std::nullopt};
  } else if (!seq.converged) {
    ExtRat worst(Rat(0));
    for (const auto& [eps, err] : seq.errors.back().by_eps)
      if (err > worst) worst = err;
    v.obstruction = Obstruction{"divergence", "mismatch mass never vanishes", worst, std::nullopt};
  }
  return v;
}

}  // namespace charges
