#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace charges {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Raised on malformed input (descriptors, instance files, bad arguments).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a configured resource cap is exceeded (field closure size,
/// period blow-up, enumeration bounds).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string rat_to_string(const Rat& r);
Rat rat_parse(const std::string& text);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Largest integer <= r.
inline BigInt rat_floor(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
/// Smallest integer >= r.
inline BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

/// A nonnegative-or-any rational extended with +infinity.  Subtraction with an
/// infinite right operand (and inf - inf in particular) is a hard error.
class ExtRat {
 public:
  ExtRat() : inf_(false), v_(0) {}
  ExtRat(const Rat& v) : inf_(false), v_(v) {}  // NOLINT: implicit by design
  ExtRat(int v) : inf_(false), v_(v) {}         // NOLINT
  static ExtRat inf() {
    ExtRat e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  const Rat& finite() const {
    if (inf_) throw std::logic_error("ExtRat: finite() on infinity");
    return v_;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return inf();
    return ExtRat(a.v_ + b.v_);
  }
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b) {
    if (b.inf_) throw std::logic_error("ExtRat: subtraction of infinity");
    if (a.inf_) return inf();
    return ExtRat(a.v_ - b.v_);
  }
  ExtRat& operator+=(const ExtRat& o) { return *this = *this + o; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

  bool is_zero() const { return !inf_ && v_ == 0; }
  bool is_positive() const { return inf_ || v_ > 0; }

  std::string to_string() const;
  static ExtRat parse(const std::string& text);

 private:
  bool inf_;
  Rat v_;
};

}  // namespace charges
