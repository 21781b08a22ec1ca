#include "charges/rational.hpp"

#include <cctype>

namespace charges {

std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

Rat rat_parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw InputError("empty rational literal");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(t));
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw InputError("rational with zero denominator: " + text);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw InputError("malformed rational literal: " + text);
  }
}

std::string ExtRat::to_string() const { return inf_ ? "inf" : rat_to_string(v_); }

ExtRat ExtRat::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "inf") return inf();
  return ExtRat(rat_parse(t));
}

}  // namespace charges
