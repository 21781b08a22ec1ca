#include "charges/verdict.hpp"

#include <sstream>

namespace charges {

std::string property_name(Property p) {
  switch (p) {
    case Property::T1: return "t1";
    case Property::T2: return "t2";
    case Property::Smooth: return "smooth";
    case Property::Base: return "base";
    case Property::Ubm: return "ubm";
    case Property::Conventional: return "conventional";
    case Property::RayLeft: return "ray-left";
    case Property::RayRight: return "ray-right";
    case Property::Ray: return "ray";
    case Property::Greco: return "greco";
    case Property::Regular: return "regular";
  }
  return "?";
}

std::optional<Property> property_from_name(const std::string& s) {
  for (Property p : all_properties())
    if (property_name(p) == s) return p;
  return std::nullopt;
}

std::vector<Property> all_properties() {
  return {Property::T1,   Property::T2,           Property::Smooth,  Property::Base,
          Property::Ubm,  Property::Conventional, Property::RayLeft, Property::RayRight,
          Property::Ray,  Property::Greco,        Property::Regular};
}

std::string Verdict::summary() const {
  std::ostringstream os;
  os << property_name(property) << ": " << (holds ? "holds" : "fails");
  if (!holds && obstruction) {
    os << " [" << obstruction->kind;
    if (obstruction->infimum) os << ", infimum " << obstruction->infimum->to_string();
    if (obstruction->entourage) os << ", at " << obstruction->entourage->to_string();
    os << "] " << obstruction->detail;
  }
  return os.str();
}

}  // namespace charges
