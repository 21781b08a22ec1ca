#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charges/charge_space.hpp"
#include "charges/cset.hpp"
#include "charges/interval.hpp"
#include "charges/rational.hpp"
#include "charges/uniform.hpp"

namespace charges {

enum class Property {
  T1,            // approximable by simple functions under every entourage
  T2,            // finite partitions with small images, up to small discard
  Smooth,        // range covered by finitely many small sets, up to small outer mass
  Base,          // neighbourhood bases pull back into the completion
  Ubm,           // one entourage base works uniformly across all centers
  Conventional,  // open preimages land in the field itself
  RayLeft,       // strict sublevel preimages in the completion, densely many
  RayRight,      // strict superlevel preimages in the completion, densely many
  Ray,           // both sides at once
  Greco,         // superlevel sandwiches through the completion, both signs
  Regular,       // the canonical dyadic simple sequence exists and converges
};

std::string property_name(Property p);
std::optional<Property> property_from_name(const std::string& s);
std::vector<Property> all_properties();

// Where and how a property fails. The infimum, when present, is the exact
// positive value the definitional epsilon cannot undercut.
struct Obstruction {
  std::string kind;
  std::string detail;
  std::optional<ExtRat> infimum;
  std::optional<Entourage> entourage;
};

// One cell of a simple function: domain part plus the center it maps to.
struct SimpleCell {
  CSet part;
  bool center_is_q = false;
  Rat center_q;
  int center_p = 0;
};

// Evidence attached to a single base entourage.
// T2: cells carry no centers, exceptional = discarded part A0.
// T1: cells carry centers, exceptional = the mismatch set of the function.
// Smooth: cover_* lists the small sets, exceptional = uncovered preimage.
struct EntourageEntry {
  Entourage entourage;
  ExtRat infimum;  // exact inf of the discarded/mismatch/uncovered mass
  std::vector<SimpleCell> cells;
  CSet exceptional;
  std::vector<Rat> cover_values;           // line: one small set {v} each
  std::vector<std::uint32_t> cover_masks;  // finite points: small subsets
};

// Ball preimage evidence for base/ubm at one center and radius.
struct BallEvidence {
  bool center_is_q = false;
  Rat center_q;
  int center_p = 0;
  Rat radius;
  CSet preimage;
  PJResult pj;
};

// Threshold evidence for the ray forms: the half-line preimage at a
// representative threshold, with its completion gap.
struct RayEvidence {
  Rat threshold;
  bool upper = true;  // true: f > t, false: f < t
  CSet preimage;
  ExtRat gap;
};

// One superlevel pattern pair a > b > 0 with the sandwich found (or missing).
struct GrecoPairEvidence {
  bool positive_side = true;  // checked on max(f,0) or max(-f,0)
  Rat a;
  Rat b;
  CSet upper;  // preimage of (a, inf)
  CSet lower;  // preimage of (b, inf)
  bool found = false;
  CSet h;
  ExtRat defect;  // inf over completion sets H of outer((upper \ H) u (H \ lower))
};

// Conventional measurability: one entry per range value class.
struct ClassEvidence {
  Rat value;
  CSet preimage;
  bool in_field = false;
};

struct Verdict {
  Property property = Property::T2;
  bool holds = false;
  std::optional<Obstruction> obstruction;

  std::vector<EntourageEntry> entries;      // T1, T2, Smooth
  std::vector<BallEvidence> balls;          // Base, Ubm
  std::optional<Rat> shared_radius;         // Ubm
  QIntervalSet bad_thresholds;              // ray forms
  std::vector<RayEvidence> ray_evidence;    // ray forms, one per pattern
  std::vector<GrecoPairEvidence> greco_pairs;
  std::vector<ClassEvidence> value_classes;  // Conventional

  // Regular: the dyadic scale used and the depth the check ran to; the full
  // piece/error tables live on the RegularSequence returned by the builder
  std::optional<Rat> regular_delta;
  int regular_depth = 0;

  std::string summary() const;
};

}  // namespace charges
