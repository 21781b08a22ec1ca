#pragma once

#include <string>

#include "charges/deciders.hpp"

namespace charges {

// Brute-force definitional cross-checks. Everything here evaluates the raw
// definitions by exhaustive enumeration on the finite backend, or on a
// truncated view of the natural-number backend in which ground points up to
// the cutoff are explicit and the rest of the tail is carried as a single
// indivisible block. A disagreement with the fast deciders is a build
// failure; it is never reconciled on this side.
//
// Truncation soundness: on the natural-number backend the reported values
// stabilize once the cutoff passes both prefix lengths, because the block
// then carries exactly the mass at infinity and the tail value set.

ExtRat oracle_pj_gap(const ChargeSpace& s, const CSet& a, long long cutoff = 64);
bool oracle_pj_member(const ChargeSpace& s, const CSet& a, long long cutoff = 64);

ExtRat oracle_outer(const ChargeSpace& s, const CSet& a, long long cutoff = 64);
ExtRat oracle_inner(const ChargeSpace& s, const CSet& a, long long cutoff = 64);

// boundary mass at z by shrinking intervals until the inner charge settles
ExtRat oracle_phi(const ChargeSpace& s, const Func& f, const Rat& z, long long cutoff = 64);

// definitional verdict for one property; the obstruction records the first
// scanned entourage (or threshold) where the definition fails
Verdict oracle_decide(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                      long long cutoff = 64);

// exact definitional infimum at one entourage, for the partition-style
// properties (t1, t2, smooth)
ExtRat oracle_infimum_at(Property p, const ChargeSpace& s, const Codomain& c, const Func& f,
                         const Entourage& e, long long cutoff = 64);

// definitional validation of a decider certificate: every recorded piece of
// evidence is checked against the raw definitions (partitions really
// partition, cells really sit in the field, gaps match the enumerated
// completion gap, and so on). Returns false with a reason on any mismatch.
bool replay_certificate(const ChargeSpace& s, const Codomain& c, const Func& f, const Verdict& v,
                        long long cutoff = 64, std::string* why = nullptr);

}  // namespace charges
