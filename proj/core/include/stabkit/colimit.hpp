#pragma once

#include <string>
#include <vector>

#include "stabkit/functors.hpp"

namespace stabkit {

// A cocone under a diagram, with its universality certificate. `strict` means
// every competing cocone admits exactly one mediating morphism; `weak` at
// least one. colimit() only returns strictly universal cocones; the weak
// verdict is recorded because the two can differ in principle and the
// discrepancy is worth surfacing.
struct Cocone {
  ObjId apex = -1;
  std::vector<MorId> legs;  // indexed by diagram-source object
  bool strict = false;
  bool weak = false;
  std::size_t competing = 0;  // number of cocones checked against
};

// Universal cocone of a finite diagram, by exhaustive apex/leg search plus a
// mediating-morphism uniqueness certificate. Uses a coproduct-then-coequalizer
// fast path when the ambient carries skeletal-finite-sets structure (the
// result is still certified). Throws NoColimit (mentioning whether a weak
// colimit exists) or CapExceeded.
Cocone colimit(const FinFunctor& diagram, const Cap& cap = {});

// All cocones under the diagram, canonical order; helper shared with the
// certificate and exposed for tests.
std::vector<Cocone> enumerate_cocones(const FinFunctor& diagram, const Cap& cap = {});

// Mediating morphisms from `from` to `to` (apex morphisms commuting with all
// legs).
std::vector<MorId> mediating_morphisms(const FinFunctor& diagram, const Cocone& from,
                                       const Cocone& to);

// Certifies that `candidate` is (strictly/weakly) universal among all cocones.
void certify_cocone(const FinFunctor& diagram, Cocone& candidate, const Cap& cap = {});

}  // namespace stabkit
