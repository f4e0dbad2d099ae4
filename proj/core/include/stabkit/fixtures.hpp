#pragma once

#include "stabkit/setlevel.hpp"
#include "stabkit/spectrify.hpp"

namespace stabkit {
namespace fixtures {

// The shipped corpus referenced throughout the test suites.
CatPtr chain4();       // poset 0 <= 1 <= 2 <= 3
CatPtr p2();           // two objects x, y with mutually inverse f, g
MonPtr sat3();         // {0..3}, u⊗v = min(u+v, 3)
MonPtr c2();           // Z/2
MonPtr idem2();        // {1, e}, e⊗e = e
ActionPtr shift_action();    // Sat3 on Chain4 by u ↦ Tᵘ, T(x) = min(x+1, 3)
ActionPtr swap_c2();         // C2 on P2 by the swap
ActionPtr const3_action();   // Idem2 on Chain4, e ↦ const_3 (right-mute)
ActionPtr const0_action();   // Idem2 on Chain4, e ↦ const_0 (left-mute)
AdjointActionData const_adj();  // const_0 ⊣ const_3
EndoAction nset_abc();       // a ↦ b, b ↦ c, c ↦ c

// A deterministic corpus of valid actions for the theorem-agreement sweeps:
// acting categories drawn from {trivial, C2, Klein four, Sat_k, Idem2,
// cyclic monoids}, ambients from small posets/discrete categories/P2,
// on_objects sampled among all monoid-compatible assignments. All emitted
// actions validate; symmetric_only restricts to symmetric acting categories
// with involutive units (where the explicit costabilization inverse applies).
std::vector<ActionPtr> generated_corpus(std::size_t count, unsigned seed, bool symmetric_only,
                                        const Cap& cap = {});

}  // namespace fixtures
}  // namespace stabkit
