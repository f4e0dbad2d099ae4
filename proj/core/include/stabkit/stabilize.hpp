#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabkit/action.hpp"

namespace stabkit {

enum class StabMode { strict, lax };

// A stabilization object (E, σ): a functor E from the acting category's base
// into A together with structure morphisms
//   σ(u,v) : E(u) -> α^v(E(mul(u,v)))
// (mul per the convention table), invertible in strict mode, subject to the
// unit law σ(u,1) = id, the pasting triangle
//   σ(u, mul(v,w)) = α^v(σ(mul(u,v), w)) ∘ σ(u,v)
// and naturality in both indices.
struct StabObject {
  StabMode mode = StabMode::strict;
  FinFunctor E;               // I.base -> A
  std::vector<MorId> sigma;   // (u,v) row-major over acting objects, valued in A

  MorId sig(ObjId u, ObjId v, std::size_t n) const {
    return sigma[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
  }
};

// Certifies every StabObject invariant against the given action.
void validate_stab_object(const Action& action, const StabObject& x);

// A level family: one A-morphism per acting object. Morphisms of the
// stabilization category are level families commuting with σ and natural in
// the acting object.
using LevelFamily = std::vector<MorId>;

bool stab_morphism_ok(const Action& action, const StabObject& x, const StabObject& y,
                      const LevelFamily& z);
std::vector<LevelFamily> stab_hom(const Action& action, const StabObject& x, const StabObject& y,
                                  const Cap& cap = {});
LevelFamily stab_identity(const Action& action, const StabObject& x);
LevelFamily stab_compose(const Action& action, const LevelFamily& later,
                         const LevelFamily& earlier);

// All (E, σ) for the given mode, deterministic canonical order.
std::vector<StabObject> enumerate_stab_objects(const ActionPtr& action, StabMode mode,
                                               const Cap& cap = {});

// The stabilization category, materialized: objects are StabObjects,
// morphisms level families, plus the induced action on the other side and
// the evaluation at the unit.
struct StabCategory {
  ActionPtr input;
  StabMode mode = StabMode::strict;
  CatPtr cat;
  std::vector<StabObject> objects;      // by cat object index
  std::vector<LevelFamily> morphisms;   // by cat morphism index
  ActionPtr induced;                    // action on cat, mute side flipped
  FinFunctor eval;                      // cat -> A, evaluation at the unit
  // The evaluation as an equivariant morphism; absent in lax mode when some
  // σ(1,u) fails to be invertible.
  std::optional<EquivariantMorphism> epsilon;

  std::optional<ObjId> find_object(const StabObject& x) const;
  std::optional<MorId> find_morphism(ObjId from, ObjId to, const LevelFamily& z) const;
};

StabCategory stabilize(const ActionPtr& action, StabMode mode, const Cap& cap = {});

// Stability: every acting object acts by an equivalence of categories.
struct StabilityReport {
  bool stable = false;
  std::string witness;  // first failing acting object, with the reason
};
StabilityReport is_stable(const ActionPtr& action);

// Both sides of the stable ⟺ ε-equivalence theorem, computed independently.
struct StableEvalVerdict {
  bool stable = false;
  bool epsilon_equivalence = false;
  bool agree = false;
  std::string detail;
};
StableEvalVerdict check_stable_iff_eval(const ActionPtr& action, const Cap& cap = {});

// The universal property of the stabilization: postcomposition with ε
// induces an equivalence Fun(B, Stab(A)) -> Fun(B, A) for stable B.
struct UniversalVerdict {
  bool equivalence = false;
  std::size_t fun_stab_objects = 0;
  std::size_t fun_a_objects = 0;
  std::string detail;
};
UniversalVerdict check_universal(const ActionPtr& a_action, const ActionPtr& b_action,
                                 const Cap& cap = {});

// Double-stabilization comparison: the reindexing functor
// E(g)(u)(v)(w) = g(v)(u⊗w) against evaluation, certified to form an
// equivalence by explicit natural isomorphisms found by search. Requires a
// symmetric acting category.
struct DoubleStabVerdict {
  bool equivalence = false;
  std::size_t double_stab_objects = 0;  // objects of the second stabilization
  std::size_t triple_stab_objects = 0;  // objects of the structural third layer
  std::string detail;
};
DoubleStabVerdict double_stab_comparison(const ActionPtr& action, const Cap& cap = {});

}  // namespace stabkit
