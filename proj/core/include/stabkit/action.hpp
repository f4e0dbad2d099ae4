#pragma once

#include <memory>
#include <vector>

#include "stabkit/functors.hpp"
#include "stabkit/monoidal.hpp"

namespace stabkit {

// Convention table (enforced by the validators below):
//
//   side          nontrivial slot      family composition
//   ----------    -----------------    -------------------------------------
//   right-mute    cov(u) = α(u,1ᵒᵖ)    on_objects(u⊗v) = on_objects(u)∘on_objects(v)
//   left-mute     con(u) = α(1,uᵒᵖ)    on_objects(u⊗v) = on_objects(v)∘on_objects(u)
//
// A right-mute action is a "left" action (it acts through the covariant
// slot); a left-mute action is a "right" action. The muted slot is the
// identity functor everywhere. "u acting then v acting equals u⊗v acting"
// holds in both rows. 2-cells are covariant in both slots, so on_morphisms(f)
// always runs from on_objects(src f) to on_objects(tgt f).
enum class Side { left_mute, right_mute };

inline const char* to_string(Side s) {
  return s == Side::left_mute ? "left-mute" : "right-mute";
}
inline Side flip(Side s) {
  return s == Side::left_mute ? Side::right_mute : Side::left_mute;
}

// An action of a strict monoidal finite category on a finite category, mute
// on one side: an endofunctor per acting object and a natural transformation
// per acting morphism, compatible with tensor and unit.
class Action {
 public:
  const MonPtr& monoidal() const { return I_; }
  const CatPtr& category() const { return A_; }
  Side side() const { return side_; }

  const FinFunctor& on_object(ObjId u) const { return on_objects_[static_cast<std::size_t>(u)]; }
  const NatTrans& on_morphism(MorId f) const { return on_morphisms_[static_cast<std::size_t>(f)]; }

  // The nontrivial slot, α(u,1ᵒᵖ) for right-mute actions and the identity
  // functor otherwise (dually con()).
  const FinFunctor& cov(ObjId u) const {
    return side_ == Side::right_mute ? on_object(u) : identity_;
  }
  const FinFunctor& con(ObjId u) const {
    return side_ == Side::left_mute ? on_object(u) : identity_;
  }
  const NatTrans& cov2(MorId f) const {
    return side_ == Side::right_mute ? on_morphism(f) : identity_cell_;
  }
  const NatTrans& con2(MorId f) const {
    return side_ == Side::left_mute ? on_morphism(f) : identity_cell_;
  }

  // Acting-object product in the order the one-sided bookkeeping expects:
  // mul(u,v) = u⊗v for right-mute, v⊗u for left-mute. With this convention
  // on_object(mul(u,v)) = on_object(u) ∘ on_object(v) on both sides.
  ObjId mul(ObjId u, ObjId v) const {
    return side_ == Side::right_mute ? I_->tensor_ob(u, v) : I_->tensor_ob(v, u);
  }
  MorId mulm(MorId f, MorId g) const {
    return side_ == Side::right_mute ? I_->tensor_mor(f, g) : I_->tensor_mor(g, f);
  }
  ObjId unit() const { return I_->unit(); }

  static std::shared_ptr<const Action> make(MonPtr I, CatPtr A, Side side,
                                            std::vector<FinFunctor> on_objects,
                                            std::vector<NatTrans> on_morphisms);

 private:
  void check_laws() const;

  MonPtr I_;
  CatPtr A_;
  Side side_ = Side::right_mute;
  std::vector<FinFunctor> on_objects_;
  std::vector<NatTrans> on_morphisms_;
  FinFunctor identity_;
  NatTrans identity_cell_;
};

using ActionPtr = std::shared_ptr<const Action>;

// Certifies all action invariants (unit, monoid compatibility per the
// convention table, functoriality and tensor compatibility of the 2-cells).
// Alias of Action::make kept for symmetry with the other validators.
ActionPtr validate_action(MonPtr I, CatPtr A, Side side, std::vector<FinFunctor> on_objects,
                          std::vector<NatTrans> on_morphisms);

// The action with every object acting as the identity.
ActionPtr trivial_action(MonPtr I, CatPtr A, Side side = Side::right_mute);
// One-generator helper: extends u -> generator^k when the acting monoid is
// generated by a single object (saturating/cyclic monoids).
ActionPtr generated_action(MonPtr I, CatPtr A, Side side, const FinFunctor& generator);

bool same_action(const Action& a, const Action& b);

// An equivariant morphism (f, τ): f : A -> B together with, for every acting
// object u, an invertible 2-cell
//   τ(u) : con_B(u)∘f∘cov_A(u)  =>  cov_B(u)∘f∘con_A(u)
// natural in u, satisfying the pasting triangle and τ(unit) = id.
struct EquivariantMorphism {
  ActionPtr source;
  ActionPtr target;
  FinFunctor f;
  std::vector<NatTrans> tau;  // indexed by acting object
};

// Certifies the full equivariance package; throws with the first failing
// coherence (TriangleFailure, UnitFailure, NaturalityFailure,
// NonInvertibleComponent) and a witness.
EquivariantMorphism check_equivariant(ActionPtr source, ActionPtr target, FinFunctor f,
                                      std::vector<NatTrans> tau);

EquivariantMorphism identity_equivariant(const ActionPtr& action);

// Pasting composition of equivariant morphisms; the formula splits on the
// mute side of the middle action. Output passes check_equivariant.
EquivariantMorphism compose_equivariant(const EquivariantMorphism& g,
                                        const EquivariantMorphism& f);

// The finite category of equivariant morphisms A_α -> B_β: objects are all
// (f, τ) pairs, morphisms are 2-cells θ : f => f' compatible with the τ's,
// composition vertical.
struct EquivariantCategory {
  ActionPtr source;
  ActionPtr target;
  CatPtr cat;
  std::vector<EquivariantMorphism> objects;  // by object index of cat
  std::vector<NatTrans> cells;               // by morphism index of cat
  std::optional<ObjId> find_object(const EquivariantMorphism& m) const;
  std::optional<MorId> find_cell(ObjId from, ObjId to, const NatTrans& theta) const;
};

EquivariantCategory equivariant_category(const ActionPtr& source, const ActionPtr& target,
                                         const Cap& cap = {});

// True when θ is a valid 2-cell between the given equivariant morphisms.
bool equivariant_cell_ok(const EquivariantMorphism& from, const EquivariantMorphism& to,
                         const NatTrans& theta);

}  // namespace stabkit
