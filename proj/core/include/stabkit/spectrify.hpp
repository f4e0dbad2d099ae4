#pragma once

#include "stabkit/colimit.hpp"
#include "stabkit/stabilize.hpp"

namespace stabkit {

// Spectrification of a lax stabilization object: LE(z) is the colimit over
// the transport category of u ↦ α^u(E(z⊗u)), with structure isomorphisms the
// mediating morphisms between certified colimits. Every colimit and every
// cocontinuity instance of the action is certified per use.
struct SpectrifyResult {
  StabObject object;          // strict
  std::vector<MorId> unit;    // per acting object z: E(z) -> LE(z) (leg at the unit)
};

SpectrifyResult spectrify(const ActionPtr& action, const StabObject& lax_object,
                          const Cap& cap = {});

// The adjunction between spectrification and the inclusion of the strict
// stabilization into the lax one: Hom(LX, Y) ≅ Hom(X, ιY), bijective on every
// pair and natural in both slots.
struct AdjunctionVerdict {
  bool holds = false;
  std::size_t lax_objects = 0;
  std::size_t strict_objects = 0;
  std::size_t pairs_checked = 0;
  std::string detail;
};
AdjunctionVerdict check_adjunction(const ActionPtr& action, const Cap& cap = {});

// Adjoint action data: per acting object u an adjunction ᾱ^u ⊣ α^u with unit
// Id => α^u∘ᾱ^u and counit ᾱ^u∘α^u => Id satisfying the triangle identities.
// alpha and alpha_bar act on the same category on opposite mute sides.
struct AdjointActionData {
  ActionPtr alpha;
  ActionPtr alpha_bar;
  std::vector<NatTrans> unit;
  std::vector<NatTrans> counit;
};

AdjointActionData validate_adjoint(ActionPtr alpha, ActionPtr alpha_bar,
                                   std::vector<NatTrans> unit, std::vector<NatTrans> counit);

// A lax stabilization object presented in the adjoint orientation: structure
// maps ᾱ^v(F(u)) -> F(mul(u,v)). These are the objects of the lax
// stabilization with respect to the adjoint action.
struct CoLaxObject {
  FinFunctor E;              // I.base -> A
  std::vector<MorId> sigma;  // (u,v) row-major: ᾱ^v(E(u)) -> E(mul(u,v))

  MorId sig(ObjId u, ObjId v, std::size_t n) const {
    return sigma[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
  }
};

void validate_colax_object(const AdjointActionData& adj, const CoLaxObject& x);
std::vector<CoLaxObject> enumerate_colax_objects(const AdjointActionData& adj,
                                                 const Cap& cap = {});
bool colax_morphism_ok(const AdjointActionData& adj, const CoLaxObject& x, const CoLaxObject& y,
                       const LevelFamily& z);
std::vector<LevelFamily> colax_hom(const AdjointActionData& adj, const CoLaxObject& x,
                                   const CoLaxObject& y, const Cap& cap = {});

// Transposition along the adjunctions: structure maps replaced by their
// adjuncts. Applying the two directions in sequence returns the original
// object componentwise.
CoLaxObject transport_adjoint(const AdjointActionData& adj, const StabObject& lax_object);
StabObject transport_adjoint_back(const AdjointActionData& adj, const CoLaxObject& colax_object);

// Certifies that transposition is an isomorphism between the two lax
// stabilization categories (bijective on objects and hom-sets, involutive,
// compatible with composition).
struct TransportVerdict {
  bool isomorphism = false;
  std::size_t objects = 0;
  std::string detail;
};
TransportVerdict check_transport_adjoint(const AdjointActionData& adj, const Cap& cap = {});

}  // namespace stabkit
