#pragma once

#include <map>
#include <string>
#include <vector>

#include "stabkit/action.hpp"

namespace stabkit {

// The pre-localized costabilization: objects are all pairs (u, a) and triples
// (u, v, a); morphisms between pairs come from I×A, between triples from
// I×I×A, and from a triple to a pair in two flavors (through the projection
// (u,v,a) ↦ (u,a) or the shifted projection (u,v,a) ↦ (u⊗v, α^v(a))). There
// is no morphism from a pair to a triple. S is the class of identity-shaped
// triple-to-pair morphisms of either flavor.
struct CostabPresentation {
  ActionPtr input;
  CatPtr cat;

  struct PairObject {
    ObjId u, a;
  };
  struct TripleObject {
    ObjId u, v, a;
  };
  enum class MorKind { pair_pair, triple_triple, triple_pair_p, triple_pair_q };
  struct MorData {
    MorKind kind;
    MorId i1 = -1;  // I-component (first, for triples)
    MorId i2 = -1;  // second I-component (triple-to-triple only)
    MorId am = -1;  // A-component
  };

  std::vector<std::optional<PairObject>> pair_of;      // by cat object index
  std::vector<std::optional<TripleObject>> triple_of;  // by cat object index
  std::vector<MorData> mor_data;                       // by cat morphism index
  std::vector<MorId> localizing_class;                 // S, sorted

  ObjId pair_index(ObjId u, ObjId a) const;
};

CostabPresentation costab_presentation(const ActionPtr& action, const Cap& cap = {});

// One localized hom-set: equivalence classes of shifted representatives. A
// representative at shift levels (v, v') is a genuine I×A morphism
// (u⊗v, α^v a) -> (w⊗v', α^{v'} b); the colimit runs over diagonal transport
// shifts of both levels.
struct CostabHom {
  struct Rep {
    ObjId v, v2;   // shift levels of source and target
    MorId i_mor;   // in I: u⊗v -> w⊗v'
    MorId a_mor;   // in A: α^v(a) -> α^{v'}(b)
    auto operator<=>(const Rep&) const = default;
  };
  std::vector<Rep> classes;  // one canonical representative per class
};

// The localized costabilization: objects are the pairs (u, a), hom-sets are
// computed by the stabilized-shift colimit, and the coevaluation η sends a to
// (1, a). Requires a symmetric acting category.
struct CostabCategory {
  ActionPtr input;
  CatPtr cat;                                   // objects "p:<u>:<a>", morphisms classes
  std::vector<CostabPresentation::PairObject> objects;  // by cat object index
  std::vector<CostabHom::Rep> reps;             // by cat morphism index
  ActionPtr induced;                            // t acts by (u, a) ↦ (u, α^t(a))
  EquivariantMorphism eta;                      // A -> cat

  ObjId object_index(ObjId u, ObjId a) const;
};

CostabCategory costab_category(const ActionPtr& action, const Cap& cap = {});

// Hom classes for one (src, tgt) pair, with canonical representatives;
// exposed for the oracle comparison.
CostabHom costab_hom(const ActionPtr& action, ObjId u, ObjId a, ObjId w, ObjId b,
                     const Cap& cap = {});

// Independent oracle: zigzag classes of length <= bound in the pre-localized
// category with backward S-legs, quotiented by the relations discoverable
// within the bound (composition/factorization, identity insertion/deletion,
// cancellation of an S-leg against its formal inverse).
struct ZigzagReport {
  std::size_t classes = 0;
  bool saturated = false;           // count stable from bound-1 to bound
  std::size_t classes_at_prev = 0;  // count over words of length <= bound-1
  std::size_t words = 0;
};
ZigzagReport zigzag_hom(const CostabPresentation& pres, ObjId src, ObjId tgt, int bound,
                        const Cap& cap = {});

// Thm-shape check: stability against η being an equivalence, plus the
// explicit stable-case inverse (u,a) ↦ α^u(a) certified object by object.
struct CostableVerdict {
  bool stable = false;
  bool eta_equivalence = false;
  bool agree = false;
  bool inverse_certified = false;  // meaningful only when stable
  std::string detail;
};
CostableVerdict check_costable_iff_coeval(const ActionPtr& action, const Cap& cap = {});

// Oracle agreement report for a whole costabilization: compares the
// colimit-formula hom cardinalities against saturated zigzag class counts for
// every object pair. Disagreements and unsaturated pairs are surfaced.
struct OracleAgreement {
  std::size_t pairs_checked = 0;
  std::size_t unsaturated = 0;
  std::vector<std::string> disagreements;
  bool all_agree() const { return disagreements.empty() && unsaturated == 0; }
};
OracleAgreement check_costab_oracle(const ActionPtr& action, int bound, const Cap& cap = {});

}  // namespace stabkit
