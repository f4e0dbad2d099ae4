#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabkit/fincat.hpp"

namespace stabkit {

// A functor between finite categories, given by total object/morphism maps.
// Instances produced by this module always preserve identities and all
// compositions (checked exhaustively by validate_functor).
struct FinFunctor {
  CatPtr src;
  CatPtr tgt;
  std::vector<ObjId> ob_map;   // indexed by src object
  std::vector<MorId> mor_map;  // indexed by src morphism

  ObjId on_ob(ObjId x) const { return ob_map[static_cast<std::size_t>(x)]; }
  MorId on_mor(MorId m) const { return mor_map[static_cast<std::size_t>(m)]; }

  bool operator==(const FinFunctor& other) const {
    return src.get() == other.src.get() && tgt.get() == other.tgt.get() &&
           ob_map == other.ob_map && mor_map == other.mor_map;
  }
};

// Checks src/tgt preservation, identities and all compositions; throws
// MismatchedEndpoints with a witness on failure.
void validate_functor(const FinFunctor& f);

FinFunctor identity_functor(const CatPtr& c);
// g after f.
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);
// The constant functor at object x (every morphism to id_x).
FinFunctor constant_functor(const CatPtr& src, const CatPtr& tgt, ObjId x);

// A natural transformation F => G with one component per object of the shared
// source. Naturality is checked exhaustively by validate_nat_trans.
struct NatTrans {
  FinFunctor src;
  FinFunctor tgt;
  std::vector<MorId> components;  // indexed by source-category object, valued in tgt cat

  MorId at(ObjId x) const { return components[static_cast<std::size_t>(x)]; }

  bool operator==(const NatTrans& other) const {
    return src == other.src && tgt == other.tgt && components == other.components;
  }
};

void validate_nat_trans(const NatTrans& t);
bool all_components_invertible(const NatTrans& t);
NatTrans identity_nat_trans(const FinFunctor& f);
// Vertical composition: later after earlier (shared middle functor).
NatTrans vertical_compose(const NatTrans& later, const NatTrans& earlier);
// Horizontal composition theta * psi : F∘G => F'∘G' for theta : F=>F',
// psi : G=>G'.
NatTrans horizontal_compose(const NatTrans& theta, const NatTrans& psi);
// Whiskering: h ∘ t (post-compose every component by the functor h) and
// t ∘ h (reindex components along h).
NatTrans whisker_left(const FinFunctor& h, const NatTrans& t);
NatTrans whisker_right(const NatTrans& t, const FinFunctor& h);

// All functors C -> D exactly once, in canonical lexicographic order of
// ob_map then mor_map. Pre: |Ob(D)|^|Ob(C)| within cap.
std::vector<FinFunctor> enumerate_functors(const CatPtr& c, const CatPtr& d, const Cap& cap = {});

// All natural transformations F => G in canonical order.
std::vector<NatTrans> enumerate_transformations(const FinFunctor& f, const FinFunctor& g,
                                                const Cap& cap = {});

struct EquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  std::string witness;  // set when either flag is false
  bool equivalence() const { return fully_faithful && essentially_surjective; }
};

// Fully-faithful by hom-set bijection on every object pair, essential
// surjectivity by iso search in the target.
EquivalenceReport is_equivalence(const FinFunctor& f);

// Oracle for is_equivalence: search for an explicit quasi-inverse (a functor
// back plus natural isomorphisms both ways). Exponential; fixture scale only.
bool has_quasi_inverse(const FinFunctor& f, const Cap& cap = {});

// The category of functors C -> D: objects are enumerate_functors(c, d),
// morphisms natural transformations, composition vertical.
struct FunctorCategory {
  CatPtr cat;
  std::vector<FinFunctor> objects;     // by object index of cat
  std::vector<NatTrans> transformations;  // by morphism index of cat
};
FunctorCategory functor_category(const CatPtr& c, const CatPtr& d, const Cap& cap = {});

}  // namespace stabkit
