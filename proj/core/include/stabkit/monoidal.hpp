#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stabkit/fincat.hpp"

namespace stabkit {

// A strict monoidal finite category: the objects form a monoid under the
// tensor, the tensor is a functor base x base -> base that is strictly
// associative and unital, and an optional symmetry with the strict hexagon
// equations. Built by validate_monoidal()/builtins only.
class MonoidalCat {
 public:
  const CatPtr& base() const { return base_; }
  ObjId unit() const { return unit_; }

  ObjId tensor_ob(ObjId a, ObjId b) const {
    return tensor_ob_[static_cast<std::size_t>(a) * base_->num_objects() +
                      static_cast<std::size_t>(b)];
  }
  MorId tensor_mor(MorId f, MorId g) const {
    return tensor_mor_[static_cast<std::size_t>(f) * base_->num_morphisms() +
                       static_cast<std::size_t>(g)];
  }
  bool symmetric() const { return symmetry_.has_value(); }
  MorId symmetry(ObjId a, ObjId b) const {
    return (*symmetry_)[static_cast<std::size_t>(a) * base_->num_objects() +
                        static_cast<std::size_t>(b)];
  }

  // Every object has a tensor inverse (group-like); feeds the stability
  // example for group actions.
  bool all_objects_invertible() const;

  static std::shared_ptr<const MonoidalCat> make(CatPtr base, ObjId unit,
                                                 std::vector<ObjId> tensor_ob,
                                                 std::vector<MorId> tensor_mor,
                                                 std::optional<std::vector<MorId>> symmetry);

 private:
  void check_laws() const;

  CatPtr base_;
  ObjId unit_ = -1;
  std::vector<ObjId> tensor_ob_;
  std::vector<MorId> tensor_mor_;
  std::optional<std::vector<MorId>> symmetry_;
};

using MonPtr = std::shared_ptr<const MonoidalCat>;

struct RawMonoidal {
  RawCategory base;
  std::string unit;
  std::vector<std::array<std::string, 3>> tensor_objects;    // [u, v, u⊗v], full table
  std::vector<std::array<std::string, 3>> tensor_morphisms;  // [f, g, f⊗g], pairs with a non-identity factor
  std::optional<std::vector<std::array<std::string, 3>>> symmetry;  // [u, v, s_{u,v}]
};

// Validates the base category, then certifies the monoid, interchange, strict
// unit and symmetry laws; reports the first violation with a witness.
MonPtr validate_monoidal(const RawMonoidal& raw);

// Same, against an already-validated base category (used when the base is a
// shared workspace entry).
MonPtr validate_monoidal_on(
    CatPtr base, const std::string& unit,
    const std::vector<std::array<std::string, 3>>& tensor_objects,
    const std::vector<std::array<std::string, 3>>& tensor_morphisms,
    const std::optional<std::vector<std::array<std::string, 3>>>& symmetry);

// ---- builtins ---------------------------------------------------------------

// Truncated natural numbers {0..k} with u⊗v = min(u+v, k); symmetric, discrete.
MonPtr saturating_nat(int k);
// The trivial monoidal category (one object, identity only).
MonPtr trivial_monoidal();
// An arbitrary finite monoid as a discrete strict monoidal category; symmetry
// (identities) is attached when the monoid commutes.
MonPtr discrete_monoid(const std::vector<std::string>& names,
                       const std::vector<std::vector<int>>& table, int unit_index);
// A finite group presented by its multiplication table, as a discrete
// symmetric monoidal category when the group is abelian (symmetry omitted
// otherwise). names[0] need not be the unit; the unit is located from the
// table.
MonPtr discrete_group(const std::vector<std::string>& names,
                      const std::vector<std::vector<int>>& table);
// Z/2 with objects "0", "1".
MonPtr cyclic_two();
// Klein four-group Z/2 x Z/2 with objects "00","01","10","11".
MonPtr klein_four();
// The idempotent monoid {1, e} with e⊗e = e; objects "1", "e".
MonPtr idempotent_pair();
// ℕ/(index ~ index+period): objects "0".."index+period-1", u⊗v the normalized
// sum. The saturating monoid is the period-1 case.
MonPtr cyclic_monoid(int index, int period);

// ---- transport category -----------------------------------------------------

// The transport category Tr(I): objects of I, a morphism u -> v for every
// pair (w, f) with f : u⊗w -> v an isomorphism, composed as
// (w,f);(z,g) = (w⊗z, g∘(f⊗id_z)). Identities are (unit, id).
struct TransportCat {
  MonPtr source;
  CatPtr cat;
  // per non-identity morphism of cat: the pair (w, f)
  std::vector<std::pair<ObjId, MorId>> pairs;
  // pair (w, f) with src u -> morphism id in cat (identity pairs map to id)
  std::optional<MorId> morphism_for(ObjId u, ObjId w, MorId f) const;
};

TransportCat transport_category(const MonPtr& monoidal, const Cap& cap = {});

}  // namespace stabkit
