#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stabkit/caps.hpp"
#include "stabkit/diagnostics.hpp"

namespace stabkit {

using ObjId = std::int32_t;
using MorId = std::int32_t;

inline std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct Mor {
  std::string id;
  ObjId src = -1;
  ObjId tgt = -1;
};

struct RawMor {
  std::string id;
  std::string src;
  std::string tgt;
};

// Unchecked category description, as parsed from a workspace file or built in
// memory. Identities are implicit: ids "id:<object>" are reserved and must not
// appear in `morphisms`. Compose entries are (later, earlier, result) by id;
// entries naming identities are accepted only when consistent with the
// identity laws, and the canonical serialization omits them.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMor> morphisms;
  std::vector<std::array<std::string, 3>> compose;
};

// A finite category as explicit object/morphism/composition tables.
// Instances are immutable once built and always satisfy the category laws;
// the only way to obtain one is validate_category() or a construction that
// certifies its output. Objects and morphisms are kept in canonical
// lexicographic order of their names so enumerations and serializations are
// deterministic.
class FinCat {
 public:
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Mor>& morphisms() const { return morphisms_; }
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  MorId identity(ObjId x) const { return identity_[static_cast<std::size_t>(x)]; }
  bool is_identity(MorId m) const {
    return identity_[static_cast<std::size_t>(morphisms_[static_cast<std::size_t>(m)].src)] == m &&
           morphisms_[static_cast<std::size_t>(m)].src == morphisms_[static_cast<std::size_t>(m)].tgt;
  }
  ObjId src(MorId m) const { return morphisms_[static_cast<std::size_t>(m)].src; }
  ObjId tgt(MorId m) const { return morphisms_[static_cast<std::size_t>(m)].tgt; }
  const std::string& obj_name(ObjId x) const { return objects_[static_cast<std::size_t>(x)]; }
  const std::string& mor_name(MorId m) const { return morphisms_[static_cast<std::size_t>(m)].id; }

  bool composable(MorId later, MorId earlier) const { return tgt(earlier) == src(later); }

  std::optional<MorId> compose_opt(MorId later, MorId earlier) const {
    auto it = compose_.find(pair_key(later, earlier));
    if (it == compose_.end()) return std::nullopt;
    return it->second;
  }
  // Composition of a composable pair; the table is total on composable pairs.
  MorId compose(MorId later, MorId earlier) const;

  // Morphisms x -> y in canonical order.
  const std::vector<MorId>& hom(ObjId x, ObjId y) const {
    return hom_[static_cast<std::size_t>(x) * objects_.size() + static_cast<std::size_t>(y)];
  }

  bool is_iso(MorId m) const { return inverse_[static_cast<std::size_t>(m)] >= 0; }
  // Inverse morphism, or nullopt when m is not invertible.
  std::optional<MorId> inverse(MorId m) const {
    MorId i = inverse_[static_cast<std::size_t>(m)];
    if (i < 0) return std::nullopt;
    return i;
  }
  bool isomorphic_objects(ObjId x, ObjId y) const;

  std::optional<ObjId> object_index(std::string_view name) const;
  std::optional<MorId> morphism_index(std::string_view name) const;

  const std::unordered_map<std::uint64_t, MorId>& compose_table() const { return compose_; }

  // Skeletal finite-sets annotation (set by skeletal_finset); enables the
  // coproduct-plus-coequalizer colimit fast path.
  struct FinSetData {
    std::vector<int> sizes;                       // object index -> cardinality
    std::vector<std::vector<int>> fn;             // morphism index -> function table
  };
  const std::optional<FinSetData>& finset() const { return finset_; }

  // Builds a category from complete internal tables (identities included in
  // `morphisms`, compose total on composable pairs) and certifies every law.
  // Used by constructions; external input goes through validate_category().
  static std::shared_ptr<const FinCat> from_tables(
      std::vector<std::string> objects, std::vector<Mor> morphisms,
      std::vector<MorId> identity, std::unordered_map<std::uint64_t, MorId> compose,
      std::optional<FinSetData> finset = std::nullopt);

 private:
  friend std::shared_ptr<const FinCat> validate_category(const RawCategory&);

  void build_indices();
  void check_laws() const;

  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identity_;
  std::unordered_map<std::uint64_t, MorId> compose_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<MorId> inverse_;
  std::unordered_map<std::string, ObjId> obj_index_;
  std::unordered_map<std::string, MorId> mor_index_;
  std::optional<FinSetData> finset_;
};

using CatPtr = std::shared_ptr<const FinCat>;

// Checks the raw description against the category laws and returns the
// canonicalized category. Rejects with the first failing law and witnesses.
CatPtr validate_category(const RawCategory& raw);

// True when both categories have identical presentations (same names, same
// tables). Stronger than isomorphism; used for golden tests.
bool same_presentation(const FinCat& a, const FinCat& b);

// Searches for a table isomorphism (bijective on objects and morphisms,
// preserving src/tgt/identities/compose). Exponential; fixture scale only.
std::optional<std::pair<std::vector<ObjId>, std::vector<MorId>>> find_table_isomorphism(
    const FinCat& a, const FinCat& b, const Cap& cap = {});

// ---- constructions ---------------------------------------------------------

CatPtr terminal_category();
CatPtr discrete_category(const std::vector<std::string>& names);
// Poset 0 <= 1 <= ... <= n-1 as a category; morphisms named "le:i:j".
CatPtr chain_poset(int n);
CatPtr opposite(const CatPtr& c);
CatPtr product(const CatPtr& a, const CatPtr& b);
// Skeletal category of finite sets 0..max_size with all functions.
CatPtr skeletal_finset(int max_size);

// The walking arrow (two objects, one non-identity morphism).
CatPtr walking_arrow();

// A relative category: a finite category with a wide-on-identities,
// semi-saturated, composition-closed class of marked morphisms.
struct MarkedCat {
  CatPtr base;
  std::set<MorId> marked;
};

// Certifies the MarkedCat invariants (identities and isos marked, closure
// under composition of marked pairs).
MarkedCat validate_marked(CatPtr base, std::set<MorId> marked);

}  // namespace stabkit
