#include <doctest.h>

#include <functional>
#include <random>

#include "stabkit/colimit.hpp"
#include "stabkit/fixtures.hpp"

using namespace stabkit;

namespace {

RawCategory chain4_raw() {
  RawCategory raw;
  for (int i = 0; i < 4; ++i) raw.objects.push_back(std::to_string(i));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      raw.morphisms.push_back({"le:" + std::to_string(i) + ":" + std::to_string(j),
                               std::to_string(i), std::to_string(j)});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        raw.compose.push_back({"le:" + std::to_string(j) + ":" + std::to_string(k),
                               "le:" + std::to_string(i) + ":" + std::to_string(j),
                               "le:" + std::to_string(i) + ":" + std::to_string(k)});
  return raw;
}

}  // namespace

TEST_CASE("validate_category accepts Chain4 with ten morphisms") {
  CatPtr c = validate_category(chain4_raw());
  CHECK(c->num_objects() == 4);
  CHECK(c->num_morphisms() == 10);  // 6 declared + 4 identities
  CHECK(same_presentation(*c, *fixtures::chain4()));
}

TEST_CASE("validate_category accepts the terminal category") {
  RawCategory raw;
  raw.objects = {"*"};
  CatPtr c = validate_category(raw);
  CHECK(c->num_objects() == 1);
  CHECK(c->num_morphisms() == 1);
}

TEST_CASE("validate_category rejects a partial compose table") {
  RawCategory raw;
  raw.objects = {"x", "y"};
  raw.morphisms.push_back({"f", "x", "y"});
  raw.morphisms.push_back({"g", "y", "x"});
  raw.compose.push_back({"g", "f", "id:x"});
  // compose(f, g) missing
  CHECK_THROWS_WITH_AS(validate_category(raw), doctest::Contains("missing compose"),
                       ValidationError);
  try {
    validate_category(raw);
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ErrorKind::PartialComposeTable);
  }
}

TEST_CASE("validate_category rejects dangling endpoints and duplicates") {
  RawCategory raw;
  raw.objects = {"x"};
  raw.morphisms.push_back({"f", "x", "nowhere"});
  CHECK_THROWS_AS(validate_category(raw), ValidationError);

  RawCategory dup;
  dup.objects = {"x", "x"};
  CHECK_THROWS_AS(validate_category(dup), ValidationError);

  RawCategory reserved;
  reserved.objects = {"x"};
  reserved.morphisms.push_back({"id:x", "x", "x"});
  CHECK_THROWS_AS(validate_category(reserved), ValidationError);
}

TEST_CASE("random mutation of one compose entry in Chain4 is rejected") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    RawCategory raw = chain4_raw();
    if (raw.compose.empty()) break;
    auto& entry = raw.compose[rng() % raw.compose.size()];
    std::string original = entry[2];
    // replace the result with some other declared morphism
    std::vector<std::string> candidates;
    for (const auto& m : raw.morphisms)
      if (m.id != original) candidates.push_back(m.id);
    entry[2] = candidates[rng() % candidates.size()];
    CHECK_THROWS_AS(validate_category(raw), ValidationError);
  }
}

TEST_CASE("enumerate_functors counts on small shapes") {
  CatPtr terminal = terminal_category();
  CatPtr chain = fixtures::chain4();
  CHECK(enumerate_functors(terminal, chain).size() == 4);
  CHECK(enumerate_functors(walking_arrow(), chain).size() == 10);
  CHECK(enumerate_functors(chain, terminal).size() == 1);
}

TEST_CASE("enumerate_functors output validates, is duplicate-free, matches brute force") {
  CatPtr arrow = walking_arrow();
  CatPtr p2 = fixtures::p2();
  auto functors = enumerate_functors(arrow, p2);
  for (const auto& f : functors) validate_functor(f);
  for (std::size_t i = 0; i < functors.size(); ++i)
    for (std::size_t j = i + 1; j < functors.size(); ++j) CHECK(!(functors[i] == functors[j]));
  // brute force: all ob/mor assignments filtered by functoriality
  std::size_t count = 0;
  const FinCat& c = *arrow;
  const FinCat& d = *p2;
  std::vector<ObjId> ob(c.num_objects());
  std::vector<MorId> mor(c.num_morphisms());
  std::function<void(std::size_t)> go_mor = [&](std::size_t m) {
    if (m == c.num_morphisms()) {
      FinFunctor f{arrow, p2, ob, mor};
      try {
        validate_functor(f);
        ++count;
      } catch (const ValidationError&) {
      }
      return;
    }
    for (std::size_t img = 0; img < d.num_morphisms(); ++img) {
      mor[m] = static_cast<MorId>(img);
      go_mor(m + 1);
    }
  };
  std::function<void(std::size_t)> go_ob = [&](std::size_t o) {
    if (o == c.num_objects()) {
      go_mor(0);
      return;
    }
    for (std::size_t img = 0; img < d.num_objects(); ++img) {
      ob[o] = static_cast<ObjId>(img);
      go_ob(o + 1);
    }
  };
  go_ob(0);
  CHECK(count == functors.size());
}

TEST_CASE("enumerate_transformations on constants into Chain4") {
  CatPtr terminal = terminal_category();
  CatPtr chain = fixtures::chain4();
  FinFunctor c0 = constant_functor(terminal, chain, *chain->object_index("0"));
  FinFunctor c3 = constant_functor(terminal, chain, *chain->object_index("3"));
  CHECK(enumerate_transformations(c0, c3).size() == 1);
  CHECK(enumerate_transformations(c3, c0).empty());
  FinFunctor id = identity_functor(terminal);
  CHECK(enumerate_transformations(id, id).size() == 1);
}

TEST_CASE("is_equivalence on identity, constant, and P2") {
  CatPtr chain = fixtures::chain4();
  CHECK(is_equivalence(identity_functor(chain)).equivalence());

  FinFunctor c3 = constant_functor(chain, chain, *chain->object_index("3"));
  EquivalenceReport r = is_equivalence(c3);
  CHECK(!r.fully_faithful);
  CHECK(!r.witness.empty());

  CHECK(is_equivalence(identity_functor(fixtures::p2())).equivalence());
}

TEST_CASE("is_equivalence agrees with the quasi-inverse search oracle") {
  std::vector<FinFunctor> probes;
  CatPtr chain3 = chain_poset(3);
  CatPtr p2 = fixtures::p2();
  probes.push_back(identity_functor(chain3));
  probes.push_back(constant_functor(chain3, chain3, 0));
  probes.push_back(identity_functor(p2));
  probes.push_back(constant_functor(p2, p2, 0));
  // the swap autoequivalence of P2
  for (const auto& f : enumerate_functors(p2, p2)) probes.push_back(f);
  for (const auto& f : probes)
    CHECK(is_equivalence(f).equivalence() == has_quasi_inverse(f));
}

TEST_CASE("construct: opposite is an involution, functor categories behave") {
  CatPtr chain = fixtures::chain4();
  CatPtr op = opposite(chain);
  CHECK(op->num_morphisms() == chain->num_morphisms());
  CHECK(same_presentation(*opposite(op), *chain));

  // functor_category(walking arrow, terminal) is the terminal category
  FunctorCategory fc = functor_category(walking_arrow(), terminal_category());
  CHECK(fc.cat->num_objects() == 1);
  CHECK(fc.cat->num_morphisms() == 1);

  // functor_category(terminal, D) is isomorphic to D
  FunctorCategory fd = functor_category(terminal_category(), fixtures::p2());
  CHECK(find_table_isomorphism(*fd.cat, *fixtures::p2()).has_value());
}

TEST_CASE("product category sizes and laws") {
  CatPtr prod = product(fixtures::p2(), walking_arrow());
  CHECK(prod->num_objects() == 4);
  CHECK(prod->num_morphisms() == fixtures::p2()->num_morphisms() * walking_arrow()->num_morphisms());
}

TEST_CASE("colimit in a poset is the supremum of the diagram image") {
  CatPtr chain = fixtures::chain4();
  // diagram: walking arrow -> chain picking le:1:2
  FinFunctor d;
  d.src = walking_arrow();
  d.tgt = chain;
  d.ob_map = {*chain->object_index("1"), *chain->object_index("2")};
  d.mor_map.assign(walking_arrow()->num_morphisms(), -1);
  d.mor_map[static_cast<std::size_t>(*walking_arrow()->morphism_index("arr"))] =
      *chain->morphism_index("le:1:2");
  d.mor_map[static_cast<std::size_t>(walking_arrow()->identity(0))] =
      chain->identity(*chain->object_index("1"));
  d.mor_map[static_cast<std::size_t>(walking_arrow()->identity(1))] =
      chain->identity(*chain->object_index("2"));
  validate_functor(d);
  Cocone cone = colimit(d);
  CHECK(chain->obj_name(cone.apex) == "2");
  CHECK(cone.strict);
}

TEST_CASE("colimit of parallel pair id/swap in finite sets has apex of size 1") {
  CatPtr finset = skeletal_finset(3);
  // source: two objects, two parallel arrows p, q between them
  RawCategory raw;
  raw.objects = {"s", "t"};
  raw.morphisms.push_back({"p", "s", "t"});
  raw.morphisms.push_back({"q", "s", "t"});
  CatPtr pp = validate_category(raw);

  // the 2-element set and its identity/swap
  ObjId two = *finset->object_index("2");
  MorId ident = finset->identity(two);
  MorId swap = -1;
  for (MorId m : finset->hom(two, two))
    if (m != ident) swap = m;
  REQUIRE(swap >= 0);
  // pick the genuine transposition (not a constant map)
  for (MorId m : finset->hom(two, two)) {
    const auto& fn = finset->finset()->fn[static_cast<std::size_t>(m)];
    if (fn.size() == 2 && fn[0] == 1 && fn[1] == 0) swap = m;
  }

  FinFunctor d;
  d.src = pp;
  d.tgt = finset;
  d.ob_map = {two, two};
  d.mor_map.assign(pp->num_morphisms(), -1);
  d.mor_map[static_cast<std::size_t>(*pp->morphism_index("p"))] = ident;
  d.mor_map[static_cast<std::size_t>(*pp->morphism_index("q"))] = swap;
  d.mor_map[static_cast<std::size_t>(pp->identity(*pp->object_index("s")))] = ident;
  d.mor_map[static_cast<std::size_t>(pp->identity(*pp->object_index("t")))] = ident;
  validate_functor(d);

  Cocone cone = colimit(d);
  CHECK(finset->obj_name(cone.apex) == "1");
  CHECK(cone.strict);
}

TEST_CASE("colimit certificate holds against every competing cocone") {
  CatPtr chain = chain_poset(3);
  FinFunctor d = constant_functor(terminal_category(), chain, 1);
  Cocone cone = colimit(d);
  CHECK(cone.apex == 1);
  for (const Cocone& other : enumerate_cocones(d))
    CHECK(mediating_morphisms(d, cone, other).size() == 1);
}

TEST_CASE("marked categories enforce semi-saturation and closure") {
  CatPtr p2 = fixtures::p2();
  std::set<MorId> everything;
  for (std::size_t m = 0; m < p2->num_morphisms(); ++m) everything.insert(static_cast<MorId>(m));
  CHECK_NOTHROW(validate_marked(p2, everything));

  std::set<MorId> just_identities;
  for (std::size_t x = 0; x < p2->num_objects(); ++x)
    just_identities.insert(p2->identity(static_cast<ObjId>(x)));
  // P2's f and g are isomorphisms, so identities alone are not semi-saturated
  CHECK_THROWS_AS(validate_marked(p2, just_identities), ValidationError);

  CatPtr chain = fixtures::chain4();
  std::set<MorId> ids;
  for (std::size_t x = 0; x < chain->num_objects(); ++x)
    ids.insert(chain->identity(static_cast<ObjId>(x)));
  CHECK_NOTHROW(validate_marked(chain, ids));
}
