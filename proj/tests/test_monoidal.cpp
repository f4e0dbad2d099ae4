#include <doctest.h>

#include "stabkit/fixtures.hpp"

using namespace stabkit;

TEST_CASE("Sat3 validates as a symmetric strict monoidal category") {
  MonPtr m = fixtures::sat3();
  CHECK(m->base()->num_objects() == 4);
  CHECK(m->symmetric());
  CHECK(!m->all_objects_invertible());
  // spot-check the saturation
  ObjId two = *m->base()->object_index("2");
  CHECK(m->base()->obj_name(m->tensor_ob(two, two)) == "3");
}

TEST_CASE("C2 and Klein four are group-like") {
  CHECK(cyclic_two()->all_objects_invertible());
  CHECK(cyclic_two()->symmetric());
  CHECK(klein_four()->all_objects_invertible());
  CHECK(fixtures::idem2()->symmetric());
  CHECK(!fixtures::idem2()->all_objects_invertible());
}

TEST_CASE("a mutated Sat3 tensor table is rejected with a witness") {
  // min(u+v, 3) with the (2,2) entry altered breaks associativity
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(i + j, 3);
  table[2][2] = 2;
  bool threw = false;
  try {
    discrete_monoid({"0", "1", "2", "3"}, table, 0);
  } catch (const ValidationError& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::NonMonoidObjects);
    CHECK(!e.witness().empty());
  }
  CHECK(threw);
}

TEST_CASE("validate_monoidal certifies raw descriptions") {
  RawMonoidal raw;
  raw.base.objects = {"0", "1"};
  raw.unit = "0";
  raw.tensor_objects = {{"0", "0", "0"}, {"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}};
  raw.symmetry = std::vector<std::array<std::string, 3>>{
      {"0", "0", "id:0"}, {"0", "1", "id:1"}, {"1", "0", "id:1"}, {"1", "1", "id:0"}};
  MonPtr m = validate_monoidal(raw);
  CHECK(m->all_objects_invertible());
  CHECK(m->symmetric());

  // a broken symmetry entry is caught
  raw.symmetry = std::vector<std::array<std::string, 3>>{
      {"0", "0", "id:0"}, {"0", "1", "id:0"}, {"1", "0", "id:1"}, {"1", "1", "id:0"}};
  CHECK_THROWS_AS(validate_monoidal(raw), ValidationError);
}

TEST_CASE("transport category of Sat3 reaches upward") {
  TransportCat tr = transport_category(fixtures::sat3());
  const FinCat& c = *tr.cat;
  CHECK(c.num_objects() == 4);
  // u -> v has a morphism iff min(u+w,3) = v for some w, i.e. v >= u
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      bool expected = v >= u;
      CHECK(!c.hom(static_cast<ObjId>(u), static_cast<ObjId>(v)).empty() == expected);
    }
  // one morphism per witness w
  CHECK(c.hom(2, 3).size() == 3);  // w in {1,2,3}
  CHECK(c.hom(0, 0).size() == 1);  // only the identity (0,id)
}

TEST_CASE("transport category of a group is transitive") {
  TransportCat tr = transport_category(cyclic_two());
  const FinCat& c = *tr.cat;
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v)
      CHECK(c.hom(static_cast<ObjId>(u), static_cast<ObjId>(v)).size() == 1);
}

TEST_CASE("transport category of the trivial monoidal category is terminal") {
  TransportCat tr = transport_category(trivial_monoidal());
  CHECK(tr.cat->num_objects() == 1);
  CHECK(tr.cat->num_morphisms() == 1);
}

TEST_CASE("cyclic monoids normalize exponents") {
  MonPtr m = cyclic_monoid(2, 3);  // {0..4}, 5 ~ 2
  const FinCat& c = *m->base();
  ObjId four = *c.object_index("4");
  ObjId three = *c.object_index("3");
  // 4 + 3 = 7 -> 2 + (7-2) mod 3 = 4
  CHECK(c.obj_name(m->tensor_ob(four, three)) == "4");
  CHECK(m->symmetric());
}
