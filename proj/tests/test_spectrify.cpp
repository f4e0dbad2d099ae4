#include <doctest.h>

#include "stabkit/fixtures.hpp"

using namespace stabkit;

TEST_CASE("spectrification of an already-strict object returns it up to iso") {
  ActionPtr shift = fixtures::shift_action();
  StabCategory strict = stabilize(shift, StabMode::strict);
  REQUIRE(strict.objects.size() == 1);
  StabObject x = strict.objects[0];
  x.mode = StabMode::lax;
  SpectrifyResult r = spectrify(shift, x);
  // ShiftAction's strict object is constant at the top, and so is LE
  for (std::size_t z = 0; z < 4; ++z)
    CHECK(r.object.E.on_ob(static_cast<ObjId>(z)) == x.E.on_ob(static_cast<ObjId>(z)));
  // the unit legs are isomorphisms here
  for (MorId leg : r.unit) CHECK(shift->category()->is_iso(leg));
}

TEST_CASE("spectrifying the constant-bottom lax object gives the constant top") {
  ActionPtr shift = fixtures::shift_action();
  CatPtr chain = shift->category();
  const std::size_t n = 4;

  StabObject bottom;
  bottom.mode = StabMode::lax;
  bottom.E = constant_functor(shift->monoidal()->base(), chain, *chain->object_index("0"));
  bottom.sigma.resize(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId tgt = shift->on_object(static_cast<ObjId>(v)).on_ob(*chain->object_index("0"));
      bottom.sigma[u * n + v] = chain->hom(*chain->object_index("0"), tgt).front();
    }
  validate_stab_object(*shift, bottom);

  SpectrifyResult r = spectrify(shift, bottom);
  for (std::size_t z = 0; z < n; ++z)
    CHECK(chain->obj_name(r.object.E.on_ob(static_cast<ObjId>(z))) == "3");
  CHECK_NOTHROW(validate_stab_object(*shift, r.object));
  // unit legs land in the strict object: E(z) = 0 -> 3
  for (std::size_t z = 0; z < n; ++z)
    CHECK(chain->obj_name(chain->tgt(r.unit[z])) == "3");
}

TEST_CASE("spectrification under the trivial acting category is the identity") {
  MonPtr triv = trivial_monoidal();
  ActionPtr a = trivial_action(triv, fixtures::chain4());
  StabCategory lax = stabilize(a, StabMode::lax);
  for (const StabObject& x : lax.objects) {
    SpectrifyResult r = spectrify(a, x);
    CHECK(r.object.E.ob_map == x.E.ob_map);
    CHECK(r.object.E.mor_map == x.E.mor_map);
    for (MorId leg : r.unit) CHECK(a->category()->is_identity(leg));
  }
}

TEST_CASE("every spectrification output is strict") {
  ActionPtr shift = fixtures::shift_action();
  StabCategory lax = stabilize(shift, StabMode::lax);
  for (const StabObject& x : lax.objects) {
    SpectrifyResult r = spectrify(shift, x);
    CHECK(r.object.mode == StabMode::strict);
    CHECK_NOTHROW(validate_stab_object(*shift, r.object));
  }
}

TEST_CASE("the spectrification adjunction holds on ShiftAction") {
  AdjunctionVerdict verdict = check_adjunction(fixtures::shift_action());
  CHECK(verdict.holds);
  CHECK(verdict.strict_objects == 1);
  CHECK(verdict.pairs_checked == verdict.lax_objects * verdict.strict_objects);
}

TEST_CASE("the spectrification adjunction holds under the trivial acting category") {
  AdjunctionVerdict verdict =
      check_adjunction(trivial_action(trivial_monoidal(), fixtures::chain4()));
  CHECK(verdict.holds);
  CHECK(verdict.lax_objects == verdict.strict_objects);
}

TEST_CASE("ConstAdj validates as an adjoint action pair") {
  AdjointActionData adj = fixtures::const_adj();
  CHECK(adj.alpha->side() == Side::right_mute);
  CHECK(adj.alpha_bar->side() == Side::left_mute);
  // const_0 ⊣ const_3 through the poset
  ObjId e = *adj.alpha->monoidal()->base()->object_index("e");
  CHECK(adj.alpha->category()->obj_name(adj.alpha->on_object(e).on_ob(0)) == "3");
  CHECK(adj.alpha->category()->obj_name(adj.alpha_bar->on_object(e).on_ob(3)) == "0");
}

TEST_CASE("a broken counit is rejected") {
  AdjointActionData adj = fixtures::const_adj();
  std::vector<NatTrans> unit = adj.unit;
  std::vector<NatTrans> counit = adj.counit;
  // swap unit and counit endpoints: invalid
  CHECK_THROWS_AS(validate_adjoint(adj.alpha, adj.alpha_bar, counit, unit), ValidationError);
}

TEST_CASE("adjoint transport is an isomorphism of lax stabilizations on ConstAdj") {
  AdjointActionData adj = fixtures::const_adj();
  TransportVerdict verdict = check_transport_adjoint(adj);
  CHECK(verdict.isomorphism);
  CHECK(verdict.objects > 0);
}

TEST_CASE("adjoint transport is involutive object by object") {
  AdjointActionData adj = fixtures::const_adj();
  std::vector<StabObject> lax = enumerate_stab_objects(adj.alpha, StabMode::lax);
  for (const StabObject& x : lax) {
    CoLaxObject t = transport_adjoint(adj, x);
    StabObject back = transport_adjoint_back(adj, t);
    CHECK(back.E == x.E);
    CHECK(back.sigma == x.sigma);
  }
}

TEST_CASE("transport under the identity adjunction is the identity") {
  MonPtr triv = trivial_monoidal();
  CatPtr chain = fixtures::chain4();
  ActionPtr a = trivial_action(triv, chain, Side::right_mute);
  ActionPtr abar = trivial_action(triv, chain, Side::left_mute);
  FinFunctor id = identity_functor(chain);
  std::vector<NatTrans> unit{identity_nat_trans(id)};
  std::vector<NatTrans> counit{identity_nat_trans(id)};
  AdjointActionData adj = validate_adjoint(a, abar, unit, counit);

  for (const StabObject& x : enumerate_stab_objects(a, StabMode::lax)) {
    CoLaxObject t = transport_adjoint(adj, x);
    CHECK(t.E == x.E);
    CHECK(t.sigma == x.sigma);
  }
  CHECK(check_transport_adjoint(adj).isomorphism);
}
