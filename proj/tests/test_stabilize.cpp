#include <doctest.h>

#include <functional>

#include "stabkit/fixtures.hpp"
#include "stabkit/stabilize.hpp"

using namespace stabkit;

namespace {

// Independent brute force: enumerate every (E, sigma) candidate table and
// filter by the full invariant check. No sharing with the production path.
std::size_t brute_force_stab_count(const ActionPtr& action, StabMode mode) {
  const FinCat& ic = *action->monoidal()->base();
  const FinCat& a = *action->category();
  const std::size_t n = ic.num_objects();
  std::size_t count = 0;

  std::vector<FinFunctor> functors =
      enumerate_functors(action->monoidal()->base(), action->category());
  for (const FinFunctor& e : functors) {
    std::vector<MorId> sigma(n * n, -1);
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
      if (pos == n * n) {
        StabObject x{mode, e, sigma};
        try {
          validate_stab_object(*action, x);
          ++count;
        } catch (const ValidationError&) {
        }
        return;
      }
      std::size_t u = pos / n;
      std::size_t v = pos % n;
      ObjId src = e.on_ob(static_cast<ObjId>(u));
      ObjId tgt = action->on_object(static_cast<ObjId>(v))
                      .on_ob(e.on_ob(action->mul(static_cast<ObjId>(u), static_cast<ObjId>(v))));
      for (MorId m : a.hom(src, tgt)) {
        sigma[pos] = m;
        fill(pos + 1);
      }
    };
    fill(0);
  }
  return count;
}

// Brute-force count of lax ShiftAction objects: families E with
// E(u) <= min(E(min(u+v,3)) + v, 3), by direct constraint enumeration.
std::size_t shift_lax_families() {
  std::size_t count = 0;
  for (int e0 = 0; e0 < 4; ++e0)
    for (int e1 = 0; e1 < 4; ++e1)
      for (int e2 = 0; e2 < 4; ++e2)
        for (int e3 = 0; e3 < 4; ++e3) {
          int e[4] = {e0, e1, e2, e3};
          bool ok = true;
          for (int u = 0; u < 4 && ok; ++u)
            for (int v = 0; v < 4 && ok; ++v)
              ok = e[u] <= std::min(e[std::min(u + v, 3)] + v, 3);
          if (ok) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("stabilization under the trivial acting category is the ambient") {
  MonPtr triv = trivial_monoidal();
  for (const CatPtr& a : {fixtures::chain4(), fixtures::p2(), terminal_category(),
                          discrete_category({"a", "b", "c"})}) {
    StabCategory stab = stabilize(trivial_action(triv, a), StabMode::strict);
    CHECK(stab.objects.size() == a->num_objects());
    CHECK(stab.cat->num_morphisms() == a->num_morphisms());
    CHECK(find_table_isomorphism(*stab.cat, *a).has_value());
    REQUIRE(stab.epsilon.has_value());
    CHECK(is_equivalence(stab.eval).equivalence());
  }
}

TEST_CASE("strict stabilization of ShiftAction is terminal") {
  StabCategory stab = stabilize(fixtures::shift_action(), StabMode::strict);
  CHECK(stab.objects.size() == 1);
  CHECK(stab.cat->num_morphisms() == 1);
  // the single object is the constant family at the top
  for (std::size_t u = 0; u < 4; ++u)
    CHECK(stab.input->category()->obj_name(stab.objects[0].E.on_ob(static_cast<ObjId>(u))) == "3");
}

TEST_CASE("lax stabilization of ShiftAction matches brute-force family count") {
  StabCategory lax = stabilize(fixtures::shift_action(), StabMode::lax);
  CHECK(lax.objects.size() == shift_lax_families());
  for (const StabObject& x : lax.objects) CHECK_NOTHROW(validate_stab_object(*lax.input, x));
}

TEST_CASE("strict-mode counts equal the independent brute force on fixtures") {
  for (const ActionPtr& a : {fixtures::shift_action(), fixtures::swap_c2(),
                             fixtures::const3_action()}) {
    std::size_t expected = brute_force_stab_count(a, StabMode::strict);
    CHECK(stabilize(a, StabMode::strict).objects.size() == expected);
  }
}

TEST_CASE("sigma at the unit is the identity in every enumerated object") {
  StabCategory stab = stabilize(fixtures::swap_c2(), StabMode::strict);
  const std::size_t n = stab.input->monoidal()->base()->num_objects();
  for (const StabObject& x : stab.objects)
    for (std::size_t u = 0; u < n; ++u)
      CHECK(stab.input->category()->is_identity(
          x.sig(static_cast<ObjId>(u), stab.input->unit(), n)));
}

TEST_CASE("epsilon is equivariant and revalidates") {
  StabCategory stab = stabilize(fixtures::swap_c2(), StabMode::strict);
  REQUIRE(stab.epsilon.has_value());
  CHECK_NOTHROW(check_equivariant(stab.epsilon->source, stab.epsilon->target, stab.epsilon->f,
                                  stab.epsilon->tau));
}

TEST_CASE("is_stable: swap yes, shift no (with witness), const3 no") {
  CHECK(is_stable(fixtures::swap_c2()).stable);
  StabilityReport shift = is_stable(fixtures::shift_action());
  CHECK(!shift.stable);
  CHECK(shift.witness.find("1") != std::string::npos);
  CHECK(!is_stable(fixtures::const3_action()).stable);
}

TEST_CASE("every action of a group is stable") {
  for (const MonPtr& group : {cyclic_two(), klein_four()}) {
    for (const CatPtr& ambient : {fixtures::p2(), chain_poset(2), discrete_category({"a", "b"})}) {
      std::vector<FinFunctor> endos = enumerate_functors(ambient, ambient);
      for (const FinFunctor& gen : endos) {
        try {
          const FinCat& ic = *group->base();
          std::vector<FinFunctor> on_objects(ic.num_objects(), identity_functor(ambient));
          for (std::size_t u = 0; u < ic.num_objects(); ++u)
            if (static_cast<ObjId>(u) != group->unit()) on_objects[u] = gen;
          std::vector<NatTrans> on_morphisms;
          for (std::size_t f = 0; f < ic.num_morphisms(); ++f)
            on_morphisms.push_back(identity_nat_trans(
                on_objects[static_cast<std::size_t>(ic.src(static_cast<MorId>(f)))]));
          ActionPtr a = Action::make(group, ambient, Side::right_mute, std::move(on_objects),
                                     std::move(on_morphisms));
          CHECK(is_stable(a).stable);
        } catch (const ValidationError&) {
          // not a valid assignment for this group; fine
        }
      }
    }
  }
}

TEST_CASE("thm stable-iff-eval agrees on the named fixtures") {
  StableEvalVerdict swap = check_stable_iff_eval(fixtures::swap_c2());
  CHECK(swap.stable);
  CHECK(swap.epsilon_equivalence);
  CHECK(swap.agree);

  StableEvalVerdict shift = check_stable_iff_eval(fixtures::shift_action());
  CHECK(!shift.stable);
  CHECK(!shift.epsilon_equivalence);
  CHECK(shift.agree);

  StableEvalVerdict triv =
      check_stable_iff_eval(trivial_action(trivial_monoidal(), fixtures::chain4()));
  CHECK(triv.stable);
  CHECK(triv.epsilon_equivalence);
  CHECK(triv.agree);
}

TEST_CASE("universal property: terminal ambient against ShiftAction") {
  ActionPtr shift = fixtures::shift_action();
  ActionPtr b = trivial_action(shift->monoidal(), terminal_category());
  UniversalVerdict verdict = check_universal(shift, b);
  CHECK(verdict.equivalence);
  CHECK(verdict.fun_stab_objects == 1);
  CHECK(verdict.fun_a_objects == 1);
}

TEST_CASE("universal property: SwapC2 against itself") {
  ActionPtr swap = fixtures::swap_c2();
  UniversalVerdict verdict = check_universal(swap, swap);
  CHECK(verdict.equivalence);
}

TEST_CASE("universal property: trivial category, trivial action") {
  MonPtr triv = trivial_monoidal();
  ActionPtr a = trivial_action(triv, terminal_category());
  UniversalVerdict verdict = check_universal(a, a);
  CHECK(verdict.equivalence);
}

TEST_CASE("universal property rejects unstable comparison objects") {
  ActionPtr shift = fixtures::shift_action();
  CHECK_THROWS_AS(check_universal(shift, shift), ValidationError);
}

TEST_CASE("double stabilization comparison certifies on the three named fixtures") {
  DoubleStabVerdict triv =
      double_stab_comparison(trivial_action(trivial_monoidal(), fixtures::p2()));
  CHECK(triv.equivalence);

  DoubleStabVerdict shift = double_stab_comparison(fixtures::shift_action());
  CHECK(shift.equivalence);
  CHECK(shift.double_stab_objects == 1);

  DoubleStabVerdict swap = double_stab_comparison(fixtures::swap_c2());
  CHECK(swap.equivalence);
  CHECK(swap.double_stab_objects == 16);
  CHECK(swap.triple_stab_objects == 256);
}

TEST_CASE("induced action on the stabilization acts by equivalences for stable input") {
  StabCategory stab = stabilize(fixtures::swap_c2(), StabMode::strict);
  for (std::size_t u = 0; u < stab.input->monoidal()->base()->num_objects(); ++u)
    CHECK(is_equivalence(stab.induced->on_object(static_cast<ObjId>(u))).equivalence());
}

TEST_CASE("naturality constraints bite when the acting category has 2-cells") {
  // acting category: one object, one idempotent endomorphism e (e∘e = e),
  // tensor on morphisms = composition
  RawMonoidal raw;
  raw.base.objects = {"*"};
  raw.base.morphisms.push_back({"e", "*", "*"});
  raw.base.compose.push_back({"e", "e", "e"});
  raw.unit = "*";
  raw.tensor_objects = {{"*", "*", "*"}};
  raw.tensor_morphisms = {{"e", "e", "e"}, {"e", "id:*", "e"}, {"id:*", "e", "e"}};
  MonPtr m = validate_monoidal(raw);

  // ambient: the same walking idempotent; the action is by the identity
  // functor with the 2-cell at e given by the idempotent itself
  CatPtr amb = validate_category(raw.base);
  FinFunctor id = identity_functor(amb);
  std::vector<FinFunctor> on_objects{id};
  NatTrans cell;
  cell.src = id;
  cell.tgt = id;
  cell.components = {*amb->morphism_index("e")};
  std::vector<NatTrans> on_morphisms(amb->num_morphisms());
  on_morphisms[static_cast<std::size_t>(*amb->morphism_index("e"))] = cell;
  on_morphisms[static_cast<std::size_t>(amb->identity(0))] = identity_nat_trans(id);
  ActionPtr a = Action::make(m, amb, Side::right_mute, std::move(on_objects),
                             std::move(on_morphisms));

  StabCategory stab = stabilize(a, StabMode::strict);
  for (const StabObject& x : stab.objects) CHECK_NOTHROW(validate_stab_object(*a, x));
  CHECK(stab.objects.size() == brute_force_stab_count(a, StabMode::strict));
}
