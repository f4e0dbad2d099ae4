#include "stabkit/fixtures.hpp"

#include <algorithm>
#include <random>

namespace stabkit {
namespace fixtures {

CatPtr chain4() { return chain_poset(4); }

CatPtr p2() {
  RawCategory raw;
  raw.objects = {"x", "y"};
  raw.morphisms.push_back({"f", "x", "y"});
  raw.morphisms.push_back({"g", "y", "x"});
  raw.compose.push_back({"g", "f", "id:x"});
  raw.compose.push_back({"f", "g", "id:y"});
  return validate_category(raw);
}

MonPtr sat3() { return saturating_nat(3); }
MonPtr c2() { return cyclic_two(); }
MonPtr idem2() { return idempotent_pair(); }

ActionPtr shift_action() {
  CatPtr a = chain4();
  FinFunctor t;
  t.src = a;
  t.tgt = a;
  t.ob_map.resize(a->num_objects());
  t.mor_map.resize(a->num_morphisms());
  for (std::size_t x = 0; x < a->num_objects(); ++x)
    t.ob_map[x] = static_cast<ObjId>(std::min<std::size_t>(x + 1, 3));
  for (std::size_t m = 0; m < a->num_morphisms(); ++m) {
    ObjId s = t.ob_map[static_cast<std::size_t>(a->src(static_cast<MorId>(m)))];
    ObjId tt = t.ob_map[static_cast<std::size_t>(a->tgt(static_cast<MorId>(m)))];
    // Chain4 is a poset: the image morphism is the unique s -> t
    t.mor_map[m] = a->hom(s, tt).front();
  }
  return generated_action(sat3(), a, Side::right_mute, t);
}

ActionPtr swap_c2() {
  CatPtr a = p2();
  FinFunctor swap;
  swap.src = a;
  swap.tgt = a;
  swap.ob_map.resize(2);
  swap.mor_map.resize(a->num_morphisms());
  ObjId x = *a->object_index("x");
  ObjId y = *a->object_index("y");
  swap.ob_map[static_cast<std::size_t>(x)] = y;
  swap.ob_map[static_cast<std::size_t>(y)] = x;
  swap.mor_map[static_cast<std::size_t>(*a->morphism_index("f"))] = *a->morphism_index("g");
  swap.mor_map[static_cast<std::size_t>(*a->morphism_index("g"))] = *a->morphism_index("f");
  swap.mor_map[static_cast<std::size_t>(a->identity(x))] = a->identity(y);
  swap.mor_map[static_cast<std::size_t>(a->identity(y))] = a->identity(x);
  return generated_action(c2(), a, Side::right_mute, swap);
}

namespace {

ActionPtr const_action(const MonPtr& i, const CatPtr& a, Side side, ObjId value) {
  FinFunctor c = constant_functor(a, a, value);
  FinFunctor id = identity_functor(a);
  const FinCat& ic = *i->base();
  std::vector<FinFunctor> on_objects(ic.num_objects());
  on_objects[static_cast<std::size_t>(*ic.object_index("1"))] = id;
  on_objects[static_cast<std::size_t>(*ic.object_index("e"))] = c;
  std::vector<NatTrans> on_morphisms;
  for (std::size_t f = 0; f < ic.num_morphisms(); ++f)
    on_morphisms.push_back(identity_nat_trans(
        on_objects[static_cast<std::size_t>(ic.src(static_cast<MorId>(f)))]));
  return Action::make(i, a, side, std::move(on_objects), std::move(on_morphisms));
}

}  // namespace

ActionPtr const3_action() { return const_action(idem2(), chain4(), Side::right_mute, 3); }
ActionPtr const0_action() { return const_action(idem2(), chain4(), Side::left_mute, 0); }

AdjointActionData const_adj() {
  MonPtr i = idem2();
  CatPtr chain = chain4();
  ActionPtr alpha = const_action(i, chain, Side::right_mute, 3);
  ActionPtr alpha_bar = const_action(i, chain, Side::left_mute, 0);
  CatPtr a = alpha->category();
  const FinCat& ic = *alpha->monoidal()->base();

  FinFunctor id = identity_functor(a);
  std::vector<NatTrans> unit(ic.num_objects());
  std::vector<NatTrans> counit(ic.num_objects());
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    ObjId uu = static_cast<ObjId>(u);
    NatTrans eta;
    eta.src = id;
    eta.tgt = compose_functors(alpha->on_object(uu), alpha_bar->on_object(uu));
    eta.components.resize(a->num_objects());
    for (std::size_t x = 0; x < a->num_objects(); ++x)
      eta.components[x] = a->hom(static_cast<ObjId>(x), eta.tgt.on_ob(static_cast<ObjId>(x))).front();
    unit[u] = std::move(eta);

    NatTrans eps;
    eps.src = compose_functors(alpha_bar->on_object(uu), alpha->on_object(uu));
    eps.tgt = id;
    eps.components.resize(a->num_objects());
    for (std::size_t x = 0; x < a->num_objects(); ++x)
      eps.components[x] = a->hom(eps.src.on_ob(static_cast<ObjId>(x)), static_cast<ObjId>(x)).front();
    counit[u] = std::move(eps);
  }
  return validate_adjoint(alpha, alpha_bar, std::move(unit), std::move(counit));
}

EndoAction nset_abc() {
  return validate_endo({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "c"}});
}

namespace {

// All actions of a discrete monoidal category on a category: assignments of
// endofunctors to acting objects compatible with the monoid structure.
std::vector<ActionPtr> all_discrete_actions(const MonPtr& monoid, const CatPtr& ambient,
                                            const Cap& cap) {
  const FinCat& ic = *monoid->base();
  const std::size_t n = ic.num_objects();
  std::vector<FinFunctor> endos = enumerate_functors(ambient, ambient, cap);

  // composition table of the endofunctor monoid
  auto endo_index = [&](const FinFunctor& f) -> int {
    for (std::size_t i = 0; i < endos.size(); ++i)
      if (endos[i].ob_map == f.ob_map && endos[i].mor_map == f.mor_map) return static_cast<int>(i);
    return -1;
  };
  int id_index = endo_index(identity_functor(ambient));

  std::vector<ActionPtr> out;
  std::vector<int> assignment(n, -1);
  assignment[static_cast<std::size_t>(monoid->unit())] = id_index;

  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == n) {
      std::vector<FinFunctor> on_objects(n);
      for (std::size_t i = 0; i < n; ++i)
        on_objects[i] = endos[static_cast<std::size_t>(assignment[i])];
      std::vector<NatTrans> on_morphisms;
      for (std::size_t f = 0; f < ic.num_morphisms(); ++f)
        on_morphisms.push_back(identity_nat_trans(
            on_objects[static_cast<std::size_t>(ic.src(static_cast<MorId>(f)))]));
      try {
        out.push_back(Action::make(monoid, ambient, Side::right_mute, std::move(on_objects),
                                   std::move(on_morphisms)));
      } catch (const ValidationError&) {
      }
      return;
    }
    if (assignment[u] >= 0) {
      dfs(u + 1);
      return;
    }
    for (std::size_t cand = 0; cand < endos.size(); ++cand) {
      assignment[u] = static_cast<int>(cand);
      // partial monoid-compatibility pruning
      bool ok = true;
      for (std::size_t a = 0; a <= u && ok; ++a)
        for (std::size_t b = 0; b <= u && ok; ++b) {
          if (assignment[a] < 0 || assignment[b] < 0) continue;
          std::size_t ab = static_cast<std::size_t>(
              monoid->tensor_ob(static_cast<ObjId>(a), static_cast<ObjId>(b)));
          if (ab > u || assignment[ab] < 0) continue;
          FinFunctor comp = compose_functors(endos[static_cast<std::size_t>(assignment[a])],
                                             endos[static_cast<std::size_t>(assignment[b])]);
          ok = endo_index(comp) == assignment[ab];
        }
      if (ok) dfs(u + 1);
      assignment[u] = -1;
    }
  };
  dfs(0);
  return out;
}

}  // namespace

std::vector<ActionPtr> generated_corpus(std::size_t count, unsigned seed, bool symmetric_only,
                                        const Cap& cap) {
  std::vector<MonPtr> monoids;
  monoids.push_back(trivial_monoidal());
  monoids.push_back(cyclic_two());
  monoids.push_back(klein_four());
  monoids.push_back(saturating_nat(2));
  monoids.push_back(saturating_nat(3));
  monoids.push_back(idempotent_pair());
  monoids.push_back(cyclic_monoid(2, 1));
  if (!symmetric_only) {
    // left-zero semigroup with adjoined unit: x⊗y = x for x ≠ e
    monoids.push_back(
        discrete_monoid({"a", "b", "e"}, {{0, 0, 0}, {1, 1, 1}, {0, 1, 2}}, 2));
  }

  std::vector<CatPtr> ambients;
  ambients.push_back(terminal_category());
  ambients.push_back(discrete_category({"a", "b"}));
  ambients.push_back(discrete_category({"a", "b", "c"}));
  ambients.push_back(chain_poset(2));
  ambients.push_back(chain_poset(3));
  ambients.push_back(chain_poset(4));
  ambients.push_back(p2());

  std::vector<ActionPtr> pool;
  for (const MonPtr& monoid : monoids) {
    for (const CatPtr& ambient : ambients) {
      for (ActionPtr& action : all_discrete_actions(monoid, ambient, cap)) pool.push_back(action);
    }
  }

  std::mt19937 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

}  // namespace fixtures
}  // namespace stabkit
