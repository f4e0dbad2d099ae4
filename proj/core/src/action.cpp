#include "stabkit/action.hpp"

#include <algorithm>
#include <unordered_map>

namespace stabkit {

namespace {

std::string padded(const char* prefix, std::size_t i, std::size_t count) {
  std::string num = std::to_string(i);
  std::string width = std::to_string(count == 0 ? 0 : count - 1);
  return std::string(prefix) + std::string(width.size() - num.size(), '0') + num;
}

}  // namespace

void Action::check_laws() const {
  const FinCat& ic = *I_->base();
  if (on_objects_.size() != ic.num_objects() || on_morphisms_.size() != ic.num_morphisms())
    throw ValidationError(ErrorKind::Malformed, "action tables have wrong arity");

  for (const FinFunctor& f : on_objects_) {
    if (f.src.get() != A_.get() || f.tgt.get() != A_.get())
      throw ValidationError(ErrorKind::Malformed, "action endofunctor has wrong endpoints");
    validate_functor(f);
  }

  // unit acts as the identity
  if (!(on_object(I_->unit()) == identity_))
    throw ValidationError(ErrorKind::UnitNotIdentity,
                          "on_objects(" + ic.obj_name(I_->unit()) + ") is not the identity functor");

  // monoid compatibility in the convention-table order
  for (std::size_t u = 0; u < ic.num_objects(); ++u)
    for (std::size_t v = 0; v < ic.num_objects(); ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      FinFunctor expected = compose_functors(on_object(uu), on_object(vv));
      if (!(on_object(mul(uu, vv)) == expected))
        throw ValidationError(ErrorKind::MonoidIncompatible,
                              "(" + ic.obj_name(uu) + ", " + ic.obj_name(vv) + ")");
    }

  // 2-cells: endpoints, naturality, identities, vertical functoriality
  for (std::size_t f = 0; f < ic.num_morphisms(); ++f) {
    const NatTrans& t = on_morphisms_[f];
    if (!(t.src == on_object(ic.src(static_cast<MorId>(f)))) ||
        !(t.tgt == on_object(ic.tgt(static_cast<MorId>(f)))))
      throw ValidationError(ErrorKind::TwoCellNotFunctorial,
                            "on_morphisms(" + ic.mor_name(static_cast<MorId>(f)) +
                                ") has wrong endpoints");
    validate_nat_trans(t);
  }
  for (std::size_t x = 0; x < ic.num_objects(); ++x) {
    const NatTrans& t = on_morphisms_[static_cast<std::size_t>(ic.identity(static_cast<ObjId>(x)))];
    if (!(t == identity_nat_trans(on_object(static_cast<ObjId>(x)))))
      throw ValidationError(ErrorKind::TwoCellNotFunctorial,
                            "on_morphisms(id:" + ic.obj_name(static_cast<ObjId>(x)) +
                                ") is not the identity transformation");
  }
  for (const auto& [key, gf] : ic.compose_table()) {
    MorId g = static_cast<MorId>(key >> 32);
    MorId f = static_cast<MorId>(key & 0xffffffffu);
    NatTrans expected = vertical_compose(on_morphism(g), on_morphism(f));
    if (!(on_morphism(gf).components == expected.components))
      throw ValidationError(ErrorKind::TwoCellNotFunctorial,
                            "vertical functoriality fails at (" + ic.mor_name(g) + ", " +
                                ic.mor_name(f) + ")");
  }
  // tensor compatibility: the 2-cell at f⊗g is the horizontal composite in
  // the convention-table order
  for (std::size_t f = 0; f < ic.num_morphisms(); ++f)
    for (std::size_t g = 0; g < ic.num_morphisms(); ++g) {
      MorId ff = static_cast<MorId>(f), gg = static_cast<MorId>(g);
      NatTrans expected = horizontal_compose(on_morphism(ff), on_morphism(gg));
      if (!(on_morphism(mulm(ff, gg)).components == expected.components))
        throw ValidationError(ErrorKind::TwoCellNotFunctorial,
                              "tensor compatibility fails at (" + ic.mor_name(ff) + ", " +
                                  ic.mor_name(gg) + ")");
    }
}

ActionPtr Action::make(MonPtr I, CatPtr A, Side side, std::vector<FinFunctor> on_objects,
                       std::vector<NatTrans> on_morphisms) {
  auto a = std::make_shared<Action>();
  a->I_ = std::move(I);
  a->A_ = std::move(A);
  a->side_ = side;
  a->on_objects_ = std::move(on_objects);
  a->on_morphisms_ = std::move(on_morphisms);
  a->identity_ = identity_functor(a->A_);
  a->identity_cell_ = identity_nat_trans(a->identity_);
  a->check_laws();
  return a;
}

ActionPtr validate_action(MonPtr I, CatPtr A, Side side, std::vector<FinFunctor> on_objects,
                          std::vector<NatTrans> on_morphisms) {
  return Action::make(std::move(I), std::move(A), side, std::move(on_objects),
                      std::move(on_morphisms));
}

ActionPtr trivial_action(MonPtr I, CatPtr A, Side side) {
  FinFunctor id = identity_functor(A);
  std::vector<FinFunctor> on_objects(I->base()->num_objects(), id);
  std::vector<NatTrans> on_morphisms(I->base()->num_morphisms(), identity_nat_trans(id));
  return Action::make(std::move(I), std::move(A), side, std::move(on_objects),
                      std::move(on_morphisms));
}

ActionPtr generated_action(MonPtr I, CatPtr A, Side side, const FinFunctor& generator) {
  const FinCat& ic = *I->base();
  // object names are "0".."n-1": exponent = name as integer
  std::vector<FinFunctor> on_objects(ic.num_objects(), identity_functor(A));
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    int exponent = std::stoi(ic.obj_name(static_cast<ObjId>(u)));
    FinFunctor power = identity_functor(A);
    for (int i = 0; i < exponent; ++i) power = compose_functors(generator, power);
    on_objects[u] = power;
  }
  std::vector<NatTrans> on_morphisms;
  for (std::size_t f = 0; f < ic.num_morphisms(); ++f) {
    if (!ic.is_identity(static_cast<MorId>(f)))
      throw ValidationError(ErrorKind::Malformed,
                            "generated_action requires a discrete acting category");
    on_morphisms.push_back(
        identity_nat_trans(on_objects[static_cast<std::size_t>(ic.src(static_cast<MorId>(f)))]));
  }
  return Action::make(std::move(I), std::move(A), side, std::move(on_objects),
                      std::move(on_morphisms));
}

bool same_action(const Action& a, const Action& b) {
  if (&a == &b) return true;
  if (a.side() != b.side()) return false;
  if (a.monoidal().get() != b.monoidal().get() || a.category().get() != b.category().get())
    return false;
  for (std::size_t u = 0; u < a.monoidal()->base()->num_objects(); ++u)
    if (!(a.on_object(static_cast<ObjId>(u)) == b.on_object(static_cast<ObjId>(u)))) return false;
  for (std::size_t f = 0; f < a.monoidal()->base()->num_morphisms(); ++f)
    if (!(a.on_morphism(static_cast<MorId>(f)).components ==
          b.on_morphism(static_cast<MorId>(f)).components))
      return false;
  return true;
}

namespace {

// L(u) = con_B(u)∘f∘cov_A(u) and R(u) = cov_B(u)∘f∘con_A(u): the two
// composites an equivariance 2-cell τ(u) runs between.
FinFunctor left_composite(const Action& a, const Action& b, const FinFunctor& f, ObjId u) {
  return compose_functors(b.con(u), compose_functors(f, a.cov(u)));
}
FinFunctor right_composite(const Action& a, const Action& b, const FinFunctor& f, ObjId u) {
  return compose_functors(b.cov(u), compose_functors(f, a.con(u)));
}

}  // namespace

EquivariantMorphism check_equivariant(ActionPtr source, ActionPtr target, FinFunctor f,
                                      std::vector<NatTrans> tau) {
  const Action& a = *source;
  const Action& b = *target;
  const FinCat& ic = *a.monoidal()->base();
  const FinCat& bc = *b.category();
  if (a.monoidal().get() != b.monoidal().get())
    throw ValidationError(ErrorKind::SideMismatch, "actions have different acting categories");
  if (f.src.get() != a.category().get() || f.tgt.get() != b.category().get())
    throw ValidationError(ErrorKind::MismatchedEndpoints, "functor endpoints do not match actions");
  validate_functor(f);
  if (tau.size() != ic.num_objects())
    throw ValidationError(ErrorKind::Malformed, "tau must have one 2-cell per acting object");

  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    ObjId uu = static_cast<ObjId>(u);
    const NatTrans& t = tau[u];
    FinFunctor l = left_composite(a, b, f, uu);
    FinFunctor r = right_composite(a, b, f, uu);
    if (!(t.src == l) || !(t.tgt == r))
      throw ValidationError(ErrorKind::MismatchedEndpoints,
                            "tau(" + ic.obj_name(uu) + ") has wrong endpoints");
    validate_nat_trans(t);
    for (std::size_t x = 0; x < t.components.size(); ++x)
      if (!bc.is_iso(t.components[x]))
        throw ValidationError(ErrorKind::NonInvertibleComponent,
                              "tau(" + ic.obj_name(uu) + ") at " +
                                  a.category()->obj_name(static_cast<ObjId>(x)));
  }

  // unit condition: tau(1) is the identity 2-cell
  {
    const NatTrans& t = tau[static_cast<std::size_t>(a.unit())];
    NatTrans expected = identity_nat_trans(f);
    if (!(t.components == expected.components))
      throw ValidationError(ErrorKind::UnitFailure, "tau(unit) is not the identity");
  }

  // triangle: tau(u⊗v) equals the pasting of tau(u) and tau(v)
  for (std::size_t u = 0; u < ic.num_objects(); ++u)
    for (std::size_t v = 0; v < ic.num_objects(); ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      ObjId uv = a.monoidal()->tensor_ob(uu, vv);
      for (std::size_t x = 0; x < a.category()->num_objects(); ++x) {
        ObjId xx = static_cast<ObjId>(x);
        // [α,β](1,vᵒᵖ)(τ(u)) at x, then [α,β](u,1ᵒᵖ)(τ(v)) at x
        MorId first = b.con(vv).on_mor(tau[u].at(a.cov(vv).on_ob(xx)));
        MorId second = b.cov(uu).on_mor(tau[v].at(a.con(uu).on_ob(xx)));
        MorId expected = bc.compose(second, first);
        if (tau[static_cast<std::size_t>(uv)].at(xx) != expected)
          throw ValidationError(ErrorKind::TriangleFailure,
                                "(" + ic.obj_name(uu) + ", " + ic.obj_name(vv) + ") at " +
                                    a.category()->obj_name(xx));
      }
    }

  // naturality of tau in the acting object
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId g = static_cast<MorId>(m);
    ObjId u = ic.src(g), v = ic.tgt(g);
    for (std::size_t x = 0; x < a.category()->num_objects(); ++x) {
      ObjId xx = static_cast<ObjId>(x);
      // L(u) => L(v) and R(u) => R(v) cells induced by g
      MorId lcell = bc.compose(b.con2(g).at(f.on_ob(a.cov(v).on_ob(xx))),
                               b.con(u).on_mor(f.on_mor(a.cov2(g).at(xx))));
      MorId rcell = bc.compose(b.cov2(g).at(f.on_ob(a.con(v).on_ob(xx))),
                               b.cov(u).on_mor(f.on_mor(a.con2(g).at(xx))));
      if (bc.compose(tau[static_cast<std::size_t>(v)].at(xx), lcell) !=
          bc.compose(rcell, tau[static_cast<std::size_t>(u)].at(xx)))
        throw ValidationError(ErrorKind::NaturalityFailure,
                              ic.mor_name(g) + " at " + a.category()->obj_name(xx));
    }
  }

  EquivariantMorphism result;
  result.source = std::move(source);
  result.target = std::move(target);
  result.f = std::move(f);
  result.tau = std::move(tau);
  return result;
}

EquivariantMorphism identity_equivariant(const ActionPtr& action) {
  FinFunctor id = identity_functor(action->category());
  std::vector<NatTrans> tau(action->monoidal()->base()->num_objects(), identity_nat_trans(id));
  // for mixed slots the identity's tau still runs between equal composites
  for (std::size_t u = 0; u < tau.size(); ++u) {
    ObjId uu = static_cast<ObjId>(u);
    FinFunctor l = compose_functors(action->con(uu), action->cov(uu));
    NatTrans t;
    t.src = l;
    t.tgt = compose_functors(action->cov(uu), action->con(uu));
    t.components.resize(action->category()->num_objects());
    for (std::size_t x = 0; x < t.components.size(); ++x)
      t.components[x] = action->category()->identity(l.on_ob(static_cast<ObjId>(x)));
    tau[u] = std::move(t);
  }
  return check_equivariant(action, action, std::move(id), std::move(tau));
}

EquivariantMorphism compose_equivariant(const EquivariantMorphism& g,
                                        const EquivariantMorphism& f) {
  if (f.target.get() != g.source.get() && !same_action(*f.target, *g.source))
    throw ValidationError(ErrorKind::SideMismatch,
                          "middle actions of the composition do not agree");
  const Action& a = *f.source;
  const Action& b = *f.target;  // middle
  const Action& c = *g.target;
  const FinCat& ic = *a.monoidal()->base();
  const FinCat& cc = *c.category();

  FinFunctor gf = compose_functors(g.f, f.f);
  std::vector<NatTrans> tau(ic.num_objects());
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    ObjId uu = static_cast<ObjId>(u);
    NatTrans t;
    t.src = left_composite(a, c, gf, uu);
    t.tgt = right_composite(a, c, gf, uu);
    t.components.resize(a.category()->num_objects());
    for (std::size_t x = 0; x < t.components.size(); ++x) {
      ObjId xx = static_cast<ObjId>(x);
      MorId comp;
      if (b.side() == Side::left_mute) {
        // middle acts through its contravariant slot: paste τ_g first
        MorId tg = g.tau[u].at(f.f.on_ob(a.cov(uu).on_ob(xx)));
        MorId tf = c.cov(uu).on_mor(g.f.on_mor(f.tau[u].at(xx)));
        comp = cc.compose(tf, tg);
      } else {
        // middle acts through its covariant slot: paste τ_f first
        MorId tf = c.con(uu).on_mor(g.f.on_mor(f.tau[u].at(xx)));
        MorId tg = g.tau[u].at(f.f.on_ob(a.con(uu).on_ob(xx)));
        comp = cc.compose(tg, tf);
      }
      t.components[x] = comp;
    }
    tau[u] = std::move(t);
  }
  return check_equivariant(f.source, g.target, std::move(gf), std::move(tau));
}

bool equivariant_cell_ok(const EquivariantMorphism& from, const EquivariantMorphism& to,
                         const NatTrans& theta) {
  const Action& a = *from.source;
  const Action& b = *from.target;
  const FinCat& bc = *b.category();
  const FinCat& ic = *a.monoidal()->base();
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    ObjId uu = static_cast<ObjId>(u);
    for (std::size_t x = 0; x < a.category()->num_objects(); ++x) {
      ObjId xx = static_cast<ObjId>(x);
      MorId lhs = bc.compose(to.tau[u].at(xx), b.con(uu).on_mor(theta.at(a.cov(uu).on_ob(xx))));
      MorId rhs = bc.compose(b.cov(uu).on_mor(theta.at(a.con(uu).on_ob(xx))), from.tau[u].at(xx));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

std::optional<ObjId> EquivariantCategory::find_object(const EquivariantMorphism& m) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!(objects[i].f == m.f)) continue;
    bool same = true;
    for (std::size_t u = 0; u < m.tau.size() && same; ++u)
      same = objects[i].tau[u].components == m.tau[u].components;
    if (same) return static_cast<ObjId>(i);
  }
  return std::nullopt;
}

std::optional<MorId> EquivariantCategory::find_cell(ObjId from, ObjId to,
                                                    const NatTrans& theta) const {
  for (MorId m : cat->hom(from, to))
    if (cells[static_cast<std::size_t>(m)].components == theta.components) return m;
  return std::nullopt;
}

EquivariantCategory equivariant_category(const ActionPtr& source, const ActionPtr& target,
                                         const Cap& cap) {
  const Action& a = *source;
  const Action& b = *target;
  const FinCat& ic = *a.monoidal()->base();

  EquivariantCategory result;
  result.source = source;
  result.target = target;

  // enumerate objects: functors with coherent invertible tau families
  std::vector<FinFunctor> functors = enumerate_functors(a.category(), b.category(), cap);
  for (const FinFunctor& f : functors) {
    // per-u candidate 2-cells with invertible components
    std::vector<std::vector<NatTrans>> candidates(ic.num_objects());
    std::uint64_t estimate = 1;
    bool feasible = true;
    for (std::size_t u = 0; u < ic.num_objects() && feasible; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      FinFunctor l = compose_functors(b.con(uu), compose_functors(f, a.cov(uu)));
      FinFunctor r = compose_functors(b.cov(uu), compose_functors(f, a.con(uu)));
      for (NatTrans& t : enumerate_transformations(l, r, cap))
        if (all_components_invertible(t)) candidates[u].push_back(std::move(t));
      if (static_cast<std::size_t>(uu) == static_cast<std::size_t>(a.unit())) {
        // unit slot forced to the identity
        NatTrans idt = identity_nat_trans(f);
        candidates[u].clear();
        bool typed = true;
        FinFunctor l0 = compose_functors(b.con(uu), compose_functors(f, a.cov(uu)));
        if (!(l0 == f)) typed = false;  // unit slots are identity functors by the action laws
        if (typed) candidates[u].push_back(std::move(idt));
      }
      feasible = !candidates[u].empty();
      estimate = sat_mul(estimate, candidates[u].size());
    }
    if (!feasible) continue;
    cap.require(estimate);

    std::vector<std::size_t> pick(ic.num_objects(), 0);
    std::vector<NatTrans> tau(ic.num_objects());
    std::function<void(std::size_t)> dfs = [&](std::size_t u) {
      if (u == ic.num_objects()) {
        EquivariantMorphism m;
        m.source = source;
        m.target = target;
        m.f = f;
        m.tau = tau;
        try {
          result.objects.push_back(check_equivariant(source, target, f, tau));
        } catch (const ValidationError&) {
        }
        return;
      }
      for (const NatTrans& t : candidates[u]) {
        tau[u] = t;
        // incremental triangle pruning against already-fixed slots
        bool ok = true;
        for (std::size_t v = 0; v <= u && ok; ++v) {
          for (int swap = 0; swap < 2 && ok; ++swap) {
            ObjId x1 = static_cast<ObjId>(swap ? v : u);
            ObjId x2 = static_cast<ObjId>(swap ? u : v);
            ObjId prod = a.monoidal()->tensor_ob(x1, x2);
            if (static_cast<std::size_t>(prod) > u) continue;
            const FinCat& bc = *b.category();
            for (std::size_t x = 0; x < a.category()->num_objects() && ok; ++x) {
              ObjId xx = static_cast<ObjId>(x);
              MorId first = b.con(x2).on_mor(
                  tau[static_cast<std::size_t>(x1)].at(a.cov(x2).on_ob(xx)));
              MorId second = b.cov(x1).on_mor(
                  tau[static_cast<std::size_t>(x2)].at(a.con(x1).on_ob(xx)));
              ok = tau[static_cast<std::size_t>(prod)].at(xx) == bc.compose(second, first);
            }
          }
        }
        if (ok) dfs(u + 1);
      }
    };
    dfs(0);
  }

  // morphisms: compatible 2-cells, objects in canonical order
  std::vector<Mor> morphisms;
  std::vector<NatTrans> cells;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    names.push_back(padded("e", i, result.objects.size()));

  for (std::size_t i = 0; i < result.objects.size(); ++i) {
    for (std::size_t j = 0; j < result.objects.size(); ++j) {
      for (NatTrans& t :
           enumerate_transformations(result.objects[i].f, result.objects[j].f, cap)) {
        if (!equivariant_cell_ok(result.objects[i], result.objects[j], t)) continue;
        morphisms.push_back(Mor{"", static_cast<ObjId>(i), static_cast<ObjId>(j)});
        cells.push_back(std::move(t));
      }
    }
  }
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    morphisms[i].id = padded("t", i, morphisms.size());

  // identities and composition (vertical)
  auto locate = [&](ObjId from, ObjId to, const std::vector<MorId>& comps) -> MorId {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
      if (morphisms[i].src == from && morphisms[i].tgt == to && cells[i].components == comps)
        return static_cast<MorId>(i);
    throw ValidationError(ErrorKind::Malformed, "equivariant 2-cell composition left the set");
  };

  std::vector<MorId> identity(result.objects.size());
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    identity[i] = locate(static_cast<ObjId>(i), static_cast<ObjId>(i),
                         identity_nat_trans(result.objects[i].f).components);

  std::unordered_map<std::uint64_t, MorId> compose;
  for (std::size_t gi = 0; gi < morphisms.size(); ++gi)
    for (std::size_t fi = 0; fi < morphisms.size(); ++fi) {
      if (morphisms[fi].tgt != morphisms[gi].src) continue;
      NatTrans comp = vertical_compose(cells[gi], cells[fi]);
      compose[pair_key(static_cast<MorId>(gi), static_cast<MorId>(fi))] =
          locate(morphisms[fi].src, morphisms[gi].tgt, comp.components);
    }

  result.cat = FinCat::from_tables(std::move(names), std::move(morphisms), std::move(identity),
                                   std::move(compose));
  result.cells = std::move(cells);
  return result;
}

}  // namespace stabkit
