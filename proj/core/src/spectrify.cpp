#include "stabkit/spectrify.hpp"

#include <algorithm>
#include <functional>

namespace stabkit {

namespace {

// Diagram F^{α,E,z} : Tr(I) -> A, u ↦ α^u(E(mul(z,u))), arrows acting by a
// structure-map shift followed by transport along the isomorphism.
FinFunctor shift_diagram(const Action& act, const TransportCat& tr, const StabObject& x,
                         ObjId z) {
  const FinCat& ic = *act.monoidal()->base();
  const std::size_t n = ic.num_objects();
  const FinCat& a = *act.category();

  FinFunctor d;
  d.src = tr.cat;
  d.tgt = act.category();
  d.ob_map.resize(tr.cat->num_objects());
  d.mor_map.resize(tr.cat->num_morphisms());

  auto tr_obj = [&](ObjId t) {  // transport object -> acting object index
    return *ic.object_index(tr.cat->obj_name(t));
  };

  for (std::size_t t = 0; t < tr.cat->num_objects(); ++t) {
    ObjId u = tr_obj(static_cast<ObjId>(t));
    d.ob_map[t] = act.on_object(u).on_ob(x.E.on_ob(act.mul(z, u)));
  }
  for (std::size_t m = 0; m < tr.cat->num_morphisms(); ++m) {
    MorId mm = static_cast<MorId>(m);
    ObjId u = tr_obj(tr.cat->src(mm));
    ObjId v = tr_obj(tr.cat->tgt(mm));
    auto [w, f] = tr.pairs[m];  // f : u⊗w -> v in I
    ObjId uw = act.monoidal()->tensor_ob(u, w);
    if (act.mul(u, w) != uw)
      throw ValidationError(ErrorKind::NotSymmetric,
                            "spectrification needs the acting monoid to commute for this side");
    // α^u(σ(mul(z,u), w)) : α^u E(mul(z,u)) -> α^{u⊗w} E(mul(z,u⊗w))
    MorId shift = act.on_object(u).on_mor(x.sig(act.mul(z, u), w, n));
    // transport along f: α^{u⊗w} E(mul(z,u⊗w)) -> α^v E(mul(z,v))
    MorId reindex = act.on_object(uw).on_mor(x.E.on_mor(act.mulm(ic.identity(z), f)));
    MorId two_cell = act.on_morphism(f).at(x.E.on_ob(act.mul(z, v)));
    d.mor_map[m] = a.compose(two_cell, a.compose(reindex, shift));
  }
  validate_functor(d);
  return d;
}

}  // namespace

SpectrifyResult spectrify(const ActionPtr& action, const StabObject& lax_object, const Cap& cap) {
  const Action& act = *action;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& a = *act.category();
  const std::size_t n = ic.num_objects();

  TransportCat tr = transport_category(act.monoidal(), cap);

  // one certified colimit per level
  std::vector<FinFunctor> diagrams(n);
  std::vector<Cocone> cones(n);
  for (std::size_t z = 0; z < n; ++z) {
    diagrams[z] = shift_diagram(act, tr, lax_object, static_cast<ObjId>(z));
    try {
      cones[z] = colimit(diagrams[z], cap);
    } catch (const ValidationError& e) {
      if (e.kind() == ErrorKind::NoColimit)
        throw ValidationError(ErrorKind::NoColimit,
                              "level " + ic.obj_name(static_cast<ObjId>(z)) + ": " + e.witness());
      throw;
    }
  }

  auto tr_index_of = [&](ObjId u) {  // acting object -> transport object index
    return *tr.cat->object_index(ic.obj_name(u));
  };

  StabObject le;
  le.mode = StabMode::strict;
  le.E.src = act.monoidal()->base();
  le.E.tgt = act.category();
  le.E.ob_map.resize(n);
  le.E.mor_map.resize(ic.num_morphisms());
  for (std::size_t z = 0; z < n; ++z) le.E.ob_map[z] = cones[z].apex;

  // LE on acting morphisms: mediate from the universal cocone at the source
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId g = static_cast<MorId>(m);
    std::size_t z = static_cast<std::size_t>(ic.src(g));
    std::size_t z2 = static_cast<std::size_t>(ic.tgt(g));
    Cocone translated;
    translated.apex = cones[z2].apex;
    translated.legs.resize(tr.cat->num_objects());
    for (std::size_t t = 0; t < tr.cat->num_objects(); ++t) {
      ObjId u = *ic.object_index(tr.cat->obj_name(static_cast<ObjId>(t)));
      MorId step = act.on_object(u).on_mor(
          lax_object.E.on_mor(act.mulm(g, ic.identity(u))));
      translated.legs[t] = a.compose(cones[z2].legs[t], step);
    }
    auto mediators = mediating_morphisms(diagrams[z], cones[z], translated);
    if (mediators.size() != 1)
      throw ValidationError(ErrorKind::NoColimit,
                            "mediating morphism for level map " + ic.mor_name(g) +
                                " is not unique");
    le.E.mor_map[m] = mediators[0];
  }
  validate_functor(le.E);

  // structure isomorphisms by comparing two certified colimits of the same
  // restricted diagram
  le.sigma.assign(n * n, -1);
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t xv = 0; xv < n; ++xv) {
      ObjId zz = static_cast<ObjId>(z), xx = static_cast<ObjId>(xv);
      ObjId zx = act.mul(zz, xx);

      // restriction functor j_x : Tr(I) -> Tr(I), u ↦ mul(x,u)
      FinFunctor jx;
      jx.src = tr.cat;
      jx.tgt = tr.cat;
      jx.ob_map.resize(tr.cat->num_objects());
      jx.mor_map.resize(tr.cat->num_morphisms());
      for (std::size_t t = 0; t < tr.cat->num_objects(); ++t) {
        ObjId u = *ic.object_index(tr.cat->obj_name(static_cast<ObjId>(t)));
        jx.ob_map[t] = tr_index_of(act.mul(xx, u));
      }
      for (std::size_t m = 0; m < tr.cat->num_morphisms(); ++m) {
        ObjId u = *ic.object_index(tr.cat->obj_name(tr.cat->src(static_cast<MorId>(m))));
        auto [w, f] = tr.pairs[m];
        MorId f2 = act.mulm(ic.identity(xx), f);
        auto target = tr.morphism_for(act.mul(xx, u), w, f2);
        if (!target)
          throw ValidationError(ErrorKind::Malformed, "transport restriction left the category");
        jx.mor_map[m] = *target;
      }
      validate_functor(jx);

      FinFunctor restricted = compose_functors(diagrams[z], jx);
      FinFunctor whiskered = compose_functors(act.on_object(xx), diagrams[static_cast<std::size_t>(zx)]);
      if (!(restricted.ob_map == whiskered.ob_map && restricted.mor_map == whiskered.mor_map))
        throw ValidationError(ErrorKind::NotSymmetric,
                              "restricted and whiskered shift diagrams disagree at level " +
                                  ic.obj_name(zz) + ", shift " + ic.obj_name(xx));

      // cocone W: α^x applied to the colimit of the shifted level — this is
      // where cocontinuity of the action is certified
      Cocone w_cone;
      w_cone.apex = act.on_object(xx).on_ob(cones[static_cast<std::size_t>(zx)].apex);
      w_cone.legs.resize(tr.cat->num_objects());
      for (std::size_t t = 0; t < tr.cat->num_objects(); ++t)
        w_cone.legs[t] =
            act.on_object(xx).on_mor(cones[static_cast<std::size_t>(zx)].legs[t]);
      certify_cocone(whiskered, w_cone, cap);
      if (!w_cone.strict)
        throw ValidationError(ErrorKind::ActionNotCocontinuous,
                              "acting object " + ic.obj_name(xx) + " does not preserve the level-" +
                                  ic.obj_name(zx) + " colimit");

      // cocone R: the original colimit restricted along j_x
      Cocone r_cone;
      r_cone.apex = cones[z].apex;
      r_cone.legs.resize(tr.cat->num_objects());
      for (std::size_t t = 0; t < tr.cat->num_objects(); ++t)
        r_cone.legs[t] = cones[z].legs[static_cast<std::size_t>(jx.ob_map[t])];
      certify_cocone(restricted, r_cone, cap);
      if (!r_cone.strict)
        throw ValidationError(ErrorKind::NoColimit,
                              "restriction along the transport shift is not universal at level " +
                                  ic.obj_name(zz));

      auto mediators = mediating_morphisms(restricted, r_cone, w_cone);
      if (mediators.size() != 1)
        throw ValidationError(ErrorKind::NoColimit, "structure mediator is not unique");
      le.sigma[z * n + xv] = mediators[0];
    }
  }

  validate_stab_object(act, le);

  SpectrifyResult result;
  result.object = std::move(le);
  result.unit.resize(n);
  for (std::size_t z = 0; z < n; ++z)
    result.unit[z] = cones[z].legs[static_cast<std::size_t>(tr_index_of(act.unit()))];
  return result;
}

AdjunctionVerdict check_adjunction(const ActionPtr& action, const Cap& cap) {
  const Action& act = *action;
  StabCategory lax = stabilize(action, StabMode::lax, cap);
  StabCategory strict = stabilize(action, StabMode::strict, cap);

  AdjunctionVerdict verdict;
  verdict.lax_objects = lax.objects.size();
  verdict.strict_objects = strict.objects.size();

  // spectrify every lax object; record L on objects and the unit maps
  std::vector<ObjId> l_ob(lax.objects.size());
  std::vector<LevelFamily> units(lax.objects.size());
  std::vector<StabObject> l_img(lax.objects.size());
  for (std::size_t i = 0; i < lax.objects.size(); ++i) {
    SpectrifyResult r = spectrify(action, lax.objects[i], cap);
    auto idx = strict.find_object(r.object);
    if (!idx) {
      verdict.holds = false;
      verdict.detail = "spectrification image missing from the strict stabilization";
      return verdict;
    }
    l_ob[i] = *idx;
    l_img[i] = r.object;
    units[i] = r.unit;
    if (!stab_morphism_ok(act, lax.objects[i], r.object, r.unit)) {
      verdict.holds = false;
      verdict.detail = "adjunction unit is not a lax morphism";
      return verdict;
    }
  }

  // ι : strict objects located inside the lax enumeration
  std::vector<ObjId> iota_ob(strict.objects.size());
  for (std::size_t i = 0; i < strict.objects.size(); ++i) {
    StabObject as_lax = strict.objects[i];
    as_lax.mode = StabMode::lax;
    auto idx = lax.find_object(as_lax);
    if (!idx) {
      verdict.holds = false;
      verdict.detail = "strict object missing from the lax stabilization";
      return verdict;
    }
    iota_ob[i] = *idx;
  }

  // per-object shift diagrams and certified colimits, shared by L on
  // morphisms below
  TransportCat tr = transport_category(act.monoidal(), cap);
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& amb = *act.category();
  const std::size_t n = ic.num_objects();
  std::vector<std::vector<FinFunctor>> diagrams(lax.objects.size());
  std::vector<std::vector<Cocone>> cones(lax.objects.size());
  for (std::size_t i = 0; i < lax.objects.size(); ++i) {
    diagrams[i].resize(n);
    cones[i].resize(n);
    for (std::size_t z = 0; z < n; ++z) {
      diagrams[i][z] = shift_diagram(act, tr, lax.objects[i], static_cast<ObjId>(z));
      cones[i][z] = colimit(diagrams[i][z], cap);
    }
  }

  // L on lax morphisms, mediated per level through the colimit legs
  auto l_mor = [&](std::size_t i, std::size_t j, const LevelFamily& psi) -> LevelFamily {
    LevelFamily out(psi.size());
    for (std::size_t z = 0; z < psi.size(); ++z) {
      Cocone translated;
      translated.apex = cones[j][z].apex;
      translated.legs.resize(tr.cat->num_objects());
      for (std::size_t t = 0; t < tr.cat->num_objects(); ++t) {
        ObjId u = *ic.object_index(tr.cat->obj_name(static_cast<ObjId>(t)));
        MorId step = act.on_object(u).on_mor(
            psi[static_cast<std::size_t>(act.mul(static_cast<ObjId>(z), u))]);
        translated.legs[t] = amb.compose(cones[j][z].legs[t], step);
      }
      auto mediators = mediating_morphisms(diagrams[i][z], cones[i][z], translated);
      if (mediators.size() != 1)
        throw ValidationError(ErrorKind::NoColimit, "L on morphisms is not uniquely mediated");
      out[z] = mediators[0];
    }
    return out;
  };

  // hom bijection and naturality
  std::size_t pairs = 0;
  for (std::size_t xi = 0; xi < lax.objects.size(); ++xi) {
    for (std::size_t yi = 0; yi < strict.objects.size(); ++yi) {
      ++pairs;
      StabObject y_lax = strict.objects[yi];
      y_lax.mode = StabMode::lax;
      std::vector<LevelFamily> strict_homs =
          stab_hom(act, l_img[xi], strict.objects[yi], cap);
      std::vector<LevelFamily> lax_homs = stab_hom(act, lax.objects[xi], y_lax, cap);

      // φ(g) = ι(g) ∘ unit_X, levelwise
      std::vector<LevelFamily> images;
      for (const LevelFamily& g : strict_homs) {
        LevelFamily img = stab_compose(act, g, units[xi]);
        if (!stab_morphism_ok(act, lax.objects[xi], y_lax, img)) {
          verdict.holds = false;
          verdict.detail = "transposed morphism is not a lax morphism";
          return verdict;
        }
        images.push_back(std::move(img));
      }
      std::vector<LevelFamily> sorted_images = images;
      std::sort(sorted_images.begin(), sorted_images.end());
      if (std::adjacent_find(sorted_images.begin(), sorted_images.end()) != sorted_images.end()) {
        verdict.holds = false;
        verdict.detail = "hom transposition is not injective";
        return verdict;
      }
      std::vector<LevelFamily> sorted_lax = lax_homs;
      std::sort(sorted_lax.begin(), sorted_lax.end());
      if (sorted_images != sorted_lax) {
        verdict.holds = false;
        verdict.detail = "hom transposition is not onto Hom(X, ιY) at pair (" +
                         std::to_string(xi) + ", " + std::to_string(yi) + ")";
        return verdict;
      }
    }
  }

  // naturality in the lax slot: (Lψ)∘unit_i = unit_j∘ψ for every lax morphism
  for (std::size_t m = 0; m < lax.morphisms.size(); ++m) {
    MorId mm = static_cast<MorId>(m);
    std::size_t i = static_cast<std::size_t>(lax.cat->src(mm));
    std::size_t j = static_cast<std::size_t>(lax.cat->tgt(mm));
    LevelFamily lpsi = l_mor(i, j, lax.morphisms[m]);
    if (stab_compose(act, lpsi, units[i]) != stab_compose(act, units[j], lax.morphisms[m])) {
      verdict.holds = false;
      verdict.detail = "unit is not natural at a lax morphism";
      return verdict;
    }
  }
  // naturality in the strict slot: φ(χ∘g) = ι(χ)∘φ(g)
  for (std::size_t xi = 0; xi < lax.objects.size(); ++xi)
    for (std::size_t m = 0; m < strict.morphisms.size(); ++m) {
      MorId mm = static_cast<MorId>(m);
      std::size_t yi = static_cast<std::size_t>(strict.cat->src(mm));
      for (const LevelFamily& g : stab_hom(act, l_img[xi], strict.objects[yi], cap)) {
        LevelFamily lhs =
            stab_compose(act, stab_compose(act, strict.morphisms[m], g), units[xi]);
        LevelFamily rhs =
            stab_compose(act, strict.morphisms[m], stab_compose(act, g, units[xi]));
        if (lhs != rhs) {
          verdict.holds = false;
          verdict.detail = "transposition is not natural in the strict slot";
          return verdict;
        }
      }
    }

  verdict.holds = true;
  verdict.pairs_checked = pairs;
  verdict.detail = "hom bijection and naturality certified";
  return verdict;
}

AdjointActionData validate_adjoint(ActionPtr alpha, ActionPtr alpha_bar,
                                   std::vector<NatTrans> unit, std::vector<NatTrans> counit) {
  const Action& a = *alpha;
  const Action& b = *alpha_bar;
  if (a.monoidal().get() != b.monoidal().get() || a.category().get() != b.category().get())
    throw ValidationError(ErrorKind::AdjunctionInvalid,
                          "adjoint actions must share the acting and ambient categories");
  if (a.side() == b.side())
    throw ValidationError(ErrorKind::AdjunctionInvalid,
                          "adjoint actions must be mute on opposite sides");
  const FinCat& ic = *a.monoidal()->base();
  const FinCat& c = *a.category();
  const std::size_t n = ic.num_objects();
  if (unit.size() != n || counit.size() != n)
    throw ValidationError(ErrorKind::AdjunctionInvalid, "unit/counit tables have wrong arity");

  for (std::size_t u = 0; u < n; ++u) {
    ObjId uu = static_cast<ObjId>(u);
    const FinFunctor& right = a.on_object(uu);
    const FinFunctor& left = b.on_object(uu);
    NatTrans& eta = unit[u];
    NatTrans& eps = counit[u];
    FinFunctor id = identity_functor(a.category());
    if (!(eta.src == id) || !(eta.tgt == compose_functors(right, left)))
      throw ValidationError(ErrorKind::AdjunctionInvalid,
                            "unit at " + ic.obj_name(uu) + " has wrong endpoints");
    if (!(eps.src == compose_functors(left, right)) || !(eps.tgt == id))
      throw ValidationError(ErrorKind::AdjunctionInvalid,
                            "counit at " + ic.obj_name(uu) + " has wrong endpoints");
    validate_nat_trans(eta);
    validate_nat_trans(eps);
    // triangle identities
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      ObjId xx = static_cast<ObjId>(x);
      MorId t1 = c.compose(eps.at(left.on_ob(xx)), left.on_mor(eta.at(xx)));
      if (t1 != c.identity(left.on_ob(xx)))
        throw ValidationError(ErrorKind::AdjunctionInvalid,
                              "left triangle fails at (" + ic.obj_name(uu) + ", " +
                                  c.obj_name(xx) + ")");
      MorId t2 = c.compose(right.on_mor(eps.at(xx)), eta.at(right.on_ob(xx)));
      if (t2 != c.identity(right.on_ob(xx)))
        throw ValidationError(ErrorKind::AdjunctionInvalid,
                              "right triangle fails at (" + ic.obj_name(uu) + ", " +
                                  c.obj_name(xx) + ")");
    }
  }

  AdjointActionData adj;
  adj.alpha = std::move(alpha);
  adj.alpha_bar = std::move(alpha_bar);
  adj.unit = std::move(unit);
  adj.counit = std::move(counit);
  return adj;
}

namespace {

// adjunct of f : x -> α^v(y) is counit_y ∘ ᾱ^v(f) : ᾱ^v(x) -> y
MorId transpose_down(const AdjointActionData& adj, ObjId v, MorId f, ObjId y) {
  const FinCat& c = *adj.alpha->category();
  return c.compose(adj.counit[static_cast<std::size_t>(v)].at(y),
                   adj.alpha_bar->on_object(v).on_mor(f));
}

// adjunct of g : ᾱ^v(x) -> y is α^v(g) ∘ unit_x : x -> α^v(y)
MorId transpose_up(const AdjointActionData& adj, ObjId v, MorId g, ObjId x) {
  const FinCat& c = *adj.alpha->category();
  return c.compose(adj.alpha->on_object(v).on_mor(g),
                   adj.unit[static_cast<std::size_t>(v)].at(x));
}

}  // namespace

void validate_colax_object(const AdjointActionData& adj, const CoLaxObject& x) {
  const Action& bar = *adj.alpha_bar;
  const Action& act = *adj.alpha;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& a = *act.category();
  const std::size_t n = ic.num_objects();
  validate_functor(x.E);
  if (x.sigma.size() != n * n)
    throw ValidationError(ErrorKind::Malformed, "colax sigma table has wrong arity");

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      MorId s = x.sig(uu, vv, n);
      if (a.src(s) != bar.on_object(vv).on_ob(x.E.on_ob(uu)) ||
          a.tgt(s) != x.E.on_ob(act.mul(uu, vv)))
        throw ValidationError(ErrorKind::MismatchedEndpoints,
                              "colax sigma has wrong endpoints at (" + ic.obj_name(uu) + ", " +
                                  ic.obj_name(vv) + ")");
    }
  for (std::size_t u = 0; u < n; ++u) {
    ObjId uu = static_cast<ObjId>(u);
    if (x.sig(uu, act.unit(), n) != a.identity(x.E.on_ob(uu)))
      throw ValidationError(ErrorKind::UnitFailure, "colax sigma at the unit is not the identity");
  }
  // co-triangle: σ(u, mul(v,w)) = σ(mul(u,v), w) ∘ ᾱ^w(σ(u,v))
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v), ww = static_cast<ObjId>(w);
        MorId lhs = x.sig(uu, act.mul(vv, ww), n);
        MorId rhs = a.compose(x.sig(act.mul(uu, vv), ww, n),
                              bar.on_object(ww).on_mor(x.sig(uu, vv, n)));
        if (lhs != rhs)
          throw ValidationError(ErrorKind::TriangleFailure,
                                "colax triangle at (" + ic.obj_name(uu) + ", " + ic.obj_name(vv) +
                                    ", " + ic.obj_name(ww) + ")");
      }
  // naturality in both indices
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId f = static_cast<MorId>(m);
    ObjId u = ic.src(f), u2 = ic.tgt(f);
    for (std::size_t v = 0; v < n; ++v) {
      ObjId vv = static_cast<ObjId>(v);
      MorId lhs = a.compose(x.sig(u2, vv, n), bar.on_object(vv).on_mor(x.E.on_mor(f)));
      MorId rhs = a.compose(x.E.on_mor(act.mulm(f, ic.identity(vv))), x.sig(u, vv, n));
      if (lhs != rhs)
        throw ValidationError(ErrorKind::NaturalityFailure,
                              "colax naturality (level) at " + ic.mor_name(f));
    }
  }
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId g = static_cast<MorId>(m);
    ObjId v = ic.src(g), v2 = ic.tgt(g);
    for (std::size_t u = 0; u < n; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      MorId lhs = a.compose(x.E.on_mor(act.mulm(ic.identity(uu), g)), x.sig(uu, v, n));
      MorId rhs = a.compose(x.sig(uu, v2, n),
                            adj.alpha_bar->on_morphism(g).at(x.E.on_ob(uu)));
      if (lhs != rhs)
        throw ValidationError(ErrorKind::NaturalityFailure,
                              "colax naturality (acting) at " + ic.mor_name(g));
    }
  }
}

std::vector<CoLaxObject> enumerate_colax_objects(const AdjointActionData& adj, const Cap& cap) {
  const Action& act = *adj.alpha;
  const Action& bar = *adj.alpha_bar;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& a = *act.category();
  const std::size_t n = ic.num_objects();

  std::vector<CoLaxObject> out;
  for (const FinFunctor& e : enumerate_functors(act.monoidal()->base(), act.category(), cap)) {
    std::vector<std::vector<MorId>> candidates(n * n);
    std::uint64_t estimate = 1;
    bool feasible = true;
    for (std::size_t u = 0; u < n && feasible; ++u)
      for (std::size_t v = 0; v < n && feasible; ++v) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
        std::vector<MorId>& slot = candidates[u * n + v];
        if (vv == act.unit()) {
          slot.push_back(a.identity(e.on_ob(uu)));
        } else {
          for (MorId m : a.hom(bar.on_object(vv).on_ob(e.on_ob(uu)), e.on_ob(act.mul(uu, vv))))
            slot.push_back(m);
        }
        feasible = !slot.empty();
        estimate = sat_mul(estimate, slot.size());
      }
    if (!feasible) continue;
    cap.require(estimate);

    CoLaxObject x;
    x.E = e;
    x.sigma.assign(n * n, -1);
    std::function<void(std::size_t)> dfs = [&](std::size_t pos) {
      if (pos == n * n) {
        try {
          validate_colax_object(adj, x);
          out.push_back(x);
        } catch (const ValidationError&) {
        }
        return;
      }
      for (MorId cand : candidates[pos]) {
        x.sigma[pos] = cand;
        dfs(pos + 1);
      }
    };
    dfs(0);
  }
  return out;
}

bool colax_morphism_ok(const AdjointActionData& adj, const CoLaxObject& x, const CoLaxObject& y,
                       const LevelFamily& z) {
  const Action& act = *adj.alpha;
  const Action& bar = *adj.alpha_bar;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& a = *act.category();
  const std::size_t n = ic.num_objects();
  for (std::size_t u = 0; u < n; ++u) {
    if (a.src(z[u]) != x.E.on_ob(static_cast<ObjId>(u)) ||
        a.tgt(z[u]) != y.E.on_ob(static_cast<ObjId>(u)))
      return false;
  }
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId f = static_cast<MorId>(m);
    std::size_t u = static_cast<std::size_t>(ic.src(f));
    std::size_t u2 = static_cast<std::size_t>(ic.tgt(f));
    if (a.compose(z[u2], x.E.on_mor(f)) != a.compose(y.E.on_mor(f), z[u])) return false;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      MorId lhs = a.compose(z[static_cast<std::size_t>(act.mul(uu, vv))], x.sig(uu, vv, n));
      MorId rhs = a.compose(y.sig(uu, vv, n), bar.on_object(vv).on_mor(z[u]));
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<LevelFamily> colax_hom(const AdjointActionData& adj, const CoLaxObject& x,
                                   const CoLaxObject& y, const Cap& cap) {
  const FinCat& a = *adj.alpha->category();
  const std::size_t n = adj.alpha->monoidal()->base()->num_objects();
  std::uint64_t estimate = 1;
  for (std::size_t u = 0; u < n; ++u)
    estimate =
        sat_mul(estimate, std::max<std::uint64_t>(
                              1, a.hom(x.E.on_ob(static_cast<ObjId>(u)),
                                       y.E.on_ob(static_cast<ObjId>(u)))
                                     .size()));
  cap.require(estimate);
  std::vector<LevelFamily> out;
  LevelFamily current(n, -1);
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == n) {
      if (colax_morphism_ok(adj, x, y, current)) out.push_back(current);
      return;
    }
    for (MorId comp :
         a.hom(x.E.on_ob(static_cast<ObjId>(u)), y.E.on_ob(static_cast<ObjId>(u)))) {
      current[u] = comp;
      dfs(u + 1);
    }
  };
  dfs(0);
  return out;
}

CoLaxObject transport_adjoint(const AdjointActionData& adj, const StabObject& lax_object) {
  const Action& act = *adj.alpha;
  const std::size_t n = act.monoidal()->base()->num_objects();
  CoLaxObject out;
  out.E = lax_object.E;
  out.sigma.resize(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      out.sigma[u * n + v] = transpose_down(adj, vv, lax_object.sig(uu, vv, n),
                                            lax_object.E.on_ob(act.mul(uu, vv)));
    }
  validate_colax_object(adj, out);
  return out;
}

StabObject transport_adjoint_back(const AdjointActionData& adj, const CoLaxObject& colax_object) {
  const Action& act = *adj.alpha;
  const std::size_t n = act.monoidal()->base()->num_objects();
  StabObject out;
  out.mode = StabMode::lax;
  out.E = colax_object.E;
  out.sigma.resize(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      out.sigma[u * n + v] =
          transpose_up(adj, vv, colax_object.sig(uu, vv, n), colax_object.E.on_ob(uu));
    }
  validate_stab_object(act, out);
  return out;
}

TransportVerdict check_transport_adjoint(const AdjointActionData& adj, const Cap& cap) {
  TransportVerdict verdict;
  std::vector<StabObject> lax = enumerate_stab_objects(adj.alpha, StabMode::lax, cap);
  std::vector<CoLaxObject> colax = enumerate_colax_objects(adj, cap);
  verdict.objects = lax.size();

  if (lax.size() != colax.size()) {
    verdict.isomorphism = false;
    verdict.detail = "object counts differ (" + std::to_string(lax.size()) + " vs " +
                     std::to_string(colax.size()) + ")";
    return verdict;
  }

  auto find_colax = [&](const CoLaxObject& x) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < colax.size(); ++i)
      if (colax[i].E == x.E && colax[i].sigma == x.sigma) return i;
    return std::nullopt;
  };

  std::vector<std::size_t> image(lax.size());
  std::vector<bool> hit(colax.size(), false);
  for (std::size_t i = 0; i < lax.size(); ++i) {
    CoLaxObject t = transport_adjoint(adj, lax[i]);
    auto idx = find_colax(t);
    if (!idx) {
      verdict.isomorphism = false;
      verdict.detail = "transported object missing from the adjoint-side enumeration";
      return verdict;
    }
    image[i] = *idx;
    hit[*idx] = true;
    // involution
    StabObject back = transport_adjoint_back(adj, t);
    if (!(back.E == lax[i].E) || back.sigma != lax[i].sigma) {
      verdict.isomorphism = false;
      verdict.detail = "transposition is not involutive at object " + std::to_string(i);
      return verdict;
    }
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
    verdict.isomorphism = false;
    verdict.detail = "transposition is not surjective on objects";
    return verdict;
  }

  // hom-set equality: the same level families are morphisms on both sides
  for (std::size_t i = 0; i < lax.size(); ++i)
    for (std::size_t j = 0; j < lax.size(); ++j) {
      std::vector<LevelFamily> a_homs = stab_hom(*adj.alpha, lax[i], lax[j], cap);
      std::vector<LevelFamily> b_homs = colax_hom(adj, colax[image[i]], colax[image[j]], cap);
      std::sort(a_homs.begin(), a_homs.end());
      std::sort(b_homs.begin(), b_homs.end());
      if (a_homs != b_homs) {
        verdict.isomorphism = false;
        verdict.detail = "hom-sets differ at pair (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")";
        return verdict;
      }
    }

  verdict.isomorphism = true;
  verdict.detail = "isomorphism of lax stabilizations certified (involutive on objects)";
  return verdict;
}

}  // namespace stabkit
