#include "stabkit/stabilize.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <functional>
#include <unordered_map>

namespace stabkit {

namespace {

std::string padded(const char* prefix, std::size_t i, std::size_t count) {
  std::string num = std::to_string(i);
  std::string width = std::to_string(count == 0 ? 0 : count - 1);
  return std::string(prefix) + std::string(width.size() - num.size(), '0') + num;
}

std::size_t acting_objects(const Action& action) {
  return action.monoidal()->base()->num_objects();
}

// target object of σ(u,v): α^v(E(mul(u,v)))
ObjId sigma_target(const Action& action, const StabObject& x, ObjId u, ObjId v) {
  return action.on_object(v).on_ob(x.E.on_ob(action.mul(u, v)));
}

std::string sigma_witness(const Action& action, ObjId u, ObjId v) {
  const FinCat& ic = *action.monoidal()->base();
  return "(" + ic.obj_name(u) + ", " + ic.obj_name(v) + ")";
}

}  // namespace

void validate_stab_object(const Action& action, const StabObject& x) {
  const FinCat& ic = *action.monoidal()->base();
  const FinCat& a = *action.category();
  const std::size_t n = ic.num_objects();

  if (x.E.src.get() != action.monoidal()->base().get() ||
      x.E.tgt.get() != action.category().get())
    throw ValidationError(ErrorKind::Malformed, "stab object indexed by the wrong category");
  validate_functor(x.E);
  if (x.sigma.size() != n * n)
    throw ValidationError(ErrorKind::Malformed, "sigma table has wrong arity");

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      MorId s = x.sig(uu, vv, n);
      if (a.src(s) != x.E.on_ob(uu) || a.tgt(s) != sigma_target(action, x, uu, vv))
        throw ValidationError(ErrorKind::MismatchedEndpoints,
                              "sigma" + sigma_witness(action, uu, vv) + " has wrong endpoints");
      if (x.mode == StabMode::strict && !a.is_iso(s))
        throw ValidationError(ErrorKind::NonInvertibleComponent,
                              "sigma" + sigma_witness(action, uu, vv));
    }

  // unit law
  for (std::size_t u = 0; u < n; ++u) {
    ObjId uu = static_cast<ObjId>(u);
    if (x.sig(uu, action.unit(), n) != a.identity(x.E.on_ob(uu)))
      throw ValidationError(ErrorKind::UnitFailure,
                            "sigma(" + ic.obj_name(uu) + ", unit) is not the identity");
  }

  // triangle: σ(u, mul(v,w)) = α^v(σ(mul(u,v), w)) ∘ σ(u,v)
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v), ww = static_cast<ObjId>(w);
        MorId lhs = x.sig(uu, action.mul(vv, ww), n);
        MorId rhs = a.compose(action.on_object(vv).on_mor(x.sig(action.mul(uu, vv), ww, n)),
                              x.sig(uu, vv, n));
        if (lhs != rhs)
          throw ValidationError(ErrorKind::TriangleFailure,
                                "sigma triangle at (" + ic.obj_name(uu) + ", " + ic.obj_name(vv) +
                                    ", " + ic.obj_name(ww) + ")");
      }

  // naturality in the level index
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId f = static_cast<MorId>(m);
    ObjId u = ic.src(f), u2 = ic.tgt(f);
    for (std::size_t v = 0; v < n; ++v) {
      ObjId vv = static_cast<ObjId>(v);
      MorId lhs = a.compose(x.sig(u2, vv, n), x.E.on_mor(f));
      MorId rhs = a.compose(
          action.on_object(vv).on_mor(x.E.on_mor(action.mulm(f, ic.identity(vv)))),
          x.sig(u, vv, n));
      if (lhs != rhs)
        throw ValidationError(ErrorKind::NaturalityFailure,
                              "sigma naturality (level) at " + ic.mor_name(f));
    }
  }
  // naturality in the acting index
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId g = static_cast<MorId>(m);
    ObjId v = ic.src(g), v2 = ic.tgt(g);
    for (std::size_t u = 0; u < n; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      MorId route = a.compose(
          action.on_morphism(g).at(x.E.on_ob(action.mul(uu, v2))),
          a.compose(action.on_object(v).on_mor(x.E.on_mor(action.mulm(ic.identity(uu), g))),
                    x.sig(uu, v, n)));
      if (x.sig(uu, v2, n) != route)
        throw ValidationError(ErrorKind::NaturalityFailure,
                              "sigma naturality (acting) at " + ic.mor_name(g));
    }
  }
}

bool stab_morphism_ok(const Action& action, const StabObject& x, const StabObject& y,
                      const LevelFamily& z) {
  const FinCat& ic = *action.monoidal()->base();
  const FinCat& a = *action.category();
  const std::size_t n = ic.num_objects();
  if (z.size() != n) return false;
  for (std::size_t u = 0; u < n; ++u) {
    MorId comp = z[u];
    if (a.src(comp) != x.E.on_ob(static_cast<ObjId>(u)) ||
        a.tgt(comp) != y.E.on_ob(static_cast<ObjId>(u)))
      return false;
  }
  // naturality over acting morphisms
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    MorId f = static_cast<MorId>(m);
    std::size_t u = static_cast<std::size_t>(ic.src(f));
    std::size_t u2 = static_cast<std::size_t>(ic.tgt(f));
    if (a.compose(z[u2], x.E.on_mor(f)) != a.compose(y.E.on_mor(f), z[u])) return false;
  }
  // compatibility with σ
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
      MorId lhs = a.compose(y.sig(uu, vv, n), z[u]);
      MorId rhs = a.compose(
          action.on_object(vv).on_mor(z[static_cast<std::size_t>(action.mul(uu, vv))]),
          x.sig(uu, vv, n));
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<LevelFamily> stab_hom(const Action& action, const StabObject& x, const StabObject& y,
                                  const Cap& cap) {
  const FinCat& ic = *action.monoidal()->base();
  const FinCat& a = *action.category();
  const std::size_t n = ic.num_objects();

  std::uint64_t estimate = 1;
  for (std::size_t u = 0; u < n; ++u)
    estimate = sat_mul(estimate,
                       std::max<std::uint64_t>(
                           1, a.hom(x.E.on_ob(static_cast<ObjId>(u)), y.E.on_ob(static_cast<ObjId>(u)))
                                  .size()));
  cap.require(estimate);

  std::vector<LevelFamily> out;
  LevelFamily current(n, -1);
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == n) {
      if (stab_morphism_ok(action, x, y, current)) out.push_back(current);
      return;
    }
    for (MorId comp :
         a.hom(x.E.on_ob(static_cast<ObjId>(u)), y.E.on_ob(static_cast<ObjId>(u)))) {
      current[u] = comp;
      // prune with σ-compat constraints fully inside the assigned prefix
      bool ok = true;
      for (std::size_t uu = 0; uu <= u && ok; ++uu)
        for (std::size_t vv = 0; vv < n && ok; ++vv) {
          std::size_t prod = static_cast<std::size_t>(
              action.mul(static_cast<ObjId>(uu), static_cast<ObjId>(vv)));
          if (prod > u) continue;
          MorId lhs = a.compose(y.sig(static_cast<ObjId>(uu), static_cast<ObjId>(vv), n),
                                current[uu]);
          MorId rhs =
              a.compose(action.on_object(static_cast<ObjId>(vv)).on_mor(current[prod]),
                        x.sig(static_cast<ObjId>(uu), static_cast<ObjId>(vv), n));
          ok = lhs == rhs;
        }
      if (ok) dfs(u + 1);
    }
  };
  dfs(0);
  return out;
}

LevelFamily stab_identity(const Action& action, const StabObject& x) {
  const std::size_t n = acting_objects(action);
  LevelFamily z(n);
  for (std::size_t u = 0; u < n; ++u)
    z[u] = action.category()->identity(x.E.on_ob(static_cast<ObjId>(u)));
  return z;
}

LevelFamily stab_compose(const Action& action, const LevelFamily& later,
                         const LevelFamily& earlier) {
  LevelFamily z(later.size());
  for (std::size_t u = 0; u < later.size(); ++u)
    z[u] = action.category()->compose(later[u], earlier[u]);
  return z;
}

std::vector<StabObject> enumerate_stab_objects(const ActionPtr& action, StabMode mode,
                                               const Cap& cap) {
  const Action& act = *action;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& a = *act.category();
  const std::size_t n = ic.num_objects();

  std::vector<StabObject> out;
  for (const FinFunctor& e : enumerate_functors(act.monoidal()->base(), act.category(), cap)) {
    // candidates per σ slot, row-major
    std::vector<std::vector<MorId>> candidates(n * n);
    std::uint64_t estimate = 1;
    bool feasible = true;
    for (std::size_t u = 0; u < n && feasible; ++u)
      for (std::size_t v = 0; v < n && feasible; ++v) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
        std::vector<MorId>& slot = candidates[u * n + v];
        StabObject probe{mode, e, {}};
        ObjId target = sigma_target(act, probe, uu, vv);
        if (vv == act.unit()) {
          slot.push_back(a.identity(e.on_ob(uu)));
        } else {
          for (MorId m : a.hom(e.on_ob(uu), target))
            if (mode == StabMode::lax || a.is_iso(m)) slot.push_back(m);
        }
        feasible = !slot.empty();
        estimate = sat_mul(estimate, slot.size());
      }
    if (!feasible) continue;
    cap.require(estimate);

    StabObject x;
    x.mode = mode;
    x.E = e;
    x.sigma.assign(n * n, -1);

    // prune triangles/naturality whose slots all live in the assigned prefix
    std::function<void(std::size_t)> dfs = [&](std::size_t pos) {
      if (pos == n * n) {
        try {
          validate_stab_object(act, x);
          out.push_back(x);
        } catch (const ValidationError&) {
        }
        return;
      }
      for (MorId cand : candidates[pos]) {
        x.sigma[pos] = cand;
        bool ok = true;
        // triangle instances with all three slots <= pos
        for (std::size_t u = 0; u < n && ok; ++u)
          for (std::size_t v = 0; v < n && ok; ++v)
            for (std::size_t w = 0; w < n && ok; ++w) {
              ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v),
                    ww = static_cast<ObjId>(w);
              std::size_t p1 = u * n + static_cast<std::size_t>(act.mul(vv, ww));
              std::size_t p2 = static_cast<std::size_t>(act.mul(uu, vv)) * n + w;
              std::size_t p3 = u * n + v;
              if (p1 > pos || p2 > pos || p3 > pos) continue;
              if (p1 != pos && p2 != pos && p3 != pos) continue;
              MorId lhs = x.sigma[p1];
              MorId rhs = a.compose(act.on_object(vv).on_mor(x.sigma[p2]), x.sigma[p3]);
              ok = lhs == rhs;
            }
        if (ok) dfs(pos + 1);
      }
    };
    dfs(0);
  }
  return out;
}

std::optional<ObjId> StabCategory::find_object(const StabObject& x) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].E == x.E && objects[i].sigma == x.sigma) return static_cast<ObjId>(i);
  return std::nullopt;
}

std::optional<MorId> StabCategory::find_morphism(ObjId from, ObjId to,
                                                 const LevelFamily& z) const {
  for (MorId m : cat->hom(from, to))
    if (morphisms[static_cast<std::size_t>(m)] == z) return m;
  return std::nullopt;
}

StabCategory stabilize(const ActionPtr& action, StabMode mode, const Cap& cap) {
  const Action& act = *action;
  const FinCat& ic = *act.monoidal()->base();
  const std::size_t n = ic.num_objects();

  StabCategory result;
  result.input = action;
  result.mode = mode;
  result.objects = enumerate_stab_objects(action, mode, cap);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    names.push_back(padded("X", i, result.objects.size()));

  std::vector<Mor> morphisms;
  std::vector<LevelFamily> families;
  std::map<std::tuple<ObjId, ObjId, LevelFamily>, MorId> family_index;
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    for (std::size_t j = 0; j < result.objects.size(); ++j)
      for (LevelFamily& z : stab_hom(act, result.objects[i], result.objects[j], cap)) {
        family_index[{static_cast<ObjId>(i), static_cast<ObjId>(j), z}] =
            static_cast<MorId>(morphisms.size());
        morphisms.push_back(Mor{"", static_cast<ObjId>(i), static_cast<ObjId>(j)});
        families.push_back(std::move(z));
      }
  cap.require(families.size());
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    morphisms[i].id = padded("f", i, morphisms.size());

  auto locate = [&](ObjId from, ObjId to, const LevelFamily& z) -> MorId {
    auto it = family_index.find({from, to, z});
    if (it == family_index.end())
      throw ValidationError(ErrorKind::Malformed, "level-family composition left the morphism set");
    return it->second;
  };

  std::vector<MorId> identity(result.objects.size());
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    identity[i] = locate(static_cast<ObjId>(i), static_cast<ObjId>(i),
                         stab_identity(act, result.objects[i]));

  std::unordered_map<std::uint64_t, MorId> compose;
  for (std::size_t gi = 0; gi < morphisms.size(); ++gi)
    for (std::size_t fi = 0; fi < morphisms.size(); ++fi) {
      if (morphisms[fi].tgt != morphisms[gi].src) continue;
      compose[pair_key(static_cast<MorId>(gi), static_cast<MorId>(fi))] =
          locate(morphisms[fi].src, morphisms[gi].tgt,
                 stab_compose(act, families[gi], families[fi]));
    }

  result.cat = FinCat::from_tables(std::move(names), std::move(morphisms), std::move(identity),
                                   std::move(compose));
  result.morphisms = std::move(families);

  // object/morphism lookup tables for the induced action
  auto reindex_object = [&](const StabObject& x, ObjId t) {
    StabObject y;
    y.mode = x.mode;
    y.E.src = x.E.src;
    y.E.tgt = x.E.tgt;
    y.E.ob_map.resize(n);
    y.E.mor_map.resize(ic.num_morphisms());
    for (std::size_t v = 0; v < n; ++v)
      y.E.ob_map[v] = x.E.on_ob(act.mul(t, static_cast<ObjId>(v)));
    for (std::size_t m = 0; m < ic.num_morphisms(); ++m)
      y.E.mor_map[m] = x.E.on_mor(act.mulm(ic.identity(t), static_cast<MorId>(m)));
    y.sigma.resize(n * n);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        y.sigma[v * n + w] =
            x.sig(act.mul(t, static_cast<ObjId>(v)), static_cast<ObjId>(w), n);
    return y;
  };

  std::vector<FinFunctor> ind_obj(n);
  for (std::size_t t = 0; t < n; ++t) {
    ObjId tt = static_cast<ObjId>(t);
    FinFunctor f;
    f.src = result.cat;
    f.tgt = result.cat;
    f.ob_map.resize(result.objects.size());
    for (std::size_t i = 0; i < result.objects.size(); ++i) {
      auto target = result.find_object(reindex_object(result.objects[i], tt));
      if (!target)
        throw ValidationError(ErrorKind::Malformed,
                              "induced action left the object set at level " + ic.obj_name(tt));
      f.ob_map[i] = *target;
    }
    f.mor_map.resize(result.morphisms.size());
    for (std::size_t m = 0; m < result.morphisms.size(); ++m) {
      LevelFamily z(n);
      for (std::size_t v = 0; v < n; ++v)
        z[v] = result.morphisms[m][static_cast<std::size_t>(act.mul(tt, static_cast<ObjId>(v)))];
      auto target = result.find_morphism(f.ob_map[static_cast<std::size_t>(result.cat->src(
                                             static_cast<MorId>(m)))],
                                         f.ob_map[static_cast<std::size_t>(result.cat->tgt(
                                             static_cast<MorId>(m)))],
                                         z);
      if (!target)
        throw ValidationError(ErrorKind::Malformed,
                              "induced action left the morphism set at level " + ic.obj_name(tt));
      f.mor_map[m] = *target;
    }
    ind_obj[t] = std::move(f);
  }

  std::vector<NatTrans> ind_mor(ic.num_morphisms());
  for (std::size_t g = 0; g < ic.num_morphisms(); ++g) {
    MorId gg = static_cast<MorId>(g);
    ObjId t = ic.src(gg), t2 = ic.tgt(gg);
    NatTrans cell;
    cell.src = ind_obj[static_cast<std::size_t>(t)];
    cell.tgt = ind_obj[static_cast<std::size_t>(t2)];
    cell.components.resize(result.objects.size());
    for (std::size_t i = 0; i < result.objects.size(); ++i) {
      LevelFamily z(n);
      for (std::size_t v = 0; v < n; ++v)
        z[v] = result.objects[i].E.on_mor(act.mulm(gg, ic.identity(static_cast<ObjId>(v))));
      auto target = result.find_morphism(cell.src.ob_map[i], cell.tgt.ob_map[i], z);
      if (!target)
        throw ValidationError(ErrorKind::Malformed,
                              "induced 2-cell left the morphism set at " + ic.mor_name(gg));
      cell.components[i] = *target;
    }
    ind_mor[g] = std::move(cell);
  }

  result.induced =
      Action::make(act.monoidal(), result.cat, flip(act.side()), std::move(ind_obj),
                   std::move(ind_mor));

  // evaluation at the unit
  FinFunctor eval;
  eval.src = result.cat;
  eval.tgt = act.category();
  eval.ob_map.resize(result.objects.size());
  eval.mor_map.resize(result.morphisms.size());
  for (std::size_t i = 0; i < result.objects.size(); ++i)
    eval.ob_map[i] = result.objects[i].E.on_ob(act.unit());
  for (std::size_t m = 0; m < result.morphisms.size(); ++m)
    eval.mor_map[m] = result.morphisms[m][static_cast<std::size_t>(act.unit())];
  validate_functor(eval);
  result.eval = eval;

  // ε as an equivariant morphism, when the structure 2-cells are invertible
  {
    const FinCat& a = *act.category();
    std::vector<NatTrans> tau(n);
    bool invertible = true;
    for (std::size_t u = 0; u < n && invertible; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      NatTrans t;
      if (act.side() == Side::right_mute) {
        t.src = eval;
        t.tgt = compose_functors(act.on_object(uu),
                                 compose_functors(eval, result.induced->on_object(uu)));
        t.components.resize(result.objects.size());
        for (std::size_t i = 0; i < result.objects.size(); ++i)
          t.components[i] = result.objects[i].sig(act.unit(), uu, n);
      } else {
        t.src = compose_functors(act.on_object(uu),
                                 compose_functors(eval, result.induced->on_object(uu)));
        t.tgt = eval;
        t.components.resize(result.objects.size());
        for (std::size_t i = 0; i < result.objects.size(); ++i) {
          auto inv = a.inverse(result.objects[i].sig(act.unit(), uu, n));
          if (!inv) {
            invertible = false;
            break;
          }
          t.components[i] = *inv;
        }
      }
      if (invertible) tau[u] = std::move(t);
    }
    if (invertible) {
      try {
        result.epsilon = check_equivariant(result.induced, action, eval, std::move(tau));
      } catch (const ValidationError&) {
        result.epsilon = std::nullopt;
      }
    }
  }

  return result;
}

StabilityReport is_stable(const ActionPtr& action) {
  const FinCat& ic = *action->monoidal()->base();
  StabilityReport report;
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    EquivalenceReport r = is_equivalence(action->on_object(static_cast<ObjId>(u)));
    if (!r.equivalence()) {
      report.stable = false;
      report.witness = "acting object " + ic.obj_name(static_cast<ObjId>(u)) + ": " + r.witness;
      return report;
    }
  }
  report.stable = true;
  return report;
}

StableEvalVerdict check_stable_iff_eval(const ActionPtr& action, const Cap& cap) {
  StableEvalVerdict verdict;
  StabilityReport stable = is_stable(action);
  verdict.stable = stable.stable;

  StabCategory stab = stabilize(action, StabMode::strict, cap);
  EquivalenceReport eps = is_equivalence(stab.eval);
  verdict.epsilon_equivalence = eps.equivalence();
  verdict.agree = verdict.stable == verdict.epsilon_equivalence;
  verdict.detail = verdict.agree ? "agree" : "DISAGREE";
  if (!stable.stable) verdict.detail += "; " + stable.witness;
  if (!eps.equivalence()) verdict.detail += "; epsilon: " + eps.witness;
  return verdict;
}

UniversalVerdict check_universal(const ActionPtr& a_action, const ActionPtr& b_action,
                                 const Cap& cap) {
  StabilityReport b_stable = is_stable(b_action);
  if (!b_stable.stable)
    throw ValidationError(ErrorKind::NotStable, "B must be stable: " + b_stable.witness);

  StabCategory stab = stabilize(a_action, StabMode::strict, cap);
  if (!stab.epsilon)
    throw ValidationError(ErrorKind::Malformed, "strict stabilization lost its evaluation");

  EquivariantCategory fun_stab = equivariant_category(b_action, stab.induced, cap);
  EquivariantCategory fun_a = equivariant_category(b_action, a_action, cap);

  FinFunctor eps_star;
  eps_star.src = fun_stab.cat;
  eps_star.tgt = fun_a.cat;
  eps_star.ob_map.resize(fun_stab.objects.size());
  for (std::size_t i = 0; i < fun_stab.objects.size(); ++i) {
    EquivariantMorphism composite = compose_equivariant(*stab.epsilon, fun_stab.objects[i]);
    auto target = fun_a.find_object(composite);
    if (!target)
      throw ValidationError(ErrorKind::Malformed,
                            "postcomposition with epsilon left the equivariant category");
    eps_star.ob_map[i] = *target;
  }
  eps_star.mor_map.resize(fun_stab.cells.size());
  for (std::size_t m = 0; m < fun_stab.cells.size(); ++m) {
    NatTrans whiskered = whisker_left(stab.epsilon->f, fun_stab.cells[m]);
    auto target = fun_a.find_cell(
        eps_star.ob_map[static_cast<std::size_t>(fun_stab.cat->src(static_cast<MorId>(m)))],
        eps_star.ob_map[static_cast<std::size_t>(fun_stab.cat->tgt(static_cast<MorId>(m)))],
        whiskered);
    if (!target)
      throw ValidationError(ErrorKind::Malformed,
                            "whiskered 2-cell left the equivariant category");
    eps_star.mor_map[m] = *target;
  }
  validate_functor(eps_star);

  EquivalenceReport r = is_equivalence(eps_star);
  UniversalVerdict verdict;
  verdict.equivalence = r.equivalence();
  verdict.fun_stab_objects = fun_stab.objects.size();
  verdict.fun_a_objects = fun_a.objects.size();
  verdict.detail = r.equivalence() ? "equivalence" : r.witness;
  return verdict;
}

namespace {

// Structural third stabilization layer used by the double-stab comparison:
// objects and hom-sets of Inv(S2) computed on demand, never materialized.
struct StructuralLayer {
  ActionPtr action;  // induced action on the materialized second layer
  std::vector<StabObject> objects;
  mutable std::unordered_map<std::uint64_t, std::vector<LevelFamily>> hom_cache;

  const std::vector<LevelFamily>& hom(ObjId i, ObjId j, const Cap& cap) const {
    std::uint64_t key = pair_key(i, j);
    auto it = hom_cache.find(key);
    if (it != hom_cache.end()) return it->second;
    auto homs = stab_hom(*action, objects[static_cast<std::size_t>(i)],
                         objects[static_cast<std::size_t>(j)], cap);
    return hom_cache.emplace(key, std::move(homs)).first->second;
  }

  std::optional<ObjId> find_object(const StabObject& x) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i].E == x.E && objects[i].sigma == x.sigma) return static_cast<ObjId>(i);
    return std::nullopt;
  }
};

}  // namespace

DoubleStabVerdict double_stab_comparison(const ActionPtr& action, const Cap& cap) {
  if (!action->monoidal()->symmetric())
    throw ValidationError(ErrorKind::NotSymmetric,
                          "double-stab comparison requires a symmetric acting category");

  const FinCat& ic = *action->monoidal()->base();
  const std::size_t n = ic.num_objects();

  StabCategory s1 = stabilize(action, StabMode::strict, cap);
  StabCategory s2 = stabilize(s1.induced, StabMode::strict, cap);
  const Action& ind1 = *s1.induced;
  const Action& ind2 = *s2.induced;

  StructuralLayer s3;
  s3.action = s2.induced;
  s3.objects = enumerate_stab_objects(s2.induced, StabMode::strict, cap);

  DoubleStabVerdict verdict;
  verdict.double_stab_objects = s2.objects.size();
  verdict.triple_stab_objects = s3.objects.size();

  // E : S2 -> S3, the reindexing comparison functor
  auto comparison_object = [&](const StabObject& g) {
    StabObject h;
    h.mode = StabMode::strict;
    h.E.src = action->monoidal()->base();
    h.E.tgt = s2.cat;
    h.E.ob_map.resize(n);
    h.E.mor_map.resize(ic.num_morphisms());
    for (std::size_t u = 0; u < n; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      // level u: apply ind1(u) inside g = (F, ς)
      StabObject level;
      level.mode = StabMode::strict;
      level.E = compose_functors(ind1.on_object(uu), g.E);
      level.sigma.resize(n * n);
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
          level.sigma[v * n + w] = ind1.on_object(uu).on_mor(
              g.sig(static_cast<ObjId>(v), static_cast<ObjId>(w), n));
      auto idx = s2.find_object(level);
      if (!idx)
        throw ValidationError(ErrorKind::Malformed,
                              "comparison functor left the double stabilization");
      h.E.ob_map[u] = *idx;
    }
    for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
      MorId gg = static_cast<MorId>(m);
      LevelFamily z(n);
      for (std::size_t v = 0; v < n; ++v)
        z[v] = ind1.on_morphism(gg).at(g.E.on_ob(static_cast<ObjId>(v)));
      auto idx = s2.find_morphism(h.E.ob_map[static_cast<std::size_t>(ic.src(gg))],
                                  h.E.ob_map[static_cast<std::size_t>(ic.tgt(gg))], z);
      if (!idx)
        throw ValidationError(ErrorKind::Malformed, "comparison functor broke a 2-cell");
      h.E.mor_map[m] = *idx;
    }
    h.sigma.resize(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v);
        LevelFamily z(n);
        for (std::size_t t = 0; t < n; ++t)
          z[t] = ind1.on_object(uu).on_mor(g.sig(static_cast<ObjId>(t), vv, n));
        auto idx = s2.find_morphism(
            h.E.ob_map[u],
            ind2.on_object(vv).on_ob(h.E.ob_map[static_cast<std::size_t>(ind2.mul(uu, vv))]), z);
        if (!idx)
          throw ValidationError(ErrorKind::Malformed,
                                "comparison functor broke a structure morphism");
        h.sigma[u * n + v] = *idx;
      }
    validate_stab_object(ind2, h);
    return h;
  };

  std::vector<ObjId> e_ob(s2.objects.size());
  std::vector<StabObject> e_images(s2.objects.size());
  for (std::size_t i = 0; i < s2.objects.size(); ++i) {
    e_images[i] = comparison_object(s2.objects[i]);
    auto idx = s3.find_object(e_images[i]);
    if (!idx) {
      verdict.equivalence = false;
      verdict.detail = "comparison image missing from the third layer";
      return verdict;
    }
    e_ob[i] = *idx;
  }

  // E on morphisms of S2
  auto comparison_morphism = [&](std::size_t m) {
    const LevelFamily& phi = s2.morphisms[m];
    ObjId from = s2.cat->src(static_cast<MorId>(m));
    ObjId to = s2.cat->tgt(static_cast<MorId>(m));
    LevelFamily family(n);
    for (std::size_t u = 0; u < n; ++u) {
      ObjId uu = static_cast<ObjId>(u);
      LevelFamily z(n);
      for (std::size_t v = 0; v < n; ++v)
        z[v] = ind1.on_object(uu).on_mor(phi[v]);
      auto idx = s2.find_morphism(
          e_images[static_cast<std::size_t>(from)].E.on_ob(uu),
          e_images[static_cast<std::size_t>(to)].E.on_ob(uu), z);
      if (!idx)
        throw ValidationError(ErrorKind::Malformed, "comparison functor broke a morphism");
      family[u] = *idx;
    }
    return family;
  };

  std::vector<LevelFamily> e_mor(s2.morphisms.size());
  for (std::size_t m = 0; m < s2.morphisms.size(); ++m) {
    e_mor[m] = comparison_morphism(m);
    if (!stab_morphism_ok(ind2, e_images[static_cast<std::size_t>(s2.cat->src(
                              static_cast<MorId>(m)))],
                          e_images[static_cast<std::size_t>(s2.cat->tgt(static_cast<MorId>(m)))],
                          e_mor[m])) {
      verdict.equivalence = false;
      verdict.detail = "comparison image of a morphism is not a third-layer morphism";
      return verdict;
    }
  }

  // functoriality of E
  for (std::size_t i = 0; i < s2.objects.size(); ++i) {
    MorId idm = s2.cat->identity(static_cast<ObjId>(i));
    if (e_mor[static_cast<std::size_t>(idm)] !=
        stab_identity(ind2, e_images[i])) {
      verdict.equivalence = false;
      verdict.detail = "comparison functor breaks identities";
      return verdict;
    }
  }
  for (const auto& [key, gf] : s2.cat->compose_table()) {
    MorId g = static_cast<MorId>(key >> 32);
    MorId f = static_cast<MorId>(key & 0xffffffffu);
    if (stab_compose(ind2, e_mor[static_cast<std::size_t>(g)],
                     e_mor[static_cast<std::size_t>(f)]) !=
        e_mor[static_cast<std::size_t>(gf)]) {
      verdict.equivalence = false;
      verdict.detail = "comparison functor breaks composition";
      return verdict;
    }
  }

  // ε3 ∘ E = Id exactly
  for (std::size_t i = 0; i < s2.objects.size(); ++i) {
    if (e_images[i].E.on_ob(ind2.unit()) != static_cast<ObjId>(i)) {
      verdict.equivalence = false;
      verdict.detail = "evaluation after comparison is not the identity on objects";
      return verdict;
    }
  }
  for (std::size_t m = 0; m < s2.morphisms.size(); ++m) {
    // the unit level of E(φ) must be φ itself
    if (e_mor[m][static_cast<std::size_t>(ind2.unit())] != static_cast<MorId>(m)) {
      verdict.equivalence = false;
      verdict.detail = "evaluation after comparison is not the identity on morphisms";
      return verdict;
    }
  }

  // natural isomorphism E ∘ ε3 => Id on the third layer, found by search
  auto e_of_s2_morphism = [&](MorId m) { return e_mor[static_cast<std::size_t>(m)]; };

  std::vector<LevelFamily> gamma(s3.objects.size());
  std::vector<ObjId> e_eps_ob(s3.objects.size());
  for (std::size_t i = 0; i < s3.objects.size(); ++i)
    e_eps_ob[i] = e_ob[static_cast<std::size_t>(s3.objects[i].E.on_ob(ind2.unit()))];

  auto is_invertible_family = [&](ObjId from, ObjId to, const LevelFamily& z) {
    for (const LevelFamily& back : s3.hom(to, from, cap)) {
      if (stab_compose(ind2, back, z) ==
              stab_identity(ind2, s3.objects[static_cast<std::size_t>(from)]) &&
          stab_compose(ind2, z, back) ==
              stab_identity(ind2, s3.objects[static_cast<std::size_t>(to)]))
        return true;
    }
    return false;
  };

  std::function<bool(std::size_t)> choose = [&](std::size_t i) -> bool {
    if (i == s3.objects.size()) return true;
    ObjId from = e_eps_ob[i];
    for (const LevelFamily& z : s3.hom(from, static_cast<ObjId>(i), cap)) {
      if (!is_invertible_family(from, static_cast<ObjId>(i), z)) continue;
      gamma[i] = z;
      // naturality against earlier chosen components
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j) {
        for (int dir = 0; dir < 2 && ok; ++dir) {
          std::size_t a = dir ? j : i;
          std::size_t b = dir ? i : j;
          for (const LevelFamily& phi : s3.hom(static_cast<ObjId>(a), static_cast<ObjId>(b), cap)) {
            // φ ∘ γ_a = γ_b ∘ E(ε3(φ)); ε3(φ) is the unit level of φ
            MorId phi_unit = phi[static_cast<std::size_t>(ind2.unit())];
            LevelFamily lhs = stab_compose(ind2, phi, gamma[a]);
            LevelFamily rhs = stab_compose(ind2, gamma[b], e_of_s2_morphism(phi_unit));
            if (lhs != rhs) {
              ok = false;
              break;
            }
          }
        }
      }
      if (ok && choose(i + 1)) return true;
    }
    return false;
  };

  if (!choose(0)) {
    verdict.equivalence = false;
    verdict.detail = "no natural isomorphism from comparison∘evaluation to the identity";
    return verdict;
  }

  verdict.equivalence = true;
  verdict.detail = "equivalence certified (evaluation∘comparison = id, comparison∘evaluation ≅ id)";
  return verdict;
}

}  // namespace stabkit
