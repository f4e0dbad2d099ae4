#include "stabkit/costabilize.hpp"

#include "stabkit/stabilize.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace stabkit {

namespace {

std::string padded(const char* prefix, std::size_t i, std::size_t count) {
  std::string num = std::to_string(i);
  std::string width = std::to_string(count == 0 ? 0 : count - 1);
  return std::string(prefix) + std::string(width.size() - num.size(), '0') + num;
}

bool commutative_objects(const MonoidalCat& m) {
  const std::size_t n = m.base()->num_objects();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (m.tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v)) !=
          m.tensor_ob(static_cast<ObjId>(v), static_cast<ObjId>(u)))
        return false;
  return true;
}

}  // namespace

ObjId CostabPresentation::pair_index(ObjId u, ObjId a) const {
  const FinCat& ic = *input->monoidal()->base();
  const FinCat& ac = *input->category();
  auto idx = cat->object_index("p:" + ic.obj_name(u) + ":" + ac.obj_name(a));
  return idx ? *idx : -1;
}

CostabPresentation costab_presentation(const ActionPtr& action, const Cap& cap) {
  const Action& act = *action;
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& ac = *act.category();
  const std::size_t ni = ic.num_objects();
  const std::size_t na = ac.num_objects();
  const std::size_t mi = ic.num_morphisms();
  const std::size_t ma = ac.num_morphisms();

  cap.require(sat_mul(sat_mul(ni, ni), sat_mul(na, std::max<std::size_t>(mi * ma, 1))));

  auto pair_name = [&](ObjId u, ObjId a) { return "p:" + ic.obj_name(u) + ":" + ac.obj_name(a); };
  auto triple_name = [&](ObjId u, ObjId v, ObjId a) {
    return "t:" + ic.obj_name(u) + ":" + ic.obj_name(v) + ":" + ac.obj_name(a);
  };

  RawCategory raw;
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t a = 0; a < na; ++a)
      raw.objects.push_back(pair_name(static_cast<ObjId>(u), static_cast<ObjId>(a)));
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t v = 0; v < ni; ++v)
      for (std::size_t a = 0; a < na; ++a)
        raw.objects.push_back(
            triple_name(static_cast<ObjId>(u), static_cast<ObjId>(v), static_cast<ObjId>(a)));

  // morphism naming carries the data needed to reconstruct endpoints
  using MorData = CostabPresentation::MorData;
  using MorKind = CostabPresentation::MorKind;
  struct NamedMor {
    std::string name, src, tgt;
    MorData data;
    // source triple data, for the triple-to-pair flavors
    ObjId tri_u = -1, tri_v = -1, tri_a = -1;
  };
  std::vector<NamedMor> named;

  // pair -> pair: one morphism per (i, m), identities excluded
  for (std::size_t i = 0; i < mi; ++i)
    for (std::size_t m = 0; m < ma; ++m) {
      MorId ii = static_cast<MorId>(i), mm = static_cast<MorId>(m);
      if (ic.is_identity(ii) && ac.is_identity(mm)) continue;
      named.push_back({"pp:" + ic.mor_name(ii) + ":" + ac.mor_name(mm),
                       pair_name(ic.src(ii), ac.src(mm)), pair_name(ic.tgt(ii), ac.tgt(mm)),
                       MorData{MorKind::pair_pair, ii, -1, mm}});
    }
  // triple -> triple
  for (std::size_t i = 0; i < mi; ++i)
    for (std::size_t j = 0; j < mi; ++j)
      for (std::size_t m = 0; m < ma; ++m) {
        MorId ii = static_cast<MorId>(i), jj = static_cast<MorId>(j), mm = static_cast<MorId>(m);
        if (ic.is_identity(ii) && ic.is_identity(jj) && ac.is_identity(mm)) continue;
        named.push_back({"tt:" + ic.mor_name(ii) + ":" + ic.mor_name(jj) + ":" + ac.mor_name(mm),
                         triple_name(ic.src(ii), ic.src(jj), ac.src(mm)),
                         triple_name(ic.tgt(ii), ic.tgt(jj), ac.tgt(mm)),
                         MorData{MorKind::triple_triple, ii, jj, mm}, ic.src(ii), ic.src(jj),
                         ac.src(mm)});
      }
  // triple -> pair, flavor P: a morphism (u,a) -> (w,b) from the triple (u,v,a)
  for (std::size_t v = 0; v < ni; ++v)
    for (std::size_t i = 0; i < mi; ++i)
      for (std::size_t m = 0; m < ma; ++m) {
        MorId ii = static_cast<MorId>(i), mm = static_cast<MorId>(m);
        named.push_back({"tpP:" + ic.obj_name(static_cast<ObjId>(v)) + ":" + ic.mor_name(ii) +
                             ":" + ac.mor_name(mm),
                         triple_name(ic.src(ii), static_cast<ObjId>(v), ac.src(mm)),
                         pair_name(ic.tgt(ii), ac.tgt(mm)),
                         MorData{MorKind::triple_pair_p, ii, -1, mm}, ic.src(ii),
                         static_cast<ObjId>(v), ac.src(mm)});
      }
  // triple -> pair, flavor Q: a morphism (mul(u,v), α^v(a)) -> (w,b)
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t v = 0; v < ni; ++v)
      for (std::size_t a = 0; a < na; ++a) {
        ObjId uu = static_cast<ObjId>(u), vv = static_cast<ObjId>(v), aa = static_cast<ObjId>(a);
        ObjId uv = act.mul(uu, vv);
        ObjId va = act.on_object(vv).on_ob(aa);
        for (std::size_t w = 0; w < ni; ++w)
          for (MorId ii : ic.hom(uv, static_cast<ObjId>(w)))
            for (std::size_t b = 0; b < na; ++b)
              for (MorId mm : ac.hom(va, static_cast<ObjId>(b))) {
                named.push_back({"tpQ:" + ic.obj_name(uu) + ":" + ic.obj_name(vv) + ":" +
                                     ac.obj_name(aa) + ":" + ic.mor_name(ii) + ":" +
                                     ac.mor_name(mm),
                                 triple_name(uu, vv, aa),
                                 pair_name(static_cast<ObjId>(w), static_cast<ObjId>(b)),
                                 MorData{MorKind::triple_pair_q, ii, -1, mm}, uu, vv, aa});
              }
      }

  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < named.size(); ++i) {
    raw.morphisms.push_back(RawMor{named[i].name, named[i].src, named[i].tgt});
    by_name[named[i].name] = i;
  }

  // the Q projection on a triple-to-triple morphism (i, j, m):
  // (mulm(i,j), α(j)_tgt ∘ α^{src j}(m))
  auto q_project = [&](const MorData& t) {
    MorId upper = act.mulm(t.i1, t.i2);
    ObjId vsrc = ic.src(t.i2);
    MorId lower = ac.compose(act.on_morphism(t.i2).at(ac.tgt(t.am)),
                             act.on_object(vsrc).on_mor(t.am));
    return std::make_pair(upper, lower);
  };

  auto name_of = [&](const MorData& d, ObjId tri_u, ObjId tri_v, ObjId tri_a) -> std::string {
    switch (d.kind) {
      case MorKind::pair_pair:
        if (ic.is_identity(d.i1) && ac.is_identity(d.am))
          return "id:" + pair_name(ic.src(d.i1), ac.src(d.am));
        return "pp:" + ic.mor_name(d.i1) + ":" + ac.mor_name(d.am);
      case MorKind::triple_triple:
        if (ic.is_identity(d.i1) && ic.is_identity(d.i2) && ac.is_identity(d.am))
          return "id:" + triple_name(ic.src(d.i1), ic.src(d.i2), ac.src(d.am));
        return "tt:" + ic.mor_name(d.i1) + ":" + ic.mor_name(d.i2) + ":" + ac.mor_name(d.am);
      case MorKind::triple_pair_p:
        return "tpP:" + ic.obj_name(tri_v) + ":" + ic.mor_name(d.i1) + ":" + ac.mor_name(d.am);
      case MorKind::triple_pair_q:
        return "tpQ:" + ic.obj_name(tri_u) + ":" + ic.obj_name(tri_v) + ":" + ac.obj_name(tri_a) +
               ":" + ic.mor_name(d.i1) + ":" + ac.mor_name(d.am);
    }
    return "";
  };

  // composition tables per the case split
  for (std::size_t gi = 0; gi < named.size(); ++gi) {
    for (std::size_t fi = 0; fi < named.size(); ++fi) {
      if (named[fi].tgt != named[gi].src) continue;
      const MorData& f = named[fi].data;
      const MorData& g = named[gi].data;
      MorData comp;
      ObjId tri_u = named[fi].tri_u, tri_v = named[fi].tri_v, tri_a = named[fi].tri_a;
      if (f.kind == MorKind::pair_pair && g.kind == MorKind::pair_pair) {
        comp = MorData{MorKind::pair_pair, ic.compose(g.i1, f.i1), -1, ac.compose(g.am, f.am)};
      } else if (f.kind == MorKind::triple_triple && g.kind == MorKind::triple_triple) {
        comp = MorData{MorKind::triple_triple, ic.compose(g.i1, f.i1), ic.compose(g.i2, f.i2),
                       ac.compose(g.am, f.am)};
      } else if (f.kind == MorKind::triple_pair_p && g.kind == MorKind::pair_pair) {
        comp = MorData{MorKind::triple_pair_p, ic.compose(g.i1, f.i1), -1,
                       ac.compose(g.am, f.am)};
      } else if (f.kind == MorKind::triple_pair_q && g.kind == MorKind::pair_pair) {
        comp = MorData{MorKind::triple_pair_q, ic.compose(g.i1, f.i1), -1,
                       ac.compose(g.am, f.am)};
      } else if (f.kind == MorKind::triple_triple && g.kind == MorKind::triple_pair_p) {
        comp = MorData{MorKind::triple_pair_p, ic.compose(g.i1, f.i1), -1,
                       ac.compose(g.am, f.am)};
      } else if (f.kind == MorKind::triple_triple && g.kind == MorKind::triple_pair_q) {
        auto [qi, qm] = q_project(f);
        comp = MorData{MorKind::triple_pair_q, ic.compose(g.i1, qi), -1, ac.compose(g.am, qm)};
      } else {
        continue;  // pair -> triple direction cannot occur
      }
      std::string comp_name = name_of(comp, tri_u, tri_v, tri_a);
      raw.compose.push_back({named[gi].name, named[fi].name, comp_name});
    }
  }

  CostabPresentation pres;
  pres.input = action;
  pres.cat = validate_category(raw);

  pres.pair_of.assign(pres.cat->num_objects(), std::nullopt);
  pres.triple_of.assign(pres.cat->num_objects(), std::nullopt);
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t a = 0; a < na; ++a) {
      ObjId o = *pres.cat->object_index(pair_name(static_cast<ObjId>(u), static_cast<ObjId>(a)));
      pres.pair_of[static_cast<std::size_t>(o)] =
          CostabPresentation::PairObject{static_cast<ObjId>(u), static_cast<ObjId>(a)};
    }
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t v = 0; v < ni; ++v)
      for (std::size_t a = 0; a < na; ++a) {
        ObjId o = *pres.cat->object_index(
            triple_name(static_cast<ObjId>(u), static_cast<ObjId>(v), static_cast<ObjId>(a)));
        pres.triple_of[static_cast<std::size_t>(o)] = CostabPresentation::TripleObject{
            static_cast<ObjId>(u), static_cast<ObjId>(v), static_cast<ObjId>(a)};
      }

  pres.mor_data.assign(pres.cat->num_morphisms(), MorData{});
  for (const NamedMor& nm : named) {
    MorId id = *pres.cat->morphism_index(nm.name);
    pres.mor_data[static_cast<std::size_t>(id)] = nm.data;
  }
  for (std::size_t x = 0; x < pres.cat->num_objects(); ++x) {
    MorId id = pres.cat->identity(static_cast<ObjId>(x));
    if (pres.pair_of[x]) {
      pres.mor_data[static_cast<std::size_t>(id)] =
          MorData{MorKind::pair_pair, ic.identity(pres.pair_of[x]->u),
                  -1, ac.identity(pres.pair_of[x]->a)};
    } else {
      const auto& t = *pres.triple_of[x];
      pres.mor_data[static_cast<std::size_t>(id)] =
          MorData{MorKind::triple_triple, ic.identity(t.u), ic.identity(t.v), ac.identity(t.a)};
    }
  }

  // S: identity-shaped morphisms of both triple-to-pair flavors
  for (std::size_t m = 0; m < pres.cat->num_morphisms(); ++m) {
    const MorData& d = pres.mor_data[m];
    if (d.kind == MorKind::triple_pair_p || d.kind == MorKind::triple_pair_q) {
      if (ic.is_identity(d.i1) && ac.is_identity(d.am))
        pres.localizing_class.push_back(static_cast<MorId>(m));
    }
  }
  std::sort(pres.localizing_class.begin(), pres.localizing_class.end());
  return pres;
}

// ---- localized hom-sets -----------------------------------------------------

namespace {

struct HomDiagram {
  // all nodes (shift-level pairs with a genuine morphism) and their classes
  std::vector<CostabHom::Rep> nodes;
  std::vector<int> class_of;      // node -> class id (dense, by first appearance)
  std::vector<CostabHom::Rep> reps;  // class id -> canonical (least) representative
  std::unordered_map<std::uint64_t, int> node_index;  // packed rep -> node
};

std::uint64_t pack_rep(const CostabHom::Rep& r, std::size_t, std::size_t) {
  return (static_cast<std::uint64_t>(static_cast<std::uint8_t>(r.v)) << 56) |
         (static_cast<std::uint64_t>(static_cast<std::uint8_t>(r.v2)) << 48) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r.i_mor) & 0xffffffu) << 24) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(r.a_mor) & 0xffffffu);
}

struct UF {
  std::vector<int> parent;
  explicit UF(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

// Shift a node diagonally by t, through the transport isomorphisms f (source
// side) and f2 (target side). For discrete acting categories f and f2 are
// identities and this is plain tensoring with t.
std::optional<CostabHom::Rep> shift_node(const Action& act, ObjId u, ObjId a, ObjId w, ObjId b,
                                         const CostabHom::Rep& r, ObjId t, MorId f, MorId f2) {
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& ac = *act.category();
  ObjId vt = act.monoidal()->tensor_ob(r.v, t);
  ObjId v2t = act.monoidal()->tensor_ob(r.v2, t);
  if (ic.src(f) != vt || ic.src(f2) != v2t) return std::nullopt;
  if (!ic.is_iso(f) || !ic.is_iso(f2)) return std::nullopt;
  ObjId nv = ic.tgt(f);
  ObjId nv2 = ic.tgt(f2);

  // I-part: (id_w ⊗ f2) ∘ (i ⊗ id_t) ∘ (id_u ⊗ f⁻¹)
  MorId finv = *ic.inverse(f);
  MorId left = act.mulm(ic.identity(u), finv);
  MorId mid = act.mulm(r.i_mor, ic.identity(t));
  MorId right = act.mulm(ic.identity(w), f2);
  MorId i_new = ic.compose(right, ic.compose(mid, left));

  // A-part: α(f2)_b ∘ α^t(m) ∘ α(f)⁻¹_a   (commutative acting monoid)
  MorId shifted = act.on_object(t).on_mor(r.a_mor);
  MorId conj_src = act.on_morphism(f).at(a);
  auto conj_src_inv = ac.inverse(conj_src);
  if (!conj_src_inv) return std::nullopt;
  MorId conj_tgt = act.on_morphism(f2).at(b);
  MorId a_new = ac.compose(conj_tgt, ac.compose(shifted, *conj_src_inv));

  return CostabHom::Rep{nv, nv2, i_new, a_new};
}

HomDiagram build_hom_diagram(const Action& act, ObjId u, ObjId a, ObjId w, ObjId b,
                             const Cap& cap) {
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& ac = *act.category();
  const std::size_t ni = ic.num_objects();
  const std::size_t mi = ic.num_morphisms();

  HomDiagram d;
  for (std::size_t v = 0; v < ni; ++v)
    for (std::size_t v2 = 0; v2 < ni; ++v2) {
      ObjId vv = static_cast<ObjId>(v), vv2 = static_cast<ObjId>(v2);
      ObjId src_i = act.mul(u, vv);
      ObjId tgt_i = act.mul(w, vv2);
      ObjId src_a = act.on_object(vv).on_ob(a);
      ObjId tgt_a = act.on_object(vv2).on_ob(b);
      for (MorId im : ic.hom(src_i, tgt_i))
        for (MorId am : ac.hom(src_a, tgt_a)) {
          CostabHom::Rep r{vv, vv2, im, am};
          d.node_index[pack_rep(r, ni, mi)] = static_cast<int>(d.nodes.size());
          d.nodes.push_back(r);
        }
    }
  cap.require(d.nodes.size());

  UF uf(d.nodes.size());
  // one-step diagonal shifts by every t, through every pair of transport isos
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    const CostabHom::Rep& r = d.nodes[n];
    for (std::size_t t = 0; t < ni; ++t) {
      ObjId tt = static_cast<ObjId>(t);
      ObjId vt = act.monoidal()->tensor_ob(r.v, tt);
      ObjId v2t = act.monoidal()->tensor_ob(r.v2, tt);
      for (std::size_t nv = 0; nv < ni; ++nv)
        for (MorId f : ic.hom(vt, static_cast<ObjId>(nv))) {
          if (!ic.is_iso(f)) continue;
          for (std::size_t nv2 = 0; nv2 < ni; ++nv2)
            for (MorId f2 : ic.hom(v2t, static_cast<ObjId>(nv2))) {
              if (!ic.is_iso(f2)) continue;
              auto shifted = shift_node(act, u, a, w, b, r, tt, f, f2);
              if (!shifted) continue;
              auto it = d.node_index.find(pack_rep(*shifted, ni, mi));
              if (it == d.node_index.end()) continue;
              uf.unite(static_cast<int>(n), it->second);
            }
        }
    }
  }

  d.class_of.assign(d.nodes.size(), -1);
  std::unordered_map<int, int> root_to_class;
  for (std::size_t n = 0; n < d.nodes.size(); ++n) {
    int root = uf.find(static_cast<int>(n));
    auto it = root_to_class.find(root);
    int cls;
    if (it == root_to_class.end()) {
      cls = static_cast<int>(d.reps.size());
      root_to_class[root] = cls;
      d.reps.push_back(d.nodes[n]);
    } else {
      cls = it->second;
      if (d.nodes[n] < d.reps[static_cast<std::size_t>(cls)])
        d.reps[static_cast<std::size_t>(cls)] = d.nodes[n];
    }
    d.class_of[n] = cls;
  }
  return d;
}

}  // namespace

CostabHom costab_hom(const ActionPtr& action, ObjId u, ObjId a, ObjId w, ObjId b,
                     const Cap& cap) {
  if (!action->monoidal()->symmetric())
    throw ValidationError(ErrorKind::NotSymmetric,
                          "localized hom-sets require a symmetric acting category");
  HomDiagram d = build_hom_diagram(*action, u, a, w, b, cap);
  CostabHom out;
  out.classes = d.reps;
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

ObjId CostabCategory::object_index(ObjId u, ObjId a) const {
  const FinCat& ic = *input->monoidal()->base();
  const FinCat& ac = *input->category();
  auto idx = cat->object_index("p:" + ic.obj_name(u) + ":" + ac.obj_name(a));
  return idx ? *idx : -1;
}

CostabCategory costab_category(const ActionPtr& action, const Cap& cap) {
  const Action& act = *action;
  if (!act.monoidal()->symmetric())
    throw ValidationError(ErrorKind::NotSymmetric,
                          "costabilization hom-sets require a symmetric acting category");
  if (!commutative_objects(*act.monoidal()))
    throw ValidationError(ErrorKind::NotSymmetric,
                          "costabilization hom-sets require a commutative object monoid");
  const FinCat& ic = *act.monoidal()->base();
  const FinCat& ac = *act.category();
  const std::size_t ni = ic.num_objects();
  const std::size_t mi = ic.num_morphisms();
  const std::size_t na = ac.num_objects();

  // objects: pairs, in canonical (sorted-name) order
  std::vector<std::string> names;
  std::vector<CostabPresentation::PairObject> pair_data;
  for (std::size_t u = 0; u < ni; ++u)
    for (std::size_t a = 0; a < na; ++a) {
      names.push_back("p:" + ic.obj_name(static_cast<ObjId>(u)) + ":" +
                      ac.obj_name(static_cast<ObjId>(a)));
      pair_data.push_back({static_cast<ObjId>(u), static_cast<ObjId>(a)});
    }
  std::vector<std::size_t> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return names[x] < names[y]; });
  std::vector<std::string> sorted_names;
  std::vector<CostabPresentation::PairObject> objects;
  for (std::size_t i : order) {
    sorted_names.push_back(names[i]);
    objects.push_back(pair_data[i]);
  }

  // hom diagrams per ordered object pair
  std::vector<HomDiagram> diagrams(objects.size() * objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j)
      diagrams[i * objects.size() + j] =
          build_hom_diagram(act, objects[i].u, objects[i].a, objects[j].u, objects[j].a, cap);

  auto class_index = [&](std::size_t i, std::size_t j,
                         const CostabHom::Rep& r) -> std::optional<int> {
    const HomDiagram& d = diagrams[i * objects.size() + j];
    auto it = d.node_index.find(pack_rep(r, ni, mi));
    if (it == d.node_index.end()) return std::nullopt;
    return d.class_of[static_cast<std::size_t>(it->second)];
  };

  // morphisms: one per class, ordered by (src, tgt, class id)
  std::vector<Mor> morphisms;
  std::vector<CostabHom::Rep> reps;
  std::vector<std::vector<MorId>> class_to_mor(objects.size() * objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const HomDiagram& d = diagrams[i * objects.size() + j];
      class_to_mor[i * objects.size() + j].resize(d.reps.size());
      for (std::size_t c = 0; c < d.reps.size(); ++c) {
        class_to_mor[i * objects.size() + j][c] = static_cast<MorId>(morphisms.size());
        morphisms.push_back(Mor{"", static_cast<ObjId>(i), static_cast<ObjId>(j)});
        reps.push_back(d.reps[c]);
      }
    }
  for (std::size_t m = 0; m < morphisms.size(); ++m)
    morphisms[m].id = padded("c", m, morphisms.size());

  // identities and composition via diagonal shift to a common level
  auto shift_class = [&](std::size_t i, std::size_t j, const CostabHom::Rep& r,
                         ObjId t) -> CostabHom::Rep {
    ObjId vt = act.monoidal()->tensor_ob(r.v, t);
    ObjId v2t = act.monoidal()->tensor_ob(r.v2, t);
    auto shifted = shift_node(act, objects[i].u, objects[i].a, objects[j].u, objects[j].a, r, t,
                              ic.identity(vt), ic.identity(v2t));
    if (!shifted)
      throw ValidationError(ErrorKind::Malformed, "diagonal shift failed in the costabilization");
    return *shifted;
  };

  std::vector<MorId> identity(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    CostabHom::Rep idrep{act.unit(), act.unit(), ic.identity(act.mul(objects[i].u, act.unit())),
                         ac.identity(act.on_object(act.unit()).on_ob(objects[i].a))};
    auto cls = class_index(i, i, idrep);
    if (!cls)
      throw ValidationError(ErrorKind::Malformed, "identity class missing in costabilization");
    identity[i] = class_to_mor[i * objects.size() + i][static_cast<std::size_t>(*cls)];
  }

  std::unordered_map<std::uint64_t, MorId> compose;
  for (std::size_t gm = 0; gm < morphisms.size(); ++gm)
    for (std::size_t fm = 0; fm < morphisms.size(); ++fm) {
      if (morphisms[fm].tgt != morphisms[gm].src) continue;
      std::size_t i = static_cast<std::size_t>(morphisms[fm].src);
      std::size_t j = static_cast<std::size_t>(morphisms[fm].tgt);
      std::size_t k = static_cast<std::size_t>(morphisms[gm].tgt);
      const CostabHom::Rep& rf = reps[fm];
      const CostabHom::Rep& rg = reps[gm];
      // align: shift f by rg.v, g by rf.v2; middle levels then agree
      CostabHom::Rep f2 = shift_class(i, j, rf, rg.v);
      CostabHom::Rep g2 = shift_class(j, k, rg, rf.v2);
      if (f2.v2 != g2.v)
        throw ValidationError(ErrorKind::Malformed, "levels failed to align in composition");
      CostabHom::Rep comp{f2.v, g2.v2, ic.compose(g2.i_mor, f2.i_mor),
                          ac.compose(g2.a_mor, f2.a_mor)};
      auto cls = class_index(i, k, comp);
      if (!cls)
        throw ValidationError(ErrorKind::Malformed, "composite class missing in costabilization");
      compose[pair_key(static_cast<MorId>(gm), static_cast<MorId>(fm))] =
          class_to_mor[i * objects.size() + k][static_cast<std::size_t>(*cls)];
    }

  CostabCategory result;
  result.input = action;
  result.objects = objects;
  result.reps = reps;
  result.cat = FinCat::from_tables(std::move(sorted_names), std::move(morphisms),
                                   std::move(identity), std::move(compose));

  // induced action: t sends (u, a) to (u, α^t(a)), classes by shifting the
  // A-component inside
  std::vector<FinFunctor> ind_obj(ni);
  for (std::size_t t = 0; t < ni; ++t) {
    ObjId tt = static_cast<ObjId>(t);
    FinFunctor f;
    f.src = result.cat;
    f.tgt = result.cat;
    f.ob_map.resize(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i)
      f.ob_map[i] = result.object_index(objects[i].u, act.on_object(tt).on_ob(objects[i].a));
    f.mor_map.resize(result.reps.size());
    for (std::size_t m = 0; m < result.reps.size(); ++m) {
      std::size_t i = static_cast<std::size_t>(result.cat->src(static_cast<MorId>(m)));
      std::size_t j = static_cast<std::size_t>(result.cat->tgt(static_cast<MorId>(m)));
      const CostabHom::Rep& r = result.reps[m];
      CostabHom::Rep moved{r.v, r.v2, r.i_mor, act.on_object(tt).on_mor(r.a_mor)};
      std::size_t i2 = static_cast<std::size_t>(f.ob_map[i]);
      std::size_t j2 = static_cast<std::size_t>(f.ob_map[j]);
      auto cls = class_index(i2, j2, moved);
      if (!cls)
        throw ValidationError(ErrorKind::Malformed, "induced action left the class set");
      f.mor_map[m] = class_to_mor[i2 * objects.size() + j2][static_cast<std::size_t>(*cls)];
    }
    ind_obj[t] = std::move(f);
  }
  std::vector<NatTrans> ind_mor(mi);
  for (std::size_t g = 0; g < mi; ++g) {
    MorId gg = static_cast<MorId>(g);
    ObjId t = ic.src(gg), t2 = ic.tgt(gg);
    NatTrans cell;
    cell.src = ind_obj[static_cast<std::size_t>(t)];
    cell.tgt = ind_obj[static_cast<std::size_t>(t2)];
    cell.components.resize(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      CostabHom::Rep node{act.unit(), act.unit(), ic.identity(act.mul(objects[i].u, act.unit())),
                          act.on_morphism(gg).at(objects[i].a)};
      std::size_t i2 = static_cast<std::size_t>(cell.src.ob_map[i]);
      std::size_t j2 = static_cast<std::size_t>(cell.tgt.ob_map[i]);
      auto cls = class_index(i2, j2, node);
      if (!cls)
        throw ValidationError(ErrorKind::Malformed, "induced 2-cell left the class set");
      cell.components[i] = class_to_mor[i2 * objects.size() + j2][static_cast<std::size_t>(*cls)];
    }
    ind_mor[g] = std::move(cell);
  }
  result.induced = Action::make(act.monoidal(), result.cat, act.side(), std::move(ind_obj),
                                std::move(ind_mor));

  // coevaluation η : A -> costab, a ↦ (1, a), with identity τ
  FinFunctor eta;
  eta.src = act.category();
  eta.tgt = result.cat;
  eta.ob_map.resize(na);
  for (std::size_t a = 0; a < na; ++a)
    eta.ob_map[a] = result.object_index(act.unit(), static_cast<ObjId>(a));
  eta.mor_map.resize(ac.num_morphisms());
  for (std::size_t m = 0; m < ac.num_morphisms(); ++m) {
    MorId mm = static_cast<MorId>(m);
    std::size_t i = static_cast<std::size_t>(eta.ob_map[static_cast<std::size_t>(ac.src(mm))]);
    std::size_t j = static_cast<std::size_t>(eta.ob_map[static_cast<std::size_t>(ac.tgt(mm))]);
    CostabHom::Rep node{act.unit(), act.unit(), ic.identity(act.unit()), mm};
    auto cls = class_index(i, j, node);
    if (!cls)
      throw ValidationError(ErrorKind::Malformed, "coevaluation left the class set");
    eta.mor_map[m] = class_to_mor[i * objects.size() + j][static_cast<std::size_t>(*cls)];
  }
  validate_functor(eta);

  std::vector<NatTrans> tau(ni);
  for (std::size_t t = 0; t < ni; ++t) {
    ObjId tt = static_cast<ObjId>(t);
    NatTrans cell;
    const Action& ind = *result.induced;
    cell.src = compose_functors(ind.con(tt), compose_functors(eta, act.cov(tt)));
    cell.tgt = compose_functors(ind.cov(tt), compose_functors(eta, act.con(tt)));
    cell.components.resize(na);
    for (std::size_t a = 0; a < na; ++a)
      cell.components[a] = result.cat->identity(cell.src.on_ob(static_cast<ObjId>(a)));
    tau[t] = std::move(cell);
  }
  result.eta = check_equivariant(action, result.induced, eta, std::move(tau));
  return result;
}

ZigzagReport zigzag_hom(const CostabPresentation& pres, ObjId src, ObjId tgt, int bound,
                        const Cap& cap) {
  if (bound < 1) throw ValidationError(ErrorKind::Malformed, "zigzag bound must be >= 1");
  const FinCat& c = *pres.cat;

  std::unordered_set<MorId> in_s(pres.localizing_class.begin(), pres.localizing_class.end());

  // factorization lists: h -> all (g, f) with g∘f = h
  std::unordered_map<MorId, std::vector<std::pair<MorId, MorId>>> factorizations;
  for (const auto& [key, h] : c.compose_table()) {
    MorId g = static_cast<MorId>(key >> 32);
    MorId f = static_cast<MorId>(key & 0xffffffffu);
    factorizations[h].push_back({g, f});
  }

  // legs: +m+1 forward, -(m+1) backward (backward only for S members)
  using Word = std::vector<std::int32_t>;
  auto leg_src = [&](std::int32_t leg) {
    return leg > 0 ? c.src(leg - 1) : c.tgt(-leg - 1);
  };
  auto leg_tgt = [&](std::int32_t leg) {
    return leg > 0 ? c.tgt(leg - 1) : c.src(-leg - 1);
  };

  struct WordHash {
    std::size_t operator()(const Word& w) const {
      std::size_t h = 1469598103934665603ull;
      for (std::int32_t x : w) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  // enumerate all words src -> tgt of length <= bound
  std::vector<Word> words;
  std::unordered_map<Word, int, WordHash> index;
  auto add_word = [&](const Word& w) -> int {
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(words.size());
    index.emplace(w, id);
    words.push_back(w);
    return id;
  };

  // outgoing legs per object
  std::vector<std::vector<std::int32_t>> out_legs(c.num_objects());
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    out_legs[static_cast<std::size_t>(c.src(static_cast<MorId>(m)))].push_back(
        static_cast<std::int32_t>(m + 1));
    if (in_s.count(static_cast<MorId>(m)))
      out_legs[static_cast<std::size_t>(c.tgt(static_cast<MorId>(m)))].push_back(
          -static_cast<std::int32_t>(m + 1));
  }

  Word current;
  std::uint64_t visited = 0;
  std::function<void(ObjId, int)> enumerate = [&](ObjId at, int remaining) {
    if (++visited > cap.limit) throw CapExceeded(visited, cap.limit);
    if (at == tgt) add_word(current);
    if (remaining == 0) return;
    for (std::int32_t leg : out_legs[static_cast<std::size_t>(at)]) {
      current.push_back(leg);
      enumerate(leg_tgt(leg), remaining - 1);
      current.pop_back();
    }
  };
  enumerate(src, bound);

  UF uf(words.size());
  auto unite_with = [&](int from, const Word& neighbor) {
    auto it = index.find(neighbor);
    if (it != index.end()) uf.unite(from, it->second);
  };

  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words[wi];
    // compose adjacent forwards
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k] > 0 && w[k + 1] > 0) {
        MorId comp = c.compose(w[k + 1] - 1, w[k] - 1);
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        nw.push_back(static_cast<std::int32_t>(comp + 1));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
        unite_with(static_cast<int>(wi), nw);
      }
    }
    // factor a forward leg
    if (static_cast<int>(w.size()) < bound) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] <= 0) continue;
        auto it = factorizations.find(w[k] - 1);
        if (it == factorizations.end()) continue;
        for (const auto& [g, f] : it->second) {
          Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
          nw.push_back(static_cast<std::int32_t>(f + 1));
          nw.push_back(static_cast<std::int32_t>(g + 1));
          nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
          unite_with(static_cast<int>(wi), nw);
        }
      }
    }
    // delete a forward identity leg
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] > 0 && c.is_identity(w[k] - 1)) {
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        unite_with(static_cast<int>(wi), nw);
      }
    }
    // insert an identity leg
    if (static_cast<int>(w.size()) < bound) {
      ObjId at = src;
      for (std::size_t k = 0; k <= w.size(); ++k) {
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        nw.push_back(static_cast<std::int32_t>(c.identity(at) + 1));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        unite_with(static_cast<int>(wi), nw);
        if (k < w.size()) at = leg_tgt(w[k]);
      }
    }
    // cancel adjacent s, s̄ (either order)
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k] == -w[k + 1]) {
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
        unite_with(static_cast<int>(wi), nw);
      }
    }
    // insert a cancelling pair
    if (static_cast<int>(w.size()) + 2 <= bound) {
      ObjId at = src;
      for (std::size_t k = 0; k <= w.size(); ++k) {
        for (MorId s : pres.localizing_class) {
          // s : triple -> pair; insert (s̄, s) at a pair or (s, s̄) at a triple
          if (c.tgt(s) == at) {
            Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            nw.push_back(-static_cast<std::int32_t>(s + 1));
            nw.push_back(static_cast<std::int32_t>(s + 1));
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
            unite_with(static_cast<int>(wi), nw);
          }
          if (c.src(s) == at) {
            Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            nw.push_back(static_cast<std::int32_t>(s + 1));
            nw.push_back(-static_cast<std::int32_t>(s + 1));
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
            unite_with(static_cast<int>(wi), nw);
          }
        }
        if (k < w.size()) at = leg_tgt(w[k]);
      }
    }
  }

  ZigzagReport report;
  report.words = words.size();
  std::unordered_set<int> roots, roots_prev;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    int root = uf.find(static_cast<int>(wi));
    roots.insert(root);
    if (static_cast<int>(words[wi].size()) <= bound - 1) roots_prev.insert(root);
  }
  report.classes = roots.size();
  report.classes_at_prev = roots_prev.size();
  report.saturated = report.classes == report.classes_at_prev;
  return report;
}

CostableVerdict check_costable_iff_coeval(const ActionPtr& action, const Cap& cap) {
  CostableVerdict verdict;
  StabilityReport stable = is_stable(action);
  verdict.stable = stable.stable;

  CostabCategory costab = costab_category(action, cap);
  EquivalenceReport eta = is_equivalence(costab.eta.f);
  verdict.eta_equivalence = eta.equivalence();
  verdict.agree = verdict.stable == verdict.eta_equivalence;
  verdict.detail = verdict.agree ? "agree" : "DISAGREE";
  if (!stable.stable) verdict.detail += "; " + stable.witness;
  if (!eta.equivalence()) verdict.detail += "; eta: " + eta.witness;

  if (verdict.stable) {
    // the explicit inverse (u,a) ↦ α^u(a): certify (u,a) ≅ η(α^u(a))
    verdict.inverse_certified = true;
    const Action& act = *action;
    for (std::size_t i = 0; i < costab.objects.size() && verdict.inverse_certified; ++i) {
      ObjId u = costab.objects[i].u;
      ObjId a = costab.objects[i].a;
      ObjId target = static_cast<ObjId>(
          costab.eta.f.on_ob(act.on_object(u).on_ob(a)));
      bool found = false;
      for (MorId m : costab.cat->hom(static_cast<ObjId>(i), target))
        if (costab.cat->is_iso(m)) {
          found = true;
          break;
        }
      verdict.inverse_certified = found;
      if (!found)
        verdict.detail += "; inverse fails at " +
                          costab.cat->obj_name(static_cast<ObjId>(i));
    }
  }
  return verdict;
}

OracleAgreement check_costab_oracle(const ActionPtr& action, int bound, const Cap& cap) {
  OracleAgreement agreement;
  CostabPresentation pres = costab_presentation(action, cap);
  CostabCategory costab = costab_category(action, cap);

  for (std::size_t i = 0; i < costab.objects.size(); ++i) {
    for (std::size_t j = 0; j < costab.objects.size(); ++j) {
      ++agreement.pairs_checked;
      ObjId src = pres.pair_index(costab.objects[i].u, costab.objects[i].a);
      ObjId tgt = pres.pair_index(costab.objects[j].u, costab.objects[j].a);
      ZigzagReport z = zigzag_hom(pres, src, tgt, bound, cap);
      std::size_t formula = costab.cat->hom(static_cast<ObjId>(i), static_cast<ObjId>(j)).size();
      if (!z.saturated) {
        ++agreement.unsaturated;
        continue;
      }
      if (z.classes != formula)
        agreement.disagreements.push_back(
            "(" + costab.cat->obj_name(static_cast<ObjId>(i)) + " -> " +
            costab.cat->obj_name(static_cast<ObjId>(j)) + "): formula " +
            std::to_string(formula) + " vs oracle " + std::to_string(z.classes));
    }
  }
  return agreement;
}

}  // namespace stabkit
