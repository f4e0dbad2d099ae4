#include "stabkit/functors.hpp"

#include <algorithm>
#include <unordered_map>

namespace stabkit {

void validate_functor(const FinFunctor& f) {
  const FinCat& c = *f.src;
  const FinCat& d = *f.tgt;
  if (f.ob_map.size() != c.num_objects() || f.mor_map.size() != c.num_morphisms())
    throw ValidationError(ErrorKind::MismatchedEndpoints, "functor maps have wrong arity");
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    MorId img = f.mor_map[m];
    if (d.src(img) != f.on_ob(c.src(static_cast<MorId>(m))) ||
        d.tgt(img) != f.on_ob(c.tgt(static_cast<MorId>(m))))
      throw ValidationError(ErrorKind::MismatchedEndpoints,
                            "functor breaks endpoints at " + c.mor_name(static_cast<MorId>(m)));
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (f.mor_map[static_cast<std::size_t>(c.identity(static_cast<ObjId>(x)))] !=
        d.identity(f.on_ob(static_cast<ObjId>(x))))
      throw ValidationError(ErrorKind::MismatchedEndpoints,
                            "functor breaks identity at " + c.obj_name(static_cast<ObjId>(x)));
  }
  for (const auto& [key, gf] : c.compose_table()) {
    MorId g = static_cast<MorId>(key >> 32);
    MorId f2 = static_cast<MorId>(key & 0xffffffffu);
    if (d.compose(f.on_mor(g), f.on_mor(f2)) != f.on_mor(gf))
      throw ValidationError(ErrorKind::MismatchedEndpoints,
                            "functor breaks composition at (" + c.mor_name(g) + ", " +
                                c.mor_name(f2) + ")");
  }
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor f;
  f.src = c;
  f.tgt = c;
  f.ob_map.resize(c->num_objects());
  f.mor_map.resize(c->num_morphisms());
  for (std::size_t i = 0; i < c->num_objects(); ++i) f.ob_map[i] = static_cast<ObjId>(i);
  for (std::size_t i = 0; i < c->num_morphisms(); ++i) f.mor_map[i] = static_cast<MorId>(i);
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor r;
  r.src = f.src;
  r.tgt = g.tgt;
  r.ob_map.resize(f.ob_map.size());
  r.mor_map.resize(f.mor_map.size());
  for (std::size_t i = 0; i < f.ob_map.size(); ++i)
    r.ob_map[i] = g.on_ob(f.ob_map[i]);
  for (std::size_t i = 0; i < f.mor_map.size(); ++i)
    r.mor_map[i] = g.on_mor(f.mor_map[i]);
  return r;
}

FinFunctor constant_functor(const CatPtr& src, const CatPtr& tgt, ObjId x) {
  FinFunctor f;
  f.src = src;
  f.tgt = tgt;
  f.ob_map.assign(src->num_objects(), x);
  f.mor_map.assign(src->num_morphisms(), tgt->identity(x));
  return f;
}

void validate_nat_trans(const NatTrans& t) {
  if (!(t.src.src.get() == t.tgt.src.get() && t.src.tgt.get() == t.tgt.tgt.get()))
    throw ValidationError(ErrorKind::MismatchedEndpoints,
                          "natural transformation endpoints disagree");
  const FinCat& c = *t.src.src;
  const FinCat& d = *t.src.tgt;
  if (t.components.size() != c.num_objects())
    throw ValidationError(ErrorKind::MismatchedEndpoints, "component table has wrong arity");
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    MorId comp = t.components[x];
    if (d.src(comp) != t.src.on_ob(static_cast<ObjId>(x)) ||
        d.tgt(comp) != t.tgt.on_ob(static_cast<ObjId>(x)))
      throw ValidationError(ErrorKind::MismatchedEndpoints,
                            "component at " + c.obj_name(static_cast<ObjId>(x)) +
                                " has wrong endpoints");
  }
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    MorId mm = static_cast<MorId>(m);
    MorId lhs = d.compose(t.at(c.tgt(mm)), t.src.on_mor(mm));
    MorId rhs = d.compose(t.tgt.on_mor(mm), t.at(c.src(mm)));
    if (lhs != rhs)
      throw ValidationError(ErrorKind::NaturalityFailure,
                            "naturality square fails at " + c.mor_name(mm));
  }
}

bool all_components_invertible(const NatTrans& t) {
  const FinCat& d = *t.src.tgt;
  for (MorId comp : t.components)
    if (!d.is_iso(comp)) return false;
  return true;
}

NatTrans identity_nat_trans(const FinFunctor& f) {
  NatTrans t;
  t.src = f;
  t.tgt = f;
  t.components.resize(f.ob_map.size());
  for (std::size_t x = 0; x < f.ob_map.size(); ++x)
    t.components[x] = f.tgt->identity(f.ob_map[x]);
  return t;
}

NatTrans vertical_compose(const NatTrans& later, const NatTrans& earlier) {
  NatTrans t;
  t.src = earlier.src;
  t.tgt = later.tgt;
  t.components.resize(earlier.components.size());
  const FinCat& d = *earlier.src.tgt;
  for (std::size_t x = 0; x < t.components.size(); ++x)
    t.components[x] = d.compose(later.components[x], earlier.components[x]);
  return t;
}

NatTrans horizontal_compose(const NatTrans& theta, const NatTrans& psi) {
  // theta : F => F' (between D and E), psi : G => G' (between C and D);
  // result F∘G => F'∘G', component theta_{G'(x)} ∘ F(psi_x).
  NatTrans t;
  t.src = compose_functors(theta.src, psi.src);
  t.tgt = compose_functors(theta.tgt, psi.tgt);
  const FinCat& e = *theta.src.tgt;
  t.components.resize(psi.components.size());
  for (std::size_t x = 0; x < psi.components.size(); ++x) {
    MorId via = theta.at(psi.tgt.on_ob(static_cast<ObjId>(x)));
    t.components[x] = e.compose(via, theta.src.on_mor(psi.components[x]));
  }
  return t;
}

NatTrans whisker_left(const FinFunctor& h, const NatTrans& t) {
  NatTrans r;
  r.src = compose_functors(h, t.src);
  r.tgt = compose_functors(h, t.tgt);
  r.components.resize(t.components.size());
  for (std::size_t x = 0; x < t.components.size(); ++x)
    r.components[x] = h.on_mor(t.components[x]);
  return r;
}

NatTrans whisker_right(const NatTrans& t, const FinFunctor& h) {
  NatTrans r;
  r.src = compose_functors(t.src, h);
  r.tgt = compose_functors(t.tgt, h);
  r.components.resize(h.ob_map.size());
  for (std::size_t x = 0; x < h.ob_map.size(); ++x)
    r.components[x] = t.at(h.on_ob(static_cast<ObjId>(x)));
  return r;
}

namespace {

struct ComposeEntry {
  MorId later, earlier, result;
};

// Compose entries bucketed by the largest morphism index they mention, so a
// DFS over morphism assignments can check each entry exactly once, as soon as
// all three morphisms have images.
std::vector<std::vector<ComposeEntry>> entries_by_max(const FinCat& c) {
  std::vector<std::vector<ComposeEntry>> buckets(c.num_morphisms());
  for (const auto& [key, result] : c.compose_table()) {
    MorId later = static_cast<MorId>(key >> 32);
    MorId earlier = static_cast<MorId>(key & 0xffffffffu);
    MorId mx = std::max({later, earlier, result});
    buckets[static_cast<std::size_t>(mx)].push_back({later, earlier, result});
  }
  return buckets;
}

// DFS that assigns morphism images in canonical order with incremental
// identity/composition pruning.
struct FunctorSearch {
  const FinCat& c;
  const FinCat& d;
  FinFunctor current;
  std::vector<FinFunctor>& out;
  std::vector<std::vector<ComposeEntry>> buckets;

  bool mor_candidate_ok(std::size_t mi, MorId img) const {
    for (const ComposeEntry& e : buckets[mi]) {
      MorId gi = static_cast<std::size_t>(e.later) == mi ? img
                                                         : current.mor_map[static_cast<std::size_t>(e.later)];
      MorId fi = static_cast<std::size_t>(e.earlier) == mi
                     ? img
                     : current.mor_map[static_cast<std::size_t>(e.earlier)];
      MorId hi = static_cast<std::size_t>(e.result) == mi
                     ? img
                     : current.mor_map[static_cast<std::size_t>(e.result)];
      if (d.compose(gi, fi) != hi) return false;
    }
    return true;
  }

  void assign_mor(std::size_t mi) {
    if (mi == c.num_morphisms()) {
      out.push_back(current);
      return;
    }
    MorId m = static_cast<MorId>(mi);
    if (c.is_identity(m)) {
      MorId img = d.identity(current.on_ob(c.src(m)));
      if (mor_candidate_ok(mi, img)) {
        current.mor_map[mi] = img;
        assign_mor(mi + 1);
      }
      return;
    }
    ObjId ds = current.on_ob(c.src(m));
    ObjId dt = current.on_ob(c.tgt(m));
    for (MorId img : d.hom(ds, dt)) {
      if (!mor_candidate_ok(mi, img)) continue;
      current.mor_map[mi] = img;
      assign_mor(mi + 1);
    }
  }

  void assign_ob(std::size_t oi) {
    if (oi == c.num_objects()) {
      assign_mor(0);
      return;
    }
    for (std::size_t img = 0; img < d.num_objects(); ++img) {
      current.ob_map[oi] = static_cast<ObjId>(img);
      assign_ob(oi + 1);
    }
  }
};

}  // namespace

std::vector<FinFunctor> enumerate_functors(const CatPtr& c, const CatPtr& d, const Cap& cap) {
  cap.require(sat_pow(d->num_objects(), c->num_objects()));
  std::vector<FinFunctor> out;
  FinFunctor current;
  current.src = c;
  current.tgt = d;
  current.ob_map.assign(c->num_objects(), 0);
  current.mor_map.assign(c->num_morphisms(), -1);
  if (c->num_objects() == 0) {
    out.push_back(current);
    return out;
  }
  if (d->num_objects() == 0) return out;
  FunctorSearch search{*c, *d, std::move(current), out, entries_by_max(*c)};
  search.assign_ob(0);
  return out;
}

namespace {

struct TransSearch {
  const FinCat& c;
  const FinCat& d;
  const FinFunctor& f;
  const FinFunctor& g;
  std::vector<MorId> components;
  std::vector<NatTrans>& out;

  bool ok(std::size_t xi, MorId comp) const {
    // naturality squares for morphisms whose both endpoint components exist
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
      MorId mm = static_cast<MorId>(m);
      std::size_t sx = static_cast<std::size_t>(c.src(mm));
      std::size_t tx = static_cast<std::size_t>(c.tgt(mm));
      if (sx > xi || tx > xi) continue;
      MorId cs = sx == xi ? comp : components[sx];
      MorId ct = tx == xi ? comp : components[tx];
      if (d.compose(ct, f.on_mor(mm)) != d.compose(g.on_mor(mm), cs)) return false;
    }
    return true;
  }

  void assign(std::size_t xi) {
    if (xi == c.num_objects()) {
      NatTrans t;
      t.src = f;
      t.tgt = g;
      t.components = components;
      out.push_back(std::move(t));
      return;
    }
    for (MorId comp : d.hom(f.on_ob(static_cast<ObjId>(xi)), g.on_ob(static_cast<ObjId>(xi)))) {
      if (!ok(xi, comp)) continue;
      components[xi] = comp;
      assign(xi + 1);
    }
  }
};

}  // namespace

std::vector<NatTrans> enumerate_transformations(const FinFunctor& f, const FinFunctor& g,
                                                const Cap& cap) {
  if (f.src.get() != g.src.get() || f.tgt.get() != g.tgt.get())
    throw ValidationError(ErrorKind::MismatchedEndpoints,
                          "transformations require functors with shared endpoints");
  const FinCat& c = *f.src;
  const FinCat& d = *f.tgt;
  std::uint64_t estimate = 1;
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    estimate = sat_mul(estimate,
                       std::max<std::uint64_t>(
                           1, d.hom(f.on_ob(static_cast<ObjId>(x)), g.on_ob(static_cast<ObjId>(x)))
                                  .size()));
  cap.require(estimate);
  std::vector<NatTrans> out;
  TransSearch search{c, d, f, g, std::vector<MorId>(c.num_objects(), -1), out};
  search.assign(0);
  return out;
}

EquivalenceReport is_equivalence(const FinFunctor& f) {
  EquivalenceReport report;
  const FinCat& c = *f.src;
  const FinCat& d = *f.tgt;

  report.fully_faithful = true;
  for (std::size_t x = 0; x < c.num_objects() && report.fully_faithful; ++x) {
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      const auto& source_hom = c.hom(static_cast<ObjId>(x), static_cast<ObjId>(y));
      const auto& target_hom =
          d.hom(f.on_ob(static_cast<ObjId>(x)), f.on_ob(static_cast<ObjId>(y)));
      // injectivity + matching cardinality gives bijectivity
      std::vector<MorId> images;
      images.reserve(source_hom.size());
      for (MorId m : source_hom) images.push_back(f.on_mor(m));
      std::sort(images.begin(), images.end());
      bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
      if (!injective || images.size() != target_hom.size()) {
        report.fully_faithful = false;
        report.witness = "hom(" + c.obj_name(static_cast<ObjId>(x)) + ", " +
                         c.obj_name(static_cast<ObjId>(y)) + ") has " +
                         std::to_string(source_hom.size()) + " morphisms vs " +
                         std::to_string(target_hom.size()) + " in the image hom-set" +
                         (injective ? "" : " (non-injective)");
        break;
      }
    }
  }

  report.essentially_surjective = true;
  for (std::size_t dy = 0; dy < d.num_objects(); ++dy) {
    bool hit = false;
    for (std::size_t x = 0; x < c.num_objects() && !hit; ++x)
      hit = d.isomorphic_objects(f.on_ob(static_cast<ObjId>(x)), static_cast<ObjId>(dy));
    if (!hit) {
      report.essentially_surjective = false;
      report.witness += std::string(report.witness.empty() ? "" : "; ") + "object " +
                        d.obj_name(static_cast<ObjId>(dy)) + " not hit up to iso";
      break;
    }
  }
  return report;
}

bool has_quasi_inverse(const FinFunctor& f, const Cap& cap) {
  for (const FinFunctor& g : enumerate_functors(f.tgt, f.src, cap)) {
    auto gf = compose_functors(g, f);
    auto fg = compose_functors(f, g);
    bool gf_iso = false;
    for (const NatTrans& t : enumerate_transformations(gf, identity_functor(f.src), cap))
      if (all_components_invertible(t)) {
        gf_iso = true;
        break;
      }
    if (!gf_iso) continue;
    for (const NatTrans& t : enumerate_transformations(fg, identity_functor(f.tgt), cap))
      if (all_components_invertible(t)) return true;
  }
  return false;
}

FunctorCategory functor_category(const CatPtr& c, const CatPtr& d, const Cap& cap) {
  FunctorCategory result;
  result.objects = enumerate_functors(c, d, cap);

  std::vector<std::string> objects;
  for (std::size_t i = 0; i < result.objects.size(); ++i) {
    std::string name = "F";
    // zero-pad so lexicographic order equals enumeration order
    std::string num = std::to_string(i);
    std::string width = std::to_string(result.objects.size() == 0 ? 1 : result.objects.size() - 1);
    name += std::string(width.size() - num.size(), '0') + num;
    objects.push_back(name);
  }

  std::vector<Mor> morphisms;
  std::vector<NatTrans> trans;
  auto trans_key = [](std::size_t s, std::size_t t, const std::vector<MorId>& comps) {
    std::string k = std::to_string(s) + ">" + std::to_string(t) + ":";
    for (MorId m : comps) k += std::to_string(m) + ",";
    return k;
  };
  std::unordered_map<std::string, MorId> by_data;

  for (std::size_t s = 0; s < result.objects.size(); ++s) {
    for (std::size_t t = 0; t < result.objects.size(); ++t) {
      for (NatTrans& nt : enumerate_transformations(result.objects[s], result.objects[t], cap)) {
        std::string data = trans_key(s, t, nt.components);
        if (by_data.count(data)) continue;
        std::string name = "n" + std::to_string(trans.size());
        by_data[data] = static_cast<MorId>(trans.size());
        morphisms.push_back(Mor{name, static_cast<ObjId>(s), static_cast<ObjId>(t)});
        trans.push_back(std::move(nt));
      }
    }
  }
  // canonical order: pad names after the count is known
  std::string width = std::to_string(trans.size() == 0 ? 1 : trans.size() - 1);
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    std::string num = std::to_string(i);
    morphisms[i].id = "n" + std::string(width.size() - num.size(), '0') + num;
  }

  std::vector<MorId> identity(objects.size(), -1);
  for (std::size_t s = 0; s < result.objects.size(); ++s) {
    NatTrans idt = identity_nat_trans(result.objects[s]);
    identity[s] = by_data.at(trans_key(s, s, idt.components));
  }

  std::unordered_map<std::uint64_t, MorId> compose;
  for (std::size_t gi = 0; gi < morphisms.size(); ++gi) {
    for (std::size_t fi = 0; fi < morphisms.size(); ++fi) {
      if (morphisms[fi].tgt != morphisms[gi].src) continue;
      NatTrans comp = vertical_compose(trans[gi], trans[fi]);
      MorId target = by_data.at(trans_key(static_cast<std::size_t>(morphisms[fi].src),
                                          static_cast<std::size_t>(morphisms[gi].tgt),
                                          comp.components));
      compose[pair_key(static_cast<MorId>(gi), static_cast<MorId>(fi))] = target;
    }
  }

  result.cat = FinCat::from_tables(std::move(objects), std::move(morphisms), std::move(identity),
                                   std::move(compose));
  result.transformations = std::move(trans);
  return result;
}

}  // namespace stabkit
