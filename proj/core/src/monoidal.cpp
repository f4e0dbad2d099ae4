#include "stabkit/monoidal.hpp"

#include <algorithm>
#include <unordered_map>

namespace stabkit {

bool MonoidalCat::all_objects_invertible() const {
  for (std::size_t u = 0; u < base_->num_objects(); ++u) {
    bool invertible = false;
    for (std::size_t v = 0; v < base_->num_objects() && !invertible; ++v)
      invertible = tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v)) == unit_ &&
                   tensor_ob(static_cast<ObjId>(v), static_cast<ObjId>(u)) == unit_;
    if (!invertible) return false;
  }
  return true;
}

void MonoidalCat::check_laws() const {
  const FinCat& c = *base_;
  const std::size_t n = c.num_objects();
  const std::size_t m = c.num_morphisms();
  if (tensor_ob_.size() != n * n)
    throw ValidationError(ErrorKind::NonMonoidObjects, "object tensor table incomplete");
  if (tensor_mor_.size() != m * m)
    throw ValidationError(ErrorKind::InterchangeFailure, "morphism tensor table incomplete");
  if (unit_ < 0 || static_cast<std::size_t>(unit_) >= n)
    throw ValidationError(ErrorKind::UnitNotStrict, "unit object missing");

  // (objects, tensor, unit) is a monoid
  for (std::size_t u = 0; u < n; ++u) {
    if (tensor_ob(static_cast<ObjId>(u), unit_) != static_cast<ObjId>(u) ||
        tensor_ob(unit_, static_cast<ObjId>(u)) != static_cast<ObjId>(u))
      throw ValidationError(ErrorKind::NonMonoidObjects,
                            "unit law fails at " + c.obj_name(static_cast<ObjId>(u)));
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        ObjId left = tensor_ob(tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v)),
                               static_cast<ObjId>(w));
        ObjId right = tensor_ob(static_cast<ObjId>(u),
                                tensor_ob(static_cast<ObjId>(v), static_cast<ObjId>(w)));
        if (left != right)
          throw ValidationError(ErrorKind::NonMonoidObjects,
                                "associativity fails at (" + c.obj_name(static_cast<ObjId>(u)) +
                                    ", " + c.obj_name(static_cast<ObjId>(v)) + ", " +
                                    c.obj_name(static_cast<ObjId>(w)) + ")");
      }

  // tensor_mor endpoints and identity preservation
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      MorId fg = tensor_mor(static_cast<MorId>(f), static_cast<MorId>(g));
      if (c.src(fg) != tensor_ob(c.src(static_cast<MorId>(f)), c.src(static_cast<MorId>(g))) ||
          c.tgt(fg) != tensor_ob(c.tgt(static_cast<MorId>(f)), c.tgt(static_cast<MorId>(g))))
        throw ValidationError(ErrorKind::InterchangeFailure,
                              "tensor endpoints fail at (" + c.mor_name(static_cast<MorId>(f)) +
                                  ", " + c.mor_name(static_cast<MorId>(g)) + ")");
    }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      MorId idid = tensor_mor(c.identity(static_cast<ObjId>(u)), c.identity(static_cast<ObjId>(v)));
      if (idid != c.identity(tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v))))
        throw ValidationError(ErrorKind::InterchangeFailure,
                              "tensor of identities fails at (" +
                                  c.obj_name(static_cast<ObjId>(u)) + ", " +
                                  c.obj_name(static_cast<ObjId>(v)) + ")");
    }

  // interchange (g∘f)⊗(g'∘f') = (g⊗g')∘(f⊗f')
  for (const auto& [key1, gf] : c.compose_table()) {
    MorId g = static_cast<MorId>(key1 >> 32);
    MorId f = static_cast<MorId>(key1 & 0xffffffffu);
    for (const auto& [key2, gf2] : c.compose_table()) {
      MorId g2 = static_cast<MorId>(key2 >> 32);
      MorId f2 = static_cast<MorId>(key2 & 0xffffffffu);
      MorId lhs = tensor_mor(gf, gf2);
      MorId rhs = c.compose(tensor_mor(g, g2), tensor_mor(f, f2));
      if (lhs != rhs)
        throw ValidationError(ErrorKind::InterchangeFailure,
                              "interchange fails at ((" + c.mor_name(g) + "∘" + c.mor_name(f) +
                                  ")⊗(" + c.mor_name(g2) + "∘" + c.mor_name(f2) + "))");
    }
  }

  // strict unitality and associativity on morphisms
  MorId id_unit = c.identity(unit_);
  for (std::size_t f = 0; f < m; ++f) {
    if (tensor_mor(static_cast<MorId>(f), id_unit) != static_cast<MorId>(f) ||
        tensor_mor(id_unit, static_cast<MorId>(f)) != static_cast<MorId>(f))
      throw ValidationError(ErrorKind::UnitNotStrict,
                            "morphism unit law fails at " + c.mor_name(static_cast<MorId>(f)));
  }
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t h = 0; h < m; ++h) {
        MorId left = tensor_mor(tensor_mor(static_cast<MorId>(f), static_cast<MorId>(g)),
                                static_cast<MorId>(h));
        MorId right = tensor_mor(static_cast<MorId>(f),
                                 tensor_mor(static_cast<MorId>(g), static_cast<MorId>(h)));
        if (left != right)
          throw ValidationError(ErrorKind::InterchangeFailure,
                                "morphism tensor associativity fails at (" +
                                    c.mor_name(static_cast<MorId>(f)) + ", " +
                                    c.mor_name(static_cast<MorId>(g)) + ", " +
                                    c.mor_name(static_cast<MorId>(h)) + ")");
      }

  if (symmetry_) {
    const auto& s = *symmetry_;
    if (s.size() != n * n)
      throw ValidationError(ErrorKind::SymmetryFailure, "symmetry table incomplete");
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        MorId suv = symmetry(static_cast<ObjId>(u), static_cast<ObjId>(v));
        ObjId uv = tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v));
        ObjId vu = tensor_ob(static_cast<ObjId>(v), static_cast<ObjId>(u));
        if (c.src(suv) != uv || c.tgt(suv) != vu)
          throw ValidationError(ErrorKind::SymmetryFailure,
                                "symmetry endpoints fail at (" + c.obj_name(static_cast<ObjId>(u)) +
                                    ", " + c.obj_name(static_cast<ObjId>(v)) + ")");
        if (!c.is_iso(suv))
          throw ValidationError(ErrorKind::SymmetryFailure,
                                "symmetry component is not invertible at (" +
                                    c.obj_name(static_cast<ObjId>(u)) + ", " +
                                    c.obj_name(static_cast<ObjId>(v)) + ")");
        MorId svu = symmetry(static_cast<ObjId>(v), static_cast<ObjId>(u));
        if (c.compose(svu, suv) != c.identity(uv))
          throw ValidationError(ErrorKind::SymmetryFailure,
                                "s∘s ≠ id at (" + c.obj_name(static_cast<ObjId>(u)) + ", " +
                                    c.obj_name(static_cast<ObjId>(v)) + ")");
      }
    // naturality in both slots
    for (std::size_t f = 0; f < m; ++f)
      for (std::size_t g = 0; g < m; ++g) {
        MorId ff = static_cast<MorId>(f);
        MorId gg = static_cast<MorId>(g);
        MorId lhs = c.compose(symmetry(c.tgt(ff), c.tgt(gg)), tensor_mor(ff, gg));
        MorId rhs = c.compose(tensor_mor(gg, ff), symmetry(c.src(ff), c.src(gg)));
        if (lhs != rhs)
          throw ValidationError(ErrorKind::SymmetryFailure,
                                "symmetry naturality fails at (" + c.mor_name(ff) + ", " +
                                    c.mor_name(gg) + ")");
      }
    // strict hexagons
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
          ObjId ou = static_cast<ObjId>(u), ov = static_cast<ObjId>(v), ow = static_cast<ObjId>(w);
          MorId left = symmetry(tensor_ob(ou, ov), ow);
          MorId right = c.compose(tensor_mor(symmetry(ou, ow), c.identity(ov)),
                                  tensor_mor(c.identity(ou), symmetry(ov, ow)));
          if (left != right)
            throw ValidationError(ErrorKind::SymmetryFailure,
                                  "hexagon fails at (" + c.obj_name(ou) + ", " + c.obj_name(ov) +
                                      ", " + c.obj_name(ow) + ")");
          MorId left2 = symmetry(ou, tensor_ob(ov, ow));
          MorId right2 = c.compose(tensor_mor(c.identity(ov), symmetry(ou, ow)),
                                   tensor_mor(symmetry(ou, ov), c.identity(ow)));
          if (left2 != right2)
            throw ValidationError(ErrorKind::SymmetryFailure,
                                  "hexagon fails at (" + c.obj_name(ou) + ", " + c.obj_name(ov) +
                                      ", " + c.obj_name(ow) + ") [second]");
        }
    // unit symmetry
    for (std::size_t u = 0; u < n; ++u)
      if (symmetry(static_cast<ObjId>(u), unit_) !=
              c.identity(static_cast<ObjId>(u)) ||
          symmetry(unit_, static_cast<ObjId>(u)) != c.identity(static_cast<ObjId>(u)))
        throw ValidationError(ErrorKind::SymmetryFailure,
                              "unit symmetry fails at " + c.obj_name(static_cast<ObjId>(u)));
  }
}

MonPtr MonoidalCat::make(CatPtr base, ObjId unit, std::vector<ObjId> tensor_ob,
                         std::vector<MorId> tensor_mor,
                         std::optional<std::vector<MorId>> symmetry) {
  auto mc = std::make_shared<MonoidalCat>();
  mc->base_ = std::move(base);
  mc->unit_ = unit;
  mc->tensor_ob_ = std::move(tensor_ob);
  mc->tensor_mor_ = std::move(tensor_mor);
  mc->symmetry_ = std::move(symmetry);
  mc->check_laws();
  return mc;
}

MonPtr validate_monoidal(const RawMonoidal& raw) {
  return validate_monoidal_on(validate_category(raw.base), raw.unit, raw.tensor_objects,
                              raw.tensor_morphisms, raw.symmetry);
}

MonPtr validate_monoidal_on(
    CatPtr base, const std::string& unit,
    const std::vector<std::array<std::string, 3>>& tensor_objects,
    const std::vector<std::array<std::string, 3>>& tensor_morphisms,
    const std::optional<std::vector<std::array<std::string, 3>>>& symmetry_table) {
  const std::size_t n = base->num_objects();
  const std::size_t m = base->num_morphisms();

  auto oid = [&](const std::string& name) {
    auto i = base->object_index(name);
    if (!i) throw ValidationError(ErrorKind::DanglingEndpoint, "unknown object " + name);
    return *i;
  };
  auto mid = [&](const std::string& name) {
    auto i = base->morphism_index(name);
    if (!i) throw ValidationError(ErrorKind::DanglingEndpoint, "unknown morphism " + name);
    return *i;
  };

  std::vector<ObjId> tensor_ob(n * n, -1);
  for (const auto& t : tensor_objects) {
    ObjId u = oid(t[0]), v = oid(t[1]), w = oid(t[2]);
    ObjId& slot = tensor_ob[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
    if (slot >= 0 && slot != w)
      throw ValidationError(ErrorKind::NonMonoidObjects,
                            "conflicting tensor entries at (" + t[0] + ", " + t[1] + ")");
    slot = w;
  }
  for (std::size_t i = 0; i < n * n; ++i)
    if (tensor_ob[i] < 0)
      throw ValidationError(ErrorKind::NonMonoidObjects, "object tensor table is partial");

  std::vector<MorId> tensor_mor(m * m, -1);
  for (const auto& t : tensor_morphisms) {
    MorId f = mid(t[0]), g = mid(t[1]), h = mid(t[2]);
    MorId& slot = tensor_mor[static_cast<std::size_t>(f) * m + static_cast<std::size_t>(g)];
    if (slot >= 0 && slot != h)
      throw ValidationError(ErrorKind::InterchangeFailure,
                            "conflicting tensor entries at (" + t[0] + ", " + t[1] + ")");
    slot = h;
  }
  // identity⊗identity entries are derivable from the object table
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      MorId fu = base->identity(static_cast<ObjId>(u));
      MorId gv = base->identity(static_cast<ObjId>(v));
      MorId& slot = tensor_mor[static_cast<std::size_t>(fu) * m + static_cast<std::size_t>(gv)];
      MorId expected = base->identity(
          tensor_ob[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)]);
      if (slot >= 0 && slot != expected)
        throw ValidationError(ErrorKind::InterchangeFailure,
                              "tensor of identities conflicts with the object table at (" +
                                  base->obj_name(static_cast<ObjId>(u)) + ", " +
                                  base->obj_name(static_cast<ObjId>(v)) + ")");
      slot = expected;
    }
  for (std::size_t i = 0; i < m * m; ++i)
    if (tensor_mor[i] < 0)
      throw ValidationError(ErrorKind::InterchangeFailure, "morphism tensor table is partial");

  std::optional<std::vector<MorId>> symmetry;
  if (symmetry_table) {
    std::vector<MorId> s(n * n, -1);
    for (const auto& t : *symmetry_table) {
      ObjId u = oid(t[0]), v = oid(t[1]);
      s[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = mid(t[2]);
    }
    for (std::size_t i = 0; i < n * n; ++i)
      if (s[i] < 0) throw ValidationError(ErrorKind::SymmetryFailure, "symmetry table is partial");
    symmetry = std::move(s);
  }

  return MonoidalCat::make(std::move(base), oid(unit), std::move(tensor_ob),
                           std::move(tensor_mor), std::move(symmetry));
}

// Builder for discrete strict monoidal categories given the object monoid
// table; symmetry (identities) is attached when the monoid commutes.
MonPtr discrete_monoid(const std::vector<std::string>& names,
                       const std::vector<std::vector<int>>& table, int unit_index) {
  CatPtr base = discrete_category(names);
  const std::size_t n = base->num_objects();

  // names were sorted by validate_category; translate table indices
  std::vector<ObjId> to_sorted(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) to_sorted[i] = *base->object_index(names[i]);
  std::vector<int> from_sorted(n);
  for (std::size_t i = 0; i < names.size(); ++i)
    from_sorted[static_cast<std::size_t>(to_sorted[i])] = static_cast<int>(i);

  std::vector<ObjId> tensor_ob(n * n);
  bool commutative = true;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      int orig = table[static_cast<std::size_t>(from_sorted[u])]
                      [static_cast<std::size_t>(from_sorted[v])];
      tensor_ob[u * n + v] = to_sorted[static_cast<std::size_t>(orig)];
    }
  for (std::size_t u = 0; u < n && commutative; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (tensor_ob[u * n + v] != tensor_ob[v * n + u]) {
        commutative = false;
        break;
      }

  const std::size_t m = base->num_morphisms();
  std::vector<MorId> tensor_mor(m * m);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      ObjId u = base->src(static_cast<MorId>(f));
      ObjId v = base->src(static_cast<MorId>(g));
      tensor_mor[f * m + g] =
          base->identity(tensor_ob[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)]);
    }

  std::optional<std::vector<MorId>> symmetry;
  if (commutative) {
    std::vector<MorId> s(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) s[u * n + v] = base->identity(tensor_ob[u * n + v]);
    symmetry = std::move(s);
  }
  return MonoidalCat::make(std::move(base), to_sorted[static_cast<std::size_t>(unit_index)],
                           std::move(tensor_ob), std::move(tensor_mor), std::move(symmetry));
}


MonPtr saturating_nat(int k) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  for (int i = 0; i <= k; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i <= k; ++i) {
    std::vector<int> row;
    for (int j = 0; j <= k; ++j) row.push_back(std::min(i + j, k));
    table.push_back(std::move(row));
  }
  return discrete_monoid(names, table, 0);
}

MonPtr trivial_monoidal() { return saturating_nat(0); }

MonPtr discrete_group(const std::vector<std::string>& names,
                      const std::vector<std::vector<int>>& table) {
  const std::size_t n = names.size();
  // locate the unit
  int unit = -1;
  for (std::size_t e = 0; e < n && unit < 0; ++e) {
    bool is_unit = true;
    for (std::size_t u = 0; u < n && is_unit; ++u)
      is_unit = table[e][u] == static_cast<int>(u) && table[u][e] == static_cast<int>(u);
    if (is_unit) unit = static_cast<int>(e);
  }
  if (unit < 0) throw ValidationError(ErrorKind::NonMonoidObjects, "group table has no unit");
  for (std::size_t u = 0; u < n; ++u) {
    bool invertible = false;
    for (std::size_t v = 0; v < n && !invertible; ++v)
      invertible = table[u][v] == unit && table[v][u] == unit;
    if (!invertible)
      throw ValidationError(ErrorKind::NonMonoidObjects,
                            "group table has a non-invertible element " + names[u]);
  }
  return discrete_monoid(names, table, unit);
}

MonPtr cyclic_two() { return discrete_group({"0", "1"}, {{0, 1}, {1, 0}}); }

MonPtr klein_four() {
  return discrete_group({"00", "01", "10", "11"},
                        {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

MonPtr idempotent_pair() { return discrete_monoid({"1", "e"}, {{0, 1}, {1, 1}}, 0); }

MonPtr cyclic_monoid(int index, int period) {
  const int n = index + period;
  auto normalize = [&](int k) { return k < index ? k : index + (k - index) % period; };
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    std::vector<int> row;
    for (int j = 0; j < n; ++j) row.push_back(normalize(i + j));
    table.push_back(std::move(row));
  }
  return discrete_monoid(names, table, 0);
}

std::optional<MorId> TransportCat::morphism_for(ObjId u, ObjId w, MorId f) const {
  const FinCat& ic = *source->base();
  if (w == source->unit() && f == ic.identity(source->tensor_ob(u, w))) {
    // identity pair; only valid when it encodes id_u
    if (source->tensor_ob(u, w) == u) return cat->identity(*cat->object_index(ic.obj_name(u)));
  }
  std::string name = "t:" + ic.obj_name(u) + ":" + ic.obj_name(w) + ":" + ic.mor_name(f);
  return cat->morphism_index(name);
}

TransportCat transport_category(const MonPtr& monoidal, const Cap& cap) {
  const FinCat& ic = *monoidal->base();
  const std::size_t n = ic.num_objects();

  cap.require(sat_mul(sat_mul(n, n), ic.num_morphisms()));

  struct PairData {
    ObjId u, w;
    MorId f;  // f : u⊗w -> v iso
  };
  std::vector<RawMor> raw_mor;
  std::vector<PairData> data;
  auto name_of = [&](const PairData& p) {
    return "t:" + ic.obj_name(p.u) + ":" + ic.obj_name(p.w) + ":" + ic.mor_name(p.f);
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      ObjId uw = monoidal->tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(w));
      for (std::size_t v = 0; v < n; ++v) {
        for (MorId f : ic.hom(uw, static_cast<ObjId>(v))) {
          if (!ic.is_iso(f)) continue;
          PairData p{static_cast<ObjId>(u), static_cast<ObjId>(w), f};
          // (unit, id) is the identity of u; keep it implicit
          if (p.w == monoidal->unit() && f == ic.identity(uw) && uw == static_cast<ObjId>(u))
            continue;
          raw_mor.push_back(RawMor{name_of(p), ic.obj_name(static_cast<ObjId>(u)),
                                   ic.obj_name(static_cast<ObjId>(v))});
          data.push_back(p);
        }
      }
    }
  }

  // compose table per (w,f);(z,g) = (w⊗z, g∘(f⊗id_z))
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < raw_mor.size(); ++i) by_name[raw_mor[i].id] = i;

  RawCategory raw;
  raw.objects = ic.objects();
  raw.morphisms = raw_mor;

  auto compose_pairs = [&](const PairData& second, const PairData& first) {
    // first : u -> v via f : u⊗w -> v, second : v -> t via g : v⊗z -> t
    ObjId wz = monoidal->tensor_ob(first.w, second.w);
    MorId f_tensor_idz =
        monoidal->tensor_mor(first.f, ic.identity(second.w));
    MorId g_after = ic.compose(second.f, f_tensor_idz);
    return PairData{first.u, wz, g_after};
  };

  for (std::size_t gi = 0; gi < data.size(); ++gi) {
    for (std::size_t fi = 0; fi < data.size(); ++fi) {
      // composable: tgt(first) == src(second)
      ObjId first_tgt = ic.tgt(data[fi].f);
      if (first_tgt != data[gi].u) continue;
      PairData comp = compose_pairs(data[gi], data[fi]);
      std::string comp_name;
      ObjId comp_tensor = monoidal->tensor_ob(comp.u, comp.w);
      if (comp.w == monoidal->unit() && comp.f == ic.identity(comp_tensor) &&
          comp_tensor == comp.u) {
        comp_name = "id:" + ic.obj_name(comp.u);
      } else {
        comp_name = name_of(comp);
        if (!by_name.count(comp_name))
          throw ValidationError(ErrorKind::Malformed,
                                "transport composition left the morphism set at " + comp_name);
      }
      raw.compose.push_back({raw_mor[gi].id, raw_mor[fi].id, comp_name});
    }
  }

  TransportCat result;
  result.source = monoidal;
  result.cat = validate_category(raw);
  // map pair data to the canonical (sorted) morphism order
  result.pairs.assign(result.cat->num_morphisms(), {-1, -1});
  for (std::size_t i = 0; i < raw_mor.size(); ++i) {
    MorId id = *result.cat->morphism_index(raw_mor[i].id);
    result.pairs[static_cast<std::size_t>(id)] = {data[i].w, data[i].f};
  }
  for (std::size_t x = 0; x < result.cat->num_objects(); ++x) {
    MorId id = result.cat->identity(static_cast<ObjId>(x));
    ObjId u = *monoidal->base()->object_index(result.cat->obj_name(static_cast<ObjId>(x)));
    result.pairs[static_cast<std::size_t>(id)] = {
        monoidal->unit(), monoidal->base()->identity(u)};
  }
  return result;
}

}  // namespace stabkit
