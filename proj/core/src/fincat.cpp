#include "stabkit/fincat.hpp"

#include <algorithm>
#include <functional>

namespace stabkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::PartialComposeTable: return "PartialComposeTable";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::MismatchedEndpoints: return "MismatchedEndpoints";
    case ErrorKind::NonMonoidObjects: return "NonMonoidObjects";
    case ErrorKind::InterchangeFailure: return "InterchangeFailure";
    case ErrorKind::UnitNotStrict: return "UnitNotStrict";
    case ErrorKind::SymmetryFailure: return "SymmetryFailure";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::UnitNotIdentity: return "UnitNotIdentity";
    case ErrorKind::MonoidIncompatible: return "MonoidIncompatible";
    case ErrorKind::TwoCellNotFunctorial: return "TwoCellNotFunctorial";
    case ErrorKind::TriangleFailure: return "TriangleFailure";
    case ErrorKind::UnitFailure: return "UnitFailure";
    case ErrorKind::NaturalityFailure: return "NaturalityFailure";
    case ErrorKind::NonInvertibleComponent: return "NonInvertibleComponent";
    case ErrorKind::SideMismatch: return "SideMismatch";
    case ErrorKind::NoColimit: return "NoColimit";
    case ErrorKind::ActionNotCocontinuous: return "ActionNotCocontinuous";
    case ErrorKind::AdjunctionInvalid: return "AdjunctionInvalid";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "UnknownError";
}

namespace {

constexpr std::string_view kIdentityPrefix = "id:";

bool has_identity_prefix(std::string_view s) {
  return s.size() >= kIdentityPrefix.size() && s.substr(0, kIdentityPrefix.size()) == kIdentityPrefix;
}

std::string identity_name(const std::string& object) { return "id:" + object; }

}  // namespace

MorId FinCat::compose(MorId later, MorId earlier) const {
  auto r = compose_opt(later, earlier);
  if (!r) {
    throw ValidationError(ErrorKind::PartialComposeTable,
                          "compose(" + mor_name(later) + ", " + mor_name(earlier) +
                              ") requested but undefined");
  }
  return *r;
}

bool FinCat::isomorphic_objects(ObjId x, ObjId y) const {
  if (x == y) return true;
  for (MorId m : hom(x, y))
    if (is_iso(m)) return true;
  return false;
}

std::optional<ObjId> FinCat::object_index(std::string_view name) const {
  auto it = obj_index_.find(std::string(name));
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCat::morphism_index(std::string_view name) const {
  auto it = mor_index_.find(std::string(name));
  if (it == mor_index_.end()) return std::nullopt;
  return it->second;
}

void FinCat::build_indices() {
  obj_index_.clear();
  mor_index_.clear();
  for (std::size_t i = 0; i < objects_.size(); ++i)
    obj_index_[objects_[i]] = static_cast<ObjId>(i);
  for (std::size_t i = 0; i < morphisms_.size(); ++i)
    mor_index_[morphisms_[i].id] = static_cast<MorId>(i);

  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const Mor& m = morphisms_[i];
    hom_[static_cast<std::size_t>(m.src) * n + static_cast<std::size_t>(m.tgt)].push_back(
        static_cast<MorId>(i));
  }

  inverse_.assign(morphisms_.size(), -1);
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const Mor& m = morphisms_[i];
    for (MorId cand : hom(m.tgt, m.src)) {
      auto left = compose_opt(cand, static_cast<MorId>(i));
      auto right = compose_opt(static_cast<MorId>(i), cand);
      if (left && right && *left == identity_[static_cast<std::size_t>(m.src)] &&
          *right == identity_[static_cast<std::size_t>(m.tgt)]) {
        inverse_[i] = cand;
        break;
      }
    }
  }
}

void FinCat::check_laws() const {
  for (const Mor& m : morphisms_) {
    if (m.src < 0 || m.tgt < 0 || static_cast<std::size_t>(m.src) >= objects_.size() ||
        static_cast<std::size_t>(m.tgt) >= objects_.size())
      throw ValidationError(ErrorKind::DanglingEndpoint, "morphism " + m.id);
  }
  if (identity_.size() != objects_.size())
    throw ValidationError(ErrorKind::MissingIdentity, "identity table incomplete");
  for (std::size_t x = 0; x < objects_.size(); ++x) {
    MorId e = identity_[x];
    if (e < 0 || static_cast<std::size_t>(e) >= morphisms_.size())
      throw ValidationError(ErrorKind::MissingIdentity, "object " + objects_[x]);
    if (morphisms_[static_cast<std::size_t>(e)].src != static_cast<ObjId>(x) ||
        morphisms_[static_cast<std::size_t>(e)].tgt != static_cast<ObjId>(x))
      throw ValidationError(ErrorKind::MissingIdentity,
                            "identity of " + objects_[x] + " has wrong endpoints");
  }

  // compose defined exactly on composable pairs, with matching endpoints
  for (const auto& [key, value] : compose_) {
    MorId later = static_cast<MorId>(key >> 32);
    MorId earlier = static_cast<MorId>(key & 0xffffffffu);
    const Mor& g = morphisms_[static_cast<std::size_t>(later)];
    const Mor& f = morphisms_[static_cast<std::size_t>(earlier)];
    if (f.tgt != g.src)
      throw ValidationError(ErrorKind::PartialComposeTable,
                            "entry (" + g.id + ", " + f.id + ") is not composable");
    const Mor& h = morphisms_[static_cast<std::size_t>(value)];
    if (h.src != f.src || h.tgt != g.tgt)
      throw ValidationError(
          ErrorKind::PartialComposeTable,
          "compose(" + g.id + ", " + f.id + ") = " + h.id + " has wrong endpoints");
  }
  const std::size_t nm = morphisms_.size();
  for (std::size_t gi = 0; gi < nm; ++gi) {
    for (std::size_t fi = 0; fi < nm; ++fi) {
      if (morphisms_[fi].tgt != morphisms_[gi].src) continue;
      if (!compose_.count(pair_key(static_cast<MorId>(gi), static_cast<MorId>(fi))))
        throw ValidationError(
            ErrorKind::PartialComposeTable,
            "missing compose(" + morphisms_[gi].id + ", " + morphisms_[fi].id + ")");
    }
  }

  for (std::size_t fi = 0; fi < nm; ++fi) {
    const Mor& f = morphisms_[fi];
    MorId id_src = identity_[static_cast<std::size_t>(f.src)];
    MorId id_tgt = identity_[static_cast<std::size_t>(f.tgt)];
    if (compose_.at(pair_key(static_cast<MorId>(fi), id_src)) != static_cast<MorId>(fi) ||
        compose_.at(pair_key(id_tgt, static_cast<MorId>(fi))) != static_cast<MorId>(fi))
      throw ValidationError(ErrorKind::MissingIdentity, "identity law fails at " + f.id);
  }

  // associativity on all composable triples
  for (const auto& [key, gf] : compose_) {
    MorId g = static_cast<MorId>(key >> 32);
    MorId f = static_cast<MorId>(key & 0xffffffffu);
    ObjId mid_tgt = morphisms_[static_cast<std::size_t>(g)].tgt;
    for (std::size_t hi = 0; hi < nm; ++hi) {
      if (morphisms_[hi].src != mid_tgt) continue;
      MorId h = static_cast<MorId>(hi);
      MorId left = compose_.at(pair_key(h, gf));
      MorId hg = compose_.at(pair_key(h, g));
      MorId right = compose_.at(pair_key(hg, f));
      if (left != right)
        throw ValidationError(ErrorKind::NonAssociative,
                              "(" + mor_name(h) + ", " + mor_name(g) + ", " + mor_name(f) + ")");
    }
  }
}

std::shared_ptr<const FinCat> FinCat::from_tables(std::vector<std::string> objects,
                                                  std::vector<Mor> morphisms,
                                                  std::vector<MorId> identity,
                                                  std::unordered_map<std::uint64_t, MorId> compose,
                                                  std::optional<FinSetData> finset) {
  auto cat = std::make_shared<FinCat>();
  cat->objects_ = std::move(objects);
  cat->morphisms_ = std::move(morphisms);
  cat->identity_ = std::move(identity);
  cat->compose_ = std::move(compose);
  cat->finset_ = std::move(finset);
  cat->check_laws();
  cat->build_indices();
  return cat;
}

CatPtr validate_category(const RawCategory& raw) {
  std::vector<std::string> objects = raw.objects;
  std::sort(objects.begin(), objects.end());
  for (std::size_t i = 1; i < objects.size(); ++i)
    if (objects[i] == objects[i - 1])
      throw ValidationError(ErrorKind::DuplicateName, "object " + objects[i]);
  std::unordered_map<std::string, ObjId> oidx;
  for (std::size_t i = 0; i < objects.size(); ++i) oidx[objects[i]] = static_cast<ObjId>(i);

  std::vector<Mor> morphisms;
  morphisms.reserve(raw.morphisms.size() + objects.size());
  for (const RawMor& rm : raw.morphisms) {
    if (has_identity_prefix(rm.id))
      throw ValidationError(ErrorKind::MissingIdentity,
                            "morphism id " + rm.id +
                                " uses the reserved identity prefix; identities are implicit");
    auto s = oidx.find(rm.src);
    auto t = oidx.find(rm.tgt);
    if (s == oidx.end())
      throw ValidationError(ErrorKind::DanglingEndpoint, rm.id + " has unknown src " + rm.src);
    if (t == oidx.end())
      throw ValidationError(ErrorKind::DanglingEndpoint, rm.id + " has unknown tgt " + rm.tgt);
    morphisms.push_back(Mor{rm.id, s->second, t->second});
  }
  for (const std::string& o : objects)
    morphisms.push_back(Mor{identity_name(o), oidx[o], oidx[o]});

  std::sort(morphisms.begin(), morphisms.end(),
            [](const Mor& a, const Mor& b) { return a.id < b.id; });
  std::unordered_map<std::string, MorId> midx;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    if (midx.count(morphisms[i].id))
      throw ValidationError(ErrorKind::DuplicateName, "morphism " + morphisms[i].id);
    midx[morphisms[i].id] = static_cast<MorId>(i);
  }

  std::vector<MorId> identity(objects.size(), -1);
  for (std::size_t x = 0; x < objects.size(); ++x)
    identity[x] = midx.at(identity_name(objects[x]));

  std::unordered_map<std::uint64_t, MorId> compose;
  // identity compositions, filled in up front
  for (std::size_t fi = 0; fi < morphisms.size(); ++fi) {
    const Mor& f = morphisms[fi];
    compose[pair_key(static_cast<MorId>(fi), identity[static_cast<std::size_t>(f.src)])] =
        static_cast<MorId>(fi);
    compose[pair_key(identity[static_cast<std::size_t>(f.tgt)], static_cast<MorId>(fi))] =
        static_cast<MorId>(fi);
  }
  for (const auto& triple : raw.compose) {
    auto g = midx.find(triple[0]);
    auto f = midx.find(triple[1]);
    auto h = midx.find(triple[2]);
    if (g == midx.end() || f == midx.end() || h == midx.end())
      throw ValidationError(ErrorKind::DanglingEndpoint,
                            "compose entry (" + triple[0] + ", " + triple[1] + ", " + triple[2] +
                                ") names an unknown morphism");
    std::uint64_t key = pair_key(g->second, f->second);
    auto existing = compose.find(key);
    if (existing != compose.end() && existing->second != h->second) {
      bool identity_pair = morphisms[static_cast<std::size_t>(g->second)].id ==
                               identity_name(objects[static_cast<std::size_t>(
                                   morphisms[static_cast<std::size_t>(g->second)].src)]) ||
                           morphisms[static_cast<std::size_t>(f->second)].id ==
                               identity_name(objects[static_cast<std::size_t>(
                                   morphisms[static_cast<std::size_t>(f->second)].src)]);
      throw ValidationError(identity_pair ? ErrorKind::MissingIdentity
                                          : ErrorKind::PartialComposeTable,
                            "conflicting entries for compose(" + triple[0] + ", " + triple[1] +
                                ")");
    }
    compose[key] = h->second;
  }

  return FinCat::from_tables(std::move(objects), std::move(morphisms), std::move(identity),
                             std::move(compose));
}

bool same_presentation(const FinCat& a, const FinCat& b) {
  if (a.objects() != b.objects()) return false;
  if (a.num_morphisms() != b.num_morphisms()) return false;
  for (std::size_t i = 0; i < a.num_morphisms(); ++i) {
    const Mor& ma = a.morphisms()[i];
    const Mor& mb = b.morphisms()[i];
    if (ma.id != mb.id || ma.src != mb.src || ma.tgt != mb.tgt) return false;
  }
  if (a.compose_table().size() != b.compose_table().size()) return false;
  for (const auto& [k, v] : a.compose_table()) {
    auto it = b.compose_table().find(k);
    if (it == b.compose_table().end() || it->second != v) return false;
  }
  return true;
}

namespace {

// Backtracking search for a structure-preserving bijection.
struct IsoSearch {
  const FinCat& a;
  const FinCat& b;
  std::vector<ObjId> ob_map;
  std::vector<MorId> mor_map;
  std::vector<bool> ob_used;
  std::vector<bool> mor_used;

  bool morphism_ok(MorId ma, MorId mb) const {
    if (ob_map[static_cast<std::size_t>(a.src(ma))] != b.src(mb)) return false;
    if (ob_map[static_cast<std::size_t>(a.tgt(ma))] != b.tgt(mb)) return false;
    if (a.is_identity(ma) != b.is_identity(mb)) return false;
    // compose compatibility for every entry fully assigned once ma -> mb
    auto image = [&](MorId m) { return m == ma ? mb : mor_map[static_cast<std::size_t>(m)]; };
    for (const auto& [key, result] : a.compose_table()) {
      MorId later = static_cast<MorId>(key >> 32);
      MorId earlier = static_cast<MorId>(key & 0xffffffffu);
      if (later != ma && earlier != ma && result != ma) continue;
      MorId li = image(later), ei = image(earlier), ri = image(result);
      if (li < 0 || ei < 0 || ri < 0) continue;
      if (b.compose(li, ei) != ri) return false;
    }
    return true;
  }

  bool assign_morphisms(std::size_t mi) {
    if (mi == a.num_morphisms()) return true;
    MorId ma = static_cast<MorId>(mi);
    for (std::size_t cand = 0; cand < b.num_morphisms(); ++cand) {
      if (mor_used[cand]) continue;
      MorId mb = static_cast<MorId>(cand);
      if (!morphism_ok(ma, mb)) continue;
      mor_map[mi] = mb;
      mor_used[cand] = true;
      if (assign_morphisms(mi + 1)) return true;
      mor_map[mi] = -1;
      mor_used[cand] = false;
    }
    return false;
  }

  bool assign_objects(std::size_t oi) {
    if (oi == a.num_objects()) {
      mor_map.assign(a.num_morphisms(), -1);
      mor_used.assign(b.num_morphisms(), false);
      return assign_morphisms(0);
    }
    for (std::size_t cand = 0; cand < b.num_objects(); ++cand) {
      if (ob_used[cand]) continue;
      // degree invariants prune most branches
      bool ok = true;
      for (std::size_t prev = 0; prev <= oi && ok; ++prev) {
        std::size_t pc = prev == oi ? cand : static_cast<std::size_t>(ob_map[prev]);
        std::size_t pa = prev == oi ? oi : prev;
        if (a.hom(static_cast<ObjId>(pa), static_cast<ObjId>(oi)).size() !=
                b.hom(static_cast<ObjId>(pc), static_cast<ObjId>(cand)).size() ||
            a.hom(static_cast<ObjId>(oi), static_cast<ObjId>(pa)).size() !=
                b.hom(static_cast<ObjId>(cand), static_cast<ObjId>(pc)).size())
          ok = false;
      }
      if (!ok) continue;
      ob_map[oi] = static_cast<ObjId>(cand);
      ob_used[cand] = true;
      if (assign_objects(oi + 1)) return true;
      ob_map[oi] = -1;
      ob_used[cand] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::pair<std::vector<ObjId>, std::vector<MorId>>> find_table_isomorphism(
    const FinCat& a, const FinCat& b, const Cap& cap) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms())
    return std::nullopt;
  cap.require(sat_mul(sat_pow(a.num_objects(), a.num_objects()), a.num_morphisms()));
  IsoSearch search{a, b, std::vector<ObjId>(a.num_objects(), -1), {},
                   std::vector<bool>(b.num_objects(), false), {}};
  if (!search.assign_objects(0)) return std::nullopt;
  return std::make_pair(search.ob_map, search.mor_map);
}

// ---- constructions ---------------------------------------------------------

CatPtr terminal_category() { return discrete_category({"*"}); }

CatPtr discrete_category(const std::vector<std::string>& names) {
  RawCategory raw;
  raw.objects = names;
  return validate_category(raw);
}

CatPtr chain_poset(int n) {
  RawCategory raw;
  for (int i = 0; i < n; ++i) raw.objects.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      raw.morphisms.push_back(
          {"le:" + std::to_string(i) + ":" + std::to_string(j), std::to_string(i),
           std::to_string(j)});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        raw.compose.push_back({"le:" + std::to_string(j) + ":" + std::to_string(k),
                               "le:" + std::to_string(i) + ":" + std::to_string(j),
                               "le:" + std::to_string(i) + ":" + std::to_string(k)});
  return validate_category(raw);
}

CatPtr walking_arrow() {
  RawCategory raw;
  raw.objects = {"0", "1"};
  raw.morphisms.push_back({"arr", "0", "1"});
  return validate_category(raw);
}

CatPtr opposite(const CatPtr& c) {
  std::vector<Mor> morphisms = c->morphisms();
  for (Mor& m : morphisms) std::swap(m.src, m.tgt);
  std::unordered_map<std::uint64_t, MorId> compose;
  for (const auto& [key, value] : c->compose_table()) {
    MorId later = static_cast<MorId>(key >> 32);
    MorId earlier = static_cast<MorId>(key & 0xffffffffu);
    compose[pair_key(earlier, later)] = value;
  }
  std::vector<MorId> identity(c->num_objects());
  for (std::size_t x = 0; x < c->num_objects(); ++x)
    identity[x] = c->identity(static_cast<ObjId>(x));
  return FinCat::from_tables(c->objects(), std::move(morphisms), std::move(identity),
                             std::move(compose));
}

namespace {

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

}  // namespace

CatPtr product(const CatPtr& a, const CatPtr& b) {
  const std::size_t nb = b->num_objects();
  const std::size_t mb = b->num_morphisms();
  std::vector<std::string> objects;
  objects.reserve(a->num_objects() * nb);
  for (const auto& oa : a->objects())
    for (const auto& ob : b->objects()) objects.push_back(pair_name(oa, ob));

  auto oid = [&](ObjId x, ObjId y) {
    return static_cast<ObjId>(static_cast<std::size_t>(x) * nb + static_cast<std::size_t>(y));
  };
  auto mid = [&](MorId f, MorId g) {
    return static_cast<MorId>(static_cast<std::size_t>(f) * mb + static_cast<std::size_t>(g));
  };

  std::vector<Mor> morphisms;
  morphisms.reserve(a->num_morphisms() * mb);
  for (std::size_t f = 0; f < a->num_morphisms(); ++f) {
    for (std::size_t g = 0; g < mb; ++g) {
      const Mor& fa = a->morphisms()[f];
      const Mor& gb = b->morphisms()[g];
      morphisms.push_back(Mor{pair_name(fa.id, gb.id), oid(fa.src, gb.src), oid(fa.tgt, gb.tgt)});
    }
  }
  std::vector<MorId> identity(objects.size());
  for (std::size_t x = 0; x < a->num_objects(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      identity[static_cast<std::size_t>(oid(static_cast<ObjId>(x), static_cast<ObjId>(y)))] =
          mid(a->identity(static_cast<ObjId>(x)), b->identity(static_cast<ObjId>(y)));

  std::unordered_map<std::uint64_t, MorId> compose;
  for (const auto& [ka, va] : a->compose_table()) {
    MorId la = static_cast<MorId>(ka >> 32);
    MorId ea = static_cast<MorId>(ka & 0xffffffffu);
    for (const auto& [kb, vb] : b->compose_table()) {
      MorId lb = static_cast<MorId>(kb >> 32);
      MorId eb = static_cast<MorId>(kb & 0xffffffffu);
      compose[pair_key(mid(la, lb), mid(ea, eb))] = mid(va, vb);
    }
  }
  return FinCat::from_tables(std::move(objects), std::move(morphisms), std::move(identity),
                             std::move(compose));
}

CatPtr skeletal_finset(int max_size) {
  // objects 0..max_size; morphisms m->n are all functions [m]->[n]
  std::vector<std::string> objects;
  for (int i = 0; i <= max_size; ++i) objects.push_back(std::to_string(i));

  std::vector<Mor> morphisms;
  FinCat::FinSetData data;
  data.sizes.resize(objects.size());
  for (int i = 0; i <= max_size; ++i) data.sizes[static_cast<std::size_t>(i)] = i;

  auto fn_name = [](int m, int n, const std::vector<int>& table) {
    std::string s = "fn:" + std::to_string(m) + ":" + std::to_string(n) + ":";
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(table[i]);
    }
    return s;
  };

  std::vector<std::vector<int>> tables;
  for (int m = 0; m <= max_size; ++m) {
    for (int n = 0; n <= max_size; ++n) {
      if (m > 0 && n == 0) continue;  // no functions from nonempty to empty
      std::vector<int> table(static_cast<std::size_t>(m), 0);
      while (true) {
        morphisms.push_back(Mor{fn_name(m, n, table), static_cast<ObjId>(m), static_cast<ObjId>(n)});
        tables.push_back(table);
        int k = m - 1;
        while (k >= 0 && table[static_cast<std::size_t>(k)] == n - 1) {
          table[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
        ++table[static_cast<std::size_t>(k)];
      }
    }
  }

  // canonical order, then rebuild tables in that order
  std::vector<std::size_t> perm(morphisms.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t x, std::size_t y) { return morphisms[x].id < morphisms[y].id; });
  std::vector<Mor> sorted_mor;
  data.fn.resize(morphisms.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted_mor.push_back(morphisms[perm[i]]);
    data.fn[i] = tables[perm[i]];
  }

  std::unordered_map<std::string, MorId> midx;
  for (std::size_t i = 0; i < sorted_mor.size(); ++i) midx[sorted_mor[i].id] = static_cast<MorId>(i);

  std::vector<MorId> identity(objects.size());
  for (int n = 0; n <= max_size; ++n) {
    std::vector<int> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
    identity[static_cast<std::size_t>(n)] = midx.at(fn_name(n, n, table));
  }

  std::unordered_map<std::uint64_t, MorId> compose;
  for (std::size_t gi = 0; gi < sorted_mor.size(); ++gi) {
    for (std::size_t fi = 0; fi < sorted_mor.size(); ++fi) {
      if (sorted_mor[fi].tgt != sorted_mor[gi].src) continue;
      std::vector<int> table(data.fn[fi].size());
      for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = data.fn[gi][static_cast<std::size_t>(data.fn[fi][i])];
      int m = static_cast<int>(sorted_mor[fi].src);
      int n = static_cast<int>(sorted_mor[gi].tgt);
      compose[pair_key(static_cast<MorId>(gi), static_cast<MorId>(fi))] =
          midx.at(fn_name(m, n, table));
    }
  }

  // identities: rename to the reserved ids so serialization stays canonical?
  // No: finset morphism names are canonical already; identities keep fn names
  // internally but the identity table marks them.
  return FinCat::from_tables(std::move(objects), std::move(sorted_mor), std::move(identity),
                             std::move(compose), std::move(data));
}

MarkedCat validate_marked(CatPtr base, std::set<MorId> marked) {
  for (std::size_t x = 0; x < base->num_objects(); ++x)
    if (!marked.count(base->identity(static_cast<ObjId>(x))))
      throw ValidationError(ErrorKind::Malformed,
                            "marked class misses identity of " + base->obj_name(static_cast<ObjId>(x)));
  for (std::size_t m = 0; m < base->num_morphisms(); ++m)
    if (base->is_iso(static_cast<MorId>(m)) && !marked.count(static_cast<MorId>(m)))
      throw ValidationError(ErrorKind::Malformed,
                            "marked class is not semi-saturated: iso " +
                                base->mor_name(static_cast<MorId>(m)) + " unmarked");
  for (MorId g : marked) {
    for (MorId f : marked) {
      if (!base->composable(g, f)) continue;
      if (!marked.count(base->compose(g, f)))
        throw ValidationError(ErrorKind::Malformed,
                              "marked class not closed under composition at (" +
                                  base->mor_name(g) + ", " + base->mor_name(f) + ")");
    }
  }
  return MarkedCat{std::move(base), std::move(marked)};
}

}  // namespace stabkit
