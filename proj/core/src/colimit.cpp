#include "stabkit/colimit.hpp"

#include <algorithm>
#include <numeric>

namespace stabkit {

namespace {

struct CoconeSearch {
  const FinCat& j;
  const FinCat& c;
  const FinFunctor& diagram;
  ObjId apex;
  std::vector<MorId> legs;
  std::vector<Cocone>& out;

  bool leg_ok(std::size_t ji, MorId leg) const {
    // legs commute with every diagram arrow whose endpoints are assigned
    for (std::size_t m = 0; m < j.num_morphisms(); ++m) {
      MorId mm = static_cast<MorId>(m);
      std::size_t sj = static_cast<std::size_t>(j.src(mm));
      std::size_t tj = static_cast<std::size_t>(j.tgt(mm));
      if (sj > ji || tj > ji) continue;
      MorId ls = sj == ji ? leg : legs[sj];
      MorId lt = tj == ji ? leg : legs[tj];
      if (c.compose(lt, diagram.on_mor(mm)) != ls) return false;
    }
    return true;
  }

  void assign(std::size_t ji) {
    if (ji == j.num_objects()) {
      Cocone cone;
      cone.apex = apex;
      cone.legs = legs;
      out.push_back(std::move(cone));
      return;
    }
    for (MorId leg : c.hom(diagram.on_ob(static_cast<ObjId>(ji)), apex)) {
      if (!leg_ok(ji, leg)) continue;
      legs[ji] = leg;
      assign(ji + 1);
    }
  }
};

}  // namespace

std::vector<Cocone> enumerate_cocones(const FinFunctor& diagram, const Cap& cap) {
  const FinCat& j = *diagram.src;
  const FinCat& c = *diagram.tgt;
  if (j.num_objects() == 0)
    throw ValidationError(ErrorKind::Malformed, "colimit requires a nonempty diagram source");

  std::uint64_t estimate = 0;
  for (std::size_t apex = 0; apex < c.num_objects(); ++apex) {
    std::uint64_t per_apex = 1;
    for (std::size_t ji = 0; ji < j.num_objects(); ++ji)
      per_apex = sat_mul(per_apex,
                         std::max<std::uint64_t>(
                             1, c.hom(diagram.on_ob(static_cast<ObjId>(ji)), static_cast<ObjId>(apex))
                                    .size()));
    estimate += per_apex;
  }
  cap.require(estimate);

  std::vector<Cocone> out;
  for (std::size_t apex = 0; apex < c.num_objects(); ++apex) {
    CoconeSearch search{j, c, diagram, static_cast<ObjId>(apex),
                        std::vector<MorId>(j.num_objects(), -1), out};
    search.assign(0);
  }
  return out;
}

std::vector<MorId> mediating_morphisms(const FinFunctor& diagram, const Cocone& from,
                                       const Cocone& to) {
  const FinCat& c = *diagram.tgt;
  std::vector<MorId> mediators;
  for (MorId h : c.hom(from.apex, to.apex)) {
    bool ok = true;
    for (std::size_t ji = 0; ji < from.legs.size() && ok; ++ji)
      ok = c.compose(h, from.legs[ji]) == to.legs[ji];
    if (ok) mediators.push_back(h);
  }
  return mediators;
}

void certify_cocone(const FinFunctor& diagram, Cocone& candidate, const Cap& cap) {
  std::vector<Cocone> all = enumerate_cocones(diagram, cap);
  candidate.competing = all.size();
  candidate.strict = true;
  candidate.weak = true;
  for (const Cocone& other : all) {
    std::size_t n = mediating_morphisms(diagram, candidate, other).size();
    if (n == 0) candidate.weak = false;
    if (n != 1) candidate.strict = false;
    if (!candidate.weak && !candidate.strict) return;
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

// Coproduct-then-coequalizer construction in skeletal finite sets. Returns a
// candidate cocone; the caller still certifies it.
std::optional<Cocone> finset_colimit_candidate(const FinFunctor& diagram) {
  const FinCat& j = *diagram.src;
  const FinCat& c = *diagram.tgt;
  const auto& data = *c.finset();

  // disjoint union of the diagram's sets
  std::vector<int> offset(j.num_objects(), 0);
  int total = 0;
  for (std::size_t ji = 0; ji < j.num_objects(); ++ji) {
    offset[ji] = total;
    total += data.sizes[static_cast<std::size_t>(diagram.on_ob(static_cast<ObjId>(ji)))];
  }

  // quotient by (j, x) ~ (k, D(m)(x)) for every arrow m : j -> k
  UnionFind uf(static_cast<std::size_t>(total));
  for (std::size_t m = 0; m < j.num_morphisms(); ++m) {
    MorId mm = static_cast<MorId>(m);
    const std::vector<int>& fn = data.fn[static_cast<std::size_t>(diagram.on_mor(mm))];
    int so = offset[static_cast<std::size_t>(j.src(mm))];
    int to = offset[static_cast<std::size_t>(j.tgt(mm))];
    for (std::size_t x = 0; x < fn.size(); ++x)
      uf.unite(so + static_cast<int>(x), to + fn[x]);
  }

  // classes in first-appearance order
  std::vector<int> class_of(static_cast<std::size_t>(total), -1);
  int classes = 0;
  for (int x = 0; x < total; ++x) {
    int r = uf.find(x);
    if (class_of[static_cast<std::size_t>(r)] < 0) class_of[static_cast<std::size_t>(r)] = classes++;
  }

  if (static_cast<std::size_t>(classes) >= data.sizes.size()) return std::nullopt;
  auto apex_it = std::find(data.sizes.begin(), data.sizes.end(), classes);
  if (apex_it == data.sizes.end()) return std::nullopt;
  ObjId apex = static_cast<ObjId>(apex_it - data.sizes.begin());

  Cocone cone;
  cone.apex = apex;
  cone.legs.resize(j.num_objects(), -1);
  for (std::size_t ji = 0; ji < j.num_objects(); ++ji) {
    ObjId src_ob = diagram.on_ob(static_cast<ObjId>(ji));
    int size = data.sizes[static_cast<std::size_t>(src_ob)];
    std::vector<int> table(static_cast<std::size_t>(size));
    for (int x = 0; x < size; ++x)
      table[static_cast<std::size_t>(x)] =
          class_of[static_cast<std::size_t>(uf.find(offset[ji] + x))];
    // locate the morphism with this function table
    MorId leg = -1;
    for (MorId m : c.hom(src_ob, apex)) {
      if (data.fn[static_cast<std::size_t>(m)] == table) {
        leg = m;
        break;
      }
    }
    if (leg < 0) return std::nullopt;
    cone.legs[ji] = leg;
  }
  return cone;
}

}  // namespace

Cocone colimit(const FinFunctor& diagram, const Cap& cap) {
  const FinCat& c = *diagram.tgt;

  if (c.finset()) {
    auto candidate = finset_colimit_candidate(diagram);
    if (candidate) {
      certify_cocone(diagram, *candidate, cap);
      if (candidate->strict) return *candidate;
    }
    // fall through to the exhaustive search; the fast path is only a shortcut
  }

  std::vector<Cocone> all = enumerate_cocones(diagram, cap);
  bool weak_exists = false;
  for (Cocone& cone : all) {
    cone.competing = all.size();
    cone.strict = true;
    cone.weak = true;
    for (const Cocone& other : all) {
      std::size_t n = mediating_morphisms(diagram, cone, other).size();
      if (n == 0) cone.weak = false;
      if (n != 1) cone.strict = false;
      if (!cone.strict && !cone.weak) break;
    }
    if (cone.weak) weak_exists = true;
    if (cone.strict) return cone;
  }
  throw ValidationError(ErrorKind::NoColimit,
                        weak_exists
                            ? "no strictly universal cocone (a weak colimit exists)"
                            : "no universal cocone exists in the ambient category");
}

}  // namespace stabkit
