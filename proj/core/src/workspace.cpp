#include "stabkit/workspace.hpp"

#include <json.hpp>

namespace stabkit {

using nlohmann::json;

namespace {

RawCategory raw_category_from_json(const json& j) {
  RawCategory raw;
  for (const auto& o : j.at("objects")) raw.objects.push_back(o.get<std::string>());
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms"))
      raw.morphisms.push_back(RawMor{m.at("id").get<std::string>(), m.at("src").get<std::string>(),
                                     m.at("tgt").get<std::string>()});
  if (j.contains("compose"))
    for (const auto& c : j.at("compose"))
      raw.compose.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(),
                             c.at(2).get<std::string>()});
  return raw;
}

std::vector<std::array<std::string, 3>> triples_from_json(const json& j) {
  std::vector<std::array<std::string, 3>> out;
  for (const auto& t : j)
    out.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                   t.at(2).get<std::string>()});
  return out;
}

FinFunctor functor_from_json(const json& j, const CatPtr& src, const CatPtr& tgt) {
  FinFunctor f;
  f.src = src;
  f.tgt = tgt;
  f.ob_map.assign(src->num_objects(), -1);
  f.mor_map.assign(src->num_morphisms(), -1);
  for (const auto& [from, to] : j.at("ob_map").items()) {
    auto s = src->object_index(from);
    auto t = tgt->object_index(to.get<std::string>());
    if (!s || !t)
      throw ValidationError(ErrorKind::DanglingEndpoint, "functor ob_map entry " + from);
    f.ob_map[static_cast<std::size_t>(*s)] = *t;
  }
  if (j.contains("mor_map"))
    for (const auto& [from, to] : j.at("mor_map").items()) {
      auto s = src->morphism_index(from);
      auto t = tgt->morphism_index(to.get<std::string>());
      if (!s || !t)
        throw ValidationError(ErrorKind::DanglingEndpoint, "functor mor_map entry " + from);
      f.mor_map[static_cast<std::size_t>(*s)] = *t;
    }
  for (std::size_t x = 0; x < src->num_objects(); ++x)
    if (f.ob_map[x] < 0)
      throw ValidationError(ErrorKind::Malformed,
                            "functor ob_map is partial at " + src->obj_name(static_cast<ObjId>(x)));
  // identities are implied
  for (std::size_t x = 0; x < src->num_objects(); ++x)
    f.mor_map[static_cast<std::size_t>(src->identity(static_cast<ObjId>(x)))] =
        tgt->identity(f.ob_map[x]);
  for (std::size_t m = 0; m < src->num_morphisms(); ++m)
    if (f.mor_map[m] < 0)
      throw ValidationError(ErrorKind::Malformed,
                            "functor mor_map is partial at " + src->mor_name(static_cast<MorId>(m)));
  return f;
}

std::vector<MorId> components_from_json(const json& j, const CatPtr& at, const CatPtr& in) {
  std::vector<MorId> components(at->num_objects(), -1);
  for (const auto& [obj, mor] : j.items()) {
    auto x = at->object_index(obj);
    auto m = in->morphism_index(mor.get<std::string>());
    if (!x || !m)
      throw ValidationError(ErrorKind::DanglingEndpoint, "component entry " + obj);
    components[static_cast<std::size_t>(*x)] = *m;
  }
  for (std::size_t x = 0; x < components.size(); ++x)
    if (components[x] < 0)
      throw ValidationError(ErrorKind::Malformed,
                            "component table is partial at " + at->obj_name(static_cast<ObjId>(x)));
  return components;
}

json category_to_json(const FinCat& c) {
  json j;
  j["objects"] = json::array();
  for (const auto& o : c.objects()) j["objects"].push_back(o);
  j["morphisms"] = json::array();
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(static_cast<MorId>(m))) continue;
    json jm;
    jm["id"] = c.mor_name(static_cast<MorId>(m));
    jm["src"] = c.obj_name(c.src(static_cast<MorId>(m)));
    jm["tgt"] = c.obj_name(c.tgt(static_cast<MorId>(m)));
    j["morphisms"].push_back(jm);
  }
  // compose entries with both factors non-identity, in canonical order
  std::vector<std::array<std::string, 3>> entries;
  for (const auto& [key, value] : c.compose_table()) {
    MorId later = static_cast<MorId>(key >> 32);
    MorId earlier = static_cast<MorId>(key & 0xffffffffu);
    if (c.is_identity(later) || c.is_identity(earlier)) continue;
    entries.push_back({c.mor_name(later), c.mor_name(earlier), c.mor_name(value)});
  }
  std::sort(entries.begin(), entries.end());
  j["compose"] = json::array();
  for (const auto& e : entries) j["compose"].push_back(json::array({e[0], e[1], e[2]}));
  return j;
}

json monoidal_to_json(const MonoidalCat& m, const std::string& base_name) {
  const FinCat& c = *m.base();
  json j;
  j["base"] = base_name;
  j["unit"] = c.obj_name(m.unit());
  j["tensor_objects"] = json::array();
  for (std::size_t u = 0; u < c.num_objects(); ++u)
    for (std::size_t v = 0; v < c.num_objects(); ++v)
      j["tensor_objects"].push_back(json::array(
          {c.obj_name(static_cast<ObjId>(u)), c.obj_name(static_cast<ObjId>(v)),
           c.obj_name(m.tensor_ob(static_cast<ObjId>(u), static_cast<ObjId>(v)))}));
  j["tensor_morphisms"] = json::array();
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
      if (c.is_identity(static_cast<MorId>(f)) && c.is_identity(static_cast<MorId>(g))) continue;
      j["tensor_morphisms"].push_back(json::array(
          {c.mor_name(static_cast<MorId>(f)), c.mor_name(static_cast<MorId>(g)),
           c.mor_name(m.tensor_mor(static_cast<MorId>(f), static_cast<MorId>(g)))}));
    }
  if (m.symmetric()) {
    j["symmetry"] = json::array();
    for (std::size_t u = 0; u < c.num_objects(); ++u)
      for (std::size_t v = 0; v < c.num_objects(); ++v)
        j["symmetry"].push_back(json::array(
            {c.obj_name(static_cast<ObjId>(u)), c.obj_name(static_cast<ObjId>(v)),
             c.mor_name(m.symmetry(static_cast<ObjId>(u), static_cast<ObjId>(v)))}));
  }
  return j;
}

json action_to_json(const Action& a, const std::string& i_name, const std::string& a_name) {
  const FinCat& ic = *a.monoidal()->base();
  const FinCat& ac = *a.category();
  json j;
  j["I"] = i_name;
  j["A"] = a_name;
  j["side"] = to_string(a.side());
  j["on_objects"] = json::object();
  for (std::size_t u = 0; u < ic.num_objects(); ++u) {
    const FinFunctor& f = a.on_object(static_cast<ObjId>(u));
    json jf;
    jf["ob_map"] = json::object();
    for (std::size_t x = 0; x < ac.num_objects(); ++x)
      jf["ob_map"][ac.obj_name(static_cast<ObjId>(x))] = ac.obj_name(f.on_ob(static_cast<ObjId>(x)));
    jf["mor_map"] = json::object();
    for (std::size_t m = 0; m < ac.num_morphisms(); ++m) {
      if (ac.is_identity(static_cast<MorId>(m))) continue;
      jf["mor_map"][ac.mor_name(static_cast<MorId>(m))] =
          ac.mor_name(f.on_mor(static_cast<MorId>(m)));
    }
    j["on_objects"][ic.obj_name(static_cast<ObjId>(u))] = jf;
  }
  j["on_morphisms"] = json::object();
  for (std::size_t m = 0; m < ic.num_morphisms(); ++m) {
    if (ic.is_identity(static_cast<MorId>(m))) continue;
    json jt;
    jt["components"] = json::object();
    const NatTrans& t = a.on_morphism(static_cast<MorId>(m));
    for (std::size_t x = 0; x < ac.num_objects(); ++x)
      jt["components"][ac.obj_name(static_cast<ObjId>(x))] =
          ac.mor_name(t.at(static_cast<ObjId>(x)));
    j["on_morphisms"][ic.mor_name(static_cast<MorId>(m))] = jt;
  }
  return j;
}

json components_to_json(const std::vector<MorId>& components, const FinCat& at,
                        const FinCat& in) {
  json j = json::object();
  for (std::size_t x = 0; x < components.size(); ++x)
    j[at.obj_name(static_cast<ObjId>(x))] = in.mor_name(components[x]);
  return j;
}

}  // namespace

Workspace parse_workspace(const std::string& json_text) {
  json doc = json::parse(json_text);
  Workspace w;

  if (doc.contains("categories"))
    for (const auto& [name, j] : doc.at("categories").items())
      w.categories[name] = validate_category(raw_category_from_json(j));

  if (doc.contains("monoidal"))
    for (const auto& [name, j] : doc.at("monoidal").items()) {
      std::string base_name = j.at("base").get<std::string>();
      auto base = w.categories.find(base_name);
      if (base == w.categories.end())
        throw ValidationError(ErrorKind::DanglingEndpoint,
                              "monoidal " + name + " references unknown category " + base_name);
      std::optional<std::vector<std::array<std::string, 3>>> symmetry;
      if (j.contains("symmetry")) symmetry = triples_from_json(j.at("symmetry"));
      w.monoidal[name] = validate_monoidal_on(
          base->second, j.at("unit").get<std::string>(), triples_from_json(j.at("tensor_objects")),
          j.contains("tensor_morphisms") ? triples_from_json(j.at("tensor_morphisms"))
                                         : std::vector<std::array<std::string, 3>>{},
          symmetry);
    }

  if (doc.contains("actions"))
    for (const auto& [name, j] : doc.at("actions").items()) {
      auto i = w.monoidal.find(j.at("I").get<std::string>());
      auto a = w.categories.find(j.at("A").get<std::string>());
      if (i == w.monoidal.end() || a == w.categories.end())
        throw ValidationError(ErrorKind::DanglingEndpoint,
                              "action " + name + " has unresolved references");
      std::string side_str = j.at("side").get<std::string>();
      Side side;
      if (side_str == "left-mute") side = Side::left_mute;
      else if (side_str == "right-mute") side = Side::right_mute;
      else throw ValidationError(ErrorKind::Malformed, "unknown side " + side_str);

      const FinCat& ic = *i->second->base();
      std::vector<FinFunctor> on_objects(ic.num_objects());
      for (const auto& [uname, jf] : j.at("on_objects").items()) {
        auto u = ic.object_index(uname);
        if (!u)
          throw ValidationError(ErrorKind::DanglingEndpoint,
                                "action " + name + " names unknown acting object " + uname);
        on_objects[static_cast<std::size_t>(*u)] = functor_from_json(jf, a->second, a->second);
      }
      for (std::size_t u = 0; u < ic.num_objects(); ++u)
        if (on_objects[u].ob_map.empty())
          throw ValidationError(ErrorKind::Malformed,
                                "action " + name + " is missing on_objects(" +
                                    ic.obj_name(static_cast<ObjId>(u)) + ")");

      std::vector<NatTrans> on_morphisms(ic.num_morphisms());
      for (std::size_t m = 0; m < ic.num_morphisms(); ++m)
        if (ic.is_identity(static_cast<MorId>(m)))
          on_morphisms[m] = identity_nat_trans(
              on_objects[static_cast<std::size_t>(ic.src(static_cast<MorId>(m)))]);
      if (j.contains("on_morphisms"))
        for (const auto& [fname, jt] : j.at("on_morphisms").items()) {
          auto f = ic.morphism_index(fname);
          if (!f)
            throw ValidationError(ErrorKind::DanglingEndpoint,
                                  "action " + name + " names unknown acting morphism " + fname);
          NatTrans t;
          t.src = on_objects[static_cast<std::size_t>(ic.src(*f))];
          t.tgt = on_objects[static_cast<std::size_t>(ic.tgt(*f))];
          t.components = components_from_json(jt.at("components"), a->second, a->second);
          on_morphisms[static_cast<std::size_t>(*f)] = std::move(t);
        }
      for (std::size_t m = 0; m < ic.num_morphisms(); ++m)
        if (on_morphisms[m].components.empty())
          throw ValidationError(ErrorKind::Malformed,
                                "action " + name + " is missing on_morphisms(" +
                                    ic.mor_name(static_cast<MorId>(m)) + ")");

      w.actions[name] =
          Action::make(i->second, a->second, side, std::move(on_objects), std::move(on_morphisms));
    }

  if (doc.contains("adjunctions"))
    for (const auto& [name, j] : doc.at("adjunctions").items()) {
      auto alpha = w.actions.find(j.at("alpha").get<std::string>());
      auto alpha_bar = w.actions.find(j.at("alpha_bar").get<std::string>());
      if (alpha == w.actions.end() || alpha_bar == w.actions.end())
        throw ValidationError(ErrorKind::DanglingEndpoint,
                              "adjunction " + name + " has unresolved references");
      const FinCat& ic = *alpha->second->monoidal()->base();
      const CatPtr& ac = alpha->second->category();
      std::vector<NatTrans> unit(ic.num_objects());
      std::vector<NatTrans> counit(ic.num_objects());
      for (const auto& [uname, jc] : j.at("unit").items()) {
        auto u = ic.object_index(uname);
        if (!u) throw ValidationError(ErrorKind::DanglingEndpoint, "unit entry " + uname);
        NatTrans t;
        t.src = identity_functor(ac);
        t.tgt = compose_functors(alpha->second->on_object(*u), alpha_bar->second->on_object(*u));
        t.components = components_from_json(jc, ac, ac);
        unit[static_cast<std::size_t>(*u)] = std::move(t);
      }
      for (const auto& [uname, jc] : j.at("counit").items()) {
        auto u = ic.object_index(uname);
        if (!u) throw ValidationError(ErrorKind::DanglingEndpoint, "counit entry " + uname);
        NatTrans t;
        t.src = compose_functors(alpha_bar->second->on_object(*u), alpha->second->on_object(*u));
        t.tgt = identity_functor(ac);
        t.components = components_from_json(jc, ac, ac);
        counit[static_cast<std::size_t>(*u)] = std::move(t);
      }
      w.adjunctions.emplace(
          name, validate_adjoint(alpha->second, alpha_bar->second, std::move(unit),
                                 std::move(counit)));
    }

  if (doc.contains("sets"))
    for (const auto& [name, j] : doc.at("sets").items()) {
      std::vector<std::string> carrier;
      for (const auto& e : j.at("carrier")) carrier.push_back(e.get<std::string>());
      std::map<std::string, std::string> step;
      for (const auto& [from, to] : j.at("step").items()) step[from] = to.get<std::string>();
      w.sets.emplace(name, validate_endo(std::move(carrier), step));
    }

  return w;
}

std::string serialize_workspace(const Workspace& w) {
  json doc;
  doc["categories"] = json::object();
  doc["monoidal"] = json::object();
  doc["actions"] = json::object();
  doc["adjunctions"] = json::object();
  doc["sets"] = json::object();

  // reverse indexes for reference names
  auto category_name = [&](const CatPtr& c) -> std::string {
    for (const auto& [name, cat] : w.categories)
      if (cat.get() == c.get()) return name;
    throw ValidationError(ErrorKind::DanglingEndpoint,
                          "serialization requires every referenced category to be named");
  };
  auto monoidal_name = [&](const MonPtr& m) -> std::string {
    for (const auto& [name, mon] : w.monoidal)
      if (mon.get() == m.get()) return name;
    throw ValidationError(ErrorKind::DanglingEndpoint,
                          "serialization requires every referenced monoidal category to be named");
  };
  auto action_name = [&](const ActionPtr& a) -> std::string {
    for (const auto& [name, act] : w.actions)
      if (act.get() == a.get()) return name;
    throw ValidationError(ErrorKind::DanglingEndpoint,
                          "serialization requires every referenced action to be named");
  };

  for (const auto& [name, c] : w.categories) doc["categories"][name] = category_to_json(*c);
  for (const auto& [name, m] : w.monoidal)
    doc["monoidal"][name] = monoidal_to_json(*m, category_name(m->base()));
  for (const auto& [name, a] : w.actions)
    doc["actions"][name] =
        action_to_json(*a, monoidal_name(a->monoidal()), category_name(a->category()));
  for (const auto& [name, adj] : w.adjunctions) {
    json j;
    j["alpha"] = action_name(adj.alpha);
    j["alpha_bar"] = action_name(adj.alpha_bar);
    const FinCat& ic = *adj.alpha->monoidal()->base();
    const FinCat& ac = *adj.alpha->category();
    j["unit"] = json::object();
    j["counit"] = json::object();
    for (std::size_t u = 0; u < ic.num_objects(); ++u) {
      j["unit"][ic.obj_name(static_cast<ObjId>(u))] =
          components_to_json(adj.unit[u].components, ac, ac);
      j["counit"][ic.obj_name(static_cast<ObjId>(u))] =
          components_to_json(adj.counit[u].components, ac, ac);
    }
    doc["adjunctions"][name] = j;
  }
  for (const auto& [name, s] : w.sets) {
    json j;
    j["carrier"] = json::array();
    for (const auto& e : s.carrier) j["carrier"].push_back(e);
    j["step"] = json::object();
    for (std::size_t i = 0; i < s.carrier.size(); ++i)
      j["step"][s.carrier[i]] = s.carrier[static_cast<std::size_t>(s.step[i])];
    doc["sets"][name] = j;
  }

  return doc.dump(2) + "\n";
}

void merge_workspace(Workspace& into, const Workspace& from) {
  auto insert_all = [](auto& dst, const auto& src, const char* section) {
    for (const auto& [name, value] : src)
      if (!dst.emplace(name, value).second)
        throw ValidationError(ErrorKind::DuplicateName,
                              std::string(section) + " entry " + name + " defined twice");
  };
  insert_all(into.categories, from.categories, "categories");
  insert_all(into.monoidal, from.monoidal, "monoidal");
  insert_all(into.actions, from.actions, "actions");
  insert_all(into.adjunctions, from.adjunctions, "adjunctions");
  insert_all(into.sets, from.sets, "sets");
}

Workspace builtin_workspace() {
  Workspace w;
  // categories and monoidal bases; bases are shared pointers with the
  // monoidal entries so references serialize by these names
  MonPtr sat3 = fixtures::sat3();
  MonPtr c2 = fixtures::c2();
  MonPtr idem2 = fixtures::idem2();
  MonPtr triv = trivial_monoidal();
  ActionPtr shift = fixtures::shift_action();
  ActionPtr swap = fixtures::swap_c2();
  AdjointActionData adj = fixtures::const_adj();

  w.categories["Chain4"] = shift->category();
  w.categories["P2"] = swap->category();
  w.categories["Sat3Base"] = sat3->base();
  w.categories["C2Base"] = c2->base();
  w.categories["Idem2Base"] = idem2->base();
  w.categories["TrivBase"] = triv->base();

  // rebind the actions onto the workspace's shared structures
  w.monoidal["Sat3"] = shift->monoidal();
  w.monoidal["C2"] = swap->monoidal();
  w.monoidal["Idem2"] = adj.alpha->monoidal();
  w.monoidal["Triv"] = triv;
  // Sat3 above is the instance the shift action references; keep base in sync
  w.categories["Sat3Base"] = shift->monoidal()->base();
  w.categories["C2Base"] = swap->monoidal()->base();
  w.categories["Idem2Base"] = adj.alpha->monoidal()->base();
  w.categories["Chain4"] = adj.alpha->category();

  // ShiftAction must reference the same Chain4 instance as ConstAdj; rebuild
  // it on the shared ambient
  {
    CatPtr chain = w.categories["Chain4"];
    FinFunctor t;
    t.src = chain;
    t.tgt = chain;
    t.ob_map.resize(chain->num_objects());
    t.mor_map.resize(chain->num_morphisms());
    for (std::size_t x = 0; x < chain->num_objects(); ++x)
      t.ob_map[x] = static_cast<ObjId>(std::min<std::size_t>(x + 1, 3));
    for (std::size_t m = 0; m < chain->num_morphisms(); ++m) {
      ObjId s = t.ob_map[static_cast<std::size_t>(chain->src(static_cast<MorId>(m)))];
      ObjId tt = t.ob_map[static_cast<std::size_t>(chain->tgt(static_cast<MorId>(m)))];
      t.mor_map[m] = chain->hom(s, tt).front();
    }
    w.actions["ShiftAction"] = generated_action(w.monoidal["Sat3"], chain, Side::right_mute, t);
  }
  w.actions["SwapC2"] = swap;
  w.actions["Const3Action"] = adj.alpha;
  w.actions["Const0Action"] = adj.alpha_bar;
  w.actions["TrivialOnChain4"] = trivial_action(triv, w.categories["Chain4"]);
  w.actions["TrivialOnP2"] = trivial_action(triv, w.categories["P2"]);
  w.adjunctions.emplace("ConstAdj", adj);
  w.sets.emplace("NSetAbc", fixtures::nset_abc());
  return w;
}

}  // namespace stabkit
