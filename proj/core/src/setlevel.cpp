#include "stabkit/setlevel.hpp"

#include <algorithm>
#include <numeric>

#include "stabkit/stabilize.hpp"

namespace stabkit {

EndoAction validate_endo(std::vector<std::string> carrier,
                         const std::map<std::string, std::string>& step) {
  EndoAction x;
  std::sort(carrier.begin(), carrier.end());
  x.carrier = std::move(carrier);
  auto index = [&](const std::string& name) -> int {
    auto it = std::lower_bound(x.carrier.begin(), x.carrier.end(), name);
    if (it == x.carrier.end() || *it != name)
      throw ValidationError(ErrorKind::DanglingEndpoint, "unknown element " + name);
    return static_cast<int>(it - x.carrier.begin());
  };
  x.step.assign(x.carrier.size(), -1);
  for (const auto& [from, to] : step) x.step[static_cast<std::size_t>(index(from))] = index(to);
  for (std::size_t i = 0; i < x.step.size(); ++i)
    if (x.step[i] < 0)
      throw ValidationError(ErrorKind::Malformed, "step undefined at " + x.carrier[i]);
  return x;
}

std::vector<int> reversible_part(const EndoAction& x) {
  std::set<int> image;
  for (int i = 0; i < x.size(); ++i) image.insert(i);
  for (int iter = 0; iter < x.size(); ++iter) {
    std::set<int> next;
    for (int e : image) next.insert(x.step[static_cast<std::size_t>(e)]);
    if (next == image) break;
    image = std::move(next);
  }
  return {image.begin(), image.end()};
}

TelescopeQuotient telescope_quotient(const EndoAction& x) {
  const int n = x.size();
  std::vector<int> power(x.step);  // step^n pointwise
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < n; ++i)
      power[static_cast<std::size_t>(i)] =
          x.step[static_cast<std::size_t>(power[static_cast<std::size_t>(i)])];

  TelescopeQuotient q;
  q.class_of.assign(static_cast<std::size_t>(n), -1);
  std::map<int, int> rep_to_class;  // step^n value -> class
  for (int i = 0; i < n; ++i) {
    int key = power[static_cast<std::size_t>(i)];
    auto it = rep_to_class.find(key);
    if (it == rep_to_class.end()) {
      rep_to_class[key] = static_cast<int>(q.classes);
      q.class_of[static_cast<std::size_t>(i)] = static_cast<int>(q.classes);
      ++q.classes;
    } else {
      q.class_of[static_cast<std::size_t>(i)] = it->second;
    }
  }
  q.induced_step.assign(q.classes, -1);
  for (int i = 0; i < n; ++i)
    q.induced_step[static_cast<std::size_t>(q.class_of[static_cast<std::size_t>(i)])] =
        q.class_of[static_cast<std::size_t>(x.step[static_cast<std::size_t>(i)])];
  return q;
}

std::pair<int, int> step_index_period(const EndoAction& x) {
  std::vector<std::vector<int>> powers;
  std::vector<int> id(static_cast<std::size_t>(x.size()));
  std::iota(id.begin(), id.end(), 0);
  powers.push_back(id);
  while (true) {
    std::vector<int> next(x.size());
    for (int i = 0; i < x.size(); ++i)
      next[static_cast<std::size_t>(i)] =
          x.step[static_cast<std::size_t>(powers.back()[static_cast<std::size_t>(i)])];
    for (std::size_t k = 0; k < powers.size(); ++k)
      if (powers[k] == next)
        return {static_cast<int>(k), static_cast<int>(powers.size() - k)};
    powers.push_back(std::move(next));
  }
}

ActionPtr setlevel_bridge_action(const EndoAction& x) {
  auto [idx, period] = step_index_period(x);
  // degenerate case: the identity step has index 0, period 1; the monoid
  // still needs at least the unit
  MonPtr monoid = cyclic_monoid(idx == 0 && period == 1 ? 0 : idx, idx == 0 && period == 1 ? 1 : period);
  CatPtr carrier_cat = discrete_category(x.carrier);

  // translate the sorted carrier category indices back to step indices
  std::vector<int> to_cat(x.carrier.size());
  for (std::size_t i = 0; i < x.carrier.size(); ++i)
    to_cat[i] = static_cast<int>(*carrier_cat->object_index(x.carrier[i]));

  FinFunctor generator;
  generator.src = carrier_cat;
  generator.tgt = carrier_cat;
  generator.ob_map.resize(x.carrier.size());
  generator.mor_map.resize(carrier_cat->num_morphisms());
  for (std::size_t i = 0; i < x.carrier.size(); ++i)
    generator.ob_map[static_cast<std::size_t>(to_cat[i])] =
        static_cast<ObjId>(to_cat[static_cast<std::size_t>(x.step[i])]);
  for (std::size_t i = 0; i < x.carrier.size(); ++i)
    generator.mor_map[static_cast<std::size_t>(carrier_cat->identity(static_cast<ObjId>(i)))] =
        carrier_cat->identity(generator.ob_map[i]);

  return generated_action(monoid, carrier_cat, Side::right_mute, generator);
}

SetLevelVerdict check_setlevel_agreement(const EndoAction& x, const Cap& cap) {
  SetLevelVerdict verdict;
  std::vector<int> rev = reversible_part(x);
  TelescopeQuotient tel = telescope_quotient(x);
  verdict.reversible = rev.size();
  verdict.telescope = tel.classes;

  // the canonical map: include the reversible part, then project to classes
  std::set<int> hit;
  for (int e : rev) hit.insert(tel.class_of[static_cast<std::size_t>(e)]);
  bool bijective = hit.size() == rev.size() && hit.size() == tel.classes;

  // categorical bridge: strict stabilization of the step-generated action
  ActionPtr bridge = setlevel_bridge_action(x);
  std::vector<StabObject> stab = enumerate_stab_objects(bridge, StabMode::strict, cap);
  verdict.stab_objects = stab.size();

  // the unit levels of the stabilization objects enumerate the reversible part
  std::set<int> unit_levels;
  for (const StabObject& obj : stab)
    unit_levels.insert(static_cast<int>(obj.E.on_ob(bridge->unit())));
  std::set<int> rev_in_cat;
  CatPtr carrier_cat = bridge->category();
  for (int e : rev)
    rev_in_cat.insert(static_cast<int>(*carrier_cat->object_index(x.carrier[static_cast<std::size_t>(e)])));
  bool bridge_match = unit_levels == rev_in_cat && stab.size() == rev.size();

  verdict.agree = bijective && bridge_match && rev.size() == tel.classes;
  verdict.detail = verdict.agree
                       ? "agree"
                       : (!bijective ? "canonical map is not a bijection"
                                     : "stabilization does not reproduce the reversible part");
  return verdict;
}

}  // namespace stabkit
