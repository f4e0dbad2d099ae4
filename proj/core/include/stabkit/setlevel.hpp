#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stabkit/action.hpp"

namespace stabkit {

// A finite set with an endofunction: the action of the generator of ℕ.
struct EndoAction {
  std::vector<std::string> carrier;
  std::vector<int> step;  // by carrier index, total

  int size() const { return static_cast<int>(carrier.size()); }
};

EndoAction validate_endo(std::vector<std::string> carrier, const std::map<std::string, std::string>& step);

// The largest subset on which the step restricts to a bijection: the eventual
// image ∩ₖ Im(stepᵏ), reached within |carrier| iterations.
std::vector<int> reversible_part(const EndoAction& x);

// Quotient by x ~ y iff stepᵏ(x) = stepᵏ(y) for some k <= |carrier|; the
// induced step on classes is a bijection of the quotient.
struct TelescopeQuotient {
  std::vector<int> class_of;   // carrier index -> class id
  std::size_t classes = 0;
  std::vector<int> induced_step;  // class id -> class id
};
TelescopeQuotient telescope_quotient(const EndoAction& x);

// Index and period of the step inside End(carrier): the least (i, p) with
// step^i = step^{i+p}.
std::pair<int, int> step_index_period(const EndoAction& x);

// Agreement between the set-level constructions and the categorical engine:
// |reversible_part| = |telescope classes|, the canonical map between them is
// a bijection, and the strict stabilization of the step-generated action on
// the discrete carrier category reproduces the reversible part.
struct SetLevelVerdict {
  bool agree = false;
  std::size_t reversible = 0;
  std::size_t telescope = 0;
  std::size_t stab_objects = 0;
  std::string detail;
};
SetLevelVerdict check_setlevel_agreement(const EndoAction& x, const Cap& cap = {});

// The step-generated categorical bridge: the cyclic monoid of the step acting
// on the discrete carrier category by powers.
ActionPtr setlevel_bridge_action(const EndoAction& x);

}  // namespace stabkit
