#pragma once

#include <map>
#include <string>

#include "stabkit/fixtures.hpp"

namespace stabkit {

// A named collection of definitions loaded from one or more description
// files. Names are unique per section and every cross-reference resolves at
// load time, before any computation runs.
struct Workspace {
  std::map<std::string, CatPtr> categories;
  std::map<std::string, MonPtr> monoidal;
  std::map<std::string, ActionPtr> actions;
  std::map<std::string, AdjointActionData> adjunctions;
  std::map<std::string, EndoAction> sets;
};

// Parses and validates a workspace document. Rejects unknown names, duplicate
// definitions and any structure that fails its validator.
Workspace parse_workspace(const std::string& json_text);

// Canonical serialization: sorted keys, arrays in canonical order, LF line
// endings, two-space indent, trailing newline. parse ∘ serialize ∘ parse is
// the identity and serialization is byte-stable.
std::string serialize_workspace(const Workspace& w);

// Merge `from` into `into`; duplicate names are an error.
void merge_workspace(Workspace& into, const Workspace& from);

// The shipped fixture corpus under its documented names (Chain4, P2, Sat3,
// C2, Idem2, Triv, ShiftAction, SwapC2, Const3Action, Const0Action, ConstAdj,
// NSetAbc, plus the base categories of the monoidal entries).
Workspace builtin_workspace();

}  // namespace stabkit
