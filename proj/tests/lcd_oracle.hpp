#pragma once

#include <set>
#include <vector>

#include "sparsemc/logic/lcd.hpp"

namespace oracle {

using sparsemc::Vertex;
using sparsemc::RootedForest;
using namespace sparsemc::logic;

// Common ancestors by walking parent chains.
inline int count_common(const RootedForest &f, Vertex u, Vertex w) {
  std::set<Vertex> up;
  for (Vertex x = u; x >= 0; x = f.parent(x)) {
    up.insert(x);
  }
  int count = 0;
  for (Vertex x = w; x >= 0; x = f.parent(x)) {
    count += up.count(x) ? 1 : 0;
  }
  return count;
}

inline bool interpret(const LabeledForest &t, const LcdNode &f, const std::vector<Vertex> &tuple) {
  switch (f.kind) {
  case LcdKind::True:
    return true;
  case LcdKind::False:
    return false;
  case LcdKind::Label:
    return t.has(t.label_index(f.name), tuple[f.a]);
  case LcdKind::Lcd:
    return count_common(t.forest(), tuple[f.a], tuple[f.b]) == f.depth;
  case LcdKind::Not:
    return !interpret(t, *f.kids[0], tuple);
  case LcdKind::And:
    for (const auto &k : f.kids) {
      if (!interpret(t, *k, tuple)) {
        return false;
      }
    }
    return true;
  case LcdKind::Or:
    for (const auto &k : f.kids) {
      if (interpret(t, *k, tuple)) {
        return true;
      }
    }
    return false;
  }
  return false;
}

} // namespace oracle
