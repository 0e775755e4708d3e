#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sparsemc/logic/lcd.hpp"

namespace sparsemc::logic {

struct QeOptions {
  std::string label_prefix;           // prepended to every fresh label
  std::size_t max_labels = 2'000'000; // guard on the label count of the relabeled forest
};

struct QeResult {
  LabeledForest forest; // input forest plus fresh labels
  LcdPtr alpha;         // over variables 0..k-1
  std::vector<std::string> new_labels;
  int types = 0; // satisfiable types eliminated
};

// Eliminates variable k from psi(x_0..x_{k-1}, x_k): for every tuple u over the nodes,
// (exists w: t |= psi(u, w)) iff result.forest |= result.alpha(u). Requires k >= 1.
QeResult qe_trees_step(const LcdPtr &psi, int k, const LabeledForest &t, int d, const QeOptions &opts = {});

// Same for a single lcd-type whose last variable is eliminated.
QeResult qe_type_step(const LcdType &type, const LabeledForest &t, int d, const QeOptions &opts = {});

} // namespace sparsemc::logic
