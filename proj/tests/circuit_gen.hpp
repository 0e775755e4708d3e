#pragma once

#include "generators.hpp"
#include "sparsemc/hardness.hpp"

namespace testgen {

// Random circuit over all gate kinds; the last gate is the output.
inline sparsemc::Circuit random_circuit(Rng &rng, int gates) {
  using sparsemc::GateKind;
  sparsemc::Circuit c;
  for (int g = 0; g < gates; ++g) {
    sparsemc::Gate gate;
    gate.id = 100 + 3 * g;
    const int roll = g < 2 ? uniform(rng, 3, 5) : uniform(rng, 0, 9);
    if (roll <= 2) {
      gate.kind = roll == 0 ? GateKind::Or : GateKind::And;
      if (roll == 2) gate.kind = GateKind::Or;
      const int fan_in = uniform(rng, 0, 4);
      for (int i = 0; i < fan_in; ++i) {
        gate.inputs.push_back(c.gates[uniform(rng, 0, g - 1)].id);
      }
    } else if (roll == 3) {
      gate.kind = GateKind::True;
    } else if (roll == 4) {
      gate.kind = GateKind::False;
    } else if (roll == 5) {
      gate.kind = GateKind::Input;
      c.assignment[gate.id] = coin(rng, 0.5);
    } else if (roll <= 7) {
      gate.kind = GateKind::Not;
      gate.inputs.push_back(c.gates[uniform(rng, 0, g - 1)].id);
    } else {
      gate.kind = coin(rng, 0.5) ? GateKind::And : GateKind::Or;
      const int fan_in = uniform(rng, 1, 3);
      for (int i = 0; i < fan_in; ++i) {
        gate.inputs.push_back(c.gates[uniform(rng, std::max(0, g - 4), g - 1)].id);
      }
    }
    c.gates.push_back(std::move(gate));
  }
  c.output = c.gates.back().id;
  return c;
}

} // namespace testgen
