#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"

namespace sparsemc {

enum class GateKind { And, Or, Not, True, False, Input };

struct Gate {
  int id = 0;
  GateKind kind = GateKind::True;
  std::vector<int> inputs;
};

struct Circuit {
  std::vector<Gate> gates;
  int output = -1;
  std::map<int, bool> assignment;

  [[nodiscard]] int index_of(int id) const; // -1 if absent
};

Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit &c);
std::string_view gate_kind_name(GateKind kind);

// Value of every gate, indexed like c.gates.
std::vector<bool> eval_gates(const Circuit &c);
bool eval_circuit(const Circuit &c);

// Constants for inputs, NOT pushed away by De Morgan, fan-in <= 2, fan-out <= 2 via AND copy
// chains, unary OR as AND. Gates not feeding the output are dropped. Ids become 0..m-1 in
// topological order. An empty `inputs` map falls back to the circuit's own assignment.
Circuit normalize_circuit(const Circuit &c, const std::map<int, bool> &inputs = {});

bool is_normalized(const Circuit &c, std::string *why = nullptr);

struct Gadget {
  bool is_or = false;
  int gate = -1;  // gate index, or -1 for a chain gadget
  int chain = 0;  // 1..k for chain gadgets
  Vertex base = 0;
  Vertex in = 0;
  Vertex out = 0;
};

inline constexpr int kGadgetSize = 10;

// Internal edges of the 10-vertex gadget (vertex 0 = out, vertex 9 = in).
std::vector<std::pair<int, int>> gadget_edges(bool is_or);

struct GadgetSelfTest {
  bool ok = true;
  std::vector<std::string> failures;
};

GadgetSelfTest gadget_self_test();

struct CircuitGraph {
  Graph graph;
  std::vector<Gadget> gadgets;
};

CircuitGraph circuit_to_graph(const Circuit &normalized);

// Elimination at threshold c: repeatedly delete every vertex of degree <= c.
bool degeneracy_le(const Graph &g, int c, RoundLedger *ledger = nullptr);

} // namespace sparsemc
