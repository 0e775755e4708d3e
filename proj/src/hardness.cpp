#include "sparsemc/hardness.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sparsemc/degeneracy.hpp"
#include "sparsemc/error.hpp"
#include "text_util.hpp"

namespace sparsemc {

int Circuit::index_of(int id) const {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].id == id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
  case GateKind::And: return "AND";
  case GateKind::Or: return "OR";
  case GateKind::Not: return "NOT";
  case GateKind::True: return "TRUE";
  case GateKind::False: return "FALSE";
  case GateKind::Input: return "INPUT";
  }
  return "?";
}

namespace {

// Dense index per gate id, built once per call.
std::map<int, int> id_index(const Circuit &c) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (!idx.emplace(c.gates[i].id, static_cast<int>(i)).second) {
      fail(ErrorKind::InvalidArgument, "duplicate gate id " + std::to_string(c.gates[i].id));
    }
  }
  return idx;
}

int lookup(const std::map<int, int> &idx, int id) {
  const auto it = idx.find(id);
  if (it == idx.end()) {
    fail(ErrorKind::InvalidArgument, "unknown gate id " + std::to_string(id));
  }
  return it->second;
}

// Gate indices in an order where inputs precede consumers; throws on cycles.
std::vector<int> topological(const Circuit &c, const std::map<int, int> &idx) {
  const int m = static_cast<int>(c.gates.size());
  std::vector<int> state(static_cast<std::size_t>(m), 0);
  std::vector<int> order;
  for (int s = 0; s < m; ++s) {
    if (state[s] != 0) {
      continue;
    }
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto &[g, next] = stack.back();
      const auto &ins = c.gates[g].inputs;
      if (next < ins.size()) {
        const int child = lookup(idx, ins[next++]);
        if (state[child] == 1) {
          fail(ErrorKind::InvalidArgument, "cyclic circuit");
        }
        if (state[child] == 0) {
          state[child] = 1;
          stack.emplace_back(child, 0);
        }
        continue;
      }
      state[g] = 2;
      order.push_back(g);
      stack.pop_back();
    }
  }
  return order;
}

void check_arity(const Gate &g) {
  const std::size_t k = g.inputs.size();
  switch (g.kind) {
  case GateKind::Not:
    require(k == 1, "NOT gate " + std::to_string(g.id) + " needs exactly one input");
    break;
  case GateKind::True:
  case GateKind::False:
  case GateKind::Input:
    require(k == 0, std::string(gate_kind_name(g.kind)) + " gate " + std::to_string(g.id) +
                        " takes no inputs");
    break;
  default:
    break;
  }
}

} // namespace

Circuit parse_circuit(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  Circuit c;
  std::vector<std::pair<int, int>> assigned;
  while (reader.next(tok)) {
    const int line = reader.line_number();
    if (tok[0] == "g") {
      if (tok.size() < 3) {
        parse_fail(line, "expected 'g <id> <kind> [inputs...]'");
      }
      Gate g;
      g.id = parse_int(tok[1], line);
      const std::string_view kind = tok[2];
      if (kind == "AND") g.kind = GateKind::And;
      else if (kind == "OR") g.kind = GateKind::Or;
      else if (kind == "NOT") g.kind = GateKind::Not;
      else if (kind == "TRUE") g.kind = GateKind::True;
      else if (kind == "FALSE") g.kind = GateKind::False;
      else if (kind == "INPUT") g.kind = GateKind::Input;
      else parse_fail(line, "unknown gate kind '" + std::string(kind) + "'");
      for (std::size_t i = 3; i < tok.size(); ++i) {
        g.inputs.push_back(parse_int(tok[i], line));
      }
      try {
        check_arity(g);
      } catch (const Error &e) {
        parse_fail(line, e.what());
      }
      c.gates.push_back(std::move(g));
    } else if (tok[0] == "assign") {
      if (tok.size() != 3 || (tok[2] != "0" && tok[2] != "1")) {
        parse_fail(line, "expected 'assign <id> 0|1'");
      }
      assigned.emplace_back(parse_int(tok[1], line), tok[2] == "1" ? 1 : 0);
    } else if (tok[0] == "output") {
      if (tok.size() != 2 || c.output >= 0) {
        parse_fail(line, "expected a single 'output <id>'");
      }
      c.output = parse_int(tok[1], line);
    } else {
      parse_fail(line, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (c.gates.empty()) {
    fail(ErrorKind::Parse, "circuit has no gates");
  }
  try {
    const auto idx = id_index(c);
    for (const auto &g : c.gates) {
      for (const int in : g.inputs) {
        lookup(idx, in);
      }
    }
    if (c.output < 0) {
      fail(ErrorKind::InvalidArgument, "missing 'output <id>'");
    }
    lookup(idx, c.output);
    for (const auto &[id, value] : assigned) {
      if (c.gates[lookup(idx, id)].kind != GateKind::Input) {
        fail(ErrorKind::InvalidArgument, "assign targets non-INPUT gate " + std::to_string(id));
      }
      c.assignment[id] = value != 0;
    }
    topological(c, idx);
  } catch (const Error &e) {
    fail(ErrorKind::Parse, e.what());
  }
  return c;
}

std::string format_circuit(const Circuit &c) {
  std::ostringstream out;
  for (const auto &g : c.gates) {
    out << "g " << g.id << ' ' << gate_kind_name(g.kind);
    for (const int in : g.inputs) {
      out << ' ' << in;
    }
    out << '\n';
  }
  for (const auto &[id, value] : c.assignment) {
    out << "assign " << id << ' ' << (value ? 1 : 0) << '\n';
  }
  out << "output " << c.output << '\n';
  return out.str();
}

std::vector<bool> eval_gates(const Circuit &c) {
  const auto idx = id_index(c);
  std::vector<bool> value(c.gates.size(), false);
  for (const int g : topological(c, idx)) {
    const Gate &gate = c.gates[g];
    check_arity(gate);
    switch (gate.kind) {
    case GateKind::True: value[g] = true; break;
    case GateKind::False: value[g] = false; break;
    case GateKind::Input: {
      const auto it = c.assignment.find(gate.id);
      if (it == c.assignment.end()) {
        fail(ErrorKind::InvalidArgument, "missing assignment for input " + std::to_string(gate.id));
      }
      value[g] = it->second;
      break;
    }
    case GateKind::Not: value[g] = !value[lookup(idx, gate.inputs[0])]; break;
    case GateKind::And: {
      bool v = true;
      for (const int in : gate.inputs) {
        v = v && value[lookup(idx, in)];
      }
      value[g] = v;
      break;
    }
    case GateKind::Or: {
      bool v = false;
      for (const int in : gate.inputs) {
        v = v || value[lookup(idx, in)];
      }
      value[g] = v;
      break;
    }
    }
  }
  return value;
}

bool eval_circuit(const Circuit &c) {
  const int out = c.index_of(c.output);
  require(out >= 0, "circuit output is not a gate");
  return eval_gates(c)[out];
}

namespace {

class Normalizer {
public:
  Normalizer(const Circuit &c, const std::map<int, bool> &inputs)
      : c_(c), inputs_(inputs.empty() ? c.assignment : inputs), idx_(id_index(c)) {
    topological(c_, idx_);
  }

  Circuit run() {
    const int root = literal(lookup(idx_, c_.output), false);
    // Keep only gates that feed the output.
    std::vector<char> live(gates_.size(), 0);
    std::vector<int> stack{root};
    live[root] = 1;
    while (!stack.empty()) {
      const int g = stack.back();
      stack.pop_back();
      for (const int in : gates_[g].inputs) {
        if (!live[in]) {
          live[in] = 1;
          stack.push_back(in);
        }
      }
    }
    std::vector<Gate> kept;
    std::vector<int> remap(gates_.size(), -1);
    // Gates are created after their inputs, so creation order is topological.
    for (std::size_t g = 0; g < gates_.size(); ++g) {
      if (live[g]) {
        remap[g] = static_cast<int>(kept.size());
        kept.push_back(gates_[g]);
      }
    }
    for (auto &g : kept) {
      for (int &in : g.inputs) {
        in = remap[in];
      }
    }
    gates_ = std::move(kept);
    const int out = remap[root];
    split_fan_in();
    split_fan_out();
    return renumber(out);
  }

private:
  int add(GateKind kind, std::vector<int> inputs) {
    gates_.push_back({static_cast<int>(gates_.size()), kind, std::move(inputs)});
    return static_cast<int>(gates_.size()) - 1;
  }

  int literal(int g, bool negated) {
    auto &memo = negated ? neg_ : pos_;
    if (const auto it = memo.find(g); it != memo.end()) {
      return it->second;
    }
    const Gate &gate = c_.gates[g];
    int made = -1;
    switch (gate.kind) {
    case GateKind::Input: {
      const auto it = inputs_.find(gate.id);
      if (it == inputs_.end()) {
        fail(ErrorKind::InvalidArgument, "missing assignment for input " + std::to_string(gate.id));
      }
      made = add(it->second != negated ? GateKind::True : GateKind::False, {});
      break;
    }
    case GateKind::True:
    case GateKind::False:
      made = add((gate.kind == GateKind::True) != negated ? GateKind::True : GateKind::False, {});
      break;
    case GateKind::Not:
      check_arity(gate);
      made = literal(lookup(idx_, gate.inputs[0]), !negated);
      break;
    case GateKind::And:
    case GateKind::Or: {
      std::vector<int> kids;
      for (const int in : gate.inputs) {
        kids.push_back(literal(lookup(idx_, in), negated));
      }
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      const bool is_and = (gate.kind == GateKind::And) != negated;
      if (kids.empty()) {
        made = add(is_and ? GateKind::True : GateKind::False, {});
      } else if (kids.size() == 1) {
        made = add(GateKind::And, std::move(kids));
      } else {
        made = add(is_and ? GateKind::And : GateKind::Or, std::move(kids));
      }
      break;
    }
    }
    memo.emplace(g, made);
    return made;
  }

  // Balanced binary trees for fan-in above 2.
  void split_fan_in() {
    const std::size_t original = gates_.size();
    for (std::size_t g = 0; g < original; ++g) {
      while (gates_[g].inputs.size() > 2) {
        std::vector<int> ins = gates_[g].inputs;
        std::vector<int> merged;
        for (std::size_t i = 0; i + 1 < ins.size(); i += 2) {
          merged.push_back(add(gates_[g].kind, {ins[i], ins[i + 1]}));
        }
        if (ins.size() % 2 == 1) {
          merged.push_back(ins.back());
        }
        gates_[g].inputs = std::move(merged);
      }
    }
  }

  // Copy chains of AND gates for fan-out above 2.
  void split_fan_out() {
    std::vector<std::vector<std::pair<int, std::size_t>>> uses(gates_.size());
    for (std::size_t g = 0; g < gates_.size(); ++g) {
      for (std::size_t slot = 0; slot < gates_[g].inputs.size(); ++slot) {
        uses[gates_[g].inputs[slot]].emplace_back(static_cast<int>(g), slot);
      }
    }
    const std::size_t original = gates_.size();
    for (std::size_t g = 0; g < original; ++g) {
      const auto consumers = uses[g];
      const std::size_t m = consumers.size();
      if (m <= 2) {
        continue;
      }
      int prev = static_cast<int>(g);
      for (std::size_t i = 0; i + 2 < m; ++i) {
        const int copy = add(GateKind::And, {prev});
        gates_[consumers[i + 1].first].inputs[consumers[i + 1].second] = copy;
        if (i + 3 == m) {
          gates_[consumers[i + 2].first].inputs[consumers[i + 2].second] = copy;
        }
        prev = copy;
      }
      // consumers[0] keeps reading g directly.
    }
  }

  Circuit renumber(int out) {
    Circuit tmp;
    tmp.gates = gates_;
    tmp.output = out;
    const auto order = topological(tmp, id_index(tmp));
    std::vector<int> remap(gates_.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      remap[order[i]] = static_cast<int>(i);
    }
    Circuit result;
    result.gates.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      Gate g = gates_[order[i]];
      g.id = static_cast<int>(i);
      for (int &in : g.inputs) {
        in = remap[in];
      }
      std::sort(g.inputs.begin(), g.inputs.end());
      result.gates[i] = std::move(g);
    }
    result.output = remap[out];
    return result;
  }

  const Circuit &c_;
  std::map<int, bool> inputs_;
  std::map<int, int> idx_;
  std::vector<Gate> gates_;
  std::map<int, int> pos_;
  std::map<int, int> neg_;
};

} // namespace

Circuit normalize_circuit(const Circuit &c, const std::map<int, bool> &inputs) {
  require(!c.gates.empty(), "empty circuit");
  return Normalizer(c, inputs).run();
}

bool is_normalized(const Circuit &c, std::string *why) {
  auto reject = [&](const std::string &msg) {
    if (why != nullptr) {
      *why = msg;
    }
    return false;
  };
  const int m = static_cast<int>(c.gates.size());
  if (m == 0 || c.output < 0 || c.output >= m) {
    return reject("output must be one of gates 0..m-1");
  }
  std::vector<int> fan_out(static_cast<std::size_t>(m), 0);
  for (int g = 0; g < m; ++g) {
    const Gate &gate = c.gates[g];
    if (gate.id != g) {
      return reject("gate ids must be 0..m-1 in order");
    }
    const std::size_t k = gate.inputs.size();
    switch (gate.kind) {
    case GateKind::And:
      if (k < 1 || k > 2) return reject("AND fan-in must be 1 or 2");
      break;
    case GateKind::Or:
      if (k != 2) return reject("OR fan-in must be 2");
      break;
    case GateKind::True:
    case GateKind::False:
      if (k != 0) return reject("constants take no inputs");
      break;
    default:
      return reject("gate kind " + std::string(gate_kind_name(gate.kind)) + " not allowed");
    }
    for (const int in : gate.inputs) {
      if (in < 0 || in >= g) {
        return reject("inputs must precede their consumers");
      }
      ++fan_out[in];
    }
    if (k == 2 && gate.inputs[0] == gate.inputs[1]) {
      return reject("repeated input");
    }
  }
  for (int g = 0; g < m; ++g) {
    if (fan_out[g] > 2) {
      return reject("fan-out above 2");
    }
    if ((fan_out[g] == 0) != (g == c.output)) {
      return reject("exactly the output gate must have fan-out 0");
    }
  }
  return true;
}

std::vector<std::pair<int, int>> gadget_edges(bool is_or) {
  std::vector<std::pair<int, int>> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {2, 4}, {3, 5},
                                     {4, 5}, {3, 6}, {5, 6}, {5, 7}, {6, 7}, {6, 8}, {7, 8}, {8, 9}};
  if (!is_or) {
    e.emplace_back(7, 9);
  }
  return e;
}

GadgetSelfTest gadget_self_test() {
  GadgetSelfTest report;
  auto check = [&](bool cond, const std::string &msg) {
    if (!cond) {
      report.ok = false;
      report.failures.push_back(msg);
    }
  };
  for (const bool is_or : {false, true}) {
    const std::string name = is_or ? "OR" : "AND";
    const auto edges = gadget_edges(is_or);
    const Graph g = Graph::from_edges(kGadgetSize, edges);
    check(g.edge_count() == edges.size(), name + ": duplicate internal edge");
    check(g.degree(9) == (is_or ? 1 : 2), name + ": in vertex has wrong internal degree");
    check(g.degree(0) == 4, name + ": out vertex must have 4 internal neighbours");
    for (Vertex v = 0; v < 9; ++v) {
      check(g.degree(v) >= 3, name + ": vertex " + std::to_string(v) + " has internal degree < 3");
    }
    check(measure_ordering_degeneracy(g, VertexOrdering::identity(kGadgetSize)) == 2,
          name + ": top-down order must have degeneracy 2");
    check(components(g) == std::vector<int>(kGadgetSize, 0), name + ": gadget is disconnected");
  }
  return report;
}

CircuitGraph circuit_to_graph(const Circuit &c) {
  std::string why;
  if (!is_normalized(c, &why)) {
    fail(ErrorKind::InvalidArgument, "circuit is not normalized: " + why);
  }
  const int m = static_cast<int>(c.gates.size());
  CircuitGraph result;
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto place = [&](bool is_or) {
    Gadget gadget;
    gadget.is_or = is_or;
    gadget.base = static_cast<Vertex>(result.gadgets.size() * kGadgetSize);
    gadget.out = gadget.base;
    gadget.in = gadget.base + kGadgetSize - 1;
    for (const auto &[a, b] : gadget_edges(is_or)) {
      edges.emplace_back(gadget.base + a, gadget.base + b);
    }
    result.gadgets.push_back(gadget);
    return result.gadgets.size() - 1;
  };
  for (int g = 0; g < m; ++g) {
    const auto at = place(c.gates[g].kind == GateKind::Or);
    result.gadgets[at].gate = g;
  }
  for (int g = 0; g < m; ++g) {
    for (const int in : c.gates[g].inputs) {
      edges.emplace_back(result.gadgets[in].out, result.gadgets[g].in);
    }
  }
  // Chain B_1..B_k hangs off the output gadget; B_i releases the i-th FALSE gate.
  Vertex prev_out = result.gadgets[c.output].out;
  int chain = 0;
  for (int g = 0; g < m; ++g) {
    if (c.gates[g].kind != GateKind::False) {
      continue;
    }
    const auto at = place(false);
    result.gadgets[at].chain = ++chain;
    edges.emplace_back(prev_out, result.gadgets[at].in);
    edges.emplace_back(result.gadgets[at].out, result.gadgets[g].in);
    prev_out = result.gadgets[at].out;
  }
  result.graph = Graph::from_edges(static_cast<int>(result.gadgets.size()) * kGadgetSize, edges);
  return result;
}

bool degeneracy_le(const Graph &g, int c, RoundLedger *ledger) {
  require(c >= 0, "degeneracy_le: negative threshold");
  const int n = g.n();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> sweep;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
  }
  int left = n;
  std::int64_t sweeps = 0;
  while (left > 0) {
    sweep.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (!gone[v] && deg[v] <= c) {
        sweep.push_back(v);
      }
    }
    if (sweep.empty()) {
      break;
    }
    ++sweeps;
    for (const Vertex v : sweep) {
      gone[v] = 1;
    }
    for (const Vertex v : sweep) {
      for (const Vertex w : g.neighbors(v)) {
        --deg[w];
      }
    }
    left -= static_cast<int>(sweep.size());
  }
  if (ledger != nullptr) {
    ledger->add("elimination", sweeps);
  }
  return left == 0;
}

} // namespace sparsemc
