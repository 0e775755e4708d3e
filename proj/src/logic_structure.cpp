#include "sparsemc/logic/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sparsemc/error.hpp"
#include "text_util.hpp"

namespace sparsemc::logic {

int Vocabulary::arity(std::string_view name) const {
  if (std::find(unary.begin(), unary.end(), name) != unary.end()) {
    return 1;
  }
  if (std::find(binary.begin(), binary.end(), name) != binary.end()) {
    return 2;
  }
  return 0;
}

void Vocabulary::validate() const {
  std::set<std::string> seen;
  for (const auto *list : {&unary, &binary}) {
    for (const auto &name : *list) {
      require(!name.empty(), "empty relation name");
      require(seen.insert(name).second, "relation '" + name + "' declared twice");
    }
  }
}

Structure::Structure(int n) : n_(n) { require(n >= 0, "negative universe size"); }

void Structure::check_name(const std::string &name) const {
  require(!name.empty(), "empty relation name");
  require(vocab_.arity(name) == 0, "relation '" + name + "' declared twice");
}

int Structure::add_unary(const std::string &name) {
  check_name(name);
  vocab_.unary.push_back(name);
  unary_.emplace_back(static_cast<std::size_t>(n_), 0);
  const int idx = static_cast<int>(unary_.size()) - 1;
  unary_index_.emplace(name, idx);
  return idx;
}

int Structure::add_binary(const std::string &name) {
  check_name(name);
  vocab_.binary.push_back(name);
  succ_.emplace_back(static_cast<std::size_t>(n_));
  const int idx = static_cast<int>(succ_.size()) - 1;
  binary_index_.emplace(name, idx);
  return idx;
}

void Structure::set_unary(int rel, Vertex v, bool value) {
  require(v >= 0 && v < n_, "element out of range");
  unary_[rel][v] = value ? 1 : 0;
}

void Structure::add_pair(int rel, Vertex u, Vertex v) {
  require(u >= 0 && u < n_ && v >= 0 && v < n_, "element out of range");
  auto &list = succ_[rel][u];
  const auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) {
    list.insert(it, v);
  }
}

int Structure::unary_index(std::string_view name) const {
  const auto it = unary_index_.find(name);
  return it == unary_index_.end() ? -1 : it->second;
}

int Structure::binary_index(std::string_view name) const {
  const auto it = binary_index_.find(name);
  return it == binary_index_.end() ? -1 : it->second;
}

bool Structure::binary_holds(int rel, Vertex u, Vertex v) const {
  const auto &list = succ_[rel][u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Structure::pairs(int rel) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    for (const Vertex v : succ_[rel][u]) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

Structure parse_structure(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  Structure s;
  bool header = false;
  int current_binary = -1;
  while (reader.next(tok)) {
    const int line = reader.line_number();
    if (!header) {
      if (tok.size() != 2 || tok[0] != "structure") {
        parse_fail(line, "expected header 'structure <n>'");
      }
      const int n = parse_int(tok[1], line);
      if (n < 0) {
        parse_fail(line, "negative universe size");
      }
      s = Structure(n);
      header = true;
      continue;
    }
    try {
      if (tok[0] == "unary") {
        if (tok.size() < 2) {
          parse_fail(line, "expected 'unary <name> <ids...>'");
        }
        const int rel = s.add_unary(std::string(tok[1]));
        for (std::size_t i = 2; i < tok.size(); ++i) {
          const int v = parse_int(tok[i], line);
          if (v < 0 || v >= s.n()) {
            parse_fail(line, "element id out of range");
          }
          s.set_unary(rel, v);
        }
        current_binary = -1;
      } else if (tok[0] == "binary") {
        if (tok.size() != 2) {
          parse_fail(line, "expected 'binary <name>'");
        }
        current_binary = s.add_binary(std::string(tok[1]));
      } else if (tok[0] == "p") {
        if (current_binary < 0) {
          parse_fail(line, "'p' line outside a binary relation");
        }
        if (tok.size() != 3) {
          parse_fail(line, "expected 'p <u> <v>'");
        }
        const int u = parse_int(tok[1], line);
        const int v = parse_int(tok[2], line);
        if (u < 0 || u >= s.n() || v < 0 || v >= s.n()) {
          parse_fail(line, "element id out of range");
        }
        s.add_pair(current_binary, u, v);
      } else {
        parse_fail(line, "unknown directive '" + std::string(tok[0]) + "'");
      }
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::Parse) {
        throw;
      }
      parse_fail(line, e.what());
    }
  }
  if (!header) {
    parse_fail(reader.line_number(), "missing header 'structure <n>'");
  }
  return s;
}

Structure load_structure(const std::string &path) { return parse_structure(read_file(path)); }

std::string format_structure(const Structure &s) {
  std::ostringstream out;
  out << "structure " << s.n() << '\n';
  for (std::size_t r = 0; r < s.vocabulary().unary.size(); ++r) {
    out << "unary " << s.vocabulary().unary[r];
    for (Vertex v = 0; v < s.n(); ++v) {
      if (s.unary_holds(static_cast<int>(r), v)) {
        out << ' ' << v;
      }
    }
    out << '\n';
  }
  for (std::size_t r = 0; r < s.vocabulary().binary.size(); ++r) {
    out << "binary " << s.vocabulary().binary[r] << '\n';
    for (const auto &[u, v] : s.pairs(static_cast<int>(r))) {
      out << "p " << u << ' ' << v << '\n';
    }
  }
  return out.str();
}

Graph gaifman_graph(const Structure &s) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t r = 0; r < s.vocabulary().binary.size(); ++r) {
    for (const auto &[u, v] : s.pairs(static_cast<int>(r))) {
      if (u != v) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(s.n(), edges);
}

} // namespace sparsemc::logic
