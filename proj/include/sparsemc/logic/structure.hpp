#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/graph.hpp"

namespace sparsemc::logic {

struct Vocabulary {
  std::vector<std::string> unary;
  std::vector<std::string> binary;

  // 1, 2, or 0 when the name is not declared.
  [[nodiscard]] int arity(std::string_view name) const;
  void validate() const;
};

// Finite structure over a vocabulary of unary and binary relations.
class Structure {
public:
  explicit Structure(int n = 0);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Vocabulary &vocabulary() const { return vocab_; }

  int add_unary(const std::string &name);
  int add_binary(const std::string &name);
  void set_unary(int rel, Vertex v, bool value = true);
  void add_pair(int rel, Vertex u, Vertex v);

  [[nodiscard]] int unary_index(std::string_view name) const;  // -1 if absent
  [[nodiscard]] int binary_index(std::string_view name) const; // -1 if absent
  [[nodiscard]] bool unary_holds(int rel, Vertex v) const { return unary_[rel][v] != 0; }
  [[nodiscard]] bool binary_holds(int rel, Vertex u, Vertex v) const;
  [[nodiscard]] const std::vector<std::vector<Vertex>> &successors(int rel) const { return succ_[rel]; }
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> pairs(int rel) const;

private:
  void check_name(const std::string &name) const;

  int n_ = 0;
  Vocabulary vocab_;
  std::map<std::string, int, std::less<>> unary_index_;
  std::map<std::string, int, std::less<>> binary_index_;
  std::vector<std::vector<char>> unary_;
  std::vector<std::vector<std::vector<Vertex>>> succ_; // sorted successor lists
};

Structure parse_structure(std::string_view text);
Structure load_structure(const std::string &path);
std::string format_structure(const Structure &s);

Graph gaifman_graph(const Structure &s);

} // namespace sparsemc::logic
