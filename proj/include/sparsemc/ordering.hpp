#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/graph.hpp"

namespace sparsemc {

// Staged-round accounting. Consecutive records with the same phase are merged.
class RoundLedger {
public:
  struct Phase {
    std::string name;
    std::int64_t rounds = 0;
  };

  void add(std::string_view phase, std::int64_t rounds);
  void append(const RoundLedger &other);

  [[nodiscard]] const std::vector<Phase> &phases() const { return phases_; }
  [[nodiscard]] std::int64_t total() const;
  [[nodiscard]] std::int64_t rounds(std::string_view phase) const;

private:
  std::vector<Phase> phases_;
};

std::string format_ledger(const RoundLedger &ledger);

// Total order on vertex ids, stored as sequence plus positions.
class VertexOrdering {
public:
  VertexOrdering() = default;
  explicit VertexOrdering(std::vector<Vertex> sequence);

  static VertexOrdering identity(int n);

  [[nodiscard]] int size() const { return static_cast<int>(seq_.size()); }
  [[nodiscard]] const std::vector<Vertex> &sequence() const { return seq_; }
  [[nodiscard]] int position(Vertex v) const { return pos_[v]; }
  [[nodiscard]] bool before(Vertex u, Vertex v) const { return pos_[u] < pos_[v]; }

private:
  std::vector<Vertex> seq_;
  std::vector<int> pos_;
};

// Partition of V into an ordered list of blocks.
class BlockOrdering {
public:
  BlockOrdering() = default;
  BlockOrdering(int n, std::vector<std::vector<Vertex>> blocks);

  [[nodiscard]] int size() const { return static_cast<int>(blocks_.size()); }
  [[nodiscard]] int vertex_count() const { return static_cast<int>(block_of_.size()); }
  [[nodiscard]] const std::vector<std::vector<Vertex>> &blocks() const { return blocks_; }
  [[nodiscard]] int block_of(Vertex v) const { return block_of_[v]; }
  // Blocks in order, ascending ids inside a block.
  [[nodiscard]] VertexOrdering flatten() const;

private:
  std::vector<std::vector<Vertex>> blocks_;
  std::vector<int> block_of_;
};

std::string format_ordering(const VertexOrdering &order);
std::string format_blocks(const BlockOrdering &blocks);
VertexOrdering parse_ordering(std::string_view text, int n);

// Parameters of the sparse class: radius r, density d, colouring depth p.
struct ClassParams {
  int r = 1;
  int d = 1;
  int p = 1;

  void validate() const;
};

} // namespace sparsemc
