#include "sparsemc/ordering.hpp"

#include <algorithm>
#include <sstream>

#include "sparsemc/error.hpp"
#include "text_util.hpp"

namespace sparsemc {

void RoundLedger::add(std::string_view phase, std::int64_t rounds) {
  require(rounds >= 0, "negative round count");
  if (!phases_.empty() && phases_.back().name == phase) {
    phases_.back().rounds += rounds;
    return;
  }
  phases_.push_back({std::string(phase), rounds});
}

void RoundLedger::append(const RoundLedger &other) {
  for (const auto &p : other.phases_) {
    add(p.name, p.rounds);
  }
}

std::int64_t RoundLedger::total() const {
  std::int64_t sum = 0;
  for (const auto &p : phases_) {
    sum += p.rounds;
  }
  return sum;
}

std::int64_t RoundLedger::rounds(std::string_view phase) const {
  std::int64_t sum = 0;
  for (const auto &p : phases_) {
    if (p.name == phase) {
      sum += p.rounds;
    }
  }
  return sum;
}

std::string format_ledger(const RoundLedger &ledger) {
  std::ostringstream out;
  for (const auto &p : ledger.phases()) {
    out << "phase " << p.name << " rounds " << p.rounds << '\n';
  }
  return out.str();
}

VertexOrdering::VertexOrdering(std::vector<Vertex> sequence) : seq_(std::move(sequence)) {
  pos_.assign(seq_.size(), -1);
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    const Vertex v = seq_[i];
    require(v >= 0 && static_cast<std::size_t>(v) < seq_.size(), "ordering: id out of range");
    require(pos_[v] < 0, "ordering: repeated vertex");
    pos_[v] = static_cast<int>(i);
  }
}

VertexOrdering VertexOrdering::identity(int n) {
  std::vector<Vertex> seq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    seq[i] = i;
  }
  return VertexOrdering(std::move(seq));
}

BlockOrdering::BlockOrdering(int n, std::vector<std::vector<Vertex>> blocks)
    : blocks_(std::move(blocks)) {
  block_of_.assign(static_cast<std::size_t>(n), -1);
  require(n == 0 || !blocks_.empty(), "block ordering needs at least one block");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto &block = blocks_[b];
    std::sort(block.begin(), block.end());
    for (const Vertex v : block) {
      require(v >= 0 && v < n, "block ordering: id out of range");
      require(block_of_[v] < 0, "block ordering: blocks overlap");
      block_of_[v] = static_cast<int>(b);
    }
  }
  for (const int b : block_of_) {
    require(b >= 0, "block ordering: blocks do not cover all vertices");
  }
}

VertexOrdering BlockOrdering::flatten() const {
  std::vector<Vertex> seq;
  seq.reserve(block_of_.size());
  for (const auto &block : blocks_) {
    seq.insert(seq.end(), block.begin(), block.end());
  }
  return VertexOrdering(std::move(seq));
}

std::string format_ordering(const VertexOrdering &order) {
  std::ostringstream out;
  for (int i = 0; i < order.size(); ++i) {
    out << (i ? " " : "") << order.sequence()[i];
  }
  out << '\n';
  return out.str();
}

std::string format_blocks(const BlockOrdering &blocks) {
  std::ostringstream out;
  for (int b = 0; b < blocks.size(); ++b) {
    out << "block " << b << ":";
    for (const Vertex v : blocks.blocks()[b]) {
      out << ' ' << v;
    }
    out << '\n';
  }
  return out.str();
}

VertexOrdering parse_ordering(std::string_view text, int n) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  std::vector<Vertex> seq;
  while (reader.next(tok)) {
    for (const auto t : tok) {
      seq.push_back(parse_int(t, reader.line_number()));
    }
  }
  if (static_cast<int>(seq.size()) != n) {
    fail(ErrorKind::Parse, "ordering has " + std::to_string(seq.size()) + " ids, expected " +
                               std::to_string(n));
  }
  return VertexOrdering(std::move(seq));
}

void ClassParams::validate() const {
  require(r >= 1, "r must be >= 1");
  require(d >= 1, "d must be >= 1");
  require(p >= 1, "p must be >= 1");
}

} // namespace sparsemc
