#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/error.hpp"

namespace sparsemc {

[[noreturn]] inline void parse_fail(int line, const std::string &what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

inline int parse_int(std::string_view tok, int line) {
  int value = 0;
  const auto *end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    parse_fail(line, "expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

// Splits text into whitespace tokens per line, dropping '#' comments and blank lines.
class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::vector<std::string_view> &tokens) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) {
        end = text_.size();
      }
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      tokens.clear();
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
          ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) {
          ++j;
        }
        if (j > i) {
          tokens.push_back(line.substr(i, j - i));
        }
        i = j;
      }
      if (!tokens.empty()) {
        return true;
      }
    }
    return false;
  }

  [[nodiscard]] int line_number() const { return line_; }

private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::Parse, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace sparsemc
