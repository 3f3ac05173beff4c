#pragma once

// Line-oriented helpers shared by the TSV/CSV readers.

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simpairs/citation_matrix.hpp"
#include "simpairs/errors.hpp"

namespace simpairs::detail {

struct Line {
  std::size_t number;
  std::string text;
};

/// Non-blank, non-comment lines with trailing CR and `#...` stripped.
std::vector<Line> content_lines(std::istream& in);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

template <class T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Maps the ID columns of a set of rows to dense NodeIds.
class IdMapper {
 public:
  IdMapper(IdMode mode, const std::vector<std::string_view>& all_tokens);

  NodeId map(std::string_view token, std::size_t line);
  std::size_t size() const noexcept { return size_; }
  std::vector<std::string> labels() const { return labels_; }

 private:
  bool index_mode_;
  std::size_t size_ = 0;
  std::unordered_map<std::string, NodeId> lookup_;
  std::vector<std::string> labels_;
};

}  // namespace simpairs::detail
