#include "simpairs/citation_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "simpairs/errors.hpp"
#include "text_io.hpp"

namespace simpairs {

namespace detail {

std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty()) continue;
    out.push_back({number, std::move(text)});
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

IdMapper::IdMapper(IdMode mode, const std::vector<std::string_view>& all_tokens) {
  if (mode == IdMode::Auto) {
    index_mode_ = std::all_of(all_tokens.begin(), all_tokens.end(), [](std::string_view t) {
      return parse_number<NodeId>(t).has_value();
    });
  } else {
    index_mode_ = mode == IdMode::Index;
  }
  if (index_mode_) {
    for (auto t : all_tokens) {
      if (auto v = parse_number<NodeId>(t)) size_ = std::max<std::size_t>(size_, std::size_t{*v} + 1);
    }
  }
}

NodeId IdMapper::map(std::string_view token, std::size_t line) {
  token = trim(token);
  if (index_mode_) {
    auto v = parse_number<NodeId>(token);
    if (!v) throw InputError("expected a nonnegative integer node id, got '" + std::string(token) + "'", line);
    return *v;
  }
  if (token.empty()) throw InputError("empty node label", line);
  auto [it, inserted] = lookup_.try_emplace(std::string(token), static_cast<NodeId>(labels_.size()));
  if (inserted) {
    labels_.emplace_back(token);
    size_ = labels_.size();
  }
  return it->second;
}

}  // namespace detail

CitationMatrix::CitationMatrix(std::size_t n_nodes, std::vector<CitationEntry> entries,
                               std::vector<std::string> labels)
    : n_nodes_(n_nodes), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != n_nodes_) {
    throw InputError("label count " + std::to_string(labels_.size()) + " does not match node count " +
                     std::to_string(n_nodes_));
  }
  for (const auto& e : entries) {
    if (e.row >= n_nodes_ || e.col >= n_nodes_) {
      throw InputError("citation entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") outside [0, " + std::to_string(n_nodes_) + ")");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const CitationEntry& a, const CitationEntry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  for (const auto& e : entries) {
    if (e.count == 0) continue;
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().count += e.count;
    } else {
      entries_.push_back(e);
    }
  }
  row_start_.assign(n_nodes_ + 1, 0);
  for (const auto& e : entries_) ++row_start_[e.row + 1];
  for (std::size_t i = 0; i < n_nodes_; ++i) row_start_[i + 1] += row_start_[i];
}

std::pair<const CitationEntry*, const CitationEntry*> CitationMatrix::row(NodeId i) const {
  const auto* base = entries_.data();
  return {base + row_start_[i], base + row_start_[i + 1]};
}

Count CitationMatrix::row_sum(NodeId i) const {
  Count sum = 0;
  auto [first, last] = row(i);
  for (auto* e = first; e != last; ++e) sum += e->count;
  return sum;
}

Count CitationMatrix::total() const {
  Count sum = 0;
  for (const auto& e : entries_) sum += e.count;
  return sum;
}

std::vector<Count> CitationMatrix::to_dense() const {
  std::vector<Count> dense(n_nodes_ * n_nodes_, 0);
  for (const auto& e : entries_) dense[std::size_t{e.row} * n_nodes_ + e.col] = e.count;
  return dense;
}

CitationMatrix CitationMatrix::from_dense(std::size_t n, const std::vector<Count>& dense) {
  if (dense.size() != n * n) throw InputError("dense matrix has " + std::to_string(dense.size()) + " cells, expected n*n");
  std::vector<CitationEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (auto c = dense[i * n + j]; c != 0) entries.push_back({NodeId(i), NodeId(j), c});
    }
  }
  return CitationMatrix(n, std::move(entries));
}

CitationMatrix parse_edge_list(std::istream& in, IdMode ids) {
  const auto lines = detail::content_lines(in);
  std::vector<std::vector<std::string_view>> fields;
  std::vector<std::string_view> id_tokens;
  fields.reserve(lines.size());
  for (const auto& line : lines) {
    auto f = detail::split(line.text, '\t');
    if (f.size() != 3) {
      throw InputError("expected 3 tab-separated fields (src, dst, count), got " + std::to_string(f.size()),
                       line.number);
    }
    id_tokens.push_back(detail::trim(f[0]));
    id_tokens.push_back(detail::trim(f[1]));
    fields.push_back(std::move(f));
  }

  detail::IdMapper mapper(ids, id_tokens);
  std::vector<CitationEntry> entries;
  entries.reserve(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& f = fields[k];
    const NodeId src = mapper.map(f[0], lines[k].number);
    const NodeId dst = mapper.map(f[1], lines[k].number);
    auto count = detail::parse_number<Count>(f[2]);
    if (!count) {
      throw InputError("citation count must be a nonnegative integer, got '" + std::string(detail::trim(f[2])) + "'",
                       lines[k].number);
    }
    entries.push_back({src, dst, *count});
  }
  return CitationMatrix(mapper.size(), std::move(entries), mapper.labels());
}

CitationMatrix parse_dense_csv(std::istream& in) {
  const auto lines = detail::content_lines(in);
  const std::size_t n = lines.size();
  std::vector<Count> dense;
  dense.reserve(n * n);
  for (const auto& line : lines) {
    auto f = detail::split(line.text, ',');
    if (f.size() != n) {
      throw InputError("expected " + std::to_string(n) + " comma-separated values, got " + std::to_string(f.size()),
                       line.number);
    }
    for (auto token : f) {
      auto v = detail::parse_number<Count>(token);
      if (!v) throw InputError("expected a nonnegative integer, got '" + std::string(detail::trim(token)) + "'", line.number);
      dense.push_back(*v);
    }
  }
  return CitationMatrix::from_dense(n, dense);
}

CitationMatrix read_citation_file(const std::string& path, std::string_view format, IdMode ids) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  if (format == "edges") return parse_edge_list(in, ids);
  if (format == "dense") return parse_dense_csv(in);
  throw ConfigError("unknown input format '" + std::string(format) + "'");
}

void write_edge_list(std::ostream& out, const CitationMatrix& m) {
  for (const auto& e : m.entries()) {
    if (m.has_labels()) {
      out << m.labels()[e.row] << '\t' << m.labels()[e.col];
    } else {
      out << e.row << '\t' << e.col;
    }
    out << '\t' << e.count << '\n';
  }
}

}  // namespace simpairs
