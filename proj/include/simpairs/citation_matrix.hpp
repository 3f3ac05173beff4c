#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace simpairs {

using NodeId = std::uint32_t;
using Count = std::uint64_t;

struct CitationEntry {
  NodeId row;
  NodeId col;
  Count count;

  friend bool operator==(const CitationEntry&, const CitationEntry&) = default;
};

// Sparse nonnegative citation counts N_ij. Entries are kept sorted by
// (row, col) with duplicates summed and zero counts dropped.
class CitationMatrix {
 public:
  CitationMatrix() = default;
  CitationMatrix(std::size_t n_nodes, std::vector<CitationEntry> entries,
                 std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_nodes_; }
  const std::vector<CitationEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  /// Entries of row `i` as a contiguous range.
  std::pair<const CitationEntry*, const CitationEntry*> row(NodeId i) const;
  Count row_sum(NodeId i) const;
  Count total() const;

  /// Dense row-major copy, mainly for small matrices and tests.
  std::vector<Count> to_dense() const;
  static CitationMatrix from_dense(std::size_t n, const std::vector<Count>& dense);

  friend bool operator==(const CitationMatrix&, const CitationMatrix&) = default;

 private:
  std::size_t n_nodes_ = 0;
  std::vector<CitationEntry> entries_;
  std::vector<std::size_t> row_start_;  // n_nodes_ + 1 offsets into entries_
  std::vector<std::string> labels_;
};

enum class IdMode { Auto, Index, Label };

/// Edge list: `src<TAB>dst<TAB>count` per line. In Auto mode, IDs are dense
/// 0-based indices if every token is a nonnegative integer, otherwise labels
/// mapped to NodeIds in first-seen order. Blank lines and `#` comments skipped.
CitationMatrix parse_edge_list(std::istream& in, IdMode ids = IdMode::Auto);

/// Dense CSV: N rows of N comma-separated nonnegative integers.
CitationMatrix parse_dense_csv(std::istream& in);

CitationMatrix read_citation_file(const std::string& path, std::string_view format,
                                  IdMode ids = IdMode::Auto);

/// Writes the matrix as an edge list; labels are used when present.
void write_edge_list(std::ostream& out, const CitationMatrix& m);

}  // namespace simpairs
