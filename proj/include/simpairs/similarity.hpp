#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "simpairs/citation_matrix.hpp"
#include "simpairs/kernels.hpp"

namespace simpairs {

/// Citation frequencies c_ik = N_ik / sum_j N_ij of one node.
struct NormalizedRow {
  std::vector<std::pair<NodeId, double>> entries;  // sorted by column
  bool zero_row = false;                           // raw row sum was zero; entries empty
};

std::vector<NormalizedRow> normalize_rows(const CitationMatrix& m);

/// Cosine of two normalized rows, 0 when either is a zero row. Uses the same
/// dot kernel and lane layout as build_similarity_matrix, so the value is
/// bitwise equal to the corresponding matrix entry.
double cosine_similarity(const NormalizedRow& a, const NormalizedRow& b,
                         kernels::Kind kernel = kernels::Kind::Auto);

struct SimilarityOptions {
  kernels::Kind kernel = kernels::Kind::Auto;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Dense symmetric similarity matrix. The diagonal is stored as 0 and never
// consulted by selection.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;

  /// Validates symmetry (1e-12) and range [0, 1 + 1e-12] off the diagonal.
  /// The diagonal is overwritten with 0.
  static SimilarityMatrix from_dense(std::size_t n, std::vector<double> values,
                                     std::vector<std::uint8_t> zero_rows = {});

  std::size_t size() const noexcept { return n_; }
  double operator()(NodeId i, NodeId j) const noexcept { return values_[std::size_t{i} * n_ + j]; }
  std::span<const double> row(NodeId i) const noexcept { return {values_.data() + std::size_t{i} * n_, n_}; }

  /// Node had no outgoing citations at all.
  bool is_zero_row(NodeId i) const noexcept { return !zero_rows_.empty() && zero_rows_[i] != 0; }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  friend SimilarityMatrix build_similarity_matrix(const CitationMatrix&, const SimilarityOptions&);

  std::size_t n_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> zero_rows_;
};

/// Pairwise cosine similarity of all normalized citation rows. The result is
/// bitwise independent of the thread count.
SimilarityMatrix build_similarity_matrix(const CitationMatrix& m, const SimilarityOptions& options = {});

}  // namespace simpairs
