#include "simpairs/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "simpairs/errors.hpp"

namespace simpairs {

namespace {

constexpr double kTolerance = 1e-12;

double cosine_from_parts(double dot, double norm_a, double norm_b) {
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), 0.0, 1.0);
}

void scatter(const NormalizedRow& row, std::vector<double>& dense) {
  for (auto [col, value] : row.entries) dense[col] = value;
}

unsigned thread_count(unsigned requested, std::size_t work) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

}  // namespace

std::vector<NormalizedRow> normalize_rows(const CitationMatrix& m) {
  std::vector<NormalizedRow> rows(m.size());
  for (NodeId i = 0; i < m.size(); ++i) {
    const Count sum = m.row_sum(i);
    auto& out = rows[i];
    if (sum == 0) {
      out.zero_row = true;
      continue;
    }
    auto [first, last] = m.row(i);
    out.entries.reserve(static_cast<std::size_t>(last - first));
    for (auto* e = first; e != last; ++e) {
      out.entries.emplace_back(e->col, static_cast<double>(e->count) / static_cast<double>(sum));
    }
  }
  return rows;
}

double cosine_similarity(const NormalizedRow& a, const NormalizedRow& b, kernels::Kind kernel) {
  if (a.zero_row || b.zero_row || a.entries.empty() || b.entries.empty()) return 0.0;
  const std::size_t width = std::max(a.entries.back().first, b.entries.back().first) + std::size_t{1};
  std::vector<double> da(width, 0.0), db(width, 0.0);
  scatter(a, da);
  scatter(b, db);
  const auto dot = kernels::dot_function(kernel);
  return cosine_from_parts(dot(da.data(), db.data(), width), dot(da.data(), da.data(), width),
                           dot(db.data(), db.data(), width));
}

SimilarityMatrix SimilarityMatrix::from_dense(std::size_t n, std::vector<double> values,
                                              std::vector<std::uint8_t> zero_rows) {
  if (values.size() != n * n) throw InputError("similarity matrix needs n*n values");
  if (!zero_rows.empty() && zero_rows.size() != n) throw InputError("zero-row flags need n entries");
  for (std::size_t i = 0; i < n; ++i) {
    values[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values[i * n + j], b = values[j * n + i];
      if (!(a >= 0.0 && a <= 1.0 + kTolerance && b >= 0.0 && b <= 1.0 + kTolerance)) {
        throw InputError("similarity (" + std::to_string(i) + ", " + std::to_string(j) + ") outside [0, 1]");
      }
      if (std::abs(a - b) > kTolerance) {
        throw InputError("similarity matrix not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  SimilarityMatrix s;
  s.n_ = n;
  s.values_ = std::move(values);
  s.zero_rows_ = std::move(zero_rows);
  return s;
}

SimilarityMatrix build_similarity_matrix(const CitationMatrix& m, const SimilarityOptions& options) {
  const std::size_t n = m.size();
  const auto rows = normalize_rows(m);
  const auto dot = kernels::dot_function(options.kernel);

  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [col, value] : rows[i].entries) dense[i * n + col] = value;
  }
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = dot(&dense[i * n], &dense[i * n], n);

  SimilarityMatrix s;
  s.n_ = n;
  s.values_.assign(n * n, 0.0);
  s.zero_rows_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.zero_rows_[i] = rows[i].zero_row ? 1 : 0;

  // Each (i, j > i) cell is computed exactly once by whichever thread owns
  // row i, and mirrored; there is no cross-thread reduction.
  auto fill_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      const double* a = &dense[i * n];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double value = cosine_from_parts(dot(a, &dense[j * n], n), norms[i], norms[j]);
        s.values_[i * n + j] = value;
        s.values_[j * n + i] = value;
      }
    }
  };

  const unsigned threads = thread_count(options.threads, n);
  if (threads <= 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fill_rows, t, threads);
  }
  return s;
}

}  // namespace simpairs
