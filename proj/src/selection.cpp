#include "simpairs/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "simpairs/errors.hpp"

namespace simpairs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void append_max_pairs(const SimilarityMatrix& s, NodeId i, const SimilarityMask* mask, RankedPairList& out) {
  const auto row = s.row(i);
  const std::size_t n = s.size();
  auto excluded = [&](NodeId j) { return j == i || (mask != nullptr && mask->is_deleted(i, j)); };

  double best = -1.0;
  for (NodeId j = 0; j < n; ++j) {
    if (!excluded(j) && row[j] > best) best = row[j];
  }
  if (best <= 0.0) return;  // fully deleted or no positive similarity
  for (NodeId j = 0; j < n; ++j) {
    if (!excluded(j) && row[j] == best) out.push_back({i, j, best});
  }
}

std::vector<NodeId> psim_candidates(const SimilarityMatrix& s, NodeId i, std::optional<std::size_t> topn) {
  std::vector<NodeId> candidates;
  candidates.reserve(s.size());
  for (NodeId j = 0; j < s.size(); ++j) {
    if (j != i) candidates.push_back(j);
  }
  if (topn && *topn < candidates.size()) {
    const auto row = s.row(i);
    auto by_similarity = [&](NodeId a, NodeId b) { return row[a] > row[b] || (row[a] == row[b] && a < b); };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(*topn), candidates.end(),
                      by_similarity);
    candidates.resize(*topn);
  }
  return candidates;
}

std::optional<NodeId> psim_partner(const SimilarityMatrix& s, NodeId i, RngSeed seed, std::optional<std::size_t> topn) {
  const auto row = s.row(i);
  const auto candidates = psim_candidates(s, i, topn);
  double mass = 0.0;
  for (NodeId j : candidates) mass += row[j];
  if (!(mass > 0.0)) return std::nullopt;

  Rng rng(derive_seed(seed, i, Stream::Partner));
  const double target = rng.uniform01() * mass;
  double cumulative = 0.0;
  std::optional<NodeId> last_positive;
  for (NodeId j : candidates) {
    if (row[j] <= 0.0) continue;
    cumulative += row[j];
    last_positive = j;
    if (target < cumulative) return j;
  }
  return last_positive;  // target landed in the rounding slack at the top
}

std::optional<NodeId> uniform_partner(const SimilarityMatrix& s, NodeId i, RngSeed seed) {
  if (s.is_zero_row(i)) return std::nullopt;
  Rng rng(derive_seed(seed, i, Stream::Partner));
  const auto r = static_cast<NodeId>(rng.below(s.size() - 1));
  return r >= i ? r + 1 : r;
}

std::optional<NodeId> random_partner(const SimilarityMatrix& s, NodeId i, RandomKind kind, RngSeed seed) {
  return kind == RandomKind::Psim ? psim_partner(s, i, seed, std::nullopt) : uniform_partner(s, i, seed);
}

void check_probability(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

}  // namespace

bool ranked_before(const RankedPair& a, const RankedPair& b) noexcept {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return std::tie(a.selector, a.selected) < std::tie(b.selector, b.selected);
}

void sort_ranked(RankedPairList& pairs) { std::sort(pairs.begin(), pairs.end(), ranked_before); }

bool is_sorted_ranked(const RankedPairList& pairs) {
  return std::is_sorted(pairs.begin(), pairs.end(), ranked_before);
}

SimilarityMask::SimilarityMask(std::vector<std::vector<NodeId>> deleted, double fraction, RngSeed seed)
    : deleted_(std::move(deleted)), fraction_(fraction), seed_(seed) {
  for (auto& row : deleted_) std::sort(row.begin(), row.end());
}

bool SimilarityMask::is_deleted(NodeId row, NodeId col) const {
  if (deleted_.empty()) return false;
  const auto& cols = deleted_[row];
  return std::binary_search(cols.begin(), cols.end(), col);
}

std::size_t deletions_per_row(std::size_t n, double fraction) {
  check_probability(fraction, "deletion fraction");
  if (n < 2) return 0;
  const double raw = fraction * static_cast<double>(n - 1);
  return std::min(n - 1, static_cast<std::size_t>(std::floor(raw + 1e-9)));
}

SimilarityMask apply_random_deletion(const SimilarityMatrix& s, double fraction, RngSeed seed) {
  const std::size_t n = s.size();
  const std::size_t k = deletions_per_row(n, fraction);
  if (k == 0) return SimilarityMask({}, fraction, seed);

  std::vector<std::vector<NodeId>> deleted(n);
  std::vector<NodeId> pool;
  for (NodeId i = 0; i < n; ++i) {
    pool.clear();
    for (NodeId j = 0; j < n; ++j) {
      if (j != i) pool.push_back(j);
    }
    // Partial Fisher-Yates: the first k slots are a uniform k-subset.
    Rng rng(derive_seed(seed, i, Stream::Deletion));
    for (std::size_t slot = 0; slot < k; ++slot) {
      const auto pick = slot + static_cast<std::size_t>(rng.below(pool.size() - slot));
      std::swap(pool[slot], pool[pick]);
    }
    deleted[i].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return SimilarityMask(std::move(deleted), fraction, seed);
}

RankedPairList select_max(const SimilarityMatrix& s, const SimilarityMask* mask) {
  RankedPairList out;
  out.reserve(s.size());
  if (mask != nullptr && mask->empty()) mask = nullptr;
  for (NodeId i = 0; i < s.size(); ++i) append_max_pairs(s, i, mask, out);
  sort_ranked(out);
  return out;
}

RankedPairList select_psim(const SimilarityMatrix& s, RngSeed seed, std::optional<std::size_t> topn) {
  if (topn && *topn == 0) throw ConfigError("topn must be positive");
  RankedPairList out;
  if (s.size() < 2) return out;
  out.reserve(s.size());
  for (NodeId i = 0; i < s.size(); ++i) {
    if (auto j = psim_partner(s, i, seed, topn)) out.push_back({i, *j, s(i, *j)});
  }
  sort_ranked(out);
  return out;
}

RankedPairList select_random(const SimilarityMatrix& s, RngSeed seed) {
  RankedPairList out;
  if (s.size() < 2) return out;
  out.reserve(s.size());
  for (NodeId i = 0; i < s.size(); ++i) {
    if (auto j = uniform_partner(s, i, seed)) out.push_back({i, *j, s(i, *j)});
  }
  sort_ranked(out);
  return out;
}

RankedPairList select_mixed(const SimilarityMatrix& s, double p, RandomKind kind, RngSeed seed) {
  check_probability(p, "mixture probability");
  RankedPairList out;
  if (s.size() < 2) return out;
  out.reserve(s.size());
  for (NodeId i = 0; i < s.size(); ++i) {
    // The coin has its own substream so the partner draw matches the pure
    // randomized strategy under the same seed.
    Rng coin(derive_seed(seed, i, Stream::Coin));
    if (coin.uniform01() < p) {
      if (auto j = random_partner(s, i, kind, seed)) out.push_back({i, *j, s(i, *j)});
    } else {
      append_max_pairs(s, i, nullptr, out);
    }
  }
  sort_ranked(out);
  return out;
}

void validate(const SelectionStrategy& strategy) {
  std::visit(overloaded{
                 [](const strategy::PsimTopN& t) {
                   if (t.n == 0) throw ConfigError("topn must be positive");
                 },
                 [](const strategy::MaxDeleted& d) { check_probability(d.fraction, "deletion fraction"); },
                 [](const strategy::Mixed& m) { check_probability(m.probability, "mixture probability"); },
                 [](const auto&) {},
             },
             strategy);
}

std::string strategy_name(const SelectionStrategy& strategy) {
  return std::visit(overloaded{
                        [](const strategy::Max&) { return std::string("max"); },
                        [](const strategy::Psim&) { return std::string("psim"); },
                        [](const strategy::Uniform&) { return std::string("p"); },
                        [](const strategy::PsimTopN&) { return std::string("psim_topn"); },
                        [](const strategy::MaxDeleted&) { return std::string("max_deleted"); },
                        [](const strategy::Mixed& m) {
                          return std::string(m.kind == RandomKind::Psim ? "mixed_psim" : "mixed_p");
                        },
                    },
                    strategy);
}

std::vector<std::pair<std::string, double>> strategy_params(const SelectionStrategy& strategy) {
  using Params = std::vector<std::pair<std::string, double>>;
  return std::visit(overloaded{
                        [](const strategy::PsimTopN& t) { return Params{{"topn", static_cast<double>(t.n)}}; },
                        [](const strategy::MaxDeleted& d) { return Params{{"deletion_fraction", d.fraction}}; },
                        [](const strategy::Mixed& m) { return Params{{"probability", m.probability}}; },
                        [](const auto&) { return Params{}; },
                    },
                    strategy);
}

RankedPairList select_pairs(const SimilarityMatrix& s, const SelectionStrategy& strategy, RngSeed seed) {
  validate(strategy);
  return std::visit(overloaded{
                        [&](const strategy::Max&) { return select_max(s); },
                        [&](const strategy::Psim&) { return select_psim(s, seed); },
                        [&](const strategy::Uniform&) { return select_random(s, seed); },
                        [&](const strategy::PsimTopN& t) { return select_psim(s, seed, t.n); },
                        [&](const strategy::MaxDeleted& d) {
                          const auto mask = apply_random_deletion(s, d.fraction, derive_seed(seed, 0, Stream::Deletion));
                          return select_max(s, &mask);
                        },
                        [&](const strategy::Mixed& m) { return select_mixed(s, m.probability, m.kind, seed); },
                    },
                    strategy);
}

}  // namespace simpairs
