#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "simpairs/rng.hpp"
#include "simpairs/similarity.hpp"

namespace simpairs {

struct RankedPair {
  NodeId selector;
  NodeId selected;
  double similarity;

  friend bool operator==(const RankedPair&, const RankedPair&) = default;
};

/// Directed pairs ordered by decreasing similarity, ties by (selector, selected).
using RankedPairList = std::vector<RankedPair>;

bool ranked_before(const RankedPair& a, const RankedPair& b) noexcept;
void sort_ranked(RankedPairList& pairs);
bool is_sorted_ranked(const RankedPairList& pairs);

// Per-row deleted columns. Not symmetric: row i can lose sight of j while
// j still sees i.
class SimilarityMask {
 public:
  SimilarityMask() = default;
  SimilarityMask(std::vector<std::vector<NodeId>> deleted, double fraction, RngSeed seed);

  bool empty() const noexcept { return deleted_.empty(); }
  bool is_deleted(NodeId row, NodeId col) const;
  const std::vector<NodeId>& deleted(NodeId row) const { return deleted_.at(row); }
  double fraction() const noexcept { return fraction_; }
  RngSeed seed() const noexcept { return seed_; }

 private:
  std::vector<std::vector<NodeId>> deleted_;  // sorted per row
  double fraction_ = 0.0;
  RngSeed seed_ = 0;
};

/// floor(d * (n - 1)) deletions per row, robust to decimal fractions like 0.29.
std::size_t deletions_per_row(std::size_t n, double fraction);

SimilarityMask apply_random_deletion(const SimilarityMatrix& s, double fraction, RngSeed seed);

RankedPairList select_max(const SimilarityMatrix& s, const SimilarityMask* mask = nullptr);

/// One partner per node with probability S_ij / sum_k S_ik over the candidate
/// set (all k != i, or the `topn` most similar). Nodes with zero mass emit nothing.
RankedPairList select_psim(const SimilarityMatrix& s, RngSeed seed, std::optional<std::size_t> topn = std::nullopt);

/// One uniformly random partner per node. Zero-citation nodes emit nothing.
RankedPairList select_random(const SimilarityMatrix& s, RngSeed seed);

enum class RandomKind { Psim, Uniform };

/// Per-node Bernoulli(p) choice between the randomized strategy and MAX.
RankedPairList select_mixed(const SimilarityMatrix& s, double p, RandomKind kind, RngSeed seed);

namespace strategy {
struct Max {};
struct Psim {};
struct Uniform {};
struct PsimTopN {
  std::size_t n;
};
struct MaxDeleted {
  double fraction;
};
struct Mixed {
  double probability;
  RandomKind kind;
};
}  // namespace strategy

using SelectionStrategy = std::variant<strategy::Max, strategy::Psim, strategy::Uniform, strategy::PsimTopN,
                                       strategy::MaxDeleted, strategy::Mixed>;

/// Throws ConfigError when a parameter is outside its range.
void validate(const SelectionStrategy& strategy);

std::string strategy_name(const SelectionStrategy& strategy);
std::vector<std::pair<std::string, double>> strategy_params(const SelectionStrategy& strategy);

/// Dispatches to the select_* function for `strategy`. MaxDeleted draws its
/// mask from a substream of `seed`.
RankedPairList select_pairs(const SimilarityMatrix& s, const SelectionStrategy& strategy, RngSeed seed);

}  // namespace simpairs
