#include "simpairs/synthetic.hpp"

#include <algorithm>
#include <numeric>

#include "simpairs/errors.hpp"

namespace simpairs {

PlantedMatrix generate_planted_citation_matrix(const SyntheticSpec& spec) {
  if (spec.block_sizes.empty()) throw ConfigError("synthetic spec needs at least one block");
  if (std::any_of(spec.block_sizes.begin(), spec.block_sizes.end(), [](std::size_t s) { return s == 0; })) {
    throw ConfigError("synthetic block sizes must be positive");
  }
  if (!(spec.in_block_rate >= 0.0) || !(spec.cross_block_rate >= 0.0)) {
    throw ConfigError("synthetic citation rates must be nonnegative");
  }
  if (spec.volume == 0) throw ConfigError("synthetic citation volume must be positive");

  const std::size_t n = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), std::size_t{0});
  std::vector<CommunityId> block(n);
  {
    std::size_t node = 0;
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
      for (std::size_t k = 0; k < spec.block_sizes[b]; ++k) block[node++] = static_cast<CommunityId>(b);
    }
  }

  // Cumulative cell weights in row-major order.
  std::vector<double> cumulative(n * n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      total += block[i] == block[j] ? spec.in_block_rate : spec.cross_block_rate;
      cumulative[i * n + j] = total;
    }
  }
  if (!(total > 0.0)) throw ConfigError("synthetic citation rates are all zero");

  std::vector<Count> dense(n * n, 0);
  Rng rng(derive_seed(spec.seed, 0, Stream::Synthetic));
  for (Count c = 0; c < spec.volume; ++c) {
    const double target = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    ++dense[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return {CitationMatrix::from_dense(n, dense), Partition::from_labels(std::move(block), Level::Real)};
}

}  // namespace simpairs
