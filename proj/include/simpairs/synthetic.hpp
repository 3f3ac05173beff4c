#pragma once

#include <vector>

#include "simpairs/citation_matrix.hpp"
#include "simpairs/community.hpp"
#include "simpairs/rng.hpp"

namespace simpairs {

// Planted-partition citation generator. Each of `volume` citations lands in
// cell (i, j) with probability proportional to `in_block_rate` when i and j
// share a block (diagonal included) and `cross_block_rate` otherwise.
struct SyntheticSpec {
  std::vector<std::size_t> block_sizes{25, 25, 25, 25};
  double in_block_rate = 10.0;
  double cross_block_rate = 1.0;
  Count volume = 50'000;
  RngSeed seed = 0;

  std::size_t n_blocks() const noexcept { return block_sizes.size(); }
};

struct PlantedMatrix {
  CitationMatrix matrix;
  Partition truth;  // node -> block
};

/// Throws ConfigError for an empty layout, negative rates, zero volume or zero total rate.
PlantedMatrix generate_planted_citation_matrix(const SyntheticSpec& spec);

}  // namespace simpairs
