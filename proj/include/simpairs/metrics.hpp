#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "simpairs/community.hpp"

namespace simpairs {

// Joint label counts of two partitions over the same nodes.
struct ContingencyTable {
  std::map<std::pair<CommunityId, CommunityId>, std::size_t> counts;
  std::size_t n = 0;
};

/// Throws InputError when the partitions cover different node counts.
ContingencyTable contingency(const Partition& x, const Partition& y);

// Entropies are in bits by default. `base` exists so callers can confirm
// that NMI does not depend on it.
double entropy(const Partition& p, double base = 2.0);
double joint_entropy(const Partition& x, const Partition& y, double base = 2.0);

struct NmiValue {
  double value;
  bool degenerate;  // both partitions trivial (H(X) = H(Y) = 0); value is 1 by convention
};

/// (H(X) + H(Y) - H(X,Y)) / ((H(X) + H(Y)) / 2), clamped to [0, 1].
NmiValue nmi_detail(const Partition& x, const Partition& y, double base = 2.0);
inline double nmi(const Partition& x, const Partition& y, double base = 2.0) { return nmi_detail(x, y, base).value; }

struct SizeSummary {
  std::size_t count = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::map<std::size_t, std::size_t> histogram;  // size -> number of communities
};

enum class TideCount { Events, Merges };

struct PartitionStats {
  std::size_t cores = 0;
  std::size_t reals = 0;  // real-level partition size, unassigned singletons included
  std::size_t tides = 0;
  std::size_t unassigned = 0;
  SizeSummary core_sizes;
  SizeSummary real_sizes;  // over the real-level partition
};

PartitionStats partition_stats(const DetectionResult& r, TideCount tide_count = TideCount::Events);

}  // namespace simpairs
