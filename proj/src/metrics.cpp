#include "simpairs/metrics.hpp"

#include <algorithm>

#include "simpairs/errors.hpp"

namespace simpairs {

namespace {

// Summing over sorted counts makes the result independent of label order,
// which keeps nmi exactly symmetric and relabeling invariant.
double entropy_of_counts(std::vector<std::size_t> counts, std::size_t n, double base) {
  if (n == 0) return 0.0;
  std::sort(counts.begin(), counts.end());
  const double total = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h / std::log(base);
}

std::vector<std::size_t> label_counts(const Partition& p) {
  std::vector<std::size_t> counts(p.community_count(), 0);
  for (auto label : p.labels) ++counts[label];
  return counts;
}

void require_same_nodes(const Partition& x, const Partition& y) {
  if (x.size() != y.size()) {
    throw InputError("partitions cover different node sets (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + " nodes)");
  }
}

SizeSummary summarize(const std::vector<std::size_t>& sizes) {
  SizeSummary s;
  s.count = sizes.size();
  if (sizes.empty()) return s;
  s.min = *std::min_element(sizes.begin(), sizes.end());
  s.max = *std::max_element(sizes.begin(), sizes.end());
  std::size_t total = 0;
  for (auto size : sizes) {
    total += size;
    ++s.histogram[size];
  }
  s.mean = static_cast<double>(total) / static_cast<double>(sizes.size());
  return s;
}

}  // namespace

ContingencyTable contingency(const Partition& x, const Partition& y) {
  require_same_nodes(x, y);
  ContingencyTable t;
  t.n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) ++t.counts[{x.labels[i], y.labels[i]}];
  return t;
}

double entropy(const Partition& p, double base) { return entropy_of_counts(label_counts(p), p.size(), base); }

double joint_entropy(const Partition& x, const Partition& y, double base) {
  const auto table = contingency(x, y);
  std::vector<std::size_t> cells;
  cells.reserve(table.counts.size());
  for (const auto& [key, count] : table.counts) cells.push_back(count);
  return entropy_of_counts(std::move(cells), table.n, base);
}

NmiValue nmi_detail(const Partition& x, const Partition& y, double base) {
  require_same_nodes(x, y);
  const double hx = entropy(x, base);
  const double hy = entropy(y, base);
  const double marginal = hx + hy;
  if (marginal == 0.0) return {1.0, true};
  const double value = (marginal - joint_entropy(x, y, base)) / (marginal / 2.0);
  return {std::clamp(value, 0.0, 1.0), false};
}

PartitionStats partition_stats(const DetectionResult& r, TideCount tide_count) {
  PartitionStats stats;
  stats.cores = r.cores.size();
  stats.unassigned = r.unassigned.size();
  stats.tides = tide_count == TideCount::Events
                    ? r.tides.size()
                    : static_cast<std::size_t>(std::count_if(r.tides.begin(), r.tides.end(),
                                                             [](const Tide& t) { return t.merged; }));
  std::vector<std::size_t> core_sizes;
  for (const auto& core : r.cores) core_sizes.push_back(core.members.size());
  stats.core_sizes = summarize(core_sizes);

  std::vector<std::size_t> real_sizes;
  for (const auto& real : r.reals) real_sizes.push_back(real.members.size());
  real_sizes.insert(real_sizes.end(), r.unassigned.size(), 1);
  stats.reals = real_sizes.size();
  stats.real_sizes = summarize(real_sizes);
  return stats;
}

}  // namespace simpairs
