#include "simpairs/community.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "simpairs/errors.hpp"

namespace simpairs {

namespace {

constexpr CommunityId kNone = std::numeric_limits<CommunityId>::max();

// Disjoint sets over core ids with union by size and path halving.
class CoreForest {
 public:
  CommunityId add() {
    parent_.push_back(static_cast<CommunityId>(parent_.size()));
    size_.push_back(1);
    return parent_.back();
  }

  CommunityId find(CommunityId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(CommunityId a, CommunityId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<CommunityId> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

DetectionResult build_communities(const RankedPairList& pairs, std::size_t n_nodes, Provenance provenance) {
  DetectionResult result;
  result.n_nodes = n_nodes;
  result.provenance = std::move(provenance);

  std::vector<CommunityId> core_of(n_nodes, kNone);
  CoreForest forest;

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& pair = pairs[k];
    if (pair.selector >= n_nodes || pair.selected >= n_nodes) {
      throw InputError("pair " + std::to_string(k) + " references node outside [0, " + std::to_string(n_nodes) + ")");
    }
    if (pair.selector == pair.selected) {
      throw InputError("pair " + std::to_string(k) + " pairs node " + std::to_string(pair.selector) + " with itself");
    }
    const CommunityId a = core_of[pair.selector];
    const CommunityId b = core_of[pair.selected];
    if (a == kNone && b == kNone) {
      const CommunityId id = forest.add();
      result.cores.push_back({id, {pair.selector, pair.selected}, pair});
      core_of[pair.selector] = core_of[pair.selected] = id;
    } else if (a == kNone) {
      result.cores[b].members.push_back(pair.selector);
      core_of[pair.selector] = b;
    } else if (b == kNone) {
      result.cores[a].members.push_back(pair.selected);
      core_of[pair.selected] = a;
    } else if (a != b) {
      const bool merged = forest.unite(a, b);
      result.tides.push_back({pair, a, b, merged});
    }
  }

  // Real communities numbered by their smallest core id.
  std::vector<CommunityId> real_of_root(result.cores.size(), kNone);
  for (const auto& core : result.cores) {
    const CommunityId root = forest.find(core.id);
    if (real_of_root[root] == kNone) {
      real_of_root[root] = static_cast<CommunityId>(result.reals.size());
      result.reals.push_back({real_of_root[root], {}, {}});
    }
    auto& real = result.reals[real_of_root[root]];
    real.core_ids.push_back(core.id);
    real.members.insert(real.members.end(), core.members.begin(), core.members.end());
  }

  for (NodeId i = 0; i < n_nodes; ++i) {
    if (core_of[i] == kNone) result.unassigned.push_back(i);
  }
  return result;
}

std::size_t Partition::community_count() const {
  if (labels.empty()) return 0;
  return std::size_t{*std::max_element(labels.begin(), labels.end())} + 1;
}

Partition Partition::from_labels(std::vector<CommunityId> raw, Level level) {
  std::vector<CommunityId> dense_of;
  Partition p;
  p.level = level;
  p.labels.reserve(raw.size());
  CommunityId next = 0;
  for (CommunityId label : raw) {
    if (label >= dense_of.size()) dense_of.resize(std::size_t{label} + 1, kNone);
    if (dense_of[label] == kNone) dense_of[label] = next++;
    p.labels.push_back(dense_of[label]);
  }
  return p;
}

Partition extract_partition(const DetectionResult& result, Level level) {
  std::vector<CommunityId> raw(result.n_nodes, kNone);
  if (level == Level::Core) {
    for (const auto& core : result.cores) {
      for (NodeId node : core.members) raw[node] = core.id;
    }
  } else {
    for (const auto& real : result.reals) {
      for (NodeId node : real.members) raw[node] = real.id;
    }
  }
  // Fresh singleton labels above every community id.
  auto fresh = static_cast<CommunityId>(level == Level::Core ? result.cores.size() : result.reals.size());
  for (NodeId node : result.unassigned) raw[node] = fresh++;
  return Partition::from_labels(std::move(raw), level);
}

CitationMatrix renormalize(const CitationMatrix& m, const Partition& p) {
  if (p.size() != m.size()) {
    throw InputError("partition covers " + std::to_string(p.size()) + " nodes, matrix has " + std::to_string(m.size()));
  }
  const std::size_t k = p.community_count();
  std::vector<CitationEntry> coarse;
  coarse.reserve(m.entries().size());
  for (const auto& e : m.entries()) coarse.push_back({p.labels[e.row], p.labels[e.col], e.count});
  std::vector<std::string> labels(k);
  for (std::size_t c = 0; c < k; ++c) labels[c] = "C" + std::to_string(c);
  return CitationMatrix(k, std::move(coarse), std::move(labels));
}

}  // namespace simpairs
