#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simpairs/citation_matrix.hpp"
#include "simpairs/selection.hpp"

namespace simpairs {

using CommunityId = std::uint32_t;

struct CoreCommunity {
  CommunityId id;
  std::vector<NodeId> members;  // insertion order
  RankedPair founding_pair;
};

// A selected pair whose endpoints sat in different cores when it was read.
struct Tide {
  RankedPair pair;
  CommunityId core_a;  // core of pair.selector
  CommunityId core_b;  // core of pair.selected
  bool merged;         // joined two previously separate real communities
};

struct RealCommunity {
  CommunityId id;
  std::vector<CommunityId> core_ids;  // ascending
  std::vector<NodeId> members;        // core members in core order
};

struct Provenance {
  std::string strategy = "pairs";
  std::vector<std::pair<std::string, double>> params;
  RngSeed seed = 0;
};

struct DetectionResult {
  std::size_t n_nodes = 0;
  std::vector<CoreCommunity> cores;
  std::vector<RealCommunity> reals;  // cores only; unassigned nodes are not listed
  std::vector<Tide> tides;           // every tide event, in list order
  std::vector<NodeId> unassigned;    // ascending
  Provenance provenance;
};

/// Grows core communities from `pairs` in list order and joins cores linked
/// by tides into real communities. Throws InputError for an out-of-range node.
DetectionResult build_communities(const RankedPairList& pairs, std::size_t n_nodes, Provenance provenance = {});

enum class Level { Core, Real };

// Total node -> label map. Labels are dense from 0, numbered by first
// appearance in node order.
struct Partition {
  std::vector<CommunityId> labels;
  Level level = Level::Core;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t community_count() const;

  /// Renumbers labels densely by first appearance.
  static Partition from_labels(std::vector<CommunityId> raw, Level level = Level::Core);
};

Partition extract_partition(const DetectionResult& result, Level level);

/// Collapses each community to one node; entry (A, B) sums N_ij over i in A,
/// j in B. Coarse nodes are labelled "C<k>".
CitationMatrix renormalize(const CitationMatrix& m, const Partition& p);

}  // namespace simpairs
