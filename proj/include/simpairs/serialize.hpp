#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "simpairs/community.hpp"
#include "simpairs/experiment.hpp"
#include "simpairs/metrics.hpp"

namespace simpairs {

/// Fixed-point with `digits` decimals; exact binary ties round half to even.
std::string format_fixed(double value, int digits);
/// Shortest representation that round-trips.
std::string format_shortest(double value);

// Optional node names; node ids are printed when empty.
using NodeLabels = std::vector<std::string>;

/// `selector<TAB>selected<TAB>similarity`, similarity with 6 decimals.
void write_pairs_tsv(std::ostream& out, const RankedPairList& pairs, const NodeLabels& labels = {});

struct PairsInput {
  RankedPairList pairs;  // file order
  std::size_t n_nodes = 0;
  NodeLabels labels;
};

/// Reads a pair list; ID handling as in parse_edge_list. Throws InputError
/// with the line number on malformed rows.
PairsInput read_pairs_tsv(std::istream& in, IdMode ids = IdMode::Auto);

/// `node<TAB>label` per node.
void write_partition_tsv(std::ostream& out, const Partition& p, const NodeLabels& labels = {});
Partition read_partition_tsv(std::istream& in, std::size_t n_nodes, const NodeLabels& labels = {});

nlohmann::json to_json(const DetectionResult& r, const NodeLabels& labels = {});
nlohmann::json to_json(const PartitionStats& s);
nlohmann::json to_json(const SweepResult& s);

void write_sweep_csv(std::ostream& out, const SweepResult& s);

}  // namespace simpairs
