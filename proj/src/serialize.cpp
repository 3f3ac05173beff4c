#include "simpairs/serialize.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "simpairs/errors.hpp"
#include "text_io.hpp"

namespace simpairs {

namespace {

nlohmann::json node_json(NodeId node, const NodeLabels& labels) {
  if (labels.empty()) return node;
  return labels.at(node);
}

nlohmann::json nodes_json(const std::vector<NodeId>& nodes, const NodeLabels& labels) {
  auto out = nlohmann::json::array();
  for (NodeId node : nodes) out.push_back(node_json(node, labels));
  return out;
}

std::string node_text(NodeId node, const NodeLabels& labels) {
  return labels.empty() ? std::to_string(node) : labels.at(node);
}

nlohmann::json size_json(const SizeSummary& s) {
  auto histogram = nlohmann::json::object();
  for (auto [size, count] : s.histogram) histogram[std::to_string(size)] = count;
  return {{"count", s.count}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"histogram", histogram}};
}

}  // namespace

std::string format_fixed(double value, int digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_pairs_tsv(std::ostream& out, const RankedPairList& pairs, const NodeLabels& labels) {
  for (const auto& p : pairs) {
    out << node_text(p.selector, labels) << '\t' << node_text(p.selected, labels) << '\t'
        << format_fixed(p.similarity, 6) << '\n';
  }
}

PairsInput read_pairs_tsv(std::istream& in, IdMode ids) {
  const auto lines = detail::content_lines(in);
  std::vector<std::vector<std::string_view>> fields;
  std::vector<std::string_view> tokens;
  for (const auto& line : lines) {
    auto f = detail::split(line.text, '\t');
    if (f.size() != 3) {
      throw InputError("expected 3 tab-separated fields (selector, selected, similarity), got " +
                           std::to_string(f.size()),
                       line.number);
    }
    tokens.push_back(detail::trim(f[0]));
    tokens.push_back(detail::trim(f[1]));
    fields.push_back(std::move(f));
  }
  detail::IdMapper mapper(ids, tokens);
  PairsInput input;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const NodeId a = mapper.map(fields[k][0], lines[k].number);
    const NodeId b = mapper.map(fields[k][1], lines[k].number);
    if (a == b) throw InputError("pair joins a node with itself", lines[k].number);
    auto sim = detail::parse_number<double>(fields[k][2]);
    if (!sim || !(*sim >= 0.0 && *sim <= 1.0 + 1e-12)) {
      throw InputError("similarity must be a number in [0, 1], got '" + std::string(detail::trim(fields[k][2])) + "'",
                       lines[k].number);
    }
    input.pairs.push_back({a, b, *sim});
  }
  input.n_nodes = mapper.size();
  input.labels = mapper.labels();
  return input;
}

void write_partition_tsv(std::ostream& out, const Partition& p, const NodeLabels& labels) {
  for (NodeId node = 0; node < p.size(); ++node) out << node_text(node, labels) << '\t' << p.labels[node] << '\n';
}

Partition read_partition_tsv(std::istream& in, std::size_t n_nodes, const NodeLabels& labels) {
  std::unordered_map<std::string, NodeId> by_label;
  for (NodeId i = 0; i < labels.size(); ++i) by_label.emplace(labels[i], i);

  constexpr auto kUnset = std::numeric_limits<CommunityId>::max();
  std::vector<CommunityId> raw(n_nodes, kUnset);
  for (const auto& line : detail::content_lines(in)) {
    auto f = detail::split(line.text, '\t');
    if (f.size() != 2) throw InputError("expected node<TAB>label", line.number);
    std::optional<NodeId> node;
    if (!labels.empty()) {
      if (auto it = by_label.find(std::string(detail::trim(f[0]))); it != by_label.end()) node = it->second;
    } else {
      node = detail::parse_number<NodeId>(f[0]);
    }
    if (!node || *node >= n_nodes) throw InputError("unknown node '" + std::string(detail::trim(f[0])) + "'", line.number);
    auto label = detail::parse_number<CommunityId>(f[1]);
    if (!label || *label == kUnset) throw InputError("community label must be a nonnegative integer", line.number);
    raw[*node] = *label;
  }
  for (NodeId i = 0; i < n_nodes; ++i) {
    if (raw[i] == kUnset) throw InputError("partition has no label for node " + node_text(i, labels));
  }
  return Partition::from_labels(std::move(raw));
}

nlohmann::json to_json(const DetectionResult& r, const NodeLabels& labels) {
  nlohmann::json out;
  out["n_nodes"] = r.n_nodes;

  auto params = nlohmann::json::object();
  for (const auto& [key, value] : r.provenance.params) params[key] = value;
  out["provenance"] = {{"strategy", r.provenance.strategy}, {"params", params}, {"seed", r.provenance.seed}};

  auto cores = nlohmann::json::array();
  for (const auto& core : r.cores) cores.push_back(nodes_json(core.members, labels));
  out["cores"] = cores;

  auto reals = nlohmann::json::array();
  auto real_cores = nlohmann::json::array();
  for (const auto& real : r.reals) {
    reals.push_back(nodes_json(real.members, labels));
    real_cores.push_back(real.core_ids);
  }
  out["reals"] = reals;
  out["real_cores"] = real_cores;

  auto tides = nlohmann::json::array();
  for (const auto& t : r.tides) {
    tides.push_back({{"selector", node_json(t.pair.selector, labels)},
                     {"selected", node_json(t.pair.selected, labels)},
                     {"similarity", t.pair.similarity},
                     {"core_a", t.core_a},
                     {"core_b", t.core_b},
                     {"merged", t.merged}});
  }
  out["tides"] = tides;
  out["unassigned"] = nodes_json(r.unassigned, labels);
  return out;
}

nlohmann::json to_json(const PartitionStats& s) {
  return {{"cores", s.cores},           {"reals", s.reals},
          {"tides", s.tides},           {"unassigned", s.unassigned},
          {"core_sizes", size_json(s.core_sizes)}, {"real_sizes", size_json(s.real_sizes)}};
}

nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json out;
  out["sweep"] = s.sweep;
  out["parameter"] = s.parameter;
  out["warnings"] = s.warnings;
  out["reference"] = to_json(s.reference);
  auto crossings = nlohmann::json::object();
  for (const auto& [kind, value] : s.crossings) crossings[kind] = value;
  out["nmi_real_below_half_at"] = crossings;
  auto rows = nlohmann::json::array();
  for (const auto& row : s.rows) {
    auto runs = nlohmann::json::array();
    for (const auto& run : row.runs) {
      runs.push_back({{"seed", run.seed},
                      {"cores", run.cores},
                      {"reals", run.reals},
                      {"tides", run.tides},
                      {"nmi_core", run.nmi_core},
                      {"nmi_real", run.nmi_real}});
    }
    rows.push_back({{"value", row.value}, {"kind", row.kind}, {"runs", runs}});
  }
  out["rows"] = rows;
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& s) {
  out << "sweep,param,value,kind,reps,cores_mean,cores_std,reals_mean,reals_std,tides_mean,tides_std,"
         "nmi_core_mean,nmi_core_std,nmi_real_mean,nmi_real_std\n";
  for (const auto& row : s.rows) {
    out << s.sweep << ',' << s.parameter << ',' << format_shortest(row.value) << ',' << row.kind << ','
        << row.runs.size();
    for (const MeanStd* m : {&row.cores, &row.reals, &row.tides, &row.nmi_core, &row.nmi_real}) {
      out << ',' << format_shortest(m->mean) << ',' << format_shortest(m->std);
    }
    out << '\n';
  }
}

}  // namespace simpairs
