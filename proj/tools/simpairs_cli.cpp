// simpairs: community detection by most similar node pairs.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "simpairs/citation_matrix.hpp"
#include "simpairs/community.hpp"
#include "simpairs/errors.hpp"
#include "simpairs/experiment.hpp"
#include "simpairs/metrics.hpp"
#include "simpairs/selection.hpp"
#include "simpairs/serialize.hpp"
#include "simpairs/similarity.hpp"
#include "simpairs/synthetic.hpp"

namespace fs = std::filesystem;
using namespace simpairs;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

struct InputOptions {
  std::string path;
  std::string format = "edges";
  std::string ids = "auto";
  std::string kernel = "auto";
  unsigned threads = 0;
};

struct DetectOptions {
  std::string pairs_path;
  std::string strategy = "max";
  std::optional<std::size_t> topn;
  std::optional<double> deletion;
  std::optional<double> mix;
  std::uint64_t seed = 0;
  std::string tide_count = "events";
  std::string out = ".";
};

struct SweepOptions {
  std::string p_grid = "0:0.1:1";
  std::string topn_grid = "1,2,3,5,10,20,30,50";
  std::string del_grid = "0:0.1:0.9";
  std::string kinds = "both";
  std::size_t reps = 20;
  std::uint64_t seed = 0;
  std::string truth;
  std::string tide_count = "events";
  std::string out = ".";
};

struct SynthOptions {
  std::size_t blocks = 4;
  std::size_t block_size = 25;
  std::string block_sizes;
  double in_rate = 10.0;
  double cross_rate = 1.0;
  std::uint64_t volume = 50'000;
  std::uint64_t seed = 0;
  std::string out = ".";
};

const std::map<std::string, IdMode> kIdModes{{"auto", IdMode::Auto}, {"index", IdMode::Index}, {"label", IdMode::Label}};
const std::map<std::string, kernels::Kind> kKernels{
    {"auto", kernels::Kind::Auto}, {"scalar", kernels::Kind::Scalar}, {"avx2", kernels::Kind::Avx2}, {"neon", kernels::Kind::Neon}};
const std::map<std::string, TideCount> kTideCounts{{"events", TideCount::Events}, {"merges", TideCount::Merges}};

void add_input_options(CLI::App* cmd, InputOptions& in, bool required) {
  auto* input = cmd->add_option("--input", in.path, "Citation data (edge list TSV or dense CSV)");
  if (required) input->required();
  cmd->add_option("--format", in.format, "Input format")->check(CLI::IsMember({"edges", "dense"}));
  cmd->add_option("--ids", in.ids, "Edge-list node ids: auto, index (0-based) or label")->check(CLI::IsMember({"auto", "index", "label"}));
  cmd->add_option("--kernel", in.kernel, "Dot-product kernel")->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
  cmd->add_option("--threads", in.threads, "Worker threads (0: all cores)");
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

SelectionStrategy parse_strategy(const DetectOptions& o) {
  if (o.mix) {
    if (o.strategy == "max") throw ConfigError("--mix needs --strategy psim or p as the randomized side");
    if (o.topn || o.deletion) throw ConfigError("--mix cannot be combined with --topn or --del");
    return strategy::Mixed{*o.mix, o.strategy == "psim" ? RandomKind::Psim : RandomKind::Uniform};
  }
  if (o.topn && o.strategy != "psim") throw ConfigError("--topn applies to --strategy psim only");
  if (o.deletion && o.strategy != "max") throw ConfigError("--del applies to --strategy max only");
  if (o.strategy == "max") {
    if (o.deletion) return strategy::MaxDeleted{*o.deletion};
    return strategy::Max{};
  }
  if (o.strategy == "psim") {
    if (o.topn) return strategy::PsimTopN{*o.topn};
    return strategy::Psim{};
  }
  return strategy::Uniform{};
}

int run_detect(const InputOptions& in, const DetectOptions& o) {
  if (in.path.empty() == o.pairs_path.empty()) throw ConfigError("detect needs exactly one of --input or --pairs");
  const fs::path out_dir(o.out);

  RankedPairList pairs;
  std::size_t n = 0;
  NodeLabels labels;
  Provenance provenance;

  if (!o.pairs_path.empty()) {
    std::ifstream file(o.pairs_path);
    if (!file) throw InputError("cannot open '" + o.pairs_path + "'");
    auto input = read_pairs_tsv(file, kIdModes.at(in.ids));
    pairs = std::move(input.pairs);
    n = input.n_nodes;
    labels = std::move(input.labels);
    provenance.strategy = "pairs";
  } else {
    const auto strategy = parse_strategy(o);
    validate(strategy);
    const auto matrix = read_citation_file(in.path, in.format, kIdModes.at(in.ids));
    const auto s = build_similarity_matrix(matrix, {kKernels.at(in.kernel), in.threads});
    pairs = select_pairs(s, strategy, o.seed);
    n = matrix.size();
    labels = matrix.labels();
    provenance = {strategy_name(strategy), strategy_params(strategy), o.seed};
  }

  const auto result = build_communities(pairs, n, provenance);
  const auto stats = partition_stats(result, kTideCounts.at(o.tide_count));

  open_output(out_dir, "result.json") << to_json(result, labels).dump(2) << '\n';
  {
    auto f = open_output(out_dir, "partition_core.tsv");
    write_partition_tsv(f, extract_partition(result, Level::Core), labels);
  }
  {
    auto f = open_output(out_dir, "partition_real.tsv");
    write_partition_tsv(f, extract_partition(result, Level::Real), labels);
  }
  {
    auto f = open_output(out_dir, "pairs.tsv");
    write_pairs_tsv(f, pairs, labels);
  }
  open_output(out_dir, "stats.json") << to_json(stats).dump(2) << '\n';

  std::cout << "nodes " << n << "  pairs " << pairs.size() << "  cores " << stats.cores << "  reals " << stats.reals
            << "  tides " << stats.tides << "  unassigned " << stats.unassigned << '\n';
  return 0;
}

ExperimentConfig sweep_config(const CitationMatrix& matrix, const InputOptions& in, const SweepOptions& o) {
  ExperimentConfig cfg;
  cfg.repetitions = o.reps;
  cfg.base_seed = o.seed;
  cfg.threads = in.threads;
  cfg.tide_count = kTideCounts.at(o.tide_count);
  cfg.similarity = {kKernels.at(in.kernel), in.threads};
  if (o.kinds == "psim") cfg.kinds = {RandomKind::Psim};
  if (o.kinds == "p") cfg.kinds = {RandomKind::Uniform};
  if (!o.truth.empty()) {
    std::ifstream file(o.truth);
    if (!file) throw InputError("cannot open '" + o.truth + "'");
    cfg.reference_truth = read_partition_tsv(file, matrix.size(), matrix.labels());
  }
  return cfg;
}

int run_sweep(const std::string& which, const InputOptions& in, const SweepOptions& o) {
  const auto matrix = read_citation_file(in.path, in.format, kIdModes.at(in.ids));
  auto cfg = sweep_config(matrix, in, o);

  SweepResult result;
  if (which == "prob") {
    cfg.probabilities = parse_grid(o.p_grid);
    result = run_probability_sweep(matrix, cfg);
  } else if (which == "topn") {
    cfg.topn_grid.clear();
    for (double v : parse_grid(o.topn_grid)) {
      if (v < 1.0 || v != std::floor(v)) throw ConfigError("topn grid values must be positive integers");
      cfg.topn_grid.push_back(static_cast<std::size_t>(v));
    }
    result = run_topn_sweep(matrix, cfg);
  } else {
    cfg.deletion_grid = parse_grid(o.del_grid);
    result = run_deletion_sweep(matrix, cfg);
  }

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  const fs::path out_dir(o.out);
  {
    auto f = open_output(out_dir, "sweep.csv");
    write_sweep_csv(f, result);
  }
  open_output(out_dir, "sweep.json") << to_json(result).dump(2) << '\n';
  write_sweep_csv(std::cout, result);
  for (const auto& [kind, value] : result.crossings) {
    std::cout << "# " << kind << ": mean real-level NMI first below 0.5 at " << result.parameter << '='
              << format_shortest(value) << '\n';
  }
  return 0;
}

int run_gen_synth(const SynthOptions& o) {
  SyntheticSpec spec;
  if (!o.block_sizes.empty()) {
    spec.block_sizes.clear();
    for (double v : parse_grid(o.block_sizes)) {
      if (v < 1.0 || v != std::floor(v)) throw ConfigError("block sizes must be positive integers");
      spec.block_sizes.push_back(static_cast<std::size_t>(v));
    }
  } else {
    spec.block_sizes.assign(o.blocks, o.block_size);
  }
  spec.in_block_rate = o.in_rate;
  spec.cross_block_rate = o.cross_rate;
  spec.volume = o.volume;
  spec.seed = o.seed;
  const auto planted = generate_planted_citation_matrix(spec);

  const fs::path out_dir(o.out);
  {
    auto f = open_output(out_dir, "matrix.tsv");
    f << "# planted partition: " << spec.n_blocks() << " blocks, in/cross rate " << format_shortest(spec.in_block_rate)
      << '/' << format_shortest(spec.cross_block_rate) << ", volume " << spec.volume << ", seed " << spec.seed << '\n';
    write_edge_list(f, planted.matrix);
  }
  {
    auto f = open_output(out_dir, "truth.tsv");
    write_partition_tsv(f, planted.truth);
  }
  std::cout << "nodes " << planted.matrix.size() << "  citations " << planted.matrix.total() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection by most similar node pairs"};
  app.require_subcommand(1);

  InputOptions input;
  DetectOptions detect;
  SweepOptions sweep;
  SynthOptions synth;

  auto* detect_cmd = app.add_subcommand("detect", "Select node pairs and build core/real communities");
  add_input_options(detect_cmd, input, false);
  detect_cmd->add_option("--pairs", detect.pairs_path, "Ranked pair list TSV; skips similarity and selection");
  detect_cmd->add_option("--strategy", detect.strategy, "Pair selection")->check(CLI::IsMember({"max", "psim", "p"}));
  detect_cmd->add_option("--topn", detect.topn, "PSIM candidates limited to the n most similar")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--del", detect.deletion, "MAX after deleting this fraction of each row")->check(CLI::Range(0.0, 1.0));
  detect_cmd->add_option("--mix", detect.mix, "Per-node probability of the randomized strategy instead of MAX")->check(CLI::Range(0.0, 1.0));
  detect_cmd->add_option("--seed", detect.seed, "RNG seed");
  detect_cmd->add_option("--tide-count", detect.tide_count, "Count every tide or only merging ones")->check(CLI::IsMember({"events", "merges"}));
  detect_cmd->add_option("--out", detect.out, "Output directory");

  std::map<std::string, CLI::App*> sweep_cmds;
  for (const auto& [name, help] : {std::pair{"sweep-prob", "Mixture probability sweep (PSIM and P vs MAX)"},
                                   std::pair{"sweep-topn", "PSIM limited to the n most similar partners"},
                                   std::pair{"sweep-del", "MAX with random per-row similarity deletion"}}) {
    auto* cmd = app.add_subcommand(name, help);
    add_input_options(cmd, input, true);
    cmd->add_option("--reps", sweep.reps, "Repetitions per grid point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sweep.seed, "Base seed");
    cmd->add_option("--truth", sweep.truth, "Reference partition TSV (default: MAX run)");
    cmd->add_option("--tide-count", sweep.tide_count, "Count every tide or only merging ones")->check(CLI::IsMember({"events", "merges"}));
    cmd->add_option("--out", sweep.out, "Output directory");
    sweep_cmds[name] = cmd;
  }
  sweep_cmds["sweep-prob"]->add_option("--p-grid", sweep.p_grid, "Probabilities: list or start:step:stop");
  sweep_cmds["sweep-prob"]->add_option("--strategy", sweep.kinds, "Randomized side")->check(CLI::IsMember({"both", "psim", "p"}));
  sweep_cmds["sweep-topn"]->add_option("--topn-grid", sweep.topn_grid, "Candidate limits: list or start:step:stop");
  sweep_cmds["sweep-del"]->add_option("--del-grid", sweep.del_grid, "Deletion fractions: list or start:step:stop");

  auto* synth_cmd = app.add_subcommand("gen-synth", "Generate a planted-partition citation matrix");
  synth_cmd->add_option("--blocks", synth.blocks, "Number of equal blocks")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--block-size", synth.block_size, "Nodes per block")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--block-sizes", synth.block_sizes, "Explicit comma-separated block sizes");
  synth_cmd->add_option("--in-rate", synth.in_rate, "Within-block citation rate");
  synth_cmd->add_option("--cross-rate", synth.cross_rate, "Cross-block citation rate");
  synth_cmd->add_option("--volume", synth.volume, "Total citations");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed");
  synth_cmd->add_option("--out", synth.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (detect_cmd->parsed()) return run_detect(input, detect);
    if (synth_cmd->parsed()) return run_gen_synth(synth);
    if (sweep_cmds["sweep-prob"]->parsed()) return run_sweep("prob", input, sweep);
    if (sweep_cmds["sweep-topn"]->parsed()) return run_sweep("topn", input, sweep);
    return run_sweep("del", input, sweep);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
