#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "simpairs/metrics.hpp"
#include "simpairs/selection.hpp"
#include "simpairs/similarity.hpp"

namespace simpairs {

struct ExperimentConfig {
  std::vector<double> probabilities{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<RandomKind> kinds{RandomKind::Psim, RandomKind::Uniform};
  std::vector<std::size_t> topn_grid{1, 2, 3, 5, 10, 20, 30, 50};
  std::vector<double> deletion_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t repetitions = 20;
  RngSeed base_seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  TideCount tide_count = TideCount::Events;
  std::optional<Partition> reference_truth;  // planted truth; MAX run when empty
  SimilarityOptions similarity;
};

/// Throws ConfigError for zero repetitions or grid values out of range.
void validate(const ExperimentConfig& cfg);

struct RunRecord {
  RngSeed seed = 0;
  double cores = 0;
  double reals = 0;
  double tides = 0;
  double nmi_core = 0;
  double nmi_real = 0;
};

struct MeanStd {
  double mean = 0;
  double std = 0;  // sample standard deviation, 0 for a single run
};

struct SweepRow {
  double value = 0;  // p, topn or deletion fraction
  std::string kind;  // psim, p or max
  std::vector<RunRecord> runs;  // repetition order
  MeanStd cores, reals, tides, nmi_core, nmi_real;
};

struct SweepResult {
  std::string sweep;      // prob, topn or del
  std::string parameter;  // p, topn or d
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
  PartitionStats reference;  // the MAX reference run, or the truth summary
  /// First grid value whose mean real-level NMI drops below 0.5, per kind.
  std::vector<std::pair<std::string, double>> crossings;
};

/// Mixed MAX/randomized selection for every (p, kind); repetitions share
/// seeds across kinds so PSIM and P are paired.
SweepResult run_probability_sweep(const CitationMatrix& m, const ExperimentConfig& cfg);
/// PSIM restricted to the topn most similar partners; topn >= N clamps to N-1.
SweepResult run_topn_sweep(const CitationMatrix& m, const ExperimentConfig& cfg);
/// MAX with per-row random deletion against the full-information reference.
SweepResult run_deletion_sweep(const CitationMatrix& m, const ExperimentConfig& cfg);

/// Seed of repetition `rep` at grid point `grid_index`.
inline RngSeed sweep_seed(RngSeed base, std::size_t grid_index, std::size_t rep) {
  return derive_seed(base, grid_index, rep);
}

/// Parses "a,b,c" or "start:step:stop" (inclusive). Values are snapped to 1e-9.
std::vector<double> parse_grid(const std::string& text);

MeanStd mean_std(const std::vector<double>& values);

}  // namespace simpairs
