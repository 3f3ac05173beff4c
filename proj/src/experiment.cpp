#include "simpairs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "simpairs/errors.hpp"
#include "text_io.hpp"

namespace simpairs {

namespace {

struct Job {
  std::size_t row;
  SelectionStrategy strategy;
  RngSeed seed;
};

struct Reference {
  Partition core;
  Partition real;
  PartitionStats stats;
};

class SweepContext {
 public:
  SweepContext(const CitationMatrix& m, const ExperimentConfig& cfg)
      : cfg_(cfg), s_(build_similarity_matrix(m, cfg.similarity)) {
    validate(cfg);
    if (cfg.reference_truth) {
      if (cfg.reference_truth->size() != m.size()) {
        throw ConfigError("reference partition covers " + std::to_string(cfg.reference_truth->size()) +
                          " nodes, matrix has " + std::to_string(m.size()));
      }
      reference_.core = reference_.real = *cfg.reference_truth;
      DetectionResult truth_only;
      truth_only.n_nodes = m.size();
      reference_.stats = partition_stats(truth_only, cfg.tide_count);
      reference_.stats.cores = reference_.stats.reals = reference_.real.community_count();
    } else {
      const auto result = build_communities(select_max(s_), s_.size(), {"max", {}, 0});
      reference_.core = extract_partition(result, Level::Core);
      reference_.real = extract_partition(result, Level::Real);
      reference_.stats = partition_stats(result, cfg.tide_count);
    }
  }

  const SimilarityMatrix& similarity() const noexcept { return s_; }

  SweepResult run(std::string sweep, std::string parameter, std::vector<SweepRow> rows, const std::vector<Job>& jobs) {
    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < jobs.size(); k = next++) records[k] = execute(jobs[k]);
    };
    unsigned threads = cfg_.threads != 0 ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    // Jobs were emitted row by row in repetition order; aggregation follows
    // that order regardless of which thread ran what.
    for (std::size_t k = 0; k < jobs.size(); ++k) rows[jobs[k].row].runs.push_back(records[k]);
    for (auto& row : rows) summarize(row);

    SweepResult result;
    result.sweep = std::move(sweep);
    result.parameter = std::move(parameter);
    result.rows = std::move(rows);
    result.reference = reference_.stats;
    for (const auto& row : result.rows) {
      auto seen = std::find_if(result.crossings.begin(), result.crossings.end(),
                               [&](const auto& c) { return c.first == row.kind; });
      if (seen == result.crossings.end() && row.nmi_real.mean < 0.5) result.crossings.emplace_back(row.kind, row.value);
    }
    return result;
  }

 private:
  RunRecord execute(const Job& job) const {
    const auto pairs = select_pairs(s_, job.strategy, job.seed);
    const auto detection = build_communities(pairs, s_.size());
    const auto stats = partition_stats(detection, cfg_.tide_count);
    RunRecord r;
    r.seed = job.seed;
    r.cores = static_cast<double>(stats.cores);
    r.reals = static_cast<double>(stats.reals);
    r.tides = static_cast<double>(stats.tides);
    r.nmi_core = nmi(extract_partition(detection, Level::Core), reference_.core);
    r.nmi_real = nmi(extract_partition(detection, Level::Real), reference_.real);
    return r;
  }

  static void summarize(SweepRow& row) {
    auto column = [&](double RunRecord::*field) {
      std::vector<double> values;
      values.reserve(row.runs.size());
      for (const auto& run : row.runs) values.push_back(run.*field);
      return mean_std(values);
    };
    row.cores = column(&RunRecord::cores);
    row.reals = column(&RunRecord::reals);
    row.tides = column(&RunRecord::tides);
    row.nmi_core = column(&RunRecord::nmi_core);
    row.nmi_real = column(&RunRecord::nmi_real);
  }

  const ExperimentConfig& cfg_;
  SimilarityMatrix s_;
  Reference reference_;
};

std::string kind_name(RandomKind kind) { return kind == RandomKind::Psim ? "psim" : "p"; }

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.repetitions == 0) throw ConfigError("repetitions must be at least 1");
  auto check_unit = [](const std::vector<double>& grid, const char* what) {
    for (double v : grid) {
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " grid value " + std::to_string(v) + " outside [0, 1]");
    }
  };
  check_unit(cfg.probabilities, "probability");
  check_unit(cfg.deletion_grid, "deletion");
  for (auto t : cfg.topn_grid) {
    if (t == 0) throw ConfigError("topn grid values must be positive");
  }
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

SweepResult run_probability_sweep(const CitationMatrix& m, const ExperimentConfig& cfg) {
  if (cfg.probabilities.empty()) throw ConfigError("probability grid is empty");
  if (cfg.kinds.empty()) throw ConfigError("no randomized strategy selected");
  SweepContext ctx(m, cfg);
  std::vector<SweepRow> rows;
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < cfg.probabilities.size(); ++g) {
    for (RandomKind kind : cfg.kinds) {
      const std::size_t row = rows.size();
      rows.push_back({cfg.probabilities[g], kind_name(kind), {}, {}, {}, {}, {}, {}});
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        jobs.push_back({row, strategy::Mixed{cfg.probabilities[g], kind}, sweep_seed(cfg.base_seed, g, r)});
      }
    }
  }
  return ctx.run("prob", "p", std::move(rows), jobs);
}

SweepResult run_topn_sweep(const CitationMatrix& m, const ExperimentConfig& cfg) {
  if (cfg.topn_grid.empty()) throw ConfigError("topn grid is empty");
  if (m.size() < 2) throw ConfigError("topn sweep needs at least two nodes");
  SweepContext ctx(m, cfg);
  const std::size_t limit = m.size() - 1;
  std::vector<std::string> warnings;
  std::vector<SweepRow> rows;
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < cfg.topn_grid.size(); ++g) {
    std::size_t topn = cfg.topn_grid[g];
    if (topn > limit) {
      warnings.push_back("topn " + std::to_string(topn) + " exceeds N-1; clamped to " + std::to_string(limit));
      topn = limit;
    }
    const std::size_t row = rows.size();
    rows.push_back({static_cast<double>(topn), "psim", {}, {}, {}, {}, {}, {}});
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      jobs.push_back({row, strategy::PsimTopN{topn}, sweep_seed(cfg.base_seed, g, r)});
    }
  }
  auto result = ctx.run("topn", "topn", std::move(rows), jobs);
  result.warnings = std::move(warnings);
  return result;
}

SweepResult run_deletion_sweep(const CitationMatrix& m, const ExperimentConfig& cfg) {
  if (cfg.deletion_grid.empty()) throw ConfigError("deletion grid is empty");
  SweepContext ctx(m, cfg);
  std::vector<SweepRow> rows;
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < cfg.deletion_grid.size(); ++g) {
    const std::size_t row = rows.size();
    rows.push_back({cfg.deletion_grid[g], "max", {}, {}, {}, {}, {}, {}});
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      jobs.push_back({row, strategy::MaxDeleted{cfg.deletion_grid[g]}, sweep_seed(cfg.base_seed, g, r)});
    }
  }
  return ctx.run("del", "d", std::move(rows), jobs);
}

std::vector<double> parse_grid(const std::string& text) {
  auto snap = [](double v) { return std::round(v * 1e9) / 1e9; };
  auto number = [&](std::string_view token) {
    auto v = detail::parse_number<double>(token);
    if (!v || !std::isfinite(*v)) throw ConfigError("bad grid value '" + std::string(token) + "'");
    return *v;
  };
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw ConfigError("range grid must be start:step:stop, got '" + text + "'");
    const double start = number(parts[0]), step = number(parts[1]), stop = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("range grid '" + text + "' needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) values.push_back(snap(start + static_cast<double>(k) * step));
  } else {
    for (auto token : detail::split(text, ',')) {
      if (detail::trim(token).empty()) continue;
      values.push_back(snap(number(token)));
    }
  }
  if (values.empty()) throw ConfigError("empty grid '" + text + "'");
  return values;
}

}  // namespace simpairs
