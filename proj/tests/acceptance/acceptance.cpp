// Acceptance suite: one PASS/FAIL line per criterion, each under its own
// time budget. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "simpairs/community.hpp"
#include "simpairs/experiment.hpp"
#include "simpairs/metrics.hpp"
#include "simpairs/selection.hpp"
#include "simpairs/serialize.hpp"
#include "simpairs/similarity.hpp"
#include "simpairs/synthetic.hpp"

using namespace simpairs;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_ms;
  std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 4) { return format_fixed(v, digits); }

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = mean_std(rx).mean, my = mean_std(ry).mean;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// P(Binomial(n, 1/2) >= wins).
double sign_test_p(std::size_t wins, std::size_t n) {
  double p = 0;
  for (std::size_t k = wins; k <= n; ++k) {
    p += std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1) -
                  double(n) * std::log(2.0));
  }
  return p;
}

// Default planted synthetic: 4 blocks of 25, in/cross rate 10:1, 50,000 citations.
const CitationMatrix& default_synthetic() {
  static const auto m = generate_planted_citation_matrix(SyntheticSpec{}).matrix;
  return m;
}

ExperimentConfig sweep_setup() {
  ExperimentConfig cfg;
  cfg.repetitions = 20;
  cfg.base_seed = 0;
  cfg.probabilities = parse_grid("0:0.1:1");
  cfg.deletion_grid = parse_grid("0:0.1:0.9");
  return cfg;
}

Outcome worked_example_golden() {
  std::istringstream in(
      "2\t3\t0.4988\n3\t2\t0.4988\n5\t10\t0.3311\n10\t5\t0.3311\n1\t2\t0.2211\n"
      "6\t9\t0.2209\n9\t5\t0.2109\n8\t10\t0.1667\n4\t8\t0.1521\n7\t1\t0.1456\n");
  const auto input = read_pairs_tsv(in, IdMode::Label);
  const auto r = build_communities(input.pairs, input.n_nodes);
  const auto j = to_json(r, input.labels);
  const bool ok = j["cores"] == nlohmann::json::parse(R"([["2","3","1","7"],["5","10","8","4"],["6","9"]])") &&
                  j["reals"] == nlohmann::json::parse(R"([["2","3","1","7"],["5","10","8","4","6","9"]])") &&
                  j["tides"].size() == 1 && j["tides"][0]["selector"] == "9" && j["tides"][0]["selected"] == "5" &&
                  j["unassigned"].empty();
  return {ok, "cores " + j["cores"].dump() + " tides " + std::to_string(j["tides"].size()) + " reals " + j["reals"].dump()};
}

Outcome oracle_equivalence() {
  Rng rng(20260101);
  std::size_t mismatches = 0;
  const int instances = 1000;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const auto pairs = oracle::random_pairs(rng, n, rng.below(2 * n + 1));
    const auto got = build_communities(pairs, n);
    const auto want = oracle::naive_build(pairs, n);
    bool same = got.cores.size() == want.cores.size() && got.reals.size() == want.reals.size() &&
                got.tides.size() == want.tides.size() && got.unassigned == want.unassigned;
    for (std::size_t c = 0; same && c < got.cores.size(); ++c) same = got.cores[c].members == want.cores[c];
    for (std::size_t k = 0; same && k < got.reals.size(); ++k) {
      same = got.reals[k].members == want.reals[k] && got.reals[k].core_ids == want.real_cores[k];
    }
    for (std::size_t k = 0; same && k < got.tides.size(); ++k) {
      same = got.tides[k].core_a == want.tides[k].core_a && got.tides[k].core_b == want.tides[k].core_b &&
             got.tides[k].merged == want.tides[k].merged;
    }
    mismatches += same ? 0 : 1;
  }
  return {mismatches == 0, std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

Outcome similarity_suite() {
  Rng rng(7777);
  double worst_oracle = 0, worst_symmetry = 0, worst_scale = 0, max_value = 0, min_value = 1;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(31);
    auto counts = oracle::random_counts(rng, n, 0.05 + 0.6 * rng.uniform01(), 500);
    const auto s = build_similarity_matrix(CitationMatrix::from_dense(n, counts));
    const auto expected = oracle::dense_similarity(n, counts);

    const std::size_t row = rng.below(n);
    const Count factor = 2 + rng.below(50);
    for (std::size_t k = 0; k < n; ++k) counts[row * n + k] *= factor;
    const auto scaled = build_similarity_matrix(CitationMatrix::from_dense(n, counts));

    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        worst_oracle = std::max(worst_oracle, std::abs(s(i, j) - expected[i * n + j]));
        worst_symmetry = std::max(worst_symmetry, std::abs(s(i, j) - s(j, i)));
        worst_scale = std::max(worst_scale, std::abs(s(i, j) - scaled(i, j)));
        max_value = std::max(max_value, s(i, j));
        min_value = std::min(min_value, s(i, j));
      }
    }
  }
  const double tol = 1e-12;
  const bool ok = worst_oracle <= tol && worst_symmetry <= tol && worst_scale <= tol && min_value >= 0.0 &&
                  max_value <= 1.0 + tol;
  std::ostringstream d;
  d << "max |S-oracle| " << worst_oracle << ", max asymmetry " << worst_symmetry << ", max scale drift " << worst_scale
    << ", range [" << min_value << ", " << max_value << "]";
  return {ok, d.str()};
}

Outcome psim_fidelity() {
  const std::size_t n = 5;
  // Fixed symmetric 5-node similarity matrix.
  const double upper[5][5] = {{0, 0.10, 0.30, 0.45, 0.15},
                              {0, 0, 0.20, 0.05, 0.60},
                              {0, 0, 0, 0.35, 0.25},
                              {0, 0, 0, 0, 0.50},
                              {0, 0, 0, 0, 0}};
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) v[i * n + j] = v[j * n + i] = upper[i][j];
  }
  const auto s = SimilarityMatrix::from_dense(n, v);
  std::vector<double> freq(n * n, 0.0);
  const int draws = 10'000;
  for (int seed = 0; seed < draws; ++seed) {
    for (const auto& p : select_psim(s, static_cast<RngSeed>(seed))) freq[p.selector * n + p.selected] += 1.0;
  }
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0;
    for (std::size_t k = 0; k < n; ++k) mass += k == i ? 0 : v[i * n + k];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      worst = std::max(worst, std::abs(freq[i * n + j] / draws - v[i * n + j] / mass));
    }
  }
  return {worst <= 0.02, "max |freq - p_ij| = " + fmt(worst) + " over " + std::to_string(draws) + " draws"};
}

Outcome nmi_suite() {
  Rng rng(31337);
  bool identity = true, symmetry = true, range = true, relabel = true, base = true;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(80);
    std::vector<CommunityId> xl(n), yl(n);
    const auto kx = 1 + rng.below(10), ky = 1 + rng.below(10);
    for (auto& l : xl) l = static_cast<CommunityId>(rng.below(kx));
    for (auto& l : yl) l = static_cast<CommunityId>(rng.below(ky));
    const auto x = Partition::from_labels(xl), y = Partition::from_labels(yl);
    const double v = nmi(x, y);
    if (entropy(x) > 0) identity &= nmi(x, x) == 1.0;
    symmetry &= v == nmi(y, x);
    range &= v >= 0.0 && v <= 1.0 + 1e-12;
    std::vector<CommunityId> perm(x.labels);
    const auto k = static_cast<CommunityId>(x.community_count());
    for (auto& l : perm) l = (k - 1 - l) * 3 + 11;
    relabel &= std::abs(nmi(Partition{perm, Level::Core}, y) - v) <= 1e-12;
    base &= std::abs(nmi(x, y, std::exp(1.0)) - v) <= 1e-12;
  }
  const double refinement = nmi(Partition::from_labels({0, 1, 2, 2}), Partition::from_labels({0, 0, 1, 1}));
  const bool refine_ok = std::abs(refinement - 0.8) <= 1e-12;
  std::ostringstream d;
  d << "identity " << identity << " symmetry " << symmetry << " range " << range << " relabel " << relabel
    << " log-base " << base << " refinement " << fmt(refinement, 12);
  return {identity && symmetry && range && relabel && base && refine_ok, d.str()};
}

Outcome mixture_boundaries() {
  Rng rng(99);
  int checked = 0, failures = 0;
  auto bytes = [](const RankedPairList& pairs) {
    std::ostringstream out;
    write_pairs_tsv(out, pairs);
    return out.str();
  };
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + rng.below(40);
    const auto s = build_similarity_matrix(CitationMatrix::from_dense(n, oracle::random_counts(rng, n, 0.4, 20)));
    const RngSeed seed = rng.next();
    const auto max = select_max(s);
    const std::pair<RankedPairList, RankedPairList> cases[] = {
        {select_mixed(s, 0.0, RandomKind::Psim, seed), max},
        {select_mixed(s, 0.0, RandomKind::Uniform, seed), max},
        {select_mixed(s, 1.0, RandomKind::Psim, seed), select_psim(s, seed)},
        {select_mixed(s, 1.0, RandomKind::Uniform, seed), select_random(s, seed)},
    };
    for (const auto& [got, want] : cases) {
      ++checked;
      failures += (got == want && bytes(got) == bytes(want)) ? 0 : 1;
    }
  }
  return {failures == 0, std::to_string(checked) + " boundary comparisons, " + std::to_string(failures) + " differ"};
}

Outcome mixture_count_trend() {
  auto cfg = sweep_setup();
  cfg.kinds = {RandomKind::Uniform};
  const auto r = run_probability_sweep(default_synthetic(), cfg);
  std::vector<double> p, cores, reals;
  for (const auto& row : r.rows) {
    p.push_back(row.value);
    cores.push_back(row.cores.mean);
    reals.push_back(row.reals.mean);
  }
  const double rho_cores = spearman(p, cores), rho_reals = spearman(p, reals);
  std::ostringstream d;
  d << "spearman(cores, p) " << fmt(rho_cores) << ", spearman(reals, p) " << fmt(rho_reals) << "; mean cores "
    << fmt(cores.front(), 2) << " -> " << fmt(cores.back(), 2) << ", mean reals " << fmt(reals.front(), 2) << " -> "
    << fmt(reals.back(), 2);
  return {rho_cores >= 0.9 && rho_reals <= -0.9, d.str()};
}

Outcome psim_beats_uniform() {
  auto cfg = sweep_setup();
  cfg.probabilities = {1.0};
  const auto r = run_probability_sweep(default_synthetic(), cfg);
  const SweepRow* psim = nullptr;
  const SweepRow* unif = nullptr;
  for (const auto& row : r.rows) (row.kind == "psim" ? psim : unif) = &row;
  std::size_t wins = 0, losses = 0;
  for (std::size_t k = 0; k < psim->runs.size(); ++k) {
    if (psim->runs[k].seed != unif->runs[k].seed) return {false, "runs are not paired by seed"};
    const double a = psim->runs[k].nmi_real, b = unif->runs[k].nmi_real;
    wins += a > b ? 1 : 0;
    losses += a < b ? 1 : 0;
  }
  const double p_value = sign_test_p(wins, wins + losses);
  std::ostringstream d;
  d << "mean NMI(real) psim " << fmt(psim->nmi_real.mean) << " vs p " << fmt(unif->nmi_real.mean) << "; wins " << wins
    << "/" << wins + losses << ", sign-test p " << fmt(p_value);
  return {psim->nmi_real.mean >= unif->nmi_real.mean && p_value <= 0.05, d.str()};
}

Outcome deletion_core_over_real() {
  const auto r = run_deletion_sweep(default_synthetic(), sweep_setup());
  bool ordered = true;
  std::ostringstream d;
  for (const auto& row : r.rows) ordered &= row.nmi_core.mean >= row.nmi_real.mean;
  const auto& last = r.rows.back();
  d << "core>=real at all " << r.rows.size() << " d: " << (ordered ? "yes" : "no") << "; d=" << fmt(last.value, 1)
    << " NMI core " << fmt(last.nmi_core.mean) << " real " << fmt(last.nmi_real.mean);
  return {ordered && last.value == 0.9 && last.nmi_core.mean >= 0.5, d.str()};
}

Outcome planted_recovery() {
  double total = 0, worst = 1, two_level = 0;
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    SyntheticSpec spec;
    spec.seed = static_cast<RngSeed>(seed);
    const auto planted = generate_planted_citation_matrix(spec);
    const auto s = build_similarity_matrix(planted.matrix);
    const auto first = extract_partition(build_communities(select_max(s), s.size()), Level::Real);
    const double v = nmi(first, planted.truth);
    total += v;
    worst = std::min(worst, v);

    // Diagnostic only: one renormalized second pass.
    const auto coarse = renormalize(planted.matrix, first);
    const auto cs = build_similarity_matrix(coarse);
    const auto second = extract_partition(build_communities(select_max(cs), cs.size()), Level::Real);
    std::vector<CommunityId> lifted(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) lifted[i] = second.labels[first.labels[i]];
    two_level += nmi(Partition::from_labels(lifted), planted.truth);
  }
  const double mean = total / seeds;
  std::ostringstream d;
  d << "mean NMI(real) vs planted " << fmt(mean) << " (min " << fmt(worst) << ") over " << seeds
    << " seeds; after one renormalized pass " << fmt(two_level / seeds) << " [diagnostic]";
  return {mean >= 0.9, d.str()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "simpairs_acceptance_determinism";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, unsigned threads) {
    auto cfg = sweep_setup();
    cfg.threads = threads;
    const auto r = run_probability_sweep(default_synthetic(), cfg);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    write_sweep_csv(out, r);
    return path;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto a = slurp(write("sweep_serial_1.csv", 1));
  const auto b = slurp(write("sweep_serial_2.csv", 1));
  const auto c = slurp(write("sweep_parallel.csv", 4));
  fs::remove_all(dir);
  return {!a.empty() && a == b && a == c,
          std::to_string(a.size()) + " bytes; serial rerun " + (a == b ? "identical" : "differs") + ", 4 threads " +
              (a == c ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"worked-example-golden", 1, worked_example_golden},
      {"builder-oracle-equivalence", 5'000, oracle_equivalence},
      {"similarity-suite", 5'000, similarity_suite},
      {"psim-frequency-fidelity", 2'000, psim_fidelity},
      {"nmi-suite", 1'000, nmi_suite},
      {"mixture-boundaries", 1'000, mixture_boundaries},
      {"mixture-count-trend", 60'000, mixture_count_trend},
      {"psim-beats-uniform", 60'000, psim_beats_uniform},
      {"deletion-core-over-real", 60'000, deletion_core_over_real},
      {"planted-recovery", 30'000, planted_recovery},
      {"sweep-determinism", 60'000, determinism},
  };

  std::size_t failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.budget_ms;
    const bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.name << "  (" << format_fixed(ms, 2) << " ms, budget "
              << format_shortest(c.budget_ms) << " ms" << (in_time ? "" : ", OVER BUDGET") << ")  " << outcome.detail
              << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
