#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "simpairs/community.hpp"
#include "simpairs/errors.hpp"
#include "simpairs/metrics.hpp"
#include "simpairs/synthetic.hpp"

using namespace simpairs;

namespace {

Partition max_real_partition(const CitationMatrix& m) {
  const auto s = build_similarity_matrix(m);
  return extract_partition(build_communities(select_max(s), s.size()), Level::Real);
}

}  // namespace

TEST_CASE("default spec: volume, layout and determinism") {
  SyntheticSpec spec;
  spec.seed = 5;
  const auto a = generate_planted_citation_matrix(spec);
  CHECK(a.matrix.size() == 100);
  CHECK(a.matrix.total() == 50'000);
  CHECK(a.truth.community_count() == 4);
  CHECK(a.truth.labels[0] == 0);
  CHECK(a.truth.labels[99] == 3);
  CHECK(generate_planted_citation_matrix(spec).matrix == a.matrix);
  spec.seed = 6;
  CHECK_FALSE(generate_planted_citation_matrix(spec).matrix == a.matrix);
}

TEST_CASE("in-block cells receive more citations than cross-block cells") {
  const auto planted = generate_planted_citation_matrix({});
  Count inside = 0, across = 0;
  for (const auto& e : planted.matrix.entries()) {
    (planted.truth.labels[e.row] == planted.truth.labels[e.col] ? inside : across) += e.count;
  }
  // Expected share inside: 4*25*25*10 / (4*25*25*10 + 100*75*1) = 25000 / 32500
  CHECK(static_cast<double>(inside) / 50'000.0 == doctest::Approx(25'000.0 / 32'500.0).epsilon(0.02));
}

TEST_CASE("degenerate specs are config errors") {
  SyntheticSpec spec;
  spec.volume = 0;
  CHECK_THROWS_AS(generate_planted_citation_matrix(spec), ConfigError);
  spec = {};
  spec.block_sizes.clear();
  CHECK_THROWS_AS(generate_planted_citation_matrix(spec), ConfigError);
  spec = {};
  spec.cross_block_rate = -1;
  CHECK_THROWS_AS(generate_planted_citation_matrix(spec), ConfigError);
  spec = {};
  spec.in_block_rate = spec.cross_block_rate = 0;
  CHECK_THROWS_AS(generate_planted_citation_matrix(spec), ConfigError);
}

TEST_CASE("separated blocks never share a real community") {
  SyntheticSpec spec;
  spec.cross_block_rate = 0.0;
  for (RngSeed seed = 0; seed < 5; ++seed) {
    spec.seed = seed;
    const auto planted = generate_planted_citation_matrix(spec);
    const auto real = max_real_partition(planted.matrix);
    // real refines truth: joint entropy equals the real partition's entropy
    CHECK(std::abs(joint_entropy(real, planted.truth) - entropy(real)) <= 1e-12);
  }
}

TEST_CASE("equal rates carry no planted signal") {
  // With no planted signal, agreement with the truth is indistinguishable
  // from agreement with a shuffled truth (NMI's own small-sample bias).
  SyntheticSpec spec;
  spec.block_sizes = {100, 100, 100, 100};
  spec.in_block_rate = spec.cross_block_rate = 1.0;
  spec.volume = 200'000;
  std::mt19937_64 shuffler(3);
  double observed = 0, null_level = 0;
  for (RngSeed seed = 0; seed < 3; ++seed) {
    spec.seed = seed;
    const auto planted = generate_planted_citation_matrix(spec);
    const auto real = max_real_partition(planted.matrix);
    observed += nmi(real, planted.truth) / 3;
    for (int k = 0; k < 10; ++k) {
      auto labels = planted.truth.labels;
      std::shuffle(labels.begin(), labels.end(), shuffler);
      null_level += nmi(real, Partition{labels, Level::Real}) / 30;
    }
  }
  CHECK(std::abs(observed - null_level) <= 0.02);
  CHECK(observed <= 0.15);
}
