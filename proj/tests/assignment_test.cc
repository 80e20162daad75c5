// Copyright 2026 The FSIG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fsig/assignment.h"
#include "fsig/error.h"
#include "fsig/rng.h"
#include "oracles.h"

namespace fsig {
namespace {

RateMatrix RandomMatrix(int n, int k, Rng& rng) {
  RateMatrix m(n, std::vector<double>(k));
  for (auto& row : m) {
    for (auto& x : row) x = rng.Uniform(0.0, 10.0);
  }
  return m;
}

std::vector<std::vector<int>> RandomAdjacency(int n, int k, double p, Rng& rng) {
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u) {
    for (int c = 0; c < k; ++c) {
      if (rng.UniformOpen01() < p) adj[u].push_back(c);
    }
  }
  return adj;
}

int CeilTwoLn(int n) { return static_cast<int>(std::ceil(2.0 * std::log(n))); }

TEST_CASE("Hungarian on small hand-checked matrices") {
  const AssignmentResult a = OptimalPermutation({{3, 1}, {2, 4}});
  CHECK(a.assignment == std::vector<ChannelIndex>{0, 1});
  CHECK(a.value == 7.0);

  const AssignmentResult b = OptimalPermutation({{1, 5}, {4, 1}});
  CHECK(b.assignment == std::vector<ChannelIndex>{1, 0});
  CHECK(b.value == 9.0);

  const AssignmentResult c = OptimalPermutation({{7, 1, 2}, {6, 8, 1}, {5, 9, 3}});
  CHECK(c.value == 18.0);
  CHECK(c.assignment == std::vector<ChannelIndex>{0, 1, 2});
}

TEST_CASE("Hungarian matches brute force on random 7x7 matrices") {
  Rng rng(99, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const RateMatrix m = RandomMatrix(7, 7, rng);
    const AssignmentResult result = OptimalPermutation(m);
    CHECK(result.value == doctest::Approx(oracle::BruteForceAssignment(m)).epsilon(1e-12));
    double recomputed = 0.0;
    for (int u = 0; u < 7; ++u) recomputed += m[u][result.assignment[u]];
    CHECK(recomputed == result.value);
  }
}

TEST_CASE("Hungarian returns a permutation that beats random ones") {
  Rng rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RateMatrix m = RandomMatrix(12, 12, rng);
    const AssignmentResult result = OptimalPermutation(m);
    std::vector<int> sorted = result.assignment;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 12; ++i) CHECK(sorted[i] == i);
    std::vector<int> perm(12);
    for (int i = 0; i < 12; ++i) perm[i] = i;
    for (int shuffle = 0; shuffle < 50; ++shuffle) {
      for (int i = 11; i > 0; --i) {
        std::swap(perm[i], perm[rng.UniformInt(i + 1)]);
      }
      double value = 0.0;
      for (int u = 0; u < 12; ++u) value += m[u][perm[u]];
      CHECK(value <= result.value + 1e-9);
    }
  }
}

TEST_CASE("Hungarian on rectangular matrices uses distinct channels") {
  Rng rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RateMatrix m = RandomMatrix(4, 6, rng);
    const AssignmentResult result = OptimalPermutation(m);
    std::vector<int> used = result.assignment;
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
    // Brute force over injective maps via 6x6 padding with zero rows.
    RateMatrix padded = m;
    padded.resize(6, std::vector<double>(6, 0.0));
    CHECK(result.value == doctest::Approx(oracle::BruteForceAssignment(padded)).epsilon(1e-12));
  }
}

TEST_CASE("Hungarian rejects malformed input") {
  CHECK_THROWS_AS(OptimalPermutation({{1, 2}, {3}}), Error);
  CHECK_THROWS_AS(OptimalPermutation({{1}, {2}}), Error);  // N > K
  CHECK_THROWS_AS(OptimalPermutation({{1, std::nan("")}, {3, 4}}), Error);
  CHECK_THROWS_AS(OptimalPermutation({{1, INFINITY}, {3, 4}}), Error);
}

TEST_CASE("interference-free rate matrix") {
  const auto r = ChannelRealization::Generate(3, 4, 5);
  PowerProfile p = PowerProfile::Uniform(3, 100.0);
  p.RandomizeWeights(0.5, 2.0, 5);
  const RateMatrix m = InterferenceFreeRateMatrix(r, p);
  REQUIRE(m.size() == 3);
  for (int n = 0; n < 3; ++n) {
    REQUIRE(m[n].size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(m[n][k] == doctest::Approx(p.weights[n] *
                                       std::log(1.0 + 100.0 * r.OwnGain(n, k)) /
                                       std::log(2.0))
                           .epsilon(1e-12));
    }
  }
}

TEST_CASE("maximum matching on structured graphs") {
  std::vector<std::vector<int>> complete(5, {0, 1, 2, 3, 4});
  CHECK(MaximumMatching(PreferenceGraph::FromAdjacency(5, complete)).size == 5);

  std::vector<std::vector<int>> star(5, {2});
  const Matching m = MaximumMatching(PreferenceGraph::FromAdjacency(5, star));
  CHECK(m.size == 1);
  CHECK(std::count(m.user_to_channel.begin(), m.user_to_channel.end(), -1) == 4);

  std::vector<std::vector<int>> isolated{{0}, {}, {1}};
  CHECK(MaximumMatching(PreferenceGraph::FromAdjacency(2, isolated)).size == 2);

  CHECK_THROWS_AS(PreferenceGraph::FromAdjacency(2, {{0, 2}}), Error);
}

TEST_CASE("maximum matching agrees with augmenting paths") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = ChannelRealization::Generate(30, 30, seed);
    const OrderedChannels ordered(r);
    const PreferenceGraph graph = PreferenceGraph::FromBestSets(ordered, 8);
    const Matching m = MaximumMatching(graph);
    CHECK(m.size == oracle::AugmentingPathMatchingSize(30, graph.adjacency));
    std::vector<int> used;
    for (int u = 0; u < 30; ++u) {
      const int c = m.user_to_channel[u];
      if (c < 0) continue;
      CHECK(std::binary_search(graph.adjacency[u].begin(), graph.adjacency[u].end(), c));
      used.push_back(c);
    }
    CHECK(static_cast<int>(used.size()) == m.size);
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
  }
  Rng rng(4, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto adj = RandomAdjacency(9, 7, 0.2, rng);
    CHECK(MaximumMatching(PreferenceGraph::FromAdjacency(7, adj)).size ==
          oracle::AugmentingPathMatchingSize(7, adj));
  }
}

TEST_CASE("perfect matching count") {
  std::vector<std::vector<int>> complete(4, {0, 1, 2, 3});
  CHECK(CountPerfectMatchings(PreferenceGraph::FromAdjacency(4, complete)) == 24);
  std::vector<std::vector<int>> identity{{0}, {1}, {2}, {3}};
  CHECK(CountPerfectMatchings(PreferenceGraph::FromAdjacency(4, identity)) == 1);
  std::vector<std::vector<int>> none{{0}, {0}, {2}};
  CHECK(CountPerfectMatchings(PreferenceGraph::FromAdjacency(3, none)) == 0);
  std::vector<std::vector<int>> big(13, {0});
  CHECK_THROWS_AS(CountPerfectMatchings(PreferenceGraph::FromAdjacency(13, big)), Error);
  CHECK_THROWS_AS(CountPerfectMatchings(PreferenceGraph::FromAdjacency(4, identity)) +
                      CountPerfectMatchings(PreferenceGraph::FromAdjacency(5, identity)),
                  Error);
  std::vector<std::vector<int>> full12(12);
  for (auto& row : full12) {
    for (int c = 0; c < 12; ++c) row.push_back(c);
  }
  CHECK(CountPerfectMatchings(PreferenceGraph::FromAdjacency(12, full12)) ==
        oracle::Factorial(12));
}

TEST_CASE("perfect matching count agrees with brute force and matching size") {
  Rng rng(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(6));
    const auto adj = RandomAdjacency(n, n, 0.5, rng);
    const auto graph = PreferenceGraph::FromAdjacency(n, adj);
    const std::uint64_t count = CountPerfectMatchings(graph);
    CHECK(count == oracle::BruteForcePerfectMatchings(n, adj));
    CHECK((count > 0) == (MaximumMatching(graph).size == n));
  }
}

TEST_CASE("M-regular best-set graphs with a perfect matching have at least M! of them") {
  for (int n = 3; n <= 8; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = ChannelRealization::Generate(n, n, seed * 100 + n * 10 + m);
        const auto graph = PreferenceGraph::FromBestSets(OrderedChannels(r), m);
        const std::uint64_t count = CountPerfectMatchings(graph);
        if (count > 0) CHECK(count >= oracle::Factorial(m));
      }
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = ChannelRealization::Generate(6, 6, seed);
    const auto graph = PreferenceGraph::FromBestSets(OrderedChannels(r), 3);
    if (MaximumMatching(graph).size == 6) CHECK(CountPerfectMatchings(graph) >= 6);
  }
}

TEST_CASE("best-set graphs with M = ceil(2 ln N) usually have perfect matchings") {
  for (int n : {20, 50, 100}) {
    int perfect = 0;
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
      const auto r = ChannelRealization::Generate(n, n, DeriveSeed(n, trial));
      const auto graph = PreferenceGraph::FromBestSets(OrderedChannels(r), CeilTwoLn(n));
      perfect += MaximumMatching(graph).size == n;
    }
    CHECK(perfect >= trials * 0.8);
  }
}

}  // namespace
}  // namespace fsig
