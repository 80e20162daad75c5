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

#ifndef FSIG_ASSIGNMENT_H_
#define FSIG_ASSIGNMENT_H_

#include <cstdint>
#include <vector>

#include "fsig/channel_model.h"

namespace fsig {

using RateMatrix = std::vector<std::vector<double>>;

struct AssignmentResult {
  // assignment[n] is the channel given to user n; injective.
  std::vector<ChannelIndex> assignment;
  // sum_n rates[n][assignment[n]], accumulated in user order.
  double value = 0.0;
};

// r[n][k] = w_n log2(1 + P_n |h_{n,k}|^2 / N0): rates with every user alone
// on its channel.
RateMatrix InterferenceFreeRateMatrix(const ChannelRealization& realization,
                                      const PowerProfile& powers);

// Maximum-weight injective assignment of N rows into K >= N columns
// (Hungarian method with potentials, O(N^2 K)). Throws kInvalidInput on
// ragged, non-finite or wide (N > K) input.
AssignmentResult OptimalPermutation(const RateMatrix& rates);

// Bipartite graph between users and channels.
struct PreferenceGraph {
  int n_users = 0;
  int n_channels = 0;
  std::vector<std::vector<ChannelIndex>> adjacency;  // sorted per user

  // User n is adjacent to exactly the channels of its M-best set.
  static PreferenceGraph FromBestSets(const OrderedChannels& ordered, int m);
  static PreferenceGraph FromAdjacency(
      int n_channels, std::vector<std::vector<ChannelIndex>> adjacency);
};

struct Matching {
  int size = 0;
  std::vector<ChannelIndex> user_to_channel;  // -1 when unmatched
};

// Maximum-cardinality matching (Hopcroft-Karp, O(E sqrt(V))).
Matching MaximumMatching(const PreferenceGraph& graph);

inline constexpr int kMaxPermanentSize = 12;

// Exact number of perfect matchings, i.e. the permanent of the biadjacency
// matrix (Ryser's formula over Gray-code subsets, O(2^N N)). Requires a
// square graph with N <= 12; throws kInvalidInput otherwise.
std::uint64_t CountPerfectMatchings(const PreferenceGraph& graph);

}  // namespace fsig

#endif  // FSIG_ASSIGNMENT_H_
