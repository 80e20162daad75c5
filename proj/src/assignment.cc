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

#include "fsig/assignment.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "fsig/error.h"
#include "fsig/game.h"

namespace fsig {

RateMatrix InterferenceFreeRateMatrix(const ChannelRealization& realization,
                                      const PowerProfile& powers) {
  RateMatrix rates(realization.n_users(),
                   std::vector<double>(realization.n_channels()));
  for (int n = 0; n < realization.n_users(); ++n) {
    for (int k = 0; k < realization.n_channels(); ++k) {
      rates[n][k] =
          powers.weights[n] * NaiveRate(realization, powers, n, k, 0.0);
    }
  }
  return rates;
}

AssignmentResult OptimalPermutation(const RateMatrix& rates) {
  const int rows = static_cast<int>(rates.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(rates.front().size());
  if (rows > cols) {
    Fail(ErrorCode::kInvalidInput,
         "assignment needs N <= K, got " + std::to_string(rows) + "x" +
             std::to_string(cols));
  }
  double offset = -std::numeric_limits<double>::infinity();
  for (const auto& row : rates) {
    if (static_cast<int>(row.size()) != cols) {
      Fail(ErrorCode::kInvalidInput, "rate matrix rows differ in length");
    }
    for (double r : row) {
      if (!std::isfinite(r)) {
        Fail(ErrorCode::kInvalidInput, "rate matrix has a non-finite entry");
      }
      offset = std::max(offset, r);
    }
  }

  // Maximization as minimization of cost = offset - r >= 0. Arrays are
  // 1-based with row/column 0 as the virtual source.
  auto cost = [&](int i, int j) { return offset - rates[i - 1][j - 1]; };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> match_col(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    match_col[0] = i;
    int j0 = 0;
    std::vector<double> min_v(cols + 1, inf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match_col[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0, j) - u[i0] - v[j];
        if (reduced < min_v[j]) {
          min_v[j] = reduced;
          way[j] = j0;
        }
        if (min_v[j] < delta) {
          delta = min_v[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_v[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const int j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentResult result;
  result.assignment.assign(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (match_col[j] != 0) result.assignment[match_col[j] - 1] = j - 1;
  }
  for (int n = 0; n < rows; ++n) result.value += rates[n][result.assignment[n]];
  return result;
}

PreferenceGraph PreferenceGraph::FromBestSets(const OrderedChannels& ordered,
                                              int m) {
  PreferenceGraph graph;
  graph.n_users = ordered.n_users();
  graph.n_channels = ordered.n_channels();
  graph.adjacency.reserve(graph.n_users);
  for (int n = 0; n < graph.n_users; ++n) {
    graph.adjacency.push_back(BestMSet(ordered, n, m));
  }
  return graph;
}

PreferenceGraph PreferenceGraph::FromAdjacency(
    int n_channels, std::vector<std::vector<ChannelIndex>> adjacency) {
  PreferenceGraph graph;
  graph.n_users = static_cast<int>(adjacency.size());
  graph.n_channels = n_channels;
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (ChannelIndex k : row) {
      if (k < 0 || k >= n_channels) {
        Fail(ErrorCode::kInvalidInput, "adjacency refers to a missing channel");
      }
    }
  }
  graph.adjacency = std::move(adjacency);
  return graph;
}

Matching MaximumMatching(const PreferenceGraph& graph) {
  const int n_users = graph.n_users;
  const int n_channels = graph.n_channels;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> user_match(n_users, -1), channel_match(n_channels, -1);
  std::vector<int> dist(n_users);

  auto bfs = [&]() {
    std::queue<int> frontier;
    for (int n = 0; n < n_users; ++n) {
      if (user_match[n] == -1) {
        dist[n] = 0;
        frontier.push(n);
      } else {
        dist[n] = kInf;
      }
    }
    bool reachable_free = false;
    while (!frontier.empty()) {
      const int n = frontier.front();
      frontier.pop();
      for (ChannelIndex k : graph.adjacency[n]) {
        const int next = channel_match[k];
        if (next == -1) {
          reachable_free = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[n] + 1;
          frontier.push(next);
        }
      }
    }
    return reachable_free;
  };

  // Layered DFS; iterative to stay safe on long augmenting paths.
  std::vector<std::size_t> cursor(n_users);
  auto augment = [&](int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int n = stack.back();
      bool advanced = false;
      while (cursor[n] < graph.adjacency[n].size()) {
        const ChannelIndex k = graph.adjacency[n][cursor[n]];
        const int next = channel_match[k];
        if (next == -1) {
          // Flip the path recorded on the stack.
          ChannelIndex carry = k;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const ChannelIndex previous = user_match[*it];
            user_match[*it] = carry;
            channel_match[carry] = *it;
            carry = previous;
          }
          return true;
        }
        ++cursor[n];
        if (dist[next] == dist[n] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[n] = kInf;
        stack.pop_back();
      }
    }
    return false;
  };

  Matching result;
  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int n = 0; n < n_users; ++n) {
      if (user_match[n] == -1 && augment(n)) ++result.size;
    }
  }
  result.user_to_channel = std::move(user_match);
  return result;
}

std::uint64_t CountPerfectMatchings(const PreferenceGraph& graph) {
  const int n = graph.n_users;
  if (n != graph.n_channels) {
    Fail(ErrorCode::kInvalidInput,
         "perfect matching count needs a square graph (N = K)");
  }
  if (n > kMaxPermanentSize) {
    Fail(ErrorCode::kInvalidInput,
         "perfect matching count refused for N = " + std::to_string(n) +
             " > " + std::to_string(kMaxPermanentSize));
  }
  if (n == 0) return 1;

  // Ryser: perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  // Column subsets are walked in Gray-code order so each step toggles one
  // column and updates the row sums in O(n).
  std::vector<std::int64_t> row_sums(n, 0);
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (ChannelIndex k : graph.adjacency[i]) a[i][k] = 1;
  }
  std::int64_t total = 0;
  std::uint32_t gray = 0;
  for (std::uint32_t step = 1; step < (1u << n); ++step) {
    const int col = std::countr_zero(step);
    gray ^= 1u << col;
    const int sign_col = (gray >> col) & 1u ? 1 : -1;
    std::int64_t product = 1;
    for (int i = 0; i < n; ++i) {
      row_sums[i] += sign_col * a[i][col];
      product *= row_sums[i];
    }
    const int subset_size = std::popcount(gray);
    total += ((n - subset_size) % 2 == 0) ? product : -product;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace fsig
