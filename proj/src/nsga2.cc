/******************************************************************************
 * Copyright 2026 The npcfuzz Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "npcfuzz/nsga2.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace npcfuzz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

bool Dominates(const Objectives& a, const Objectives& b) {
  bool strict = false;
  for (size_t m = 0; m < a.size(); ++m) {
    if (a[m] < b[m]) return false;
    if (a[m] > b[m]) strict = true;
  }
  return strict;
}

std::vector<int> NonDominatedSort(std::span<const Objectives> pop) {
  const size_t n = pop.size();
  std::vector<std::vector<size_t>> dominated(n);
  std::vector<int> count(n, 0);
  std::vector<int> rank(n, -1);
  std::vector<size_t> front;
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (Dominates(pop[p], pop[q])) {
        dominated[p].push_back(q);
      } else if (Dominates(pop[q], pop[p])) {
        ++count[p];
      }
    }
    if (count[p] == 0) {
      rank[p] = 0;
      front.push_back(p);
    }
  }
  for (int r = 0; !front.empty(); ++r) {
    std::vector<size_t> next;
    for (size_t p : front) {
      for (size_t q : dominated[p]) {
        if (--count[q] == 0) {
          rank[q] = r + 1;
          next.push_back(q);
        }
      }
    }
    front = std::move(next);
  }
  return rank;
}

std::vector<double> CrowdingDistance(std::span<const Objectives> front) {
  const size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  std::vector<size_t> order(n);
  for (size_t m = 0; m < Objectives{}.size(); ++m) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return front[a][m] < front[b][m];
    });
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    const double range = front[order.back()][m] - front[order.front()][m];
    if (!(range > 0.0)) continue;
    for (size_t i = 1; i + 1 < n; ++i) {
      dist[order[i]] += (front[order[i + 1]][m] - front[order[i - 1]][m]) / range;
    }
  }
  return dist;
}

Selection SelectNextGeneration(std::span<const Objectives> pop, size_t tau) {
  Selection out;
  out.rank = NonDominatedSort(pop);
  out.crowding.assign(pop.size(), 0.0);
  const int max_rank =
      pop.empty() ? -1 : *std::max_element(out.rank.begin(), out.rank.end());
  for (int r = 0; r <= max_rank; ++r) {
    std::vector<size_t> members;
    std::vector<Objectives> values;
    for (size_t i = 0; i < pop.size(); ++i) {
      if (out.rank[i] == r) {
        members.push_back(i);
        values.push_back(pop[i]);
      }
    }
    const std::vector<double> cd = CrowdingDistance(values);
    for (size_t k = 0; k < members.size(); ++k) out.crowding[members[k]] = cd[k];
  }
  std::vector<size_t> order(pop.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (out.rank[a] != out.rank[b]) return out.rank[a] < out.rank[b];
    if (out.crowding[a] != out.crowding[b]) return out.crowding[a] > out.crowding[b];
    return a < b;
  });
  order.resize(std::min(tau, order.size()));
  out.indices = std::move(order);
  return out;
}

bool StagnationMonitor::Update(const Objectives& best) {
  if (!archive_) {
    archive_ = best;
    stagnant_ = 0;
    return false;
  }
  bool improved = false;
  for (size_t m = 0; m < best.size(); ++m) {
    if (best[m] > (*archive_)[m]) {
      (*archive_)[m] = best[m];
      improved = true;
    }
  }
  stagnant_ = improved ? 0 : stagnant_ + 1;
  if (stagnant_ >= limit_) {
    stagnant_ = 0;
    return true;
  }
  return false;
}

bool CheckRestart(std::span<const Objectives> history, int limit) {
  if (history.empty()) return false;
  Objectives archive = history.front();
  int trailing = 0;
  for (size_t g = 1; g < history.size(); ++g) {
    bool improved = false;
    for (size_t m = 0; m < archive.size(); ++m) {
      if (history[g][m] > archive[m]) {
        archive[m] = history[g][m];
        improved = true;
      }
    }
    trailing = improved ? 0 : trailing + 1;
  }
  return trailing >= limit;
}

Objectives BestPerObjective(std::span<const Objectives> pop) {
  Objectives best;
  best.fill(-kInf);
  for (const Objectives& o : pop) {
    for (size_t m = 0; m < best.size(); ++m) best[m] = std::max(best[m], o[m]);
  }
  return best;
}

}  // namespace npcfuzz
