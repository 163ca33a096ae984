// Copyright 2026 The planar-flp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "planar_flp/oracles.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "absl/status/status.h"

namespace planar_flp {
namespace {

// Sorted-id-list lexicographic order on bitmasks.
bool LexLess(uint32_t a, uint32_t b) {
  if (a == b) return false;
  const int x = std::countr_zero(a ^ b);
  if (a & (1u << x)) return (b >> x) != 0;
  return (a >> x) == 0;
}

struct Candidate {
  double cost = kInfiniteLength;
  uint32_t mask = 0;
  bool valid = false;
};

bool Better(const Candidate& a, const Candidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.cost != b.cost) return a.cost < b.cost;
  return LexLess(a.mask, b.mask);
}

class SubsetEvaluator {
 public:
  explicit SubsetEvaluator(const Problem& problem) : problem_(problem) {
    const int nf = problem.num_facilities();
    const int nc = problem.num_clients();
    order_.resize(nc);
    for (int c = 0; c < nc; ++c) {
      auto& ord = order_[c];
      ord.resize(nf);
      std::iota(ord.begin(), ord.end(), 0);
      std::sort(ord.begin(), ord.end(), [&](int f, int g) {
        const Length df = problem.ClientDist(c, f);
        const Length dg = problem.ClientDist(c, g);
        return df != dg ? df < dg : f < g;
      });
    }
  }

  double Cost(uint32_t mask) const {
    double conn = 0.0;
    for (int c = 0; c < problem_.num_clients(); ++c) {
      for (int f : order_[c]) {
        if (mask & (1u << f)) {
          conn += static_cast<double>(problem_.client(c).multiplicity) *
                  problem_.ClientDist(c, f);
          break;
        }
      }
    }
    double open = 0.0;
    for (uint32_t m = mask; m != 0; m &= m - 1) {
      open += problem_.open_cost(std::countr_zero(m));
    }
    return conn + open;
  }

 private:
  const Problem& problem_;
  std::vector<std::vector<int>> order_;
};

absl::Status CheckGuard(const Problem& problem) {
  if (problem.num_facilities() > kExactFacilityGuard) {
    return absl::ResourceExhaustedError("instance too large for exact oracle");
  }
  if (problem.num_facilities() == 0 && problem.num_clients() > 0) {
    return absl::InvalidArgumentError("no facility serves clients");
  }
  return absl::OkStatus();
}

ExactResult ToResult(const Candidate& best, int64_t count) {
  ExactResult result;
  result.cost = best.cost;
  result.subsets_enumerated = count;
  for (uint32_t m = best.mask; m != 0; m &= m - 1) {
    result.open_set.push_back(std::countr_zero(m));
  }
  return result;
}

}  // namespace

absl::StatusOr<ExactResult> ExactOpt(const Problem& problem) {
  if (absl::Status s = CheckGuard(problem); !s.ok()) return s;
  const SubsetEvaluator eval(problem);
  const int64_t total = int64_t{1} << problem.num_facilities();
  const int64_t first = problem.num_clients() > 0 ? 1 : 0;
  Candidate best;
#pragma omp parallel
  {
    Candidate local;
#pragma omp for schedule(static)
    for (int64_t m = first; m < total; ++m) {
      const Candidate cand{eval.Cost(static_cast<uint32_t>(m)),
                           static_cast<uint32_t>(m), true};
      if (Better(cand, local)) local = cand;
    }
#pragma omp critical
    {
      if (Better(local, best)) best = local;
    }
  }
  return ToResult(best, total - first);
}

absl::StatusOr<ExactResult> ExactOptSerial(const Problem& problem) {
  if (absl::Status s = CheckGuard(problem); !s.ok()) return s;
  const SubsetEvaluator eval(problem);
  const int64_t total = int64_t{1} << problem.num_facilities();
  const int64_t first = problem.num_clients() > 0 ? 1 : 0;
  Candidate best;
  for (int64_t m = first; m < total; ++m) {
    const Candidate cand{eval.Cost(static_cast<uint32_t>(m)),
                         static_cast<uint32_t>(m), true};
    if (Better(cand, best)) best = cand;
  }
  return ToResult(best, total - first);
}

std::vector<int> GreedyStart(const Problem& problem) {
  const int nf = problem.num_facilities();
  std::vector<int> open;
  double best = kInfiniteLength;
  for (int f = 0; f < nf; ++f) {
    const double c = SolutionCost(problem, {f});
    if (open.empty() || c < best) {
      open = {f};
      best = c;
    }
  }
  while (true) {
    int pick = -1;
    double pick_cost = best;
    for (int f = 0; f < nf; ++f) {
      if (std::binary_search(open.begin(), open.end(), f)) continue;
      std::vector<int> trial = open;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), f), f);
      const double c = SolutionCost(problem, trial);
      if (c < pick_cost) {
        pick = f;
        pick_cost = c;
      }
    }
    if (pick < 0) break;
    open.insert(std::upper_bound(open.begin(), open.end(), pick), pick);
    best = pick_cost;
  }
  return open;
}

namespace {

// Calls fn on every size-k combination of `items` in lexicographic order
// until fn returns true.
bool ForEachCombination(const std::vector<int>& items, int k,
                        const std::function<bool(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(items.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> pick(k);
  while (true) {
    for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
    if (fn(pick)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> Apply(const std::vector<int>& open, const std::vector<int>& out,
                       const std::vector<int>& in) {
  std::vector<int> next;
  std::set_difference(open.begin(), open.end(), out.begin(), out.end(),
                      std::back_inserter(next));
  next.insert(next.end(), in.begin(), in.end());
  std::sort(next.begin(), next.end());
  return next;
}

}  // namespace

Solution LocalSearchFrom(const Problem& problem, std::vector<int> open,
                         int swap_size) {
  std::sort(open.begin(), open.end());
  double cost = SolutionCost(problem, open);
  const int nf = problem.num_facilities();
  const bool need_open = problem.num_clients() > 0;
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<int> closed;
    for (int f = 0; f < nf; ++f) {
      if (!std::binary_search(open.begin(), open.end(), f)) closed.push_back(f);
    }
    auto try_move = [&](const std::vector<int>& out,
                        const std::vector<int>& in) {
      std::vector<int> next = Apply(open, out, in);
      if (need_open && next.empty()) return false;
      const double c = SolutionCost(problem, next);
      if (c < cost) {
        open = std::move(next);
        cost = c;
        return true;
      }
      return false;
    };
    for (int k = 1; k <= swap_size && !improved; ++k) {
      improved = ForEachCombination(
          closed, k, [&](const std::vector<int>& in) { return try_move({}, in); });
    }
    for (int k = 1; k <= swap_size && !improved; ++k) {
      improved = ForEachCombination(
          open, k, [&](const std::vector<int>& out) { return try_move(out, {}); });
    }
    for (int a = 1; a <= swap_size && !improved; ++a) {
      for (int b = 1; b <= swap_size && !improved; ++b) {
        const std::vector<int> current = open;
        improved = ForEachCombination(current, a, [&](const std::vector<int>& out) {
          return ForEachCombination(closed, b, [&](const std::vector<int>& in) {
            return try_move(out, in);
          });
        });
      }
    }
  }
  return *EvalSolution(problem, open);
}

Solution LocalSearch(const Problem& problem, int swap_size) {
  return LocalSearchFrom(problem, GreedyStart(problem), swap_size);
}

}  // namespace planar_flp
