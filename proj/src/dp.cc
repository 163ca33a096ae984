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

#include "planar_flp/dp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace planar_flp {
namespace {

constexpr double kCompareTolerance = 1e-9;

bool LessEqualTol(double a, double b) {
  return a <= b + kCompareTolerance * std::max(1.0, std::abs(b));
}

int64_t CeilLevel(double value, double d) {
  if (value == kInfiniteLength) return kInfLevel;
  int64_t k = static_cast<int64_t>(std::ceil(value / d));
  while (static_cast<double>(k) * d < value) ++k;
  return k;
}

}  // namespace

double ConnCost(const GenInstance& k, int c, const std::vector<int>& r) {
  const Problem& p = *k.problem;
  const int v = p.client(c).vertex;
  double best = kInfiniteLength;
  for (int f : r) best = std::min(best, p.Dist(v, p.facility(f).vertex));
  for (size_t i = 0; i < k.portals.size(); ++i) {
    if (k.pred[i] == kInfiniteLength) continue;
    best = std::min(best, p.Dist(v, k.portals[i]) + k.pred[i]);
  }
  return best;
}

double GenCost(const GenInstance& k, const std::vector<int>& r) {
  const Problem& p = *k.problem;
  double conn = 0.0;
  for (int c : k.clients) {
    conn += static_cast<double>(p.client(c).multiplicity) * ConnCost(k, c, r);
  }
  double open = 0.0;
  for (int f : r) open += p.open_cost(f);
  return conn + open;
}

bool IsNearFeasible(const GenInstance& k, const std::vector<int>& r, double lambda) {
  const Problem& p = *k.problem;
  for (size_t i = 0; i < k.portals.size(); ++i) {
    if (k.req[i] == kInfiniteLength) continue;
    bool served = false;
    for (int f : r) {
      if (p.Dist(k.portals[i], p.facility(f).vertex) <= k.req[i] + lambda) {
        served = true;
        break;
      }
    }
    if (!served) return false;
  }
  return true;
}

bool IsGammaClose(const GenInstance& k, const std::vector<int>& r, double gamma) {
  const Problem& p = *k.problem;
  for (int c : k.clients) {
    if (!(ConnCost(k, c, r) <= gamma)) return false;
  }
  for (size_t i = 0; i < k.portals.size(); ++i) {
    if (k.req[i] == kInfiniteLength) continue;
    Length best = kInfiniteLength;
    for (int f : r) best = std::min(best, p.Dist(k.portals[i], p.facility(f).vertex));
    if (!(best <= gamma)) return false;
  }
  return true;
}

absl::StatusOr<DpEntry> LeafDp(const GenInstance& k, double lambda) {
  const Problem& p = *k.problem;
  const int nf = p.num_facilities();
  DpEntry entry;
  entry.source = DpEntry::Source::kLeaf;

  // Satisfier sets of the finite requests; only the inclusion-minimal ones
  // constrain the solution.
  std::vector<std::vector<int>> sets;
  for (size_t i = 0; i < k.portals.size(); ++i) {
    if (k.req[i] == kInfiniteLength) continue;
    std::vector<int> sat;
    for (int f = 0; f < nf; ++f) {
      if (p.Dist(k.portals[i], p.facility(f).vertex) <= k.req[i] + lambda) sat.push_back(f);
    }
    if (sat.empty()) return entry;
    sets.push_back(std::move(sat));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<int>> minimal;
  for (size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < sets.size() && !dominated; ++j) {
      dominated = j != i && std::includes(sets[i].begin(), sets[i].end(),
                                          sets[j].begin(), sets[j].end());
    }
    if (!dominated) minimal.push_back(sets[i]);
  }

  std::map<int, int64_t> gamma;
  for (int c : k.clients) gamma[p.client(c).vertex] += p.client(c).multiplicity;
  std::vector<int> w;
  std::vector<double> weight;
  std::vector<double> portal_cost;
  for (const auto& [v, g] : gamma) {
    w.push_back(v);
    weight.push_back(static_cast<double>(g));
    double best = kInfiniteLength;
    for (size_t i = 0; i < k.portals.size(); ++i) {
      if (k.pred[i] == kInfiniteLength) continue;
      best = std::min(best, p.Dist(v, k.portals[i]) + k.pred[i]);
    }
    portal_cost.push_back(best);
  }
  const int np = static_cast<int>(minimal.size());
  const int nw = static_cast<int>(w.size());
  if (np + nw > kLeafStateBits) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "leaf table needs %d request and %d vertex bits", np, nw));
  }
  const uint32_t a_mask = (1u << np) - 1;
  const uint32_t w_mask = (1u << nw) - 1;
  const uint32_t states = 1u << (np + nw);
  const uint32_t full = states - 1;

  // Layer 0: the portals act as one always-open source.
  std::vector<double> cur(states, kInfiniteLength);
  for (uint32_t b = 0; b <= w_mask; ++b) {
    double cost = 0.0;
    for (int u = 0; u < nw; ++u) {
      if (b >> u & 1) cost += weight[u] * portal_cost[u];
    }
    if (cost < kInfiniteLength) cur[b << np] = cost;
  }
  std::vector<std::vector<int32_t>> from(nf);
  std::vector<double> conn(w_mask + 1);
  for (int f = 0; f < nf; ++f) {
    uint32_t cover = 0;
    for (int a = 0; a < np; ++a) {
      if (std::binary_search(minimal[a].begin(), minimal[a].end(), f)) cover |= 1u << a;
    }
    const int fv = p.facility(f).vertex;
    for (uint32_t s = 0; s <= w_mask; ++s) {
      double sum = 0.0;
      for (int u = 0; u < nw; ++u) {
        if (s >> u & 1) sum += weight[u] * p.Dist(w[u], fv);
      }
      conn[s] = sum;
    }
    std::vector<double> next = cur;
    from[f].assign(states, -1);
    const double open = p.open_cost(f);
    for (uint32_t s = 0; s < states; ++s) {
      if (cur[s] == kInfiniteLength) continue;
      const uint32_t a = (s & a_mask) | cover;
      const uint32_t b0 = s >> np;
      const uint32_t free = ~b0 & w_mask;
      for (uint32_t sub = free;; sub = (sub - 1) & free) {
        const double val = cur[s] + open + conn[sub];
        const uint32_t ns = a | ((b0 | sub) << np);
        if (val < next[ns]) {
          next[ns] = val;
          from[f][ns] = static_cast<int32_t>(s);
        }
        if (sub == 0) break;
      }
    }
    cur = std::move(next);
  }
  if (cur[full] == kInfiniteLength) return entry;
  uint32_t s = full;
  for (int f = nf - 1; f >= 0; --f) {
    if (from[f][s] >= 0) {
      entry.facilities.push_back(f);
      s = static_cast<uint32_t>(from[f][s]);
    }
  }
  std::sort(entry.facilities.begin(), entry.facilities.end());
  entry.feasible = true;
  entry.cost = GenCost(k, entry.facilities);
  return entry;
}

bool IsCompatible(const std::vector<int>& parent_portals, const FnPair& eta,
                  const std::vector<std::vector<int>>& child_portals,
                  const std::vector<FnPair>& phi, const DistanceMatrix& dist,
                  double d) {
  const size_t nc = child_portals.size();
  // (C1)
  for (size_t i = 0; i < parent_portals.size(); ++i) {
    if (eta.req[i] == kInfLevel) continue;
    const double bound = LevelValue(eta.req[i], d);
    bool covered = false;
    for (size_t c = 0; c < nc && !covered; ++c) {
      for (size_t j = 0; j < child_portals[c].size() && !covered; ++j) {
        if (phi[c].req[j] == kInfLevel) continue;
        covered = LessEqualTol(
            LevelValue(phi[c].req[j], d) + dist(parent_portals[i], child_portals[c][j]),
            bound);
      }
    }
    if (!covered) return false;
  }
  // (C2)
  for (size_t c = 0; c < nc; ++c) {
    for (size_t j = 0; j < child_portals[c].size(); ++j) {
      if (phi[c].pred[j] == kInfLevel) continue;
      const int rho = child_portals[c][j];
      const double bound = LevelValue(phi[c].pred[j], d);
      bool backed = false;
      for (size_t i = 0; i < parent_portals.size() && !backed; ++i) {
        if (eta.pred[i] == kInfLevel) continue;
        backed = LessEqualTol(LevelValue(eta.pred[i], d) + dist(parent_portals[i], rho),
                              bound);
      }
      for (size_t c2 = 0; c2 < nc && !backed; ++c2) {
        for (size_t j2 = 0; j2 < child_portals[c2].size() && !backed; ++j2) {
          if (phi[c2].req[j2] == kInfLevel) continue;
          backed = LessEqualTol(
              LevelValue(phi[c2].req[j2], d) + dist(child_portals[c2][j2], rho), bound);
        }
      }
      if (!backed) return false;
    }
  }
  return true;
}

DpEntry CombineChildren(const GenInstance& parent,
                        const std::vector<const DpEntry*>& children,
                        double lambda, CheckLog* log) {
  DpEntry entry;
  entry.source = DpEntry::Source::kCombined;
  double child_sum = 0.0;
  for (const DpEntry* child : children) {
    entry.facilities.insert(entry.facilities.end(), child->facilities.begin(),
                            child->facilities.end());
    child_sum += child->cost;
  }
  std::sort(entry.facilities.begin(), entry.facilities.end());
  entry.facilities.erase(std::unique(entry.facilities.begin(), entry.facilities.end()),
                         entry.facilities.end());
  entry.cost = GenCost(parent, entry.facilities);
  entry.feasible = true;
  if (log != nullptr) {
    log->Record("combine", NearlyLessEqual(entry.cost, child_sum),
                absl::StrFormat("union cost %g > child sum %g", entry.cost, child_sum));
    log->Record("combine-feasible", IsNearFeasible(parent, entry.facilities, lambda),
                "union misses a parent request");
  }
  return entry;
}

DpParams DeriveDpParams(int num_vertices, double r, const DpOptions& options) {
  DpParams params;
  params.delta = options.eps / std::log2(std::max(num_vertices, 2));
  params.spacing = options.portal_spacing.value_or(params.delta);
  params.lambda = 5.0 * options.eps;
  params.normal.lo = -5.0 * options.eps;
  params.normal.hi = 3.0 * r + 5.0 * options.eps;
  params.normal.d = options.value_levels.has_value()
                        ? (params.normal.hi - params.normal.lo) / *options.value_levels
                        : params.delta;
  params.normal.slack = params.normal.d;
  params.step_levels =
      1 + static_cast<int64_t>(std::ceil(2.0 * params.spacing / params.normal.d));
  return params;
}

namespace {

class RingDp {
 public:
  RingDp(const Problem& problem, const DecompTree& tree, const DpParams& params,
         const DpOptions& options, CheckLog* log)
      : problem_(problem), tree_(tree), params_(params), options_(options), log_(log),
        memo_(tree.nodes.size()) {}

  absl::StatusOr<const DpEntry*> Solve(int t, const FnPair& eta) {
    std::vector<int64_t> key = eta.pred;
    key.insert(key.end(), eta.req.begin(), eta.req.end());
    auto& table = memo_[t];
    if (auto it = table.find(key); it != table.end()) return &it->second;
    const DecompNode& node = tree_.nodes[t];
    if (log_ != nullptr) {
      log_->Record("normal-key",
                   IsNormal(eta.pred, node.portals, problem_.dist(), params_.normal) &&
                       IsNormal(eta.req, node.portals, problem_.dist(), params_.normal),
                   absl::StrFormat("node %d", t));
    }
    const GenInstance k = Instance(t, eta);
    DpEntry best;
    if (node.children.empty()) {
      absl::StatusOr<DpEntry> leaf = LeafDp(k, params_.lambda);
      if (!leaf.ok()) return leaf.status();
      best = *std::move(leaf);
    } else {
      absl::Status status = Combine(t, eta, k, &best);
      if (!status.ok()) return status;
    }
    ++keys_;
    return &table.emplace(std::move(key), std::move(best)).first->second;
  }

  int64_t keys() const { return keys_; }
  int64_t candidates() const { return candidates_; }

 private:
  GenInstance Instance(int t, const FnPair& eta) const {
    const DecompNode& node = tree_.nodes[t];
    GenInstance k;
    k.problem = &problem_;
    k.clients = node.clients;
    k.portals = node.portals;
    for (size_t i = 0; i < node.portals.size(); ++i) {
      k.pred.push_back(LevelValue(eta.pred[i], params_.normal.d));
      k.req.push_back(LevelValue(eta.req[i], params_.normal.d));
    }
    return k;
  }

  std::vector<std::vector<int>> Guesses(const std::vector<int>& facilities) const {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(facilities.size());
    if (n <= options_.full_guess_limit) {
      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        std::vector<int> g;
        for (int i = 0; i < n; ++i) {
          if (mask >> i & 1) g.push_back(facilities[i]);
        }
        out.push_back(std::move(g));
      }
      return out;
    }
    std::vector<int> current;
    auto extend = [&](auto&& self, int from) -> void {
      out.push_back(current);
      if (static_cast<int>(current.size()) == options_.guess_size_cap) return;
      for (int i = from; i < n; ++i) {
        current.push_back(facilities[i]);
        self(self, i + 1);
        current.pop_back();
      }
    };
    extend(extend, 0);
    return out;
  }

  int64_t Capped(int64_t level) const {
    return level == kInfLevel || level > params_.normal.HighLevel() ? kInfLevel : level;
  }

  absl::Status Combine(int t, const FnPair& eta, const GenInstance& k, DpEntry* best) {
    const DecompNode& node = tree_.nodes[t];
    const double d = params_.normal.d;
    const int nc = static_cast<int>(node.children.size());
    std::vector<std::vector<int>> child_portals(nc);
    for (int c = 0; c < nc; ++c) child_portals[c] = tree_.nodes[node.children[c]].portals;
    std::set<std::vector<int64_t>> seen;
    for (const std::vector<int>& g : Guesses(node.facilities)) {
      std::vector<FnPair> phi(nc);
      for (int c = 0; c < nc; ++c) {
        const DecompNode& child = tree_.nodes[node.children[c]];
        std::vector<int> inside;
        std::set_intersection(g.begin(), g.end(), child.facilities.begin(),
                              child.facilities.end(), std::back_inserter(inside));
        const int64_t margin = child.height * params_.step_levels;
        for (int rho : child.portals) {
          Length nearest = kInfiniteLength;
          for (int f : inside) {
            nearest = std::min(nearest, problem_.Dist(rho, problem_.facility(f).vertex));
          }
          const int64_t level = CeilLevel(nearest, d);
          phi[c].req.push_back(level == kInfLevel ? kInfLevel : Capped(level + margin));
        }
      }
      for (int c = 0; c < nc; ++c) {
        for (int rho : child_portals[c]) {
          double m = kInfiniteLength;
          for (size_t i = 0; i < node.portals.size(); ++i) {
            if (eta.pred[i] == kInfLevel) continue;
            m = std::min(m, LevelValue(eta.pred[i], d) + problem_.Dist(node.portals[i], rho));
          }
          for (int c2 = 0; c2 < nc; ++c2) {
            for (size_t j = 0; j < child_portals[c2].size(); ++j) {
              if (phi[c2].req[j] == kInfLevel) continue;
              m = std::min(m, LevelValue(phi[c2].req[j], d) +
                                  problem_.Dist(child_portals[c2][j], rho));
            }
          }
          phi[c].pred.push_back(Capped(CeilLevel(m, d)));
        }
      }
      std::vector<int64_t> signature;
      for (const FnPair& fp : phi) {
        signature.insert(signature.end(), fp.pred.begin(), fp.pred.end());
        signature.insert(signature.end(), fp.req.begin(), fp.req.end());
      }
      if (!seen.insert(std::move(signature)).second) continue;
      if (!IsCompatible(node.portals, eta, child_portals, phi, problem_.dist(), d)) continue;
      std::vector<const DpEntry*> parts;
      bool feasible = true;
      for (int c = 0; c < nc && feasible; ++c) {
        absl::StatusOr<const DpEntry*> sub = Solve(node.children[c], phi[c]);
        if (!sub.ok()) return sub.status();
        feasible = (*sub)->feasible;
        parts.push_back(*sub);
      }
      if (!feasible) continue;
      ++candidates_;
      DpEntry candidate = CombineChildren(k, parts, params_.lambda, log_);
      if (!best->feasible || candidate.cost < best->cost) *best = std::move(candidate);
    }
    return absl::OkStatus();
  }

  const Problem& problem_;
  const DecompTree& tree_;
  const DpParams& params_;
  const DpOptions& options_;
  CheckLog* log_;
  std::vector<std::map<std::vector<int64_t>, DpEntry>> memo_;
  int64_t keys_ = 0;
  int64_t candidates_ = 0;
};

GenInstance WholeInstance(const Problem& problem) {
  GenInstance k;
  k.problem = &problem;
  for (int c = 0; c < problem.num_clients(); ++c) k.clients.push_back(c);
  return k;
}

}  // namespace

absl::StatusOr<RingDpReport> SolveRingDp(const RingGraph& rg, const DpOptions& options,
                                         CheckLog* log) {
  const Problem& problem = rg.problem;
  const int n = problem.instance().graph.num_vertices();
  RingDpReport report;
  report.params = DeriveDpParams(n, rg.r, options);
  if (problem.num_clients() == 0) return report;

  DpEntry root;
  if (n < 3) {
    absl::StatusOr<DpEntry> leaf = LeafDp(WholeInstance(problem), report.params.lambda);
    if (!leaf.ok()) return leaf.status();
    root = *std::move(leaf);
  } else {
    absl::StatusOr<FaceStructure> fs = Triangulate(problem.instance().graph);
    if (!fs.ok()) return fs.status();
    absl::StatusOr<DualTrees> dt = BuildDualTrees(*fs, rg.source, log);
    if (!dt.ok()) return dt.status();
    absl::StatusOr<DecompTree> tree = BuildDecomposition(*fs, *dt, log);
    if (!tree.ok()) return tree.status();
    AttachToNodes(*fs, *dt, problem, report.params.spacing, &*tree);
    if (log != nullptr && log->enabled(CheckLevel::kStandard)) {
      CheckPortalSnap(*fs, *tree, problem, report.params.spacing, options.snap_samples,
                      static_cast<uint64_t>(rg.j) * 7919 + 17, log);
    }
    report.tree_depth = tree->depth;
    report.tree_nodes = static_cast<int>(tree->nodes.size());
    for (const DecompNode& node : tree->nodes) {
      report.max_portals = std::max(report.max_portals, static_cast<int>(node.portals.size()));
    }
    RingDp dp(problem, *tree, report.params, options, log);
    absl::StatusOr<const DpEntry*> solved = dp.Solve(tree->root, FnPair{});
    if (!solved.ok()) return solved.status();
    root = **solved;
    report.keys = dp.keys();
    report.candidates = dp.candidates();
  }

  if (root.feasible) {
    report.facilities = root.facilities;
    report.cost = SolutionCost(problem, report.facilities);
    if (log != nullptr) {
      log->Record("root", root.cost == report.cost,
                  absl::StrFormat("stored %.17g, evaluated %.17g", root.cost, report.cost));
    }
  } else {
    report.fallback = true;
    report.facilities = rg.designated;
    if (report.facilities.empty()) {
      for (int f = 0; f < problem.num_facilities(); ++f) report.facilities.push_back(f);
    }
    std::sort(report.facilities.begin(), report.facilities.end());
    report.cost = SolutionCost(problem, report.facilities);
  }
  return report;
}

absl::StatusOr<std::vector<int>> SolveRing(const RingInstance& ring,
                                           const DpOptions& options, CheckLog* log,
                                           SolveRingStats* stats) {
  std::vector<int> out;
  if (ring.problem.num_clients() == 0) return out;
  absl::StatusOr<RingInstance> trimmed = TrimToReach(ring, log);
  if (!trimmed.ok()) return trimmed.status();
  absl::StatusOr<std::vector<RingInstance>> comps = SplitComponents(*trimmed);
  if (!comps.ok()) return comps.status();
  for (const RingInstance& comp : *comps) {
    if (comp.problem.num_clients() == 0) continue;
    if (stats != nullptr) ++stats->components;
    const DistanceRings rings = ComputeDistanceRings(comp, options.eps, log);
    std::map<int, RingDpResult> per_ring;
    for (const auto& [j, clients] : rings.ring_clients) {
      if (clients.empty()) continue;
      absl::StatusOr<RingGraph> rg = BuildRingGraph(comp, rings, j, log);
      if (!rg.ok()) return rg.status();
      absl::StatusOr<RingDpReport> report = SolveRingDp(*rg, options, log);
      if (!report.ok()) return report.status();
      RingDpResult result;
      for (int f : report->facilities) result.facilities.push_back(rg->facility_origin[f]);
      result.cost = report->cost;
      per_ring[j] = std::move(result);
      if (stats != nullptr) {
        ++stats->ring_graphs;
        stats->fallbacks += report->fallback ? 1 : 0;
        stats->delta = report->params.delta;
        stats->len_bound_l = rg->len_bound_l;
        stats->keys += report->keys;
      }
    }
    if (stats != nullptr) {
      stats->distance_q = rings.q;
      stats->distance_a = rings.a;
    }
    absl::StatusOr<std::vector<int>> merged =
        MergeRingDpSolutions(comp, rings, per_ring, log);
    if (!merged.ok()) return merged.status();
    for (int f : *merged) {
      out.push_back(trimmed->facility_origin[comp.facility_origin[f]]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace planar_flp
