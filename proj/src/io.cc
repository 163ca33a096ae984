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

#include "planar_flp/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace planar_flp {
namespace {

absl::Status LineError(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", what));
}

bool ToDouble(absl::string_view s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool ToInt(absl::string_view s, int64_t& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::pair<int, int> Key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

// Counter-clockwise angular order around each vertex.
std::vector<std::vector<int>> RotationFromCoords(
    int n, const std::vector<Edge>& edges, const std::vector<Point>& coords) {
  std::vector<std::vector<int>> rot(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    rot[edges[e].u].push_back(e);
    rot[edges[e].v].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    auto angle = [&](int e) {
      const int w = edges[e].u == v ? edges[e].v : edges[e].u;
      return std::atan2(coords[w].y - coords[v].y, coords[w].x - coords[v].x);
    };
    std::stable_sort(rot[v].begin(), rot[v].end(),
                     [&](int a, int b) { return angle(a) < angle(b); });
  }
  return rot;
}

absl::StatusOr<std::vector<std::vector<int>>> RotationFromPlanarityTest(
    int n, const std::vector<Edge>& edges) {
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS,
      boost::property<boost::vertex_index_t, int>,
      boost::property<boost::edge_index_t, int>>;
  Graph g(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    boost::add_edge(edges[e].u, edges[e].v, e, g);
  }
  using EdgeDesc = boost::graph_traits<Graph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> embedding(n);
  if (!boost::boyer_myrvold_planarity_test(
          boost::boyer_myrvold_params::graph = g,
          boost::boyer_myrvold_params::embedding = &embedding[0])) {
    return absl::InvalidArgumentError("graph is not planar");
  }
  auto edge_index = boost::get(boost::edge_index, g);
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) {
    for (const EdgeDesc& d : embedding[v]) rot[v].push_back(edge_index[d]);
  }
  return rot;
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

absl::StatusOr<FlInstance> ParseInstance(std::string_view std_text) {
  const absl::string_view text(std_text.data(), std_text.size());
  FlInstance inst;
  bool header = false;
  std::map<int64_t, std::pair<bool, Point>> declared;
  struct RawEdge {
    int64_t u, v;
    double w;
    int line;
  };
  std::vector<RawEdge> raw_edges;
  struct RawRot {
    int64_t v;
    std::vector<int64_t> nbrs;
    int line;
  };
  std::vector<RawRot> raw_rots;
  struct RawSite {
    int64_t vertex;
    double value;
    int64_t mult;
    int line;
  };
  std::vector<RawSite> raw_clients, raw_facilities;

  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (absl::ConsumePrefix(&line, "# label:")) {
        inst.label = std::string(absl::StripLeadingAsciiWhitespace(line));
      }
      continue;
    }
    if (const size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = absl::StripTrailingAsciiWhitespace(line.substr(0, hash));
    }
    std::vector<absl::string_view> tok =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (!header) {
      if (line != "planar-fl v1") return LineError(line_no, "missing planar-fl v1 header");
      header = true;
      continue;
    }
    const absl::string_view kind = tok[0];
    if (kind == "v") {
      int64_t id;
      if ((tok.size() != 2 && tok.size() != 4) || !ToInt(tok[1], id) || id < 0) {
        return LineError(line_no, "malformed vertex line");
      }
      Point p;
      const bool has = tok.size() == 4;
      if (has && (!ToDouble(tok[2], p.x) || !ToDouble(tok[3], p.y))) {
        return LineError(line_no, "malformed coordinates");
      }
      if (!declared.emplace(id, std::make_pair(has, p)).second) {
        return LineError(line_no, "duplicate vertex id");
      }
    } else if (kind == "e") {
      RawEdge e{0, 0, 0.0, line_no};
      if (tok.size() != 4 || !ToInt(tok[1], e.u) || !ToInt(tok[2], e.v) ||
          !ToDouble(tok[3], e.w)) {
        return LineError(line_no, "malformed edge line");
      }
      if (e.w < 0.0) return LineError(line_no, "negative weight");
      raw_edges.push_back(e);
    } else if (kind == "rot") {
      RawRot r{0, {}, line_no};
      if (tok.size() < 2 || !ToInt(tok[1], r.v)) {
        return LineError(line_no, "malformed rot line");
      }
      for (size_t i = 2; i < tok.size(); ++i) {
        int64_t w;
        if (!ToInt(tok[i], w)) return LineError(line_no, "malformed rot line");
        r.nbrs.push_back(w);
      }
      raw_rots.push_back(std::move(r));
    } else if (kind == "c") {
      RawSite s{0, 0.0, 1, line_no};
      if ((tok.size() != 2 && tok.size() != 3) || !ToInt(tok[1], s.vertex) ||
          (tok.size() == 3 && !ToInt(tok[2], s.mult))) {
        return LineError(line_no, "malformed client line");
      }
      if (s.mult <= 0) return LineError(line_no, "nonpositive multiplicity");
      raw_clients.push_back(s);
    } else if (kind == "f") {
      RawSite s{0, 0.0, 1, line_no};
      if (tok.size() != 3 || !ToInt(tok[1], s.vertex) || !ToDouble(tok[2], s.value)) {
        return LineError(line_no, "malformed facility line");
      }
      if (s.value < 0.0) return LineError(line_no, "negative opening cost");
      raw_facilities.push_back(s);
    } else {
      return LineError(line_no, absl::StrCat("unknown record '", kind, "'"));
    }
  }
  if (!header) return absl::InvalidArgumentError("missing planar-fl v1 header");

  const int n = static_cast<int>(declared.size());
  if (n > 0 && declared.rbegin()->first != n - 1) {
    return absl::InvalidArgumentError("vertex ids are not 0..n-1");
  }
  auto known = [&](int64_t v) { return v >= 0 && v < n; };
  int with_coords = 0;
  for (const auto& [id, entry] : declared) with_coords += entry.first ? 1 : 0;
  if (with_coords != 0 && with_coords != n) {
    return absl::InvalidArgumentError("coordinates missing for some vertices");
  }
  if (with_coords == n && n > 0) {
    for (const auto& [id, entry] : declared) inst.coords.push_back(entry.second);
  }

  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> edge_of;
  for (const RawEdge& r : raw_edges) {
    if (!known(r.u) || !known(r.v)) return LineError(r.line, "unknown vertex id");
    if (r.u == r.v) return LineError(r.line, "self-loop");
    const auto key = Key(static_cast<int>(r.u), static_cast<int>(r.v));
    if (!edge_of.emplace(key, static_cast<int>(edges.size())).second) {
      return LineError(r.line, "duplicate edge");
    }
    edges.push_back(Edge{static_cast<int>(r.u), static_cast<int>(r.v), r.w});
  }

  std::vector<std::vector<int>> rotation;
  if (!raw_rots.empty()) {
    rotation.assign(n, {});
    std::vector<char> seen(n, 0);
    for (const RawRot& r : raw_rots) {
      if (!known(r.v)) return LineError(r.line, "unknown vertex id");
      if (seen[r.v]) return LineError(r.line, "duplicate rot line");
      seen[r.v] = 1;
      for (int64_t w : r.nbrs) {
        if (!known(w)) return LineError(r.line, "unknown vertex id");
        const auto it = edge_of.find(Key(static_cast<int>(r.v), static_cast<int>(w)));
        if (it == edge_of.end()) return LineError(r.line, "rot names a non-neighbor");
        rotation[r.v].push_back(it->second);
      }
    }
  } else if (!inst.coords.empty()) {
    rotation = RotationFromCoords(n, edges, inst.coords);
  } else {
    auto rot = RotationFromPlanarityTest(n, edges);
    if (!rot.ok()) return rot.status();
    rotation = *std::move(rot);
  }
  auto graph = PlaneGraph::Create(n, std::move(edges), std::move(rotation));
  if (!graph.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid rotation system: ", graph.status().message()));
  }
  inst.graph = *std::move(graph);
  if (!SatisfiesEulerFormula(inst.graph)) {
    return absl::InvalidArgumentError(
        "non-planar rotation system (Euler characteristic check failed)");
  }
  for (const RawSite& s : raw_clients) {
    if (!known(s.vertex)) return LineError(s.line, "unknown vertex id");
    inst.clients.push_back(ClientSite{static_cast<int>(s.vertex), s.mult});
  }
  for (const RawSite& s : raw_facilities) {
    if (!known(s.vertex)) return LineError(s.line, "unknown vertex id");
    inst.facilities.push_back(FacilitySite{static_cast<int>(s.vertex), s.value});
  }
  return inst;
}

std::string SerializeInstance(const FlInstance& inst) {
  std::string out = "planar-fl v1\n";
  if (!inst.label.empty()) absl::StrAppend(&out, "# label: ", inst.label, "\n");
  const PlaneGraph& g = inst.graph;
  for (int v = 0; v < g.num_vertices(); ++v) {
    absl::StrAppend(&out, "v ", v);
    if (!inst.coords.empty()) {
      absl::StrAppend(&out, " ", FormatNumber(inst.coords[v].x), " ",
                      FormatNumber(inst.coords[v].y));
    }
    out += "\n";
  }
  for (const Edge& e : g.edges()) {
    absl::StrAppend(&out, "e ", e.u, " ", e.v, " ", FormatNumber(e.weight), "\n");
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    absl::StrAppend(&out, "rot ", v);
    for (int e : g.rotation(v)) absl::StrAppend(&out, " ", g.Opposite(e, v));
    out += "\n";
  }
  for (const ClientSite& c : inst.clients) {
    absl::StrAppend(&out, "c ", c.vertex);
    if (c.multiplicity != 1) absl::StrAppend(&out, " ", c.multiplicity);
    out += "\n";
  }
  for (const FacilitySite& f : inst.facilities) {
    absl::StrAppend(&out, "f ", f.vertex, " ", FormatNumber(f.open_cost), "\n");
  }
  return out;
}

absl::StatusOr<GraphKind> ParseGraphKind(std::string_view std_name) {
  const absl::string_view name(std_name.data(), std_name.size());
  if (name == "grid") return GraphKind::kGrid;
  if (name == "wheel") return GraphKind::kWheel;
  if (name == "delaunay-like") return GraphKind::kDelaunayLike;
  return absl::InvalidArgumentError(absl::StrCat("unknown graph kind '", name, "'"));
}

namespace {

struct IntPoint {
  int64_t x, y;
};

int64_t Cross(const IntPoint& o, const IntPoint& a, const IntPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool OnSegment(const IntPoint& p, const IntPoint& a, const IntPoint& b) {
  return Cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x &&
         p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Whether segments ab and cd meet anywhere except at a shared endpoint.
bool Conflicts(const std::vector<IntPoint>& pts, int a, int b, int c, int d) {
  const int shared = (a == c) + (a == d) + (b == c) + (b == d);
  const IntPoint &A = pts[a], &B = pts[b], &C = pts[c], &D = pts[d];
  if (shared > 0) {
    // Only collinear overlap can conflict.
    const int o = (a == c || a == d) ? b : a;
    const int x = (c == a || c == b) ? d : c;
    const int common = (a == c || a == d) ? a : b;
    return OnSegment(pts[o], pts[common], pts[x]) ||
           OnSegment(pts[x], pts[common], pts[o]);
  }
  const int64_t d1 = Cross(C, D, A), d2 = Cross(C, D, B);
  const int64_t d3 = Cross(A, B, C), d4 = Cross(A, B, D);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return OnSegment(A, C, D) || OnSegment(B, C, D) || OnSegment(C, A, B) ||
         OnSegment(D, A, B);
}

}  // namespace

absl::StatusOr<FlInstance> Generate(const GeneratorParams& params) {
  std::mt19937_64 rng(params.seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto two_decimals = [](double x) { return std::round(x * 100.0) / 100.0; };
  if (params.min_weight < 0 || params.max_weight < params.min_weight ||
      params.min_open < 0 || params.max_open < params.min_open) {
    return absl::InvalidArgumentError("invalid weight or cost range");
  }

  std::vector<IntPoint> pts;
  std::vector<std::pair<int, int>> pairs;
  std::string label;
  switch (params.kind) {
    case GraphKind::kGrid: {
      if (params.rows <= 0 || params.cols <= 0) {
        return absl::InvalidArgumentError("grid needs positive rows and cols");
      }
      for (int r = 0; r < params.rows; ++r) {
        for (int c = 0; c < params.cols; ++c) pts.push_back({c * 100, r * 100});
      }
      for (int r = 0; r < params.rows; ++r) {
        for (int c = 0; c < params.cols; ++c) {
          const int v = r * params.cols + c;
          if (c + 1 < params.cols) pairs.emplace_back(v, v + 1);
          if (r + 1 < params.rows) pairs.emplace_back(v, v + params.cols);
        }
      }
      label = absl::StrFormat("grid %dx%d seed %d", params.rows, params.cols,
                              params.seed);
      break;
    }
    case GraphKind::kWheel: {
      if (params.spokes < 3) return absl::InvalidArgumentError("wheel needs >= 3 spokes");
      pts.push_back({0, 0});
      for (int i = 0; i < params.spokes; ++i) {
        const double a = 2.0 * M_PI * i / params.spokes;
        pts.push_back({std::llround(1000.0 * std::cos(a)),
                       std::llround(1000.0 * std::sin(a))});
      }
      for (int i = 0; i < params.spokes; ++i) {
        pairs.emplace_back(0, i + 1);
        pairs.emplace_back(i + 1, (i + 1) % params.spokes + 1);
      }
      label = absl::StrFormat("wheel %d seed %d", params.spokes, params.seed);
      break;
    }
    case GraphKind::kDelaunayLike: {
      if (params.points < 1) return absl::InvalidArgumentError("need >= 1 point");
      std::set<std::pair<int64_t, int64_t>> used;
      std::uniform_int_distribution<int64_t> coord(0, 1000);
      while (static_cast<int>(pts.size()) < params.points) {
        IntPoint p{coord(rng), coord(rng)};
        if (used.insert({p.x, p.y}).second) pts.push_back(p);
      }
      std::vector<std::pair<int, int>> cand;
      for (int a = 0; a < params.points; ++a) {
        for (int b = a + 1; b < params.points; ++b) cand.emplace_back(a, b);
      }
      auto len2 = [&](const std::pair<int, int>& e) {
        const int64_t dx = pts[e.first].x - pts[e.second].x;
        const int64_t dy = pts[e.first].y - pts[e.second].y;
        return dx * dx + dy * dy;
      };
      std::stable_sort(cand.begin(), cand.end(),
                       [&](const auto& x, const auto& y) { return len2(x) < len2(y); });
      for (const auto& e : cand) {
        bool ok = true;
        for (const auto& f : pairs) {
          if (Conflicts(pts, e.first, e.second, f.first, f.second)) {
            ok = false;
            break;
          }
        }
        // A point lying inside the segment also blocks it.
        for (int p = 0; ok && p < params.points; ++p) {
          if (p != e.first && p != e.second && OnSegment(pts[p], pts[e.first], pts[e.second])) {
            ok = false;
          }
        }
        if (ok) pairs.push_back(e);
      }
      label = absl::StrFormat("delaunay-like %d seed %d", params.points, params.seed);
      break;
    }
  }

  FlInstance inst;
  inst.label = label;
  const int n = static_cast<int>(pts.size());
  for (const IntPoint& p : pts) {
    inst.coords.push_back(Point{static_cast<double>(p.x), static_cast<double>(p.y)});
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) {
    edges.push_back(Edge{u, v, std::max(0.01, two_decimals(uniform(params.min_weight, params.max_weight)))});
  }
  std::vector<std::vector<int>> rotation = RotationFromCoords(n, edges, inst.coords);
  auto graph = PlaneGraph::Create(n, std::move(edges), std::move(rotation));
  if (!graph.ok()) return graph.status();
  inst.graph = *std::move(graph);

  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int64_t> mult(1, std::max(1, params.max_multiplicity));
  for (int i = 0; i < params.num_clients; ++i) {
    const int v = vertex(rng);
    inst.clients.push_back(ClientSite{v, mult(rng)});
  }
  if (params.num_facilities > n) {
    return absl::InvalidArgumentError("more facilities than vertices");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> fac(perm.begin(), perm.begin() + params.num_facilities);
  std::sort(fac.begin(), fac.end());
  for (int v : fac) {
    inst.facilities.push_back(
        FacilitySite{v, two_decimals(uniform(params.min_open, params.max_open))});
  }
  if (absl::Status s = ValidateInstance(inst); !s.ok()) return s;
  return inst;
}

}  // namespace planar_flp
