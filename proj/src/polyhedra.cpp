#include "hyptet/polyhedra.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace hyptet::polyhedra {

int MarkedGraph::vertex_count() const {
  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  return n;
}

std::vector<int> MarkedGraph::vertex_valence() const {
  std::vector<int> val(vertex_count(), 0);
  for (const auto& e : edges) {
    ++val[e.u];
    ++val[e.v];
  }
  return val;
}

std::vector<std::vector<int>> MarkedGraph::vertex_edges() const {
  std::vector<std::vector<int>> inc(vertex_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    inc[edges[i].u].push_back(static_cast<int>(i));
    inc[edges[i].v].push_back(static_cast<int>(i));
  }
  return inc;
}

bool MarkedGraph::operator==(const MarkedGraph& o) const {
  if (edges.size() != o.edges.size() || faces != o.faces) return false;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u != o.edges[i].u || edges[i].v != o.edges[i].v ||
        edges[i].label != o.edges[i].label)
      return false;
  return true;
}

namespace {

// Closed-walk check for a face cycle; returns false on any inconsistency.
bool face_is_closed_walk(const MarkedGraph& g, const std::vector<int>& face) {
  if (face.size() < 3) return false;
  for (int e : face)
    if (e < 0 || e >= static_cast<int>(g.edges.size())) return false;
  // Try both orientations of the first edge.
  for (int first : {g.edges[face[0]].u, g.edges[face[0]].v}) {
    int at = first;
    bool ok = true;
    for (int e : face) {
      const auto& edge = g.edges[e];
      if (edge.u == at) {
        at = edge.v;
      } else if (edge.v == at) {
        at = edge.u;
      } else {
        ok = false;
        break;
      }
    }
    if (ok && at == first) return true;
  }
  return false;
}

bool reciprocal_sum_is(const std::vector<int>& labels, long long target) {
  // sum 1/k_i vs target, over the common denominator.
  long long den = 1;
  for (int k : labels) den *= k;
  long long num = 0;
  for (int k : labels) num += den / k;
  return num == target * den;
}

int reciprocal_sum_cmp_one(const std::vector<int>& labels) {
  long long den = 1;
  for (int k : labels) den *= k;
  long long num = 0;
  for (int k : labels) num += den / k;
  if (num > den) return 1;
  if (num == den) return 0;
  return -1;
}

}  // namespace

std::vector<Violation> validate(const MarkedGraph& g) {
  std::vector<Violation> out;
  const int n = g.vertex_count();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.label < 2)
      out.push_back({"edge-label", "edge " + std::to_string(i) + " has label " +
                                       std::to_string(e.label) + " < 2"});
    if (e.u == e.v)
      out.push_back({"edge-loop", "edge " + std::to_string(i) + " is a loop"});
    if (e.u < 0 || e.v < 0)
      out.push_back({"edge-ends", "edge " + std::to_string(i) + " has bad ends"});
  }

  const auto valence = g.vertex_valence();
  for (int v = 0; v < n; ++v)
    if (valence[v] != 3 && valence[v] != 4)
      out.push_back({"valence", "vertex " + std::to_string(v) + " has valence " +
                                    std::to_string(valence[v])});

  const int euler =
      n - static_cast<int>(g.edges.size()) + static_cast<int>(g.faces.size());
  if (euler != 2)
    out.push_back({"euler", "V - E + F = " + std::to_string(euler) + " != 2"});

  std::vector<int> face_count(g.edges.size(), 0);
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    if (!face_is_closed_walk(g, g.faces[f]))
      out.push_back({"face-walk", "face " + std::to_string(f) +
                                      " is not a closed walk of >= 3 edges"});
    std::set<int> seen;
    for (int e : g.faces[f]) {
      if (e >= 0 && e < static_cast<int>(g.edges.size())) ++face_count[e];
      if (!seen.insert(e).second)
        out.push_back({"face-repeat", "face " + std::to_string(f) +
                                          " repeats edge " + std::to_string(e)});
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (face_count[e] != 2)
      out.push_back({"edge-faces", "edge " + std::to_string(e) + " lies in " +
                                       std::to_string(face_count[e]) +
                                       " faces, expected 2"});

  const auto incident = g.vertex_edges();
  for (int v = 0; v < n; ++v) {
    if (valence[v] != 4) continue;
    std::vector<int> labels;
    for (int e : incident[v]) labels.push_back(g.edges[e].label);
    if (!reciprocal_sum_is(labels, 2))
      out.push_back({"quadrivalent-sum",
                     "quadrivalent vertex " + std::to_string(v) +
                         " has reciprocal label sum != 2 (not an ideal vertex)"});
  }
  return out;
}

PolyVertexClass vertex_class(const MarkedGraph& g, int vertex) {
  if (!validate(g).empty())
    throw NotValidatedError("vertex_class: graph fails validation");
  const auto incident = g.vertex_edges();
  if (vertex < 0 || vertex >= static_cast<int>(incident.size()))
    throw NotValidatedError("vertex_class: no such vertex");
  if (incident[vertex].size() == 4) return PolyVertexClass::Ideal;
  std::vector<int> labels;
  for (int e : incident[vertex]) labels.push_back(g.edges[e].label);
  const int cmp = reciprocal_sum_cmp_one(labels);
  if (cmp > 0) return PolyVertexClass::Finite;
  if (cmp == 0) return PolyVertexClass::Ideal;
  throw NotValidatedError(
      "vertex_class: trivalent vertex " + std::to_string(vertex) +
      " has reciprocal label sum < 1 (super-ideal; present polyhedra "
      "post-truncation)");
}

std::vector<Circuit> turnover_circuits(const MarkedGraph& g) {
  if (!validate(g).empty())
    throw NotValidatedError("turnover_circuits: graph fails validation");
  const int nf = static_cast<int>(g.faces.size());
  // shared[f1][f2] = edges on both faces
  std::map<std::pair<int, int>, std::vector<int>> shared;
  {
    std::map<int, std::vector<int>> faces_of_edge;
    for (int f = 0; f < nf; ++f)
      for (int e : g.faces[f]) faces_of_edge[e].push_back(f);
    for (const auto& [e, fs] : faces_of_edge)
      if (fs.size() == 2)
        shared[{std::min(fs[0], fs[1]), std::max(fs[0], fs[1])}].push_back(e);
  }
  auto edges_between = [&](int f1, int f2) -> const std::vector<int>* {
    auto it = shared.find({std::min(f1, f2), std::max(f1, f2)});
    return it == shared.end() ? nullptr : &it->second;
  };

  std::vector<Circuit> out;
  for (int f1 = 0; f1 < nf; ++f1) {
    for (int f2 = f1 + 1; f2 < nf; ++f2) {
      const auto* e12 = edges_between(f1, f2);
      if (!e12) continue;
      for (int f3 = f2 + 1; f3 < nf; ++f3) {
        const auto* e13 = edges_between(f1, f3);
        const auto* e23 = edges_between(f2, f3);
        if (!e13 || !e23) continue;
        for (int a : *e12) {
          for (int b : *e13) {
            for (int c : *e23) {
              if (a == b || a == c || b == c) continue;
              Circuit circ;
              circ.faces = {f1, f2, f3};
              circ.crossed_edges = {a, b, c};
              circ.labels = {g.edges[a].label, g.edges[b].label,
                             g.edges[c].label};
              const int cmp = reciprocal_sum_cmp_one(
                  {circ.labels[0], circ.labels[1], circ.labels[2]});
              circ.kind = cmp < 0 ? CircuitKind::Hyperbolic
                                  : (cmp == 0 ? CircuitKind::Euclidean
                                              : CircuitKind::Spherical);
              std::vector<int> ends[3] = {{g.edges[a].u, g.edges[a].v},
                                          {g.edges[b].u, g.edges[b].v},
                                          {g.edges[c].u, g.edges[c].v}};
              circ.vertex_parallel = false;
              for (int v : ends[0])
                if (std::count(ends[1].begin(), ends[1].end(), v) &&
                    std::count(ends[2].begin(), ends[2].end(), v))
                  circ.vertex_parallel = true;
              out.push_back(circ);
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

// A contractible truncation triangle: triangular face, all labels 2, three
// distinct trivalent corners, and the three radiating edges do not meet in
// a common vertex (that configuration bounds a vertex of the tetrahedral
// skeleton, not a truncation).
std::optional<int> find_truncation_triangle(const MarkedGraph& g) {
  const auto valence = g.vertex_valence();
  const auto incident = g.vertex_edges();
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const auto& face = g.faces[f];
    if (face.size() != 3) continue;
    bool all_two = true;
    std::set<int> corners;
    for (int e : face) {
      all_two &= g.edges[e].label == 2;
      corners.insert(g.edges[e].u);
      corners.insert(g.edges[e].v);
    }
    if (!all_two || corners.size() != 3) continue;
    bool corners_ok = true;
    std::vector<int> radiating;
    for (int v : corners) {
      if (valence[v] != 3) {
        corners_ok = false;
        break;
      }
      for (int e : incident[v])
        if (std::find(face.begin(), face.end(), e) == face.end())
          radiating.push_back(e);
    }
    if (!corners_ok || radiating.size() != 3) continue;
    std::map<int, int> far_count;
    for (int e : radiating) {
      const int far = corners.count(g.edges[e].u) ? g.edges[e].v : g.edges[e].u;
      ++far_count[far];
    }
    if (far_count.size() == 1) continue;  // concurrent: bounds a vertex
    return static_cast<int>(f);
  }
  return std::nullopt;
}

MarkedGraph contract_triangle(const MarkedGraph& g, int face_idx) {
  const auto& face = g.faces[face_idx];
  std::set<int> tri_edges(face.begin(), face.end());
  std::set<int> corners;
  for (int e : face) {
    corners.insert(g.edges[e].u);
    corners.insert(g.edges[e].v);
  }
  const int merged = *corners.begin();

  MarkedGraph out;
  std::vector<int> edge_map(g.edges.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (tri_edges.count(static_cast<int>(e))) continue;
    MarkedEdge ne = g.edges[e];
    if (corners.count(ne.u)) ne.u = merged;
    if (corners.count(ne.v)) ne.v = merged;
    edge_map[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(ne);
  }
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    if (static_cast<int>(f) == face_idx) continue;
    std::vector<int> cycle;
    for (int e : g.faces[f])
      if (edge_map[e] >= 0) cycle.push_back(edge_map[e]);
    out.faces.push_back(std::move(cycle));
  }
  // Compact vertex ids.
  std::map<int, int> vmap;
  for (auto& e : out.edges) {
    for (int* v : {&e.u, &e.v}) {
      auto it = vmap.find(*v);
      if (it == vmap.end()) it = vmap.emplace(*v, static_cast<int>(vmap.size())).first;
      *v = it->second;
    }
  }
  return out;
}

}  // namespace

MarkedGraph collapse_truncations(const MarkedGraph& g) {
  if (!validate(g).empty())
    throw NotValidatedError("collapse_truncations: graph fails validation");
  MarkedGraph cur = g;
  while (auto f = find_truncation_triangle(cur)) cur = contract_triangle(cur, *f);
  return cur;
}

Smallness is_small(const MarkedGraph& g) {
  if (!validate(g).empty()) return Smallness::Invalid;
  const MarkedGraph tet = collapse_truncations(g);
  // Recognize the tetrahedral skeleton: 4 trivalent vertices, 6 edges,
  // 4 triangular faces, no parallel edges.
  if (tet.vertex_count() != 4 || tet.edges.size() != 6 || tet.faces.size() != 4)
    return Smallness::NotSmall;
  for (int v : tet.vertex_valence())
    if (v != 3) return Smallness::NotSmall;
  for (const auto& f : tet.faces)
    if (f.size() != 3) return Smallness::NotSmall;
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : tet.edges)
    if (!pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
      return Smallness::NotSmall;
  return Smallness::Small;
}

MarkedGraph generalized_tet_graph(const std::array<int, 6>& labels,
                                  const std::array<bool, 4>& truncated) {
  MarkedGraph g;
  // Edge order AB, BC, AC, CD, AD, BD; faces BCD, ACD, ABD, ABC.
  const std::array<std::array<int, 2>, 6> ends{
      {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}, {1, 3}}};
  for (int e = 0; e < 6; ++e) g.edges.push_back({ends[e][0], ends[e][1], labels[e]});
  g.faces = {{1, 3, 5}, {2, 3, 4}, {0, 5, 4}, {0, 1, 2}};

  for (int v = 0; v < 4; ++v) {
    if (!truncated[v]) continue;
    // Incident edges of v and, for the embedding, the faces pairing them.
    std::vector<int> inc;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].u == v || g.edges[e].v == v) inc.push_back(static_cast<int>(e));
    const int base = g.vertex_count();
    std::map<int, int> corner;  // incident edge -> new vertex
    for (std::size_t i = 0; i < inc.size(); ++i) {
      corner[inc[i]] = base + static_cast<int>(i);
      auto& e = g.edges[inc[i]];
      (e.u == v ? e.u : e.v) = base + static_cast<int>(i);
    }
    // For every face through v, insert a triangle edge between the two
    // incident edges of v it contains.
    std::vector<int> tri_face;
    for (auto& face : g.faces) {
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < face.size(); ++i)
        if (corner.count(face[i])) pos.push_back(i);
      if (pos.size() != 2) continue;
      const int eid = static_cast<int>(g.edges.size());
      g.edges.push_back({corner[face[pos[0]]], corner[face[pos[1]]], 2});
      // Insert after the first of the two if adjacent in the cycle,
      // otherwise (wrap-around) append at the end.
      if (pos[1] == pos[0] + 1)
        face.insert(face.begin() + static_cast<long>(pos[1]), eid);
      else
        face.push_back(eid);
      tri_face.push_back(eid);
    }
    g.faces.push_back(tri_face);
  }
  // Truncated original vertices are now orphaned; compact ids.
  std::map<int, int> vmap;
  for (auto& e : g.edges) {
    for (int* vv : {&e.u, &e.v}) {
      auto it = vmap.find(*vv);
      if (it == vmap.end()) it = vmap.emplace(*vv, static_cast<int>(vmap.size())).first;
      *vv = it->second;
    }
  }
  return g;
}

std::string serialize(const MarkedGraph& g) {
  nlohmann::json j;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"ends", {e.u, e.v}}, {"label", e.label}});
  j["faces"] = g.faces;
  return j.dump();
}

MarkedGraph parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GraphParseError(std::string("bad polyhedron file: ") + e.what());
  }
  MarkedGraph g;
  try {
    for (const auto& je : j.at("edges")) {
      MarkedEdge e;
      e.u = je.at("ends").at(0).get<int>();
      e.v = je.at("ends").at(1).get<int>();
      e.label = je.at("label").get<int>();
      g.edges.push_back(e);
    }
    for (const auto& jf : j.at("faces"))
      g.faces.push_back(jf.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw GraphParseError(std::string("bad polyhedron file: ") + e.what());
  }
  return g;
}

}  // namespace hyptet::polyhedra
