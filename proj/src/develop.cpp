#include "hyptet/develop.hpp"

#include <algorithm>

namespace hyptet::tiling {

using lorentz::ArrayHash;
using lorentz::inner;
using lorentz::Key16;
using lorentz::Key8;
using lorentz::norm2;

namespace {

struct Collector {
  DevelopmentState& state;
  std::unordered_map<Key16, int, ArrayHash<16>> tile_index;
  std::unordered_map<Key8, int, ArrayHash<8>> edge_index;

  void add_plane(const Plane& p, bool truncation, int tile, int source) {
    const Key4 key = lorentz::plane_key(p);
    if (state.plane_index.emplace(key, static_cast<int>(state.planes.size())).second)
      state.planes.push_back({p, truncation, tile, source});
  }

  void register_tile(int tile_idx) {
    const Tile& tile = state.tiles[tile_idx];
    const auto& tet = state.tet;
    std::array<Vec4, 4> duals;
    std::array<PointClass, 4> classes;
    std::array<Key4, 4> keys;
    for (int v = 0; v < 4; ++v) {
      duals[v] = lorentz::normalize_dual(lorentz::apply(tile.motion, tet.vertices[v].dual));
      classes[v] = lorentz::point_class(duals[v]);
      keys[v] = lorentz::dual_key(duals[v], classes[v]);
    }
    for (int f = 0; f < 4; ++f)
      add_plane(lorentz::apply_plane(tile.motion, tet.faces[f]), false, tile_idx, f);
    for (int v = 0; v < 4; ++v)
      if (tet.vertices[v].truncation)
        add_plane(lorentz::apply_plane(tile.motion, *tet.vertices[v].truncation),
                  true, tile_idx, v);
    for (int e = 0; e < tetra::kNumEdges; ++e) {
      const auto [a, b] = tetra::kEdgeVertices[e];
      Key4 ka = keys[a], kb = keys[b];
      if (kb < ka) std::swap(ka, kb);
      Key8 ekey;
      std::copy(ka.begin(), ka.end(), ekey.begin());
      std::copy(kb.begin(), kb.end(), ekey.begin() + 4);
      if (!edge_index.emplace(ekey, static_cast<int>(state.edges.size())).second)
        continue;
      const auto [f1, f2] = tetra::kEdgeFaces[e];
      EdgeRef ref;
      ref.tile = tile_idx;
      ref.base_edge = e;
      ref.label = tet.spec.labels()[e];
      ref.plane_a = lorentz::apply_plane(tile.motion, tet.faces[f1]);
      ref.plane_b = lorentz::apply_plane(tile.motion, tet.faces[f2]);
      ref.va = duals[a];
      ref.vb = duals[b];
      ref.ca = classes[a];
      ref.cb = classes[b];
      ref.ka = keys[a];
      ref.kb = keys[b];
      state.edges.push_back(std::move(ref));
    }
  }
};

}  // namespace

DevelopmentState develop(const tetra::GeneralizedTetrahedron& tet, int depth,
                         std::size_t tile_cap) {
  if (depth < 0 || depth > kMaxDepth)
    throw DepthExceededError("develop: depth " + std::to_string(depth) +
                             " outside [0, " + std::to_string(kMaxDepth) + "]");
  DevelopmentState state;
  state.tet = tet;
  state.depth = depth;

  Collector collector{state, {}, {}};
  const auto reflections = tet.face_reflections();

  state.tiles.push_back({Motion::identity(), ""});
  collector.tile_index.emplace(lorentz::motion_key(state.tiles[0].motion), 0);
  collector.register_tile(0);

  std::size_t frontier_begin = 0;
  for (int d = 0; d < depth; ++d) {
    const std::size_t frontier_end = state.tiles.size();
    for (std::size_t t = frontier_begin; t < frontier_end; ++t) {
      for (int f = 0; f < 4; ++f) {
        const Motion child = lorentz::compose(state.tiles[t].motion, reflections[f]);
        const Key16 key = lorentz::motion_key(child);
        if (collector.tile_index.find(key) != collector.tile_index.end()) continue;
        if (state.tiles.size() >= tile_cap)
          throw BlowUpError("develop: tile cap " + std::to_string(tile_cap) +
                            " exceeded at depth " + std::to_string(d + 1));
        const int idx = static_cast<int>(state.tiles.size());
        state.tiles.push_back({child, state.tiles[t].word + static_cast<char>('0' + f)});
        collector.tile_index.emplace(key, idx);
        collector.register_tile(idx);
      }
    }
    frontier_begin = frontier_end;
  }
  return state;
}

std::vector<Tile> develop_around_edge(const tetra::GeneralizedTetrahedron& tet,
                                      int base_edge) {
  const auto [f1, f2] = tetra::kEdgeFaces[base_edge];
  const lorentz::Motion r1 = lorentz::reflection(tet.faces[f1]);
  const lorentz::Motion r2 = lorentz::reflection(tet.faces[f2]);
  const int k = tet.spec.labels()[base_edge];
  std::vector<Tile> cycle;
  cycle.push_back({Motion::identity(), ""});
  for (int i = 1; i < 2 * k; ++i) {
    const bool odd = i % 2;
    cycle.push_back({lorentz::compose(cycle.back().motion, odd ? r1 : r2),
                     cycle.back().word + static_cast<char>('0' + (odd ? f1 : f2))});
  }
  return cycle;
}

bool edge_in_plane(const EdgeRef& e, const Plane& p, Real tol) {
  const Real sa = tol * std::max(1.0, e.va.norm());
  const Real sb = tol * std::max(1.0, e.vb.norm());
  return std::abs(inner(e.va, p.normal)) <= sa &&
         std::abs(inner(e.vb, p.normal)) <= sb;
}

std::vector<int> coplanar_edges(const DevelopmentState& state, const Plane& pi_f,
                                Real tol) {
  if (state.find_plane(pi_f) < 0)
    throw PlaneNotInStateError("coplanar_edges: plane not in development");
  std::vector<int> result;
  for (std::size_t i = 0; i < state.edges.size(); ++i)
    if (edge_in_plane(state.edges[i], pi_f, tol)) result.push_back(static_cast<int>(i));
  std::sort(result.begin(), result.end(), [&](int lhs, int rhs) {
    const auto& a = state.edges[lhs];
    const auto& b = state.edges[rhs];
    const auto& wa = state.tiles[a.tile].word;
    const auto& wb = state.tiles[b.tile].word;
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    if (wa != wb) return wa < wb;
    return a.base_edge < b.base_edge;
  });
  return result;
}

std::vector<SidePlane> side_planes(const DevelopmentState& state,
                                   const EdgeRef& e, const Plane& pi_f,
                                   Real tol) {
  if (!edge_in_plane(e, pi_f, tol))
    throw EdgeNotCoplanarError("side_planes: edge not coplanar with pi_f");
  const Key4 fkey = lorentz::plane_key(pi_f);
  std::vector<SidePlane> result;
  for (std::size_t i = 0; i < state.planes.size(); ++i) {
    const auto& tp = state.planes[i];
    if (tp.truncation) continue;
    if (lorentz::plane_key(tp.plane) == fkey) continue;
    if (!edge_in_plane(e, tp.plane, tol)) continue;
    const auto rel = lorentz::plane_relation(tp.plane, pi_f);
    if (!rel.intersecting()) continue;  // numerically possible only for junk
    result.push_back({static_cast<int>(i), rel.value});
  }
  std::sort(result.begin(), result.end(),
            [](const SidePlane& a, const SidePlane& b) {
              if (a.angle != b.angle) return a.angle < b.angle;
              return a.plane < b.plane;
            });
  return result;
}

}  // namespace hyptet::tiling
