#pragma once

// Breadth-first development of the reflection tiling of H^3 by copies of a
// realized generalized tetrahedron.  Tiles are deduplicated by quantized
// motion matrix; developed face planes, truncation planes and edge
// geodesics are collected with quantized keys.

#include "hyptet/lorentz.hpp"
#include "hyptet/tetra.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace hyptet::tiling {

using lorentz::Key4;
using lorentz::Motion;
using lorentz::Plane;
using lorentz::PointClass;

struct DepthExceededError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PlaneNotInStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EdgeNotCoplanarError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxDepth = 12;
inline constexpr std::size_t kDefaultTileCap = 1'000'000;

// One developed copy of the tetrahedron: the motion and the reflection word
// (base-face indices '0'..'3') that produced it.
struct Tile {
  Motion motion;
  std::string word;
};

struct TaggedPlane {
  Plane plane;
  bool truncation;  // truncation plane vs developed face plane
  int tile;         // first contributing tile
  int source;       // face index, or vertex index for truncation planes
};

// A developed edge geodesic.  Identified (and deduplicated) by the
// unordered pair of its normalized endpoint duals; the two incident
// developed face planes of the first contributing tile are kept for
// label/incidence work.
struct EdgeRef {
  int tile;
  int base_edge;  // 0..5, see tetra::kEdgeVertices
  int label;
  Plane plane_a, plane_b;
  Vec4 va, vb;
  PointClass ca, cb;
  Key4 ka, kb;

  bool shares_vertex(const EdgeRef& o) const {
    return ka == o.ka || ka == o.kb || kb == o.ka || kb == o.kb;
  }
};

struct DevelopmentState {
  tetra::GeneralizedTetrahedron tet;
  int depth = 0;
  std::vector<Tile> tiles;
  std::vector<TaggedPlane> planes;
  std::vector<EdgeRef> edges;
  std::unordered_map<Key4, int, lorentz::ArrayHash<4>> plane_index;

  const Tile& tile_of(const EdgeRef& e) const { return tiles[e.tile]; }
  int find_plane(const Plane& p) const {
    auto it = plane_index.find(lorentz::plane_key(p));
    return it == plane_index.end() ? -1 : it->second;
  }
};

// BFS from the identity tile over the four face reflections, deterministic
// (word length, then lexicographic).  Throws DepthExceededError for
// depth < 0 or > kMaxDepth, BlowUpError past tile_cap.
DevelopmentState develop(const tetra::GeneralizedTetrahedron& tet, int depth,
                         std::size_t tile_cap = kDefaultTileCap);

// The 2k tiles around one base edge of label k, in cyclic order.
std::vector<Tile> develop_around_edge(const tetra::GeneralizedTetrahedron& tet,
                                      int base_edge);

// True iff the edge geodesic lies in the plane (both endpoint duals
// Lorentz-orthogonal to the normal).
bool edge_in_plane(const EdgeRef& e, const Plane& p, Real tol = 1e-8);

// Indices into state.edges of every edge whose geodesic lies in pi_f,
// sorted by word length then lexicographically.  pi_f must be a developed
// plane of the state.
std::vector<int> coplanar_edges(const DevelopmentState& state, const Plane& pi_f,
                                Real tol = 1e-8);

struct SidePlane {
  int plane;   // index into state.planes
  Real angle;  // dihedral angle to pi_f from plane_relation
};

// All developed face planes through the edge's geodesic other than pi_f
// (label-1 of them once the cycle around the edge is fully developed), each
// with its dihedral angle to pi_f.
std::vector<SidePlane> side_planes(const DevelopmentState& state,
                                   const EdgeRef& e, const Plane& pi_f,
                                   Real tol = 1e-8);

}  // namespace hyptet::tiling
