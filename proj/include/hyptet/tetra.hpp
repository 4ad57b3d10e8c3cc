#pragma once

// Generalized hyperbolic Coxeter tetrahedra T[l,m,q;n,p,r].
//
// The six integers are the submultiples of pi for the dihedral angles along
// the edges AB, BC, AC, CD, AD, BD of the labeled tetrahedron ABCD.  The
// Gram matrix of the four face planes decides existence (Lorentzian
// signature), realization produces concrete face normals and generalized
// vertices in R^{3,1}, and the 24 vertex relabelings give the isometry orbit
// of a spec.

#include "hyptet/lorentz.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hyptet::tetra {

using lorentz::Plane;
using lorentz::PointClass;

struct NotRealizableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllConditionedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vertex ids A..D and fixed index tables shared with the development module.
enum Vertex : int { A = 0, B = 1, C = 2, D = 3 };

inline constexpr int kNumEdges = 6;
// Edge order AB, BC, AC, CD, AD, BD (labels l, m, q, n, p, r).
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{A, B}, {B, C}, {A, C}, {C, D}, {A, D}, {B, D}}};
// Faces are indexed by opposite vertex: face i omits vertex i.
// kEdgeFaces[e] = the two faces through edge e.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeFaces{
    {{2, 3}, {0, 3}, {1, 3}, {0, 1}, {1, 2}, {0, 2}}};
// kVertexEdges[v] = the three edges incident at v.
inline constexpr std::array<std::array<int, 3>, 4> kVertexEdges{
    {{0, 2, 4}, {0, 1, 5}, {1, 2, 3}, {3, 4, 5}}};

inline const char* edge_name(int e) {
  static constexpr const char* names[6] = {"AB", "BC", "AC", "CD", "AD", "BD"};
  return names[e];
}

struct TetSpec {
  int l = 2, m = 2, q = 2, n = 2, p = 2, r = 2;

  std::array<int, 6> labels() const { return {l, m, q, n, p, r}; }
  static TetSpec from_labels(const std::array<int, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }

  bool valid() const {
    for (int v : labels())
      if (v < 2) return false;
    return true;
  }

  auto tie() const { return std::tie(l, m, q, n, p, r); }
  bool operator==(const TetSpec& o) const { return tie() == o.tie(); }
  bool operator!=(const TetSpec& o) const { return !(*this == o); }
  bool operator<(const TetSpec& o) const { return tie() < o.tie(); }

  std::string str() const;
};

// "l,m,q;n,p,r", whitespace-insensitive.
TetSpec parse_spec(const std::string& text);

enum class VertexClass { Finite, Ideal, Truncated };

inline const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::Finite: return "finite";
    case VertexClass::Ideal: return "ideal";
    case VertexClass::Truncated: return "truncated";
  }
  return "?";
}

// Exact rational comparison of 1/a + 1/b + 1/c against 1 over the three
// edge labels at the vertex: > 1 finite, = 1 ideal, < 1 truncated.
VertexClass classify_vertex(const TetSpec& spec, int vertex);

inline bool all_nonfinite(const TetSpec& spec) {
  for (int v = 0; v < 4; ++v)
    if (classify_vertex(spec, v) == VertexClass::Finite) return false;
  return true;
}

using GramMatrix = Mat4;

// Symmetric, unit diagonal, g[f1][f2] = -cos(pi / label of the shared edge).
GramMatrix gram_from_spec(const TetSpec& spec);

enum class Existence { Hyperbolic, NonHyperbolic, Degenerate };

// Eigenvalue signs of g: hyperbolic iff signature (3,1); a zero eigenvalue
// (within eps) is a Euclidean collapse, reported distinctly.
Existence existence(const GramMatrix& g, Real eps = 1e-9);

inline bool exists_hyperbolic(const GramMatrix& g, Real eps = 1e-9) {
  return existence(g, eps) == Existence::Hyperbolic;
}

struct GeneralizedVertex {
  Vec4 dual;  // normalized: point, ideal point, or truncation pole
  VertexClass cls;
  std::optional<Plane> truncation;  // present iff cls == Truncated
};

struct GeneralizedTetrahedron {
  TetSpec spec;
  std::array<Plane, 4> faces;  // inward normals: interior = all <x,n> < 0
  std::array<GeneralizedVertex, 4> vertices;
  Vec4 interior;  // a time-like point inside, on the upper sheet

  std::array<lorentz::Motion, 4> face_reflections() const {
    return {lorentz::reflection(faces[0]), lorentz::reflection(faces[1]),
            lorentz::reflection(faces[2]), lorentz::reflection(faces[3])};
  }
};

// Lorentzian Gram factorization plus vertex duals from the 3x4
// orthogonality systems.  Throws NotRealizableError if the signature test
// fails, IllConditionedError if the reconstruction residual exceeds 1e-7.
GeneralizedTetrahedron realize(const TetSpec& spec);

// Max |<n_i,n_j> - g_ij|.
Real gram_residual(const GeneralizedTetrahedron& tet);

// All specs obtained by the 24 vertex relabelings, deduplicated and sorted.
std::vector<TetSpec> symmetry_orbit(const TetSpec& spec);

inline TetSpec canonical_orbit_rep(const TetSpec& spec) {
  return symmetry_orbit(spec).front();
}

}  // namespace hyptet::tetra
