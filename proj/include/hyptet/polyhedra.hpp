#pragma once

// Combinatorial layer for Coxeter polyhedra: labeled planar graphs
// (1-skeletons with dihedral-angle marks), the ideal-vertex rules,
// turnover 3-circuits, contraction of truncation triangles, and the
// smallness test by generalized-tetrahedron recognition.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyptet::polyhedra {

struct NotValidatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GraphParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MarkedEdge {
  int u = 0, v = 0;  // endpoints
  int label = 2;     // dihedral angle pi/label
};

// A labeled planar graph: edges plus faces as cyclic edge-index sequences;
// the vertex count is inferred from the edges.
struct MarkedGraph {
  std::vector<MarkedEdge> edges;
  std::vector<std::vector<int>> faces;

  int vertex_count() const;
  std::vector<int> vertex_valence() const;
  std::vector<std::vector<int>> vertex_edges() const;

  bool operator==(const MarkedGraph& o) const;
};

struct Violation {
  std::string rule;
  std::string detail;
};

// Empty iff the graph is a plausible Coxeter-polyhedron skeleton: labels
// >= 2, valences 3 or 4, Euler relation, every edge in exactly two faces,
// faces are closed walks, and every quadrivalent vertex has incident
// reciprocal label sum exactly 2 (an ideal vertex).  Trivalent vertices may
// have any reciprocal sum here.
std::vector<Violation> validate(const MarkedGraph& g);

enum class PolyVertexClass { Finite, Ideal };

// Trivalent: reciprocal sum > 1 finite, = 1 ideal; quadrivalent: ideal.
// A trivalent vertex with sum < 1 is a super-ideal vertex, which a
// polyhedron presented post-truncation cannot have: NotValidatedError.
PolyVertexClass vertex_class(const MarkedGraph& g, int vertex);

enum class CircuitKind { Hyperbolic, Euclidean, Spherical };

struct Circuit {
  std::array<int, 3> faces;
  std::array<int, 3> crossed_edges;
  std::array<int, 3> labels;
  CircuitKind kind;
  bool vertex_parallel;  // the three crossed edges meet at one vertex
};

// All 3-circuits: unordered triples of pairwise-adjacent faces crossing
// three distinct edges, classified by the exact reciprocal label sum.
std::vector<Circuit> turnover_circuits(const MarkedGraph& g);

// Contracts every triangular face whose three edge labels are 2 (a
// truncation triangle / mirrored triangle) to a single trivalent vertex,
// repeating to a fixpoint.  Triangles whose radiating edges meet in a
// common vertex bound a vertex, not a truncation, and are left alone.
MarkedGraph collapse_truncations(const MarkedGraph& g);

enum class Smallness { Small, NotSmall, Invalid };

inline const char* to_string(Smallness s) {
  switch (s) {
    case Smallness::Small: return "small";
    case Smallness::NotSmall: return "not-small";
    case Smallness::Invalid: return "invalid";
  }
  return "?";
}

// Small iff, after collapsing truncation triangles, the graph is the
// 1-skeleton of the tetrahedron.
Smallness is_small(const MarkedGraph& g);

// ---------------------------------------------------------------------------
// Builders and serialization.

// K4 skeleton with edge labels (AB, BC, AC, CD, AD, BD) and the chosen
// vertices replaced by truncation triangles (all new edges labeled 2).
MarkedGraph generalized_tet_graph(const std::array<int, 6>& labels,
                                  const std::array<bool, 4>& truncated = {});

// JSON text: {"edges":[{"ends":[u,v],"label":k},...],"faces":[[...],...]}.
// parse(serialize(g)) == g and serialize(parse(s)) == s for canonical s.
std::string serialize(const MarkedGraph& g);
MarkedGraph parse(const std::string& text);

}  // namespace hyptet::polyhedra
