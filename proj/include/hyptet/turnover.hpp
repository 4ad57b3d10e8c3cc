#pragma once

// Immersed-turnover search in the reflection tiling of a generalized
// hyperbolic tetrahedron.
//
// Strategy: develop the tiling, fix a developed face plane Pi_F, and look
// for pairs of edge geodesics e1, e2 lying in Pi_F that share no
// generalized vertex.  If a developed plane Pi_1 through e1 and a developed
// plane Pi_2 through e2 meet each other and Pi_F pairwise at angles pi/a,
// pi/b, pi/c with 1/a + 1/b + 1/c < 1, the rotations of orders a and b
// about e1 and e2 generate an (a,b,c) triangle subgroup of the tiling
// group whose invariant plane is the common perpendicular of the three
// planes.  Candidates equal to a truncation plane, or meeting every
// developed edge only perpendicularly or not at all, are embedded vertex
// turnovers rather than immersed ones and are filtered out.

#include "hyptet/develop.hpp"
#include "hyptet/inclusions.hpp"
#include "hyptet/lorentz.hpp"
#include "hyptet/tetra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyptet::turnover {

using inclusions::TriangleType;
using lorentz::Key4;
using lorentz::Plane;
using TurnoverType = TriangleType;

struct RankDeficientError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonSpacelikeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  int depth = 8;
  Real eps = 1e-9;
  int cmax = 100;  // largest denominator for pi-submultiple detection
  std::size_t tile_cap = tiling::kDefaultTileCap;
  int threads = 1;
};

// Smallest integer c in [2, cmax] with |theta - pi/c| < eps * max(1, pi/theta).
std::optional<int> angle_as_submultiple(Real theta, int cmax, Real eps);

// Space-like unit solution of <w, n_i> = 0 for the three plane normals.
// Throws RankDeficientError if the normals do not span a 3-space,
// NonSpacelikeError if the solution is not space-like (spherical or
// Euclidean triple: no hyperbolic invariant plane).
Plane common_perpendicular(const Plane& p1, const Plane& p2, const Plane& p3,
                           Real eps = 1e-9);

struct EdgeLocator {
  std::string word;  // reflection word of the contributing tile
  int base_edge;     // 0..5
};

struct TurnoverWitness {
  TurnoverType type;
  int a, b, c;  // rotation orders at e1, e2, and along pi_1 ^ pi_2
  Plane pi_f, pi_1, pi_2;
  Plane invariant_plane;
  Key4 plane_key;  // orbit-canonical quantized key of invariant_plane
  EdgeLocator e1, e2;
  std::string word_pi_f, word_pi_1, word_pi_2;  // "word:f<i>" provenance
  std::vector<TurnoverType> supergroups;  // direct table supergroups of type
};

struct SearchStats {
  std::uint64_t edge_pairs = 0;
  std::uint64_t shared_vertex_pairs = 0;
  std::uint64_t same_geodesic_pairs = 0;
  std::uint64_t plane_pairs = 0;
  std::uint64_t non_submultiple_angles = 0;  // intersecting, but no pi/c
  std::uint64_t sign_inconsistent = 0;       // no outward orientation exists
  std::uint64_t non_hyperbolic_triples = 0;  // 1/a+1/b+1/c >= 1
  std::uint64_t no_invariant_plane = 0;      // rank-deficient / non-spacelike
  std::uint64_t vertex_parallel = 0;         // filtered embedded re-detections
  std::uint64_t raw_hits = 0;
};

struct SearchResult {
  std::vector<TurnoverWitness> witnesses;
  SearchStats stats;
  int depth = 0;
  std::size_t tiles = 0;

  std::vector<TurnoverType> found_types() const;    // unique, sorted
  std::vector<TurnoverType> maximal_types() const;  // not below another found type

  // Witnesses are the mirror-triangle (reflection) subgroups; rotation
  // subgroups of those stabilize the same plane and their turnovers cover
  // the witnessed ones, so every turnover type present is a table
  // descendant of a found type.
  std::vector<TurnoverType> present_types() const;
};

// True iff the candidate plane is not a developed truncation plane and some
// developed edge geodesic crosses it at an oblique angle.
bool filter_vertex_parallel(const Plane& invariant_plane,
                            const tiling::DevelopmentState& state, Real eps);

SearchResult search(const tetra::GeneralizedTetrahedron& tet,
                    const SearchConfig& cfg = {});

// ---------------------------------------------------------------------------
// Classification against the known lists.

struct Expectation {
  enum class Kind { Item, Conjectural, NoneExpected, OutOfScope };
  Kind kind = Kind::OutOfScope;
  int item = 0;  // 1..3, or 4..14 for the conjectural list
  std::vector<TurnoverType> types;  // sorted, unique

  bool operator==(const Expectation& o) const {
    return kind == o.kind && item == o.item && types == o.types;
  }
};

// Matches the spec's isometry orbit against the classified families:
// items (1)-(3) for tetrahedra with no finite vertex, then the conjectural
// items (4)-(14).  No match means NoneExpected when every vertex is
// non-finite (the classification theorem predicts no immersed turnover)
// and OutOfScope otherwise.
Expectation expected_turnovers(const tetra::TetSpec& spec);

enum class Verdict { Match, Mismatch, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ClassificationReport {
  tetra::TetSpec spec;
  Expectation expected;
  SearchResult result;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

// Runs search and compares: items require the maximal found types to equal
// the prediction exactly; conjectural items require the predicted types to
// be present; negative expectations are at most depth-limited evidence.
ClassificationReport classify_spec(const tetra::TetSpec& spec,
                                   const SearchConfig& cfg = {});

}  // namespace hyptet::turnover
