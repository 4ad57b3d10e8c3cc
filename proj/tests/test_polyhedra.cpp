#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyptet/polyhedra.hpp"
#include "hyptet/tetra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace hyptet;
using namespace hyptet::polyhedra;

namespace {

MarkedGraph prism_graph(int sides, int lateral_label, int polygon_label) {
  // Two n-gons joined by quads; all prism vertices are trivalent.
  MarkedGraph g;
  const int n = sides;
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, polygon_label});
  for (int i = 0; i < n; ++i)
    g.edges.push_back({n + i, n + (i + 1) % n, polygon_label});
  for (int i = 0; i < n; ++i) g.edges.push_back({i, n + i, lateral_label});
  std::vector<int> bottom, top;
  for (int i = 0; i < n; ++i) bottom.push_back(i);
  for (int i = 0; i < n; ++i) top.push_back(n + i);
  g.faces.push_back(bottom);
  g.faces.push_back(top);
  for (int i = 0; i < n; ++i)
    g.faces.push_back({i, 2 * n + (i + 1) % n, n + i, 2 * n + i});
  return g;
}

MarkedGraph cube_graph(int label = 2) {
  MarkedGraph g;
  for (int i = 0; i < 4; ++i) g.edges.push_back({i, (i + 1) % 4, label});
  for (int i = 0; i < 4; ++i) g.edges.push_back({4 + i, 4 + (i + 1) % 4, label});
  for (int i = 0; i < 4; ++i) g.edges.push_back({i, 4 + i, label});
  g.faces = {{0, 1, 2, 3},
             {4, 5, 6, 7},
             {0, 9, 4, 8},
             {1, 10, 5, 9},
             {2, 11, 6, 10},
             {3, 8, 7, 11}};
  return g;
}

}  // namespace

TEST_CASE("tetrahedral graphs validate") {
  const auto g = generalized_tet_graph({2, 6, 3, 2, 6, 3});
  CHECK(validate(g).empty());
  CHECK(g.vertex_count() == 4);
  CHECK(g.edges.size() == 6);
  CHECK(g.faces.size() == 4);
}

TEST_CASE("validation violations") {
  // Square pyramid: quadrivalent apex with labels (2,2,2,3), sum 11/6 != 2.
  MarkedGraph pyr;
  pyr.edges = {{0, 1, 2}, {1, 2, 2}, {2, 3, 2}, {3, 0, 2},
               {0, 4, 2}, {1, 4, 2}, {2, 4, 2}, {3, 4, 3}};
  pyr.faces = {{0, 1, 2, 3}, {0, 5, 4}, {1, 6, 5}, {2, 7, 6}, {3, 4, 7}};
  const auto violations = validate(pyr);
  CHECK(std::any_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.rule == "quadrivalent-sum";
  }));

  auto bad_label = generalized_tet_graph({2, 6, 3, 2, 6, 3});
  bad_label.edges[0].label = 1;
  const auto label_violations = validate(bad_label);
  CHECK(std::any_of(label_violations.begin(), label_violations.end(),
                    [](const Violation& v) { return v.rule == "edge-label"; }));

  auto bad_euler = generalized_tet_graph({2, 6, 3, 2, 6, 3});
  bad_euler.faces.pop_back();
  CHECK_FALSE(validate(bad_euler).empty());
}

TEST_CASE("combinatorial vertex classes") {
  // Vertex D of the tetrahedral graph carries edges (n, p, r).
  const auto ideal = generalized_tet_graph({5, 4, 4, 2, 3, 6});
  CHECK(vertex_class(ideal, 3) == PolyVertexClass::Ideal);  // (2,3,6)

  const auto finite = generalized_tet_graph({5, 4, 4, 2, 3, 5});
  CHECK(vertex_class(finite, 3) == PolyVertexClass::Finite);  // (2,3,5)

  const auto super_ideal = generalized_tet_graph({2, 2, 2, 4, 4, 4});
  CHECK_THROWS_AS(vertex_class(super_ideal, 3), NotValidatedError);  // (4,4,4)
}

TEST_CASE("turnover circuits") {
  // Once-truncated tetrahedron (a prism whose triangle is the truncation
  // face): the circuit around the all-2 triangle crosses the three edges
  // that radiated from the truncated vertex.
  const auto prism = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                           {true, false, false, false});
  REQUIRE(validate(prism).empty());
  const auto circuits = turnover_circuits(prism);
  bool found_prismatic = false;
  for (const auto& c : circuits) {
    if (c.vertex_parallel) continue;
    std::array<int, 3> labels = c.labels;
    std::sort(labels.begin(), labels.end());
    if (labels == std::array<int, 3>{4, 4, 4}) {
      found_prismatic = true;
      CHECK(c.kind == CircuitKind::Hyperbolic);
    }
  }
  CHECK(found_prismatic);

  // Tetrahedral graph: all circuits surround vertices.
  const auto k4 = generalized_tet_graph({2, 3, 7, 2, 3, 7});
  for (const auto& c : turnover_circuits(k4)) CHECK(c.vertex_parallel);
  bool found_237 = false;
  for (const auto& c : turnover_circuits(k4)) {
    std::array<int, 3> labels = c.labels;
    std::sort(labels.begin(), labels.end());
    if (labels == std::array<int, 3>{2, 3, 7}) {
      found_237 = true;
      CHECK(c.kind == CircuitKind::Hyperbolic);
    }
  }
  CHECK(found_237);

  // Cube: three faces around each corner, always concurrent edges.
  const auto circuits_cube = turnover_circuits(cube_graph());
  CHECK_FALSE(circuits_cube.empty());
  for (const auto& c : circuits_cube) CHECK(c.vertex_parallel);
}

TEST_CASE("collapse of truncation triangles") {
  const auto prism = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                           {true, false, false, false});
  const auto collapsed = collapse_truncations(prism);
  CHECK(collapsed.vertex_count() == 4);
  CHECK(collapsed.edges.size() == 6);
  CHECK(collapsed.faces.size() == 4);

  const auto k4 = generalized_tet_graph({2, 6, 3, 2, 6, 3});
  CHECK(collapse_truncations(k4) == k4);

  const auto full = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                          {true, true, true, true});
  REQUIRE(validate(full).empty());
  const auto core = collapse_truncations(full);
  CHECK(core.vertex_count() == 4);
  CHECK(core.edges.size() == 6);
  // The six surviving edges keep the original labels.
  for (const auto& e : core.edges) CHECK(e.label == 4);
}

TEST_CASE("smallness") {
  CHECK(is_small(generalized_tet_graph({2, 6, 3, 2, 6, 3})) == Smallness::Small);
  CHECK(is_small(generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, false, false, false})) ==
        Smallness::Small);
  CHECK(is_small(generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, true, false, false})) ==
        Smallness::Small);
  CHECK(is_small(generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, true, true, false})) ==
        Smallness::Small);
  CHECK(is_small(generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, true, true, true})) ==
        Smallness::Small);

  CHECK(is_small(cube_graph()) == Smallness::NotSmall);
  CHECK(is_small(prism_graph(5, 2, 2)) == Smallness::NotSmall);

  auto invalid = generalized_tet_graph({2, 6, 3, 2, 6, 3});
  invalid.edges[2].label = 0;
  CHECK(is_small(invalid) == Smallness::Invalid);
}

TEST_CASE("smallness is invariant under relabeling") {
  // Renumber vertices and shuffle edge/face order of the once-truncated
  // form; the verdict must not change.
  const auto g = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, false, false, false});
  const int n = g.vertex_count();
  std::vector<int> vperm(n);
  for (int i = 0; i < n; ++i) vperm[i] = (i * 5 + 2) % n;  // 5 coprime to 6
  MarkedGraph h;
  std::vector<int> eperm(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    eperm[e] = static_cast<int>((e * 7 + 3) % g.edges.size());  // 7 coprime to 9
  std::vector<int> einv(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) einv[eperm[e]] = static_cast<int>(e);
  h.edges.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    h.edges[eperm[e]] = {vperm[g.edges[e].u], vperm[g.edges[e].v],
                         g.edges[e].label};
  for (const auto& face : g.faces) {
    std::vector<int> cycle;
    for (int e : face) cycle.push_back(eperm[e]);
    h.faces.push_back(cycle);
  }
  std::rotate(h.faces.begin(), h.faces.begin() + 2, h.faces.end());
  CHECK(is_small(h) == Smallness::Small);
}

TEST_CASE("realized specs emit small graphs") {
  // Cross-module consistency: the skeleton of a realizable spec, with
  // truncation triangles where the realization truncates, validates and is
  // recognized as small.
  for (int l = 2; l <= 4; ++l)
    for (int m = 2; m <= 4; ++m)
      for (int q = 2; q <= 4; ++q) {
        const hyptet::tetra::TetSpec spec{l, m, q, 2, 4, 3};
        if (!hyptet::tetra::exists_hyperbolic(
                hyptet::tetra::gram_from_spec(spec)))
          continue;
        std::array<bool, 4> trunc{};
        for (int v = 0; v < 4; ++v)
          trunc[v] = hyptet::tetra::classify_vertex(spec, v) ==
                     hyptet::tetra::VertexClass::Truncated;
        const auto g = generalized_tet_graph(spec.labels(), trunc);
        CHECK(validate(g).empty());
        CHECK(is_small(g) == Smallness::Small);
      }
}

TEST_CASE("collapse strictly decreases the face count to a fixpoint") {
  MarkedGraph g = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                        {true, true, true, true});
  std::size_t faces = g.faces.size();
  const MarkedGraph collapsed = collapse_truncations(g);
  CHECK(collapsed.faces.size() < faces);
  CHECK(collapse_truncations(collapsed) == collapsed);
}

TEST_CASE("serialization round-trips") {
  const auto g = generalized_tet_graph({4, 4, 4, 4, 4, 4},
                                       {true, false, true, false});
  CHECK(parse(serialize(g)) == g);

  const std::string canonical = serialize(g);
  CHECK(serialize(parse(canonical)) == canonical);

  CHECK_THROWS_AS(parse("not json"), GraphParseError);
  CHECK_THROWS_AS(parse("{\"edges\":[{\"ends\":[0]}]}"), GraphParseError);
}

TEST_CASE("golden polyhedron files") {
  for (const char* name : {"tetrahedron_263.json", "truncated_tet_444.json",
                           "cube.json", "pentagonal_prism.json"}) {
    std::ifstream in(std::string(HYPTET_TEST_DATA_DIR) + "/" + name,
                     std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    const MarkedGraph g = parse(text);
    CHECK(serialize(g) == text);
    CHECK(validate(g).empty());
  }
}
