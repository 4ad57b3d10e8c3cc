#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyptet/tetra.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace hyptet;
using namespace hyptet::tetra;

namespace {

// Independent signature oracle: characteristic polynomial coefficients from
// closed-form principal minors, positive/negative root counts by Descartes'
// rule (exact for a symmetric matrix, whose eigenvalues are all real).
struct Signature {
  int pos, neg, zero;
};

double minor2(const Mat4& g, int i, int j) {
  return g(i, i) * g(j, j) - g(i, j) * g(j, i);
}

double minor3(const Mat4& g, int i, int j, int k) {
  return g(i, i) * (g(j, j) * g(k, k) - g(j, k) * g(k, j)) -
         g(i, j) * (g(j, i) * g(k, k) - g(j, k) * g(k, i)) +
         g(i, k) * (g(j, i) * g(k, j) - g(j, j) * g(k, i));
}

int descartes(const std::array<double, 5>& coeffs, double tol) {
  int changes = 0;
  int last = 0;
  for (double c : coeffs) {
    const int s = c > tol ? 1 : (c < -tol ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Signature signature_oracle(const Mat4& g, double tol = 1e-9) {
  const double c1 = g.trace();
  const double c2 = minor2(g, 0, 1) + minor2(g, 0, 2) + minor2(g, 0, 3) +
                    minor2(g, 1, 2) + minor2(g, 1, 3) + minor2(g, 2, 3);
  const double c3 = minor3(g, 0, 1, 2) + minor3(g, 0, 1, 3) +
                    minor3(g, 0, 2, 3) + minor3(g, 1, 2, 3);
  const double c4 = g.determinant();
  // p(x) = x^4 - c1 x^3 + c2 x^2 - c3 x + c4
  const std::array<double, 5> p{1, -c1, c2, -c3, c4};
  const std::array<double, 5> pneg{1, c1, c2, c3, c4};
  Signature s{};
  s.pos = descartes(p, tol);
  s.neg = descartes(pneg, tol);
  s.zero = 4 - s.pos - s.neg;
  return s;
}

}  // namespace

TEST_CASE("gram matrix entries follow the edge-to-face-pair mapping") {
  CHECK((gram_from_spec({2, 2, 2, 2, 2, 2}) - Mat4::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const Mat4 g = gram_from_spec({2, 6, 3, 2, 6, 3});
  // Faces indexed F_A,F_B,F_C,F_D.
  CHECK(g(2, 3) == doctest::Approx(0.0));                    // edge AB, l=2
  CHECK(g(0, 3) == doctest::Approx(-std::sqrt(3.0) / 2));    // edge BC, m=6
  CHECK(g(1, 3) == doctest::Approx(-0.5));                   // edge AC, q=3
  CHECK(g(0, 1) == doctest::Approx(0.0));                    // edge CD, n=2
  CHECK(g(1, 2) == doctest::Approx(-std::sqrt(3.0) / 2));    // edge AD, p=6
  CHECK(g(0, 2) == doctest::Approx(-0.5));                   // edge BD, r=3

  const Mat4 g4 = gram_from_spec({4, 4, 4, 4, 4, 4});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(g4(i, j) == doctest::Approx(-std::sqrt(2.0) / 2));
}

TEST_CASE("existence agrees with the characteristic-polynomial oracle") {
  // Frozen expectations, computed with the oracle:
  //   T[2,2,2;2,2,2] signature (4,0) -> not hyperbolic
  //   T[2,6,3;2,6,3] signature (3,1) -> hyperbolic
  //   T[4,4,4;4,4,4] signature (3,1) -> hyperbolic
  const Mat4 g_sph = gram_from_spec({2, 2, 2, 2, 2, 2});
  CHECK(signature_oracle(g_sph).pos == 4);
  CHECK_FALSE(exists_hyperbolic(g_sph));

  for (const TetSpec spec : {TetSpec{2, 6, 3, 2, 6, 3}, TetSpec{4, 4, 4, 4, 4, 4}}) {
    const Mat4 g = gram_from_spec(spec);
    const Signature s = signature_oracle(g);
    CHECK(s.pos == 3);
    CHECK(s.neg == 1);
    CHECK(exists_hyperbolic(g));
  }

  // Full agreement across a scan.
  for (int l = 2; l <= 4; ++l)
    for (int m = 2; m <= 4; ++m)
      for (int q = 2; q <= 4; ++q)
        for (int n = 2; n <= 4; ++n) {
          const TetSpec spec{l, m, q, n, 3, 5};
          const Mat4 g = gram_from_spec(spec);
          const Signature s = signature_oracle(g);
          const Existence e = existence(g);
          if (s.zero > 0)
            CHECK(e == Existence::Degenerate);
          else if (s.pos == 3 && s.neg == 1)
            CHECK(e == Existence::Hyperbolic);
          else
            CHECK(e == Existence::NonHyperbolic);
        }
}

TEST_CASE("degenerate gram matrices are reported distinctly") {
  Mat4 g = Mat4::Constant(-1.0 / 3.0);
  g.diagonal().setOnes();
  CHECK(existence(g) == Existence::Degenerate);
  CHECK_FALSE(exists_hyperbolic(g));
}

TEST_CASE("combinatorial vertex classes") {
  CHECK(classify_vertex({2, 6, 3, 2, 6, 3}, A) == VertexClass::Ideal);
  for (int v = 0; v < 4; ++v)
    CHECK(classify_vertex({4, 4, 4, 4, 4, 4}, v) == VertexClass::Truncated);
  CHECK(classify_vertex({2, 3, 3, 5, 2, 2}, A) == VertexClass::Finite);
}

TEST_CASE("realize T[2,6,3;2,6,3]: all-ideal, tiny residual") {
  const auto tet = realize({2, 6, 3, 2, 6, 3});
  CHECK(gram_residual(tet) < 1e-9);
  for (const auto& v : tet.vertices) {
    CHECK(v.cls == VertexClass::Ideal);
    CHECK_FALSE(v.truncation.has_value());
  }
  CHECK(lorentz::norm2(tet.interior) == doctest::Approx(-1.0));
  CHECK(tet.interior[3] > 0);
  for (const auto& f : tet.faces)
    CHECK(lorentz::inner(tet.interior, f.normal) < 0);
}

TEST_CASE("realize T[4,4,4;4,4,4]: four truncated vertices, orthogonal planes") {
  const auto tet = realize({4, 4, 4, 4, 4, 4});
  CHECK(gram_residual(tet) < 1e-9);
  for (int v = 0; v < 4; ++v) {
    const auto& gv = tet.vertices[v];
    REQUIRE(gv.cls == VertexClass::Truncated);
    REQUIRE(gv.truncation.has_value());
    for (int f = 0; f < 4; ++f) {
      if (f == v) continue;  // faces through the vertex are the others
      const auto rel = lorentz::plane_relation(*gv.truncation, tet.faces[f]);
      CHECK(rel.kind == lorentz::PlaneRelation::Kind::Intersecting);
      CHECK(std::abs(rel.value - M_PI / 2) < 1e-8);
    }
  }
}

TEST_CASE("realize rejects non-hyperbolic specs") {
  CHECK_THROWS_AS(realize({2, 2, 2, 2, 2, 2}), NotRealizableError);
}

TEST_CASE("vertex duals are orthogonal to their three faces") {
  const auto tet = realize({2, 7, 3, 2, 8, 3});
  for (int v = 0; v < 4; ++v)
    for (int f = 0; f < 4; ++f) {
      if (f == v) continue;
      CHECK(std::abs(lorentz::inner(tet.vertices[v].dual, tet.faces[f].normal)) <
            1e-9 * std::max(1.0, tet.vertices[v].dual.norm()));
    }
}

TEST_CASE("symmetry orbit") {
  const auto orbit = symmetry_orbit({2, 6, 3, 2, 6, 3});
  CHECK(24 % orbit.size() == 0);
  CHECK(std::find(orbit.begin(), orbit.end(), TetSpec{3, 6, 2, 3, 6, 2}) !=
        orbit.end());

  const auto trivial = symmetry_orbit({2, 2, 2, 2, 2, 2});
  CHECK(trivial.size() == 1);

  // Swapping A and B sends T[2,m,q;2,p,3] to T[2,q,m;2,3,p].
  const auto orbit2 = symmetry_orbit({2, 7, 4, 2, 8, 3});
  CHECK(std::find(orbit2.begin(), orbit2.end(), TetSpec{2, 4, 7, 2, 3, 8}) !=
        orbit2.end());
}

TEST_CASE("orbit members share vertex-class multiset and existence") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<int, 6> labels;
    for (auto& v : labels) v = 2 + static_cast<int>(rng() % 6);
    const TetSpec spec = TetSpec::from_labels(labels);
    std::multiset<VertexClass> base_classes;
    for (int v = 0; v < 4; ++v) base_classes.insert(classify_vertex(spec, v));
    const Existence base_ex = existence(gram_from_spec(spec));
    for (const auto& member : symmetry_orbit(spec)) {
      std::multiset<VertexClass> classes;
      for (int v = 0; v < 4; ++v) classes.insert(classify_vertex(member, v));
      CHECK(classes == base_classes);
      CHECK(existence(gram_from_spec(member)) == base_ex);
    }
  }
}

TEST_CASE("spec text format") {
  CHECK(parse_spec("2,6,3;2,6,3") == TetSpec{2, 6, 3, 2, 6, 3});
  CHECK(parse_spec(" 2 , 6,3 ;2,6, 3 ") == TetSpec{2, 6, 3, 2, 6, 3});
  CHECK(parse_spec("2,6,3;2,6,3").str() == "2,6,3;2,6,3");
  CHECK_THROWS_AS(parse_spec("2,6,3,2,6,3"), SpecParseError);
  CHECK_THROWS_AS(parse_spec("2,6;3,2,6,3"), SpecParseError);
  CHECK_THROWS_AS(parse_spec("1,6,3;2,6,3"), SpecParseError);
  CHECK_THROWS_AS(parse_spec("2,6,x;2,6,3"), SpecParseError);
}

TEST_CASE("nine compact tetrahedra with entries up to 8") {
  // All-finite-vertex realizable specs, up to isometry: the classical
  // enumeration of compact simplices.  Frozen from a scan.
  const std::vector<TetSpec> expected = {
      {2, 2, 3, 2, 5, 3}, {2, 2, 3, 3, 5, 2}, {2, 2, 4, 2, 3, 5},
      {2, 2, 5, 2, 3, 5}, {2, 3, 3, 2, 3, 4}, {2, 3, 3, 2, 3, 5},
      {2, 3, 4, 2, 3, 4}, {2, 3, 4, 2, 3, 5}, {2, 3, 5, 2, 3, 5}};
  std::vector<TetSpec> found;
  std::array<int, 6> v{};
  for (v[0] = 2; v[0] <= 8; ++v[0])
    for (v[1] = 2; v[1] <= 8; ++v[1])
      for (v[2] = 2; v[2] <= 8; ++v[2])
        for (v[3] = 2; v[3] <= 8; ++v[3])
          for (v[4] = 2; v[4] <= 8; ++v[4])
            for (v[5] = 2; v[5] <= 8; ++v[5]) {
              const TetSpec spec = TetSpec::from_labels(v);
              if (canonical_orbit_rep(spec) != spec) continue;
              bool all_finite = true;
              for (int vert = 0; vert < 4; ++vert)
                all_finite &= classify_vertex(spec, vert) == VertexClass::Finite;
              if (!all_finite) continue;
              if (!exists_hyperbolic(gram_from_spec(spec))) continue;
              found.push_back(spec);
            }
  CHECK(found == expected);
}

TEST_CASE("realization scan over small entries") {
  // Every realizable spec with entries in {2,3,4}: residual, class
  // agreement (checked inside realize) and truncation orthogonality.
  int realizable = 0;
  for (int l = 2; l <= 4; ++l)
    for (int m = 2; m <= 4; ++m)
      for (int q = 2; q <= 4; ++q)
        for (int n = 2; n <= 4; ++n)
          for (int p = 2; p <= 4; ++p)
            for (int r = 2; r <= 4; ++r) {
              const TetSpec spec{l, m, q, n, p, r};
              if (!exists_hyperbolic(gram_from_spec(spec))) continue;
              ++realizable;
              const auto tet = realize(spec);
              CHECK(gram_residual(tet) < 1e-9);
              for (int v = 0; v < 4; ++v) {
                if (!tet.vertices[v].truncation) continue;
                for (int f = 0; f < 4; ++f) {
                  if (f == v) continue;
                  const auto rel = lorentz::plane_relation(
                      *tet.vertices[v].truncation, tet.faces[f]);
                  CHECK(std::abs(rel.value - M_PI / 2) < 1e-8);
                }
              }
            }
  CHECK(realizable > 0);
}
