#include "hyptet/tetra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hyptet::tetra {

using lorentz::inner;
using lorentz::norm2;

std::string TetSpec::str() const {
  std::ostringstream os;
  os << l << "," << m << "," << q << ";" << n << "," << p << "," << r;
  return os.str();
}

TetSpec parse_spec(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::array<int, 6> vals{};
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    const char sep = (i == 2) ? ';' : ',';
    std::size_t end = (i == 5) ? s.size() : s.find(sep, pos);
    if (end == std::string::npos)
      throw SpecParseError("expected \"l,m,q;n,p,r\", got \"" + text + "\"");
    const std::string tok = s.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      vals[i] = std::stoi(tok, &used);
      if (used != tok.size() || tok.empty()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw SpecParseError("bad integer \"" + tok + "\" in \"" + text + "\"");
    }
    pos = end + 1;
  }
  if (pos - 1 != s.size() && pos <= s.size())
    throw SpecParseError("trailing characters in \"" + text + "\"");
  TetSpec spec = TetSpec::from_labels(vals);
  if (!spec.valid())
    throw SpecParseError("labels must be integers >= 2 in \"" + text + "\"");
  return spec;
}

VertexClass classify_vertex(const TetSpec& spec, int vertex) {
  const auto labels = spec.labels();
  const auto& es = kVertexEdges[vertex];
  const long long a = labels[es[0]], b = labels[es[1]], c = labels[es[2]];
  // 1/a + 1/b + 1/c vs 1, exactly: bc + ac + ab vs abc.
  const long long lhs = b * c + a * c + a * b;
  const long long rhs = a * b * c;
  if (lhs > rhs) return VertexClass::Finite;
  if (lhs == rhs) return VertexClass::Ideal;
  return VertexClass::Truncated;
}

GramMatrix gram_from_spec(const TetSpec& spec) {
  GramMatrix g = GramMatrix::Identity();
  const auto labels = spec.labels();
  for (int e = 0; e < kNumEdges; ++e) {
    const auto [f1, f2] = kEdgeFaces[e];
    const Real c = -std::cos(M_PI / labels[e]);
    g(f1, f2) = c;
    g(f2, f1) = c;
  }
  return g;
}

Existence existence(const GramMatrix& g, Real eps) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(g, Eigen::EigenvaluesOnly);
  const Vec4 ev = es.eigenvalues();  // ascending
  for (int i = 0; i < 4; ++i)
    if (std::abs(ev[i]) <= eps) return Existence::Degenerate;
  int neg = 0;
  for (int i = 0; i < 4; ++i)
    if (ev[i] < 0) ++neg;
  return neg == 1 ? Existence::Hyperbolic : Existence::NonHyperbolic;
}

namespace {

// Solve the 3x4 homogeneous system <v, n_f> = 0 over the three faces
// through the vertex; the kernel is one-dimensional when the Gram matrix is
// nondegenerate.
Vec4 vertex_dual(const std::array<Plane, 4>& faces, int vertex) {
  Eigen::Matrix<Real, 3, 4> rows;
  int k = 0;
  for (int f = 0; f < 4; ++f) {
    if (f == vertex) continue;
    Vec4 jn = faces[f].normal;
    jn[3] = -jn[3];
    rows.row(k++) = jn.transpose();
  }
  Eigen::FullPivLU<Eigen::Matrix<Real, 3, 4>> lu(rows);
  lu.setThreshold(1e-10);
  const auto kernel = lu.kernel();
  if (kernel.cols() != 1)
    throw IllConditionedError("vertex dual system rank-deficient");
  return kernel.col(0);
}

}  // namespace

GeneralizedTetrahedron realize(const TetSpec& spec) {
  const GramMatrix g = gram_from_spec(spec);
  const Existence ex = existence(g);
  if (ex != Existence::Hyperbolic)
    throw NotRealizableError("T[" + spec.str() + "] gram signature is not (3,1)" +
                             (ex == Existence::Degenerate ? " (degenerate)" : ""));

  Eigen::SelfAdjointEigenSolver<Mat4> es(g);
  const Vec4 ev = es.eigenvalues();  // ascending: ev[0] < 0 < ev[1..3]
  const Mat4 q = es.eigenvectors();
  // Rows of V are the face normals: V J V^T = g with the negative
  // eigendirection mapped to the time coordinate.
  Mat4 v;
  v.col(0) = q.col(1) * std::sqrt(ev[1]);
  v.col(1) = q.col(2) * std::sqrt(ev[2]);
  v.col(2) = q.col(3) * std::sqrt(ev[3]);
  v.col(3) = q.col(0) * std::sqrt(-ev[0]);

  GeneralizedTetrahedron tet;
  tet.spec = spec;

  // Interior point: <x, n_i> = -1 for all i, i.e. (V J) x = -1.
  Mat4 vj = v;
  vj.col(3) = -vj.col(3);
  Vec4 x = vj.fullPivLu().solve(Vec4::Constant(-1.0));
  if (norm2(x) >= 0)
    throw NotRealizableError("T[" + spec.str() + "] has no time-like interior point");
  if (x[3] < 0) {
    // Move everything to the upper sheet.
    v.col(3) = -v.col(3);
    x[3] = -x[3];
  }
  x /= std::sqrt(-norm2(x));
  tet.interior = x;
  for (int f = 0; f < 4; ++f) tet.faces[f] = Plane{v.row(f).transpose()};

  for (int vert = 0; vert < 4; ++vert) {
    Vec4 dual = lorentz::normalize_dual(vertex_dual(tet.faces, vert));
    const PointClass pc = lorentz::point_class(dual);
    const VertexClass combinatorial = classify_vertex(spec, vert);
    const VertexClass geometric =
        pc == PointClass::TimeLike
            ? VertexClass::Finite
            : (pc == PointClass::LightLike ? VertexClass::Ideal
                                           : VertexClass::Truncated);
    if (combinatorial != geometric)
      throw IllConditionedError(
          "T[" + spec.str() + "] vertex " + std::to_string(vert) +
          ": angle-sum class " + to_string(combinatorial) +
          " disagrees with dual class " + to_string(geometric));
    GeneralizedVertex gv;
    gv.cls = combinatorial;
    if (gv.cls == VertexClass::Truncated) {
      // Truncating plane = polar plane of the pole; orient it like a face,
      // interior on the negative side.
      if (inner(dual, tet.interior) > 0) dual = -dual;
      gv.truncation = Plane{dual};
    } else if (gv.cls == VertexClass::Finite) {
      if (dual[3] < 0) dual = -dual;
    }
    gv.dual = dual;
    tet.vertices[vert] = gv;
  }

  const Real residual = gram_residual(tet);
  if (residual > 1e-7)
    throw IllConditionedError("T[" + spec.str() + "] reconstruction residual " +
                              std::to_string(residual));
  return tet;
}

Real gram_residual(const GeneralizedTetrahedron& tet) {
  const GramMatrix g = gram_from_spec(tet.spec);
  Real worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst,
                       std::abs(inner(tet.faces[i].normal, tet.faces[j].normal) -
                                g(i, j)));
  return worst;
}

std::vector<TetSpec> symmetry_orbit(const TetSpec& spec) {
  const auto labels = spec.labels();
  // label of the edge {x, y}
  int pair_label[4][4] = {};
  for (int e = 0; e < kNumEdges; ++e) {
    const auto [a, b] = kEdgeVertices[e];
    pair_label[a][b] = pair_label[b][a] = labels[e];
  }
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::vector<TetSpec> orbit;
  do {
    std::array<int, 6> relabeled{};
    for (int e = 0; e < kNumEdges; ++e) {
      const auto [a, b] = kEdgeVertices[e];
      relabeled[e] = pair_label[perm[a]][perm[b]];
    }
    orbit.push_back(TetSpec::from_labels(relabeled));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

}  // namespace hyptet::tetra
