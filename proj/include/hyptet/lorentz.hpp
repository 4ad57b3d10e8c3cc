#pragma once

// Lorentzian linear algebra for the hyperboloid model of H^3.
//
// Points, geodesic planes and isometries live in R^{3,1} with the bilinear
// form <u,v> = u1 v1 + u2 v2 + u3 v3 - u4 v4.  H^3 is the upper sheet of
// <x,x> = -1; a geodesic plane is the zero set of <x,n> for a space-like
// unit normal n; the reflection in that plane is x -> x - 2<x,n> n.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace hyptet {

using Real = double;

template <typename S> using Vec4T = Eigen::Matrix<S, 4, 1>;
template <typename S> using Mat4T = Eigen::Matrix<S, 4, 4>;

using Vec4 = Vec4T<Real>;
using Mat4 = Mat4T<Real>;

struct ZeroVectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonUnitNormalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace lorentz {

// Default tolerance bands: 1e-9 for sign classification, 1e-12 for
// involution-style identities.
inline constexpr Real kClassEps = 1e-9;
inline constexpr Real kStrictEps = 1e-12;

template <typename S = Real>
Mat4T<S> form_matrix() {
  Mat4T<S> j = Mat4T<S>::Identity();
  j(3, 3) = S(-1);
  return j;
}

template <typename DA, typename DB>
auto inner(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3];
}

template <typename D>
auto norm2(const Eigen::MatrixBase<D>& v) {
  return inner(v, v);
}

enum class PointClass { TimeLike, LightLike, SpaceLike };

inline const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::TimeLike: return "time-like";
    case PointClass::LightLike: return "light-like";
    case PointClass::SpaceLike: return "space-like";
  }
  return "?";
}

template <typename D>
PointClass point_class(const Eigen::MatrixBase<D>& v, Real eps = kClassEps) {
  if (v.cwiseAbs().maxCoeff() <= eps)
    throw ZeroVectorError("point_class: zero vector");
  const Real s = norm2(v);
  if (s < -eps) return PointClass::TimeLike;
  if (s > eps) return PointClass::SpaceLike;
  return PointClass::LightLike;
}

// A geodesic plane, stored as its space-like unit normal.  The sign of the
// normal is meaningful to callers (inward/outward conventions); the
// deduplication key below canonicalizes it.
struct Plane {
  Vec4 normal;
};

inline Plane make_plane(const Vec4& n, Real eps = kClassEps) {
  const Real s = norm2(n);
  if (s <= eps) throw NonUnitNormalError("make_plane: normal not space-like");
  return Plane{n / std::sqrt(s)};
}

// An isometry of H^3 (preserves the form and the upper sheet).
struct Motion {
  Mat4 m;

  static Motion identity() { return Motion{Mat4::Identity()}; }
};

inline Real motion_form_residual(const Motion& a) {
  const Mat4 j = form_matrix<Real>();
  return (a.m.transpose() * j * a.m - j).cwiseAbs().maxCoeff();
}

inline Motion reflection(const Plane& p, Real eps = kClassEps) {
  const Real s = norm2(p.normal);
  if (std::abs(s - 1.0) > eps)
    throw NonUnitNormalError("reflection: |<n,n>-1| = " +
                             std::to_string(std::abs(s - 1.0)));
  Vec4 jn = p.normal;
  jn[3] = -jn[3];  // J n
  return Motion{Mat4::Identity() - 2.0 * p.normal * jn.transpose()};
}

// Matrix product with one Newton projection step back onto O(3,1): for
// E = J M^T J M - I (J-self-adjoint), M(I - E/2) squares the form residual.
// Long reflection words would otherwise accumulate drift linearly.  Skipped
// outside the Newton basin (wildly conditioned products), where it could
// diverge.
inline Motion compose(const Motion& a, const Motion& b) {
  Mat4 m = a.m * b.m;
  Mat4 jm = m;
  jm.row(3) = -jm.row(3);           // J M
  Mat4 e = m.transpose() * jm;      // M^T J M
  e.row(3) = -e.row(3);             // J M^T J M
  e -= Mat4::Identity();
  if (e.cwiseAbs().maxCoeff() < 0.1) m -= 0.5 * m * e;
  return Motion{m};
}

inline Vec4 apply(const Motion& a, const Vec4& v) { return a.m * v; }

// Motions preserve the form, so a plane normal transports by the same matrix.
inline Plane apply_plane(const Motion& a, const Plane& p) {
  return Plane{a.m * p.normal};
}

struct PlaneRelation {
  enum class Kind { Equal, Intersecting, Parallel, Ultraparallel };
  Kind kind;
  Real value = 0.0;  // dihedral angle (radians) or hyperbolic distance

  bool intersecting() const { return kind == Kind::Intersecting; }
};

inline const char* to_string(PlaneRelation::Kind k) {
  switch (k) {
    case PlaneRelation::Kind::Equal: return "equal";
    case PlaneRelation::Kind::Intersecting: return "intersecting";
    case PlaneRelation::Kind::Parallel: return "parallel";
    case PlaneRelation::Kind::Ultraparallel: return "ultraparallel";
  }
  return "?";
}

// Trichotomy by c = <n1,n2>: |c| < 1 intersecting at arccos(-c), |c| = 1
// parallel (asymptotic), |c| > 1 ultraparallel at distance arcosh|c|.
// The polyhedron convention is interior = {<x,n> <= 0} for every inward
// normal, so for adjacent faces arccos(-c) is the interior dihedral angle.
inline PlaneRelation plane_relation(const Plane& p, const Plane& q,
                                    Real eps = kClassEps) {
  if ((p.normal - q.normal).cwiseAbs().maxCoeff() <= eps ||
      (p.normal + q.normal).cwiseAbs().maxCoeff() <= eps)
    return {PlaneRelation::Kind::Equal, 0.0};
  const Real c = inner(p.normal, q.normal);
  const Real a = std::abs(c);
  if (a < 1.0 - eps)
    return {PlaneRelation::Kind::Intersecting, std::acos(std::clamp(-c, -1.0, 1.0))};
  if (a <= 1.0 + eps) return {PlaneRelation::Kind::Parallel, 0.0};
  return {PlaneRelation::Kind::Ultraparallel, std::acosh(a)};
}

// ---------------------------------------------------------------------------
// Quantized keys for deduplication. Values are rounded to 6 decimal digits;
// collisions at that resolution are treated as equality.

inline constexpr Real kQuantScale = 1e6;

using Key4 = std::array<std::int64_t, 4>;
using Key8 = std::array<std::int64_t, 8>;
using Key16 = std::array<std::int64_t, 16>;

inline std::int64_t quantize(Real x) {
  return std::llround(x * kQuantScale);
}

template <typename D>
Key4 key_of(const Eigen::MatrixBase<D>& v) {
  return {quantize(v[0]), quantize(v[1]), quantize(v[2]), quantize(v[3])};
}

inline Key4 flip(const Key4& k) { return {-k[0], -k[1], -k[2], -k[3]}; }

// Canonical sign: first nonzero coordinate of the quantized vector positive.
inline Key4 canonical_sign(Key4 k) {
  for (std::int64_t v : k) {
    if (v > 0) return k;
    if (v < 0) return flip(k);
  }
  return k;
}

inline Key4 plane_key(const Plane& p) { return canonical_sign(key_of(p.normal)); }

inline Key16 motion_key(const Motion& a) {
  Key16 k;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) k[4 * r + c] = quantize(a.m(r, c));
  return k;
}

template <std::size_t N>
struct ArrayHash {
  std::size_t operator()(const std::array<std::int64_t, N>& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// ---------------------------------------------------------------------------
// Generalized-vertex duals. A vertex of a generalized tetrahedron is carried
// by its dual vector: the point itself (time-like), the ideal point
// (light-like) or the pole of the truncating plane (space-like). Scale
// normalization makes the quantized key an identity for the vertex.

inline Vec4 normalize_dual(const Vec4& v, Real eps = kClassEps) {
  Vec4 u = v / v.cwiseAbs().maxCoeff();
  switch (point_class(u, eps)) {
    case PointClass::TimeLike:
      u /= std::sqrt(-norm2(u));
      if (u[3] < 0) u = -u;
      return u;
    case PointClass::LightLike:
      return u / u[3];
    case PointClass::SpaceLike:
      return u / std::sqrt(norm2(u));
  }
  return u;
}

inline Key4 dual_key(const Vec4& normalized, PointClass c) {
  Key4 k = key_of(normalized);
  return c == PointClass::SpaceLike ? canonical_sign(k) : k;
}

}  // namespace lorentz
}  // namespace hyptet
