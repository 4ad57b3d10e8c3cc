#pragma once

// Inclusions between hyperbolic triangle groups, after Singerman (1972).
// The table below is the complete list of direct inclusions; every
// containment of one hyperbolic triangle group in another is a composite of
// these rows.  Rows are self-validated against the orbifold Euler
// characteristic: index = chi(sub)/chi(super) with chi(a,b,c) =
// 1/a + 1/b + 1/c - 1, computed in exact rational arithmetic.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyptet::inclusions {

struct TriangleType {
  std::array<int, 3> k;  // sorted nondecreasing

  static TriangleType of(int a, int b, int c);
  bool hyperbolic() const;  // 1/a + 1/b + 1/c < 1, exact

  bool operator==(const TriangleType& o) const { return k == o.k; }
  bool operator!=(const TriangleType& o) const { return k != o.k; }
  bool operator<(const TriangleType& o) const { return k < o.k; }
  std::string str() const;
};

// Exact chi(a,b,c) as a fraction (negative for hyperbolic types).
struct Frac {
  std::int64_t num = 0, den = 1;  // normalized, den > 0
  static Frac make(std::int64_t n, std::int64_t d);
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};
Frac euler_characteristic(const TriangleType& t);

// One table row: parametric patterns in s and t.
struct Pattern {
  enum class Kind { Const, S, T, MulT };
  Kind kind;
  int value;  // Const: the constant; MulT: the multiplier

  int eval(int s, int t) const;
};

struct Row {
  std::array<Pattern, 3> super;
  std::array<Pattern, 3> sub;
  int index;
  bool normal;
  bool uses_s, uses_t;

  std::string render() const;  // fixed-width text, one line
};

const std::array<Row, 14>& table();

// Canonical text rendering of the whole table (matches the checked-in copy
// byte for byte).
std::string render_table();

struct Inclusion {
  TriangleType super;
  int index;
  bool normal;
  int row;  // table row id, 0-based
};

// All direct supergroups of t: every row whose subgroup pattern matches t
// for some parameters s,t in [2, param_bound], both groups hyperbolic.
std::vector<Inclusion> direct_inclusions(const TriangleType& t,
                                         int param_bound = 100);

inline bool is_maximal(const TriangleType& t, int param_bound = 100) {
  return direct_inclusions(t, param_bound).empty();
}

// All direct subgroups of t: every row whose supergroup pattern matches t,
// both groups hyperbolic.
struct SubInclusion {
  TriangleType sub;
  int index;
  bool normal;
  int row;
};
std::vector<SubInclusion> direct_subgroups(const TriangleType& t,
                                           int param_bound = 100);

// t together with every triangle group reachable downward through the
// table (the types whose turnovers cover t's).
std::vector<TriangleType> downward_closure(const TriangleType& t,
                                           int param_bound = 100);

struct Chain {
  std::vector<Inclusion> steps;  // from sub upward to super
  long long total_index = 1;
};

// Shortest chain of direct inclusions from sub up to super (empty chain with
// index 1 when sub == super); nullopt if unreachable.
std::optional<Chain> is_subgroup(const TriangleType& sub,
                                 const TriangleType& super,
                                 int param_bound = 100);

}  // namespace hyptet::inclusions
