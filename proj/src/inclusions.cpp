#include "hyptet/inclusions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyptet::inclusions {

TriangleType TriangleType::of(int a, int b, int c) {
  if (a < 2 || b < 2 || c < 2)
    throw std::invalid_argument("triangle type entries must be >= 2");
  std::array<int, 3> k{a, b, c};
  std::sort(k.begin(), k.end());
  return TriangleType{k};
}

bool TriangleType::hyperbolic() const {
  const long long a = k[0], b = k[1], c = k[2];
  return b * c + a * c + a * b < a * b * c;
}

std::string TriangleType::str() const {
  std::ostringstream os;
  os << "(" << k[0] << "," << k[1] << "," << k[2] << ")";
  return os.str();
}

Frac Frac::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return g ? Frac{n / g, d / g} : Frac{0, 1};
}

Frac euler_characteristic(const TriangleType& t) {
  const std::int64_t a = t.k[0], b = t.k[1], c = t.k[2];
  return Frac::make(b * c + a * c + a * b - a * b * c, a * b * c);
}

int Pattern::eval(int s, int t) const {
  switch (kind) {
    case Kind::Const: return value;
    case Kind::S: return s;
    case Kind::T: return t;
    case Kind::MulT: return value * t;
  }
  return 0;
}

namespace {

constexpr Pattern C(int v) { return {Pattern::Kind::Const, v}; }
constexpr Pattern S() { return {Pattern::Kind::S, 0}; }
constexpr Pattern T() { return {Pattern::Kind::T, 0}; }
constexpr Pattern MT(int mul) { return {Pattern::Kind::MulT, mul}; }

Row make_row(std::array<Pattern, 3> super, std::array<Pattern, 3> sub,
             int index, bool normal) {
  bool us = false, ut = false;
  for (const auto& p : super) {
    us |= p.kind == Pattern::Kind::S;
    ut |= p.kind == Pattern::Kind::T || p.kind == Pattern::Kind::MulT;
  }
  for (const auto& p : sub) {
    us |= p.kind == Pattern::Kind::S;
    ut |= p.kind == Pattern::Kind::T || p.kind == Pattern::Kind::MulT;
  }
  return Row{super, sub, index, normal, us, ut};
}

std::string render_pattern(const std::array<Pattern, 3>& ps) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < 3; ++i) {
    if (i) os << ",";
    const auto& p = ps[i];
    switch (p.kind) {
      case Pattern::Kind::Const: os << p.value; break;
      case Pattern::Kind::S: os << "s"; break;
      case Pattern::Kind::T: os << "t"; break;
      case Pattern::Kind::MulT: os << p.value << "t"; break;
    }
  }
  os << ")";
  return os.str();
}

}  // namespace

const std::array<Row, 14>& table() {
  static const std::array<Row, 14> rows = {
      make_row({C(3), C(3), T()}, {T(), T(), T()}, 3, true),
      make_row({C(2), C(3), MT(2)}, {T(), T(), T()}, 6, true),
      make_row({C(2), S(), MT(2)}, {S(), S(), T()}, 2, true),
      make_row({C(2), C(3), C(7)}, {C(7), C(7), C(7)}, 24, false),
      make_row({C(2), C(3), C(7)}, {C(2), C(7), C(7)}, 9, false),
      make_row({C(2), C(3), C(7)}, {C(3), C(3), C(7)}, 8, false),
      make_row({C(2), C(3), C(8)}, {C(4), C(8), C(8)}, 12, false),
      make_row({C(2), C(3), C(8)}, {C(3), C(8), C(8)}, 10, false),
      make_row({C(2), C(3), C(9)}, {C(9), C(9), C(9)}, 12, false),
      make_row({C(2), C(4), C(5)}, {C(4), C(4), C(5)}, 6, false),
      make_row({C(2), C(3), MT(4)}, {T(), MT(4), MT(4)}, 6, false),
      make_row({C(2), C(4), MT(2)}, {T(), MT(2), MT(2)}, 4, false),
      make_row({C(2), C(3), MT(3)}, {C(3), T(), MT(3)}, 4, false),
      make_row({C(2), C(3), MT(2)}, {C(2), T(), MT(2)}, 3, false),
  };
  return rows;
}

std::string Row::render() const {
  std::ostringstream os;
  std::string sup = render_pattern(super), sb = render_pattern(sub);
  sup.resize(10, ' ');
  sb.resize(10, ' ');
  os << sup << " " << sb << " " << index << (index < 10 ? " " : "") << " "
     << (normal ? "Yes" : "No");
  return os.str();
}

std::string render_table() {
  std::ostringstream os;
  os << "Supergroup Subgroup   Ix Normal\n";
  for (const auto& row : table()) os << row.render() << "\n";
  return os.str();
}

namespace {

std::optional<TriangleType> try_type(const std::array<Pattern, 3>& ps, int s,
                                     int t) {
  std::array<int, 3> v{};
  for (int i = 0; i < 3; ++i) {
    v[i] = ps[i].eval(s, t);
    if (v[i] < 2) return std::nullopt;
  }
  std::sort(v.begin(), v.end());
  return TriangleType{v};
}

bool multiset_match(const std::array<Pattern, 3>& ps, int s, int t,
                    const TriangleType& target) {
  const auto cand = try_type(ps, s, t);
  return cand && *cand == target;
}

// Instantiated (sub -> super) with both groups hyperbolic; the Euler
// characteristic ratio is an algebraic identity of each row, asserted here
// against transcription errors.
void match_row(int row_id, const TriangleType& t, int param_bound,
               std::vector<Inclusion>& out) {
  const Row& row = table()[row_id];
  const int s_hi = row.uses_s ? param_bound : 2;
  const int t_hi = row.uses_t ? param_bound : 2;
  for (int s = 2; s <= s_hi; ++s) {
    for (int tt = 2; tt <= t_hi; ++tt) {
      if (!multiset_match(row.sub, s, tt, t)) continue;
      const auto super = try_type(row.super, s, tt);
      if (!super || !super->hyperbolic() || !t.hyperbolic()) continue;
      const Frac cs = euler_characteristic(t);
      const Frac cg = euler_characteristic(*super);
      // index * chi(super) == chi(sub), exactly
      if (Frac::make(cg.num * row.index, cg.den) != cs)
        throw std::logic_error("inclusion table row " + std::to_string(row_id) +
                               " fails the Euler characteristic check at " +
                               t.str());
      out.push_back({*super, row.index, row.normal, row_id});
      if (!row.uses_t) break;
    }
    if (!row.uses_s) break;
  }
}

}  // namespace

std::vector<Inclusion> direct_inclusions(const TriangleType& t, int param_bound) {
  std::vector<Inclusion> out;
  for (int row = 0; row < static_cast<int>(table().size()); ++row)
    match_row(row, t, param_bound, out);
  std::sort(out.begin(), out.end(), [](const Inclusion& a, const Inclusion& b) {
    if (a.super != b.super) return a.super < b.super;
    if (a.index != b.index) return a.index < b.index;
    return a.row < b.row;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Inclusion& a, const Inclusion& b) {
                          return a.super == b.super && a.index == b.index &&
                                 a.normal == b.normal;
                        }),
            out.end());
  return out;
}

std::vector<SubInclusion> direct_subgroups(const TriangleType& t,
                                           int param_bound) {
  std::vector<SubInclusion> out;
  for (int row_id = 0; row_id < static_cast<int>(table().size()); ++row_id) {
    const Row& row = table()[row_id];
    const int s_hi = row.uses_s ? param_bound : 2;
    const int t_hi = row.uses_t ? param_bound : 2;
    for (int s = 2; s <= s_hi; ++s) {
      for (int tt = 2; tt <= t_hi; ++tt) {
        if (!multiset_match(row.super, s, tt, t)) continue;
        const auto sub = try_type(row.sub, s, tt);
        if (!sub || !sub->hyperbolic() || !t.hyperbolic()) continue;
        out.push_back({*sub, row.index, row.normal, row_id});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SubInclusion& a, const SubInclusion& b) {
    if (a.sub != b.sub) return a.sub < b.sub;
    if (a.index != b.index) return a.index < b.index;
    return a.row < b.row;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SubInclusion& a, const SubInclusion& b) {
                          return a.sub == b.sub && a.index == b.index &&
                                 a.normal == b.normal;
                        }),
            out.end());
  return out;
}

std::vector<TriangleType> downward_closure(const TriangleType& t, int param_bound) {
  std::set<TriangleType> seen{t};
  std::deque<TriangleType> queue{t};
  while (!queue.empty()) {
    const TriangleType cur = queue.front();
    queue.pop_front();
    for (const auto& inc : direct_subgroups(cur, param_bound))
      if (seen.insert(inc.sub).second) queue.push_back(inc.sub);
  }
  return {seen.begin(), seen.end()};
}

std::optional<Chain> is_subgroup(const TriangleType& sub,
                                 const TriangleType& super, int param_bound) {
  if (sub == super) return Chain{};
  // BFS upward; |chi| strictly shrinks along an inclusion, which bounds the
  // search.
  struct Node {
    TriangleType type;
    int parent;  // index into visited order, -1 for root
    Inclusion via;
  };
  std::vector<Node> nodes{{sub, -1, {}}};
  std::set<TriangleType> seen{sub};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const TriangleType cur = nodes[head].type;  // copy: nodes may reallocate
    for (const Inclusion& inc : direct_inclusions(cur, param_bound)) {
      if (!seen.insert(inc.super).second) continue;
      nodes.push_back({inc.super, static_cast<int>(head), inc});
      if (inc.super == super) {
        Chain chain;
        for (int at = static_cast<int>(nodes.size()) - 1; nodes[at].parent >= 0;
             at = nodes[at].parent) {
          chain.steps.push_back(nodes[at].via);
          chain.total_index *= nodes[at].via.index;
        }
        std::reverse(chain.steps.begin(), chain.steps.end());
        return chain;
      }
    }
  }
  return std::nullopt;
}

}  // namespace hyptet::inclusions
