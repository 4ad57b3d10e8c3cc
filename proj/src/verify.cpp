#include "hyptet/verify.hpp"

#include "hyptet/develop.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace hyptet::verify {

using tetra::TetSpec;
using turnover::TurnoverType;

const std::vector<std::pair<const char*, const char*>> kItemSamples = {
    {"2,6,3;2,6,3", "(3,6,6)"},  {"2,7,3;2,8,3", "(3,7,8)"},
    {"2,6,4;2,6,3", "(4,6,6)"},  {"2,3,6;2,3,6", "(3,6,6)"},
    {"3,6,2;3,6,2", "(3,6,6)"},
};

const std::vector<std::pair<const char*, const char*>> kConjecturalSamples = {
    {"4,3,4;2,2,2", "(3,4,4)"},
    {"3,3,2;2,4,3", "(3,4,4)"},
    {"2,2,5;2,3,5", "(3,5,5)"},
    {"3,4,3;2,3,2", "(3,4,4)"},
    {"2,2,3;3,5,2", "(3,5,5) (5,5,5) (2,5,5) (3,3,5)"},
    {"2,3,3;2,3,4", "(3,4,4)"},
};

namespace {

std::vector<TurnoverType> parse_types(const std::string& text) {
  std::vector<TurnoverType> out;
  std::size_t at = 0;
  while ((at = text.find('(', at)) != std::string::npos) {
    int a = 0, b = 0, c = 0;
    if (std::sscanf(text.c_str() + at, "(%d,%d,%d)", &a, &b, &c) == 3)
      out.push_back(TurnoverType::of(a, b, c));
    ++at;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string types_str(const std::vector<TurnoverType>& ts) {
  std::ostringstream os;
  if (ts.empty()) os << "-";
  for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? " " : "") << ts[i].str();
  return os.str();
}

}  // namespace

std::vector<TetSpec> all_nonfinite_realizable(int max_entry) {
  std::vector<TetSpec> out;
  std::array<int, 6> v{};
  for (v[0] = 2; v[0] <= max_entry; ++v[0])
    for (v[1] = 2; v[1] <= max_entry; ++v[1])
      for (v[2] = 2; v[2] <= max_entry; ++v[2])
        for (v[3] = 2; v[3] <= max_entry; ++v[3])
          for (v[4] = 2; v[4] <= max_entry; ++v[4])
            for (v[5] = 2; v[5] <= max_entry; ++v[5]) {
              const TetSpec spec = TetSpec::from_labels(v);
              if (!tetra::all_nonfinite(spec)) continue;
              if (tetra::existence(tetra::gram_from_spec(spec)) !=
                  tetra::Existence::Hyperbolic)
                continue;
              out.push_back(spec);
            }
  return out;
}

SuiteResult items_suite(int depth, int threads) {
  SuiteResult suite{"items", {}};
  for (const auto& [spec_str, types_text] : kItemSamples) {
    const TetSpec spec = tetra::parse_spec(spec_str);
    const auto expected = parse_types(types_text);
    turnover::SearchConfig cfg;
    cfg.depth = depth;
    cfg.threads = threads;
    const auto rep = turnover::classify_spec(spec, cfg);
    const auto maximal = rep.result.maximal_types();
    const bool ok = rep.verdict == turnover::Verdict::Match && maximal == expected;
    std::ostringstream os;
    os << "T[" << spec.str() << "] expected " << types_str(expected)
       << ", maximal found " << types_str(maximal) << ", verdict "
       << turnover::to_string(rep.verdict);
    suite.lines.push_back({ok, os.str()});
  }
  return suite;
}

SuiteResult conjectural_suite(int max_depth, int threads) {
  SuiteResult suite{"conjectural", {}};
  for (const auto& [spec_str, types_text] : kConjecturalSamples) {
    const TetSpec spec = tetra::parse_spec(spec_str);
    const auto expected = parse_types(types_text);
    bool ok = false;
    int used_depth = 0;
    std::vector<TurnoverType> present;
    for (int depth = 8; depth <= max_depth && !ok; ++depth) {
      turnover::SearchConfig cfg;
      cfg.depth = depth;
      cfg.threads = threads;
      const auto result = turnover::search(tetra::realize(spec), cfg);
      present = result.present_types();
      used_depth = depth;
      ok = std::all_of(expected.begin(), expected.end(), [&](const TurnoverType& t) {
        return std::find(present.begin(), present.end(), t) != present.end();
      });
    }
    std::ostringstream os;
    os << "T[" << spec.str() << "] expected present " << types_str(expected)
       << ", present " << types_str(present) << " at depth " << used_depth;
    suite.lines.push_back({ok, os.str()});
  }
  return suite;
}

SuiteResult negative_suite(int depth, int max_entry, int threads,
                           bool dedup_by_orbit) {
  SuiteResult suite{"negative", {}};
  std::set<TetSpec> seen_reps;
  int probed = 0;
  for (const TetSpec& spec : all_nonfinite_realizable(max_entry)) {
    const auto expectation = turnover::expected_turnovers(spec);
    if (expectation.kind != turnover::Expectation::Kind::NoneExpected) continue;
    if (dedup_by_orbit && !seen_reps.insert(tetra::canonical_orbit_rep(spec)).second)
      continue;
    ++probed;
    turnover::SearchConfig cfg;
    cfg.depth = depth;
    cfg.threads = threads;
    const auto rep = turnover::classify_spec(spec, cfg);
    const bool ok = rep.result.witnesses.empty() &&
                    rep.verdict == turnover::Verdict::Inconclusive;
    if (!ok) {
      std::ostringstream os;
      os << "T[" << spec.str() << "] expected empty, found "
         << types_str(rep.result.found_types());
      suite.lines.push_back({ok, os.str()});
    }
  }
  std::ostringstream os;
  os << probed << " all-non-finite specs outside the classified families probed "
     << "at depth " << depth << "; "
     << suite.failures() << " with findings";
  suite.lines.push_back({suite.failures() == 0, os.str()});
  return suite;
}

namespace {

bool edges_disjoint(const tiling::EdgeRef& a, const tiling::EdgeRef& b) {
  Mat4 m;
  m.col(0) = a.va.normalized();
  m.col(1) = a.vb.normalized();
  m.col(2) = b.va.normalized();
  m.col(3) = b.vb.normalized();
  const Real det = m.determinant();
  if (std::abs(det) > 1e-8) return true;  // skew spans
  // Common direction: intersection of the two 2-spans.
  Eigen::FullPivLU<Mat4> lu(m);
  lu.setThreshold(1e-8);
  const auto kernel = lu.kernel();
  for (int k = 0; k < kernel.cols(); ++k) {
    const Vec4 coeff = kernel.col(k);
    const Vec4 dir = coeff[0] * m.col(0) + coeff[1] * m.col(1);
    if (dir.cwiseAbs().maxCoeff() < 1e-10) continue;
    if (lorentz::norm2(dir) < -1e-9 * dir.squaredNorm()) return false;  // meets H^3
  }
  return true;
}

}  // namespace

SuiteResult invariants_suite(int depth, int max_entry) {
  SuiteResult suite{"invariants", {}};
  int specs = 0;
  std::uint64_t trunc_pairs = 0, edge_pairs = 0, face_opposites = 0;
  for (const TetSpec& spec : all_nonfinite_realizable(max_entry)) {
    ++specs;
    const auto tet = tetra::realize(spec);
    const auto state = tiling::develop(tet, depth);

    std::vector<const lorentz::Plane*> trunc;
    for (const auto& tp : state.planes)
      if (tp.truncation) trunc.push_back(&tp.plane);
    for (std::size_t i = 0; i < trunc.size(); ++i) {
      for (std::size_t j = i + 1; j < trunc.size(); ++j) {
        ++trunc_pairs;
        const auto rel = lorentz::plane_relation(*trunc[i], *trunc[j]);
        if (rel.kind != lorentz::PlaneRelation::Kind::Ultraparallel &&
            rel.kind != lorentz::PlaneRelation::Kind::Equal)
          suite.lines.push_back(
              {false, "T[" + spec.str() + "] truncation planes " +
                          std::to_string(i) + "," + std::to_string(j) + " are " +
                          lorentz::to_string(rel.kind)});
      }
    }

    for (std::size_t i = 0; i < state.edges.size(); ++i) {
      for (std::size_t j = i + 1; j < state.edges.size(); ++j) {
        ++edge_pairs;
        if (!edges_disjoint(state.edges[i], state.edges[j]))
          suite.lines.push_back(
              {false, "T[" + spec.str() + "] developed edges " +
                          std::to_string(i) + "," + std::to_string(j) +
                          " intersect in H^3"});
      }
    }

    for (const auto& tile : state.tiles) {
      for (int f = 0; f < 4; ++f) {
        const auto& opposite = tet.vertices[f];
        if (!opposite.truncation) continue;
        ++face_opposites;
        const auto rel = lorentz::plane_relation(
            lorentz::apply_plane(tile.motion, tet.faces[f]),
            lorentz::apply_plane(tile.motion, *opposite.truncation));
        if (rel.kind != lorentz::PlaneRelation::Kind::Ultraparallel)
          suite.lines.push_back(
              {false, "T[" + spec.str() + "] face " + std::to_string(f) +
                          " vs opposite truncation plane: " +
                          lorentz::to_string(rel.kind)});
      }
    }
  }
  std::ostringstream os;
  os << specs << " specs at depth " << depth << ": " << trunc_pairs
     << " truncation-plane pairs, " << edge_pairs << " edge pairs, "
     << face_opposites << " face/opposite-truncation pairs checked; "
     << suite.failures() << " violations";
  suite.lines.push_back({suite.failures() == 0, os.str()});
  return suite;
}

}  // namespace hyptet::verify
