#include "hyptet/turnover.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <unordered_map>

namespace hyptet::turnover {

using tiling::DevelopmentState;
using tiling::EdgeRef;
using lorentz::inner;
using lorentz::norm2;

std::optional<int> angle_as_submultiple(Real theta, int cmax, Real eps) {
  if (!(theta > 0) || !(theta < M_PI)) return std::nullopt;
  const int c = static_cast<int>(std::lround(M_PI / theta));
  if (c < 2 || c > cmax) return std::nullopt;
  const Real tol = eps * std::max(1.0, M_PI / theta);
  if (std::abs(theta - M_PI / c) >= tol) return std::nullopt;
  return c;
}

Plane common_perpendicular(const Plane& p1, const Plane& p2, const Plane& p3,
                           Real eps) {
  Eigen::Matrix<Real, 3, 4> rows;
  const Plane* ps[3] = {&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i) {
    Vec4 jn = ps[i]->normal;
    jn[3] = -jn[3];
    rows.row(i) = jn.transpose();
  }
  Eigen::FullPivLU<Eigen::Matrix<Real, 3, 4>> lu(rows);
  lu.setThreshold(1e-8);
  if (lu.kernel().cols() != 1)
    throw RankDeficientError("common_perpendicular: normals do not span a 3-space");
  const Vec4 w = lu.kernel().col(0);
  const Real s = norm2(w) / w.squaredNorm();
  if (s <= eps)
    throw NonSpacelikeError("common_perpendicular: no space-like solution");
  return Plane{w / std::sqrt(norm2(w))};
}

namespace {

// Both endpoints of b inside the 2-span of a means the geodesics coincide
// (distinct segments of one line still dedup to distinct EdgeRefs).
bool same_geodesic(const EdgeRef& a, const EdgeRef& b, Real tol = 1e-8) {
  const Real gaa = norm2(a.va), gab = inner(a.va, a.vb), gbb = norm2(a.vb);
  const Real det = gaa * gbb - gab * gab;
  if (std::abs(det) < 1e-14) return false;  // degenerate span; treat as distinct
  for (const Vec4* v : {&b.va, &b.vb}) {
    const Real pa = inner(*v, a.va), pb = inner(*v, a.vb);
    const Real alpha = (gbb * pa - gab * pb) / det;
    const Real beta = (gaa * pb - gab * pa) / det;
    const Vec4 res = *v - alpha * a.va - beta * a.vb;
    if (res.norm() > tol * std::max(1.0, v->norm())) return false;
  }
  return true;
}

struct AdmissiblePlane {
  int plane;       // index into state.planes
  int order;       // rotation order: folded angle to pi_f is pi/order
  Real cos_to_f;   // <n, n_F>, sign as stored
};

struct RawHit {
  int f_plane;
  int e1, e2;      // indices into state.edges
  int p1, p2;      // indices into state.planes
  int a, b, c;
};

// Sign-consistency: some choice of outward orientations must make all three
// pairwise cosines non-positive. Flipping one normal flips two of the three
// products, so the reachable patterns preserve the parity of the positive
// count; right angles (order 2) are sign-free.
bool orientable_as_triangle(Real cf1, Real cf2, Real c12, int a, int b, int c) {
  int positives = 0;
  bool has_right_angle = false;
  const Real vals[3] = {cf1, cf2, c12};
  const int ords[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    if (ords[i] == 2) {
      has_right_angle = true;
      continue;
    }
    if (vals[i] > 0) ++positives;
  }
  return has_right_angle || positives % 2 == 0;
}

std::string plane_word(const DevelopmentState& state, int plane_idx) {
  const auto& tp = state.planes[plane_idx];
  return state.tiles[tp.tile].word + ":f" + std::to_string(tp.source);
}

struct PlaneSearchContext {
  int f_plane;
  std::vector<int> edges;                            // coplanar edge ids
  std::vector<std::vector<AdmissiblePlane>> planes;  // per coplanar edge
};

void scan_pair(const DevelopmentState& state, const PlaneSearchContext& ctx,
               std::size_t i, std::size_t j, const SearchConfig& cfg,
               SearchStats& stats, std::vector<RawHit>& hits) {
  const EdgeRef& e1 = state.edges[ctx.edges[i]];
  const EdgeRef& e2 = state.edges[ctx.edges[j]];
  ++stats.edge_pairs;
  if (e1.shares_vertex(e2)) {
    ++stats.shared_vertex_pairs;
    return;
  }
  if (same_geodesic(e1, e2)) {
    ++stats.same_geodesic_pairs;
    return;
  }
  for (const AdmissiblePlane& s1 : ctx.planes[i]) {
    for (const AdmissiblePlane& s2 : ctx.planes[j]) {
      if (s1.plane == s2.plane) continue;
      ++stats.plane_pairs;
      const Real c12 =
          inner(state.planes[s1.plane].plane.normal, state.planes[s2.plane].plane.normal);
      const Real ac = std::abs(c12);
      if (ac >= 1.0 - lorentz::kClassEps) continue;  // not intersecting
      const auto cc = angle_as_submultiple(std::acos(ac), cfg.cmax, cfg.eps);
      if (!cc) {
        ++stats.non_submultiple_angles;
        continue;
      }
      const int a = s1.order, b = s2.order, c = *cc;
      const long long hyp =
          static_cast<long long>(b) * c + static_cast<long long>(a) * c +
          static_cast<long long>(a) * b - static_cast<long long>(a) * b * c;
      if (hyp >= 0) {
        ++stats.non_hyperbolic_triples;
        continue;
      }
      if (!orientable_as_triangle(s1.cos_to_f, s2.cos_to_f, c12, a, b, c)) {
        ++stats.sign_inconsistent;
        continue;
      }
      ++stats.raw_hits;
      hits.push_back({ctx.f_plane, ctx.edges[i], ctx.edges[j], s1.plane, s2.plane,
                      a, b, c});
    }
  }
}

Key4 orbit_canonical_key(const DevelopmentState& state, const Plane& p) {
  Key4 best = lorentz::plane_key(p);
  for (const auto& tile : state.tiles) {
    const Key4 k = lorentz::plane_key(lorentz::apply_plane(tile.motion, p));
    if (k < best) best = k;
  }
  return best;
}

}  // namespace

bool filter_vertex_parallel(const Plane& invariant_plane,
                            const DevelopmentState& state, Real eps) {
  const Key4 wkey = lorentz::plane_key(invariant_plane);
  for (const auto& tp : state.planes)
    if (tp.truncation && lorentz::plane_key(tp.plane) == wkey) return false;

  // Some developed edge must cross the plane at an oblique angle, else the
  // candidate only re-detects an embedded turnover or mirrored triangle.
  const Vec4& n = invariant_plane.normal;
  for (const auto& e : state.edges) {
    const Real alpha = inner(e.va, n), beta = inner(e.vb, n);
    if (std::abs(alpha) <= eps * std::max(1.0, e.va.norm()) &&
        std::abs(beta) <= eps * std::max(1.0, e.vb.norm()))
      continue;  // geodesic inside the plane
    const Vec4 u = beta * e.va - alpha * e.vb;
    const Real s = norm2(u);
    if (s >= -1e-12 * u.squaredNorm()) continue;  // no transversal crossing
    const Vec4 x = u / std::sqrt(-s);
    Vec4 d = e.va + inner(e.va, x) * x;
    if (d.cwiseAbs().maxCoeff() < 1e-12) d = e.vb + inner(e.vb, x) * x;
    const Real dn = norm2(d);
    if (dn <= 0) continue;
    const Real sine = std::abs(inner(d, n)) / std::sqrt(dn);
    if (sine > 1e-6 && sine < 1.0 - 1e-6) return true;  // oblique
  }
  return false;
}

std::vector<TurnoverType> SearchResult::found_types() const {
  std::set<TurnoverType> set;
  for (const auto& w : witnesses) set.insert(w.type);
  return {set.begin(), set.end()};
}

std::vector<TurnoverType> SearchResult::maximal_types() const {
  const auto types = found_types();
  std::vector<TurnoverType> out;
  for (const auto& t : types) {
    bool dominated = false;
    for (const auto& s : types)
      if (s != t && inclusions::is_subgroup(t, s)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(t);
  }
  return out;
}

std::vector<TurnoverType> SearchResult::present_types() const {
  std::set<TurnoverType> set;
  for (const auto& t : found_types())
    for (const auto& d : inclusions::downward_closure(t)) set.insert(d);
  return {set.begin(), set.end()};
}

SearchResult search(const tetra::GeneralizedTetrahedron& tet,
                    const SearchConfig& cfg) {
  const DevelopmentState state = tiling::develop(tet, cfg.depth, cfg.tile_cap);

  SearchResult result;
  result.depth = cfg.depth;
  result.tiles = state.tiles.size();

  // Every developed face plane is a motion image of a base face plane, so
  // the base planes serve as orbit representatives for Pi_F.
  std::vector<PlaneSearchContext> contexts;
  for (int f = 0; f < 4; ++f) {
    PlaneSearchContext ctx;
    ctx.f_plane = state.find_plane(tet.faces[f]);
    const Plane& pi_f = state.planes[ctx.f_plane].plane;
    ctx.edges = tiling::coplanar_edges(state, pi_f);
    ctx.planes.reserve(ctx.edges.size());
    for (int e : ctx.edges) {
      std::vector<AdmissiblePlane> adm;
      for (const auto& sp : tiling::side_planes(state, state.edges[e], pi_f)) {
        const Real cf = inner(state.planes[sp.plane].plane.normal, pi_f.normal);
        const Real ac = std::abs(cf);
        if (ac >= 1.0 - lorentz::kClassEps) continue;
        if (const auto ord = angle_as_submultiple(std::acos(ac), cfg.cmax, cfg.eps))
          adm.push_back({sp.plane, *ord, cf});
      }
      ctx.planes.push_back(std::move(adm));
    }
    contexts.push_back(std::move(ctx));
  }

  // Candidate generation, parallel over (plane, e1) seeds; the merged hit
  // stream is identical to the sequential one.
  struct Seed {
    int ctx;
    std::size_t i;
  };
  std::vector<Seed> seeds;
  for (std::size_t c = 0; c < contexts.size(); ++c)
    for (std::size_t i = 0; i < contexts[c].edges.size(); ++i)
      seeds.push_back({static_cast<int>(c), i});

  const int threads = std::max(1, cfg.threads);
  std::vector<std::vector<RawHit>> hit_chunks(seeds.size());
  std::vector<SearchStats> stat_chunks(seeds.size());
  auto run_seed = [&](std::size_t s) {
    const auto& ctx = contexts[seeds[s].ctx];
    for (std::size_t j = seeds[s].i + 1; j < ctx.edges.size(); ++j)
      scan_pair(state, ctx, seeds[s].i, j, cfg, stat_chunks[s], hit_chunks[s]);
  };
  if (threads == 1) {
    for (std::size_t s = 0; s < seeds.size(); ++s) run_seed(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (int t = 0; t < threads; ++t)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t s = next.fetch_add(1); s < seeds.size();
             s = next.fetch_add(1))
          run_seed(s);
      }));
    for (auto& w : workers) w.get();
  }

  std::vector<RawHit> hits;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const auto& st = stat_chunks[s];
    result.stats.edge_pairs += st.edge_pairs;
    result.stats.shared_vertex_pairs += st.shared_vertex_pairs;
    result.stats.same_geodesic_pairs += st.same_geodesic_pairs;
    result.stats.plane_pairs += st.plane_pairs;
    result.stats.non_submultiple_angles += st.non_submultiple_angles;
    result.stats.sign_inconsistent += st.sign_inconsistent;
    result.stats.non_hyperbolic_triples += st.non_hyperbolic_triples;
    result.stats.raw_hits += st.raw_hits;
    hits.insert(hits.end(), hit_chunks[s].begin(), hit_chunks[s].end());
  }

  // Invariant plane per hit, dedup by (type, plane) with the plane key
  // canonicalized over the developed motions so that translates of one
  // turnover collapse to a single witness.
  struct Pending {
    RawHit hit;
    TurnoverType type;
    Plane invariant;
    Key4 local_key;
  };
  std::vector<Pending> pending;
  std::set<std::pair<std::array<int, 3>, Key4>> seen_local;
  for (const RawHit& h : hits) {
    const Plane& pf = state.planes[h.f_plane].plane;
    const Plane& p1 = state.planes[h.p1].plane;
    const Plane& p2 = state.planes[h.p2].plane;
    Plane w;
    try {
      w = common_perpendicular(pf, p1, p2, cfg.eps);
    } catch (const RankDeficientError&) {
      ++result.stats.no_invariant_plane;
      continue;
    } catch (const NonSpacelikeError&) {
      ++result.stats.no_invariant_plane;
      continue;
    }
    const TurnoverType type = TurnoverType::of(h.a, h.b, h.c);
    const Key4 local = lorentz::plane_key(w);
    if (!seen_local.insert({type.k, local}).second) continue;
    pending.push_back({h, type, w, local});
  }

  std::map<Key4, Key4> orbit_memo;
  std::set<std::pair<std::array<int, 3>, Key4>> seen_orbit;
  std::map<Key4, bool> filter_memo;
  for (const Pending& p : pending) {
    auto it = orbit_memo.find(p.local_key);
    if (it == orbit_memo.end())
      it = orbit_memo.emplace(p.local_key, orbit_canonical_key(state, p.invariant)).first;
    const Key4 orbit_key = it->second;
    if (!seen_orbit.insert({p.type.k, orbit_key}).second) continue;

    auto fit = filter_memo.find(p.local_key);
    if (fit == filter_memo.end())
      fit = filter_memo.emplace(p.local_key,
                                filter_vertex_parallel(p.invariant, state, cfg.eps))
                .first;
    if (!fit->second) {
      ++result.stats.vertex_parallel;
      continue;
    }

    TurnoverWitness w;
    w.type = p.type;
    w.a = p.hit.a;
    w.b = p.hit.b;
    w.c = p.hit.c;
    w.pi_f = state.planes[p.hit.f_plane].plane;
    w.pi_1 = state.planes[p.hit.p1].plane;
    w.pi_2 = state.planes[p.hit.p2].plane;
    w.invariant_plane = p.invariant;
    w.plane_key = orbit_key;
    const EdgeRef& e1 = state.edges[p.hit.e1];
    const EdgeRef& e2 = state.edges[p.hit.e2];
    w.e1 = {state.tiles[e1.tile].word, e1.base_edge};
    w.e2 = {state.tiles[e2.tile].word, e2.base_edge};
    w.word_pi_f = plane_word(state, p.hit.f_plane);
    w.word_pi_1 = plane_word(state, p.hit.p1);
    w.word_pi_2 = plane_word(state, p.hit.p2);
    for (const auto& inc : inclusions::direct_inclusions(w.type))
      w.supergroups.push_back(inc.super);
    result.witnesses.push_back(std::move(w));
  }

  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const TurnoverWitness& x, const TurnoverWitness& y) {
              if (x.type != y.type) return x.type < y.type;
              return x.plane_key < y.plane_key;
            });
  return result;
}

// ---------------------------------------------------------------------------
// Classification.

namespace {

using tetra::TetSpec;

void add_type(std::vector<TurnoverType>& out, int a, int b, int c) {
  const TurnoverType t = TurnoverType::of(a, b, c);
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

std::vector<TurnoverType> match_item(int item, const TetSpec& s) {
  std::vector<TurnoverType> out;
  switch (item) {
    case 1:
      if (s.l == 2 && s.n == 2 && s.r == 3 && s.q >= 3 && s.m >= 6 && s.p >= 6)
        add_type(out, s.q, s.m, s.p);
      break;
    case 2:
      if (s.l == 2 && s.n == 2 && s.p == 3 && s.q >= 6 && s.m >= 3 && s.r >= 6)
        add_type(out, s.q, s.m, s.r);
      break;
    case 3:
      if (s.l == 3 && s.q == 2 && s.r == 2 && s.m >= 6 && s.n >= 3 && s.p >= 6)
        add_type(out, s.m, s.n, s.p);
      break;
    case 4:
      if (s.l == 2 && s.n == 2 && s.r == 3) {
        if (s.q == 2 && s.m == 4 && s.p >= 5) {
          add_type(out, 2, 4, s.p);
          add_type(out, 2, s.p, s.p);
          if (s.p == 5) add_type(out, 4, 4, 5);
          if (s.p % 2 == 0) add_type(out, s.p / 2, s.p, s.p);
        }
        if (s.q == 2 && s.p == 4 && s.m >= 5) {
          add_type(out, 2, 4, s.m);
          add_type(out, 2, s.m, s.m);
          if (s.m == 5) add_type(out, 4, 4, 5);
          if (s.m % 2 == 0) add_type(out, s.m / 2, s.m, s.m);
        }
        if (s.q == 2 && s.m >= 5 && s.p >= 5) {
          add_type(out, 2, s.m, s.p);
          if (s.p % 2 == 0) add_type(out, s.m, s.m, s.p / 2);
          if (s.m % 2 == 0) add_type(out, s.m / 2, s.p, s.p);
        }
        if (s.q > 2 && s.m > 2 && s.p > 2 && (s.q > 3 || s.m > 3 || s.p > 3)) {
          add_type(out, s.q, s.m, s.p);
          const int three = (s.q == 3) + (s.m == 3) + (s.p == 3);
          if (three == 2) add_type(out, std::max({s.q, s.m, s.p}),
                                   std::max({s.q, s.m, s.p}),
                                   std::max({s.q, s.m, s.p}));
        }
      }
      break;
    case 5:
      if (s.l == 3 && s.m == 2 && s.q == 2 && s.n == 2 && s.r == 3 && s.p >= 5)
        add_type(out, 2, s.p, s.p);
      break;
    case 6:
      if (s.l == 3 && s.q == 2 && s.n == 2 && s.r == 3 && s.m >= 3 && s.p >= 4)
        add_type(out, s.m, s.p, s.p);
      break;
    case 7:
      if (s.l == 3 && s.q == 3 && s.n == 2 && s.p == 3 && s.r == 2 && s.m >= 4)
        add_type(out, 3, s.m, s.m);
      break;
    case 8:
      if (s.l == 4 && s.m == 3 && s.n == 2 && s.p == 2 && s.r == 2 && s.q >= 4)
        add_type(out, s.q, s.q, 3);
      break;
    case 9:
      if (s.l == 2 && s.m == 2 && s.q == 4 && s.p == 3) {
        if (s.n == 2 && s.r >= 5) {
          add_type(out, 2, 4, s.r);
          add_type(out, 2, s.r, s.r);
          if (s.r == 5) add_type(out, 4, 4, 5);
          if (s.r % 2 == 0) add_type(out, s.r / 2, s.r, s.r);
        }
        if (s.n == 3 && s.r >= 3) add_type(out, 4, 4, s.r);
        if (s.n == 2 && s.r == 5) {
          add_type(out, 3, 3, 5);
          add_type(out, 3, 5, 5);
          add_type(out, 5, 5, 5);
        }
      }
      break;
    case 10:
      if (s.l == 2 && s.m == 3 && s.n == 2 && s.p == 3 && s.q >= 3 &&
          (s.r == 4 || s.r == 5))
        add_type(out, s.q, s.r, s.r);
      break;
    case 11:
      if (s.l == 2 && s.m == 2 && s.n == 3 && s.p == 5 && s.r == 2 && s.q >= 3)
        add_type(out, s.q, s.q, 5);
      break;
    case 12:
      if (s.l == 2 && s.m == 2 && s.q == 5 && s.n == 2 && s.p == 3 && s.r == 5)
        add_type(out, 3, 5, 5);
      break;
    case 13:
      if (s.l == 2 && s.m == 2 && s.q == 3 && s.n == 3 && s.r == 2 &&
          (s.p == 5 || s.p == 6)) {
        add_type(out, 3, s.p, s.p);
        add_type(out, s.p, s.p, s.p);
      }
      break;
    case 14:
      if (s.l == 2 && s.m == 2 && s.q == 3 && s.n == 2 && s.r == 3) {
        if (s.p == 5) {
          add_type(out, 2, 5, 5);
          add_type(out, 3, 3, 5);
          add_type(out, 5, 5, 5);
        }
        if (s.p == 6) add_type(out, 3, 6, 6);
      }
      break;
    default:
      break;
  }
  return out;
}

}  // namespace

Expectation expected_turnovers(const TetSpec& spec) {
  const auto orbit = tetra::symmetry_orbit(spec);

  auto collect = [&](int lo, int hi) {
    Expectation exp;
    std::set<TurnoverType> types;
    for (int item = lo; item <= hi; ++item) {
      // Label by the first item matching the spec itself, else the orbit.
      for (const auto& member : match_item(item, spec)) {
        if (exp.item == 0) exp.item = item;
        types.insert(member);
      }
    }
    for (const auto& rep : orbit) {
      for (int item = lo; item <= hi; ++item) {
        for (const auto& member : match_item(item, rep)) {
          if (exp.item == 0) exp.item = item;
          types.insert(member);
        }
      }
    }
    exp.types.assign(types.begin(), types.end());
    return exp;
  };

  Expectation items = collect(1, 3);
  if (!items.types.empty()) {
    items.kind = Expectation::Kind::Item;
    return items;
  }
  Expectation conj = collect(4, 14);
  if (!conj.types.empty()) {
    conj.kind = Expectation::Kind::Conjectural;
    return conj;
  }
  Expectation none;
  none.kind = tetra::all_nonfinite(spec) ? Expectation::Kind::NoneExpected
                                         : Expectation::Kind::OutOfScope;
  return none;
}

ClassificationReport classify_spec(const TetSpec& spec, const SearchConfig& cfg) {
  ClassificationReport report;
  report.spec = spec;
  report.expected = expected_turnovers(spec);
  report.result = search(tetra::realize(spec), cfg);

  const auto found = report.result.found_types();
  const auto maximal = report.result.maximal_types();

  switch (report.expected.kind) {
    case Expectation::Kind::Item:
      if (maximal == report.expected.types) {
        report.verdict = Verdict::Match;
      } else {
        report.verdict = Verdict::Mismatch;
        report.note = "maximal found types differ from the predicted turnover";
      }
      break;
    case Expectation::Kind::Conjectural: {
      const auto present = report.result.present_types();
      const bool all_present = std::all_of(
          report.expected.types.begin(), report.expected.types.end(),
          [&](const TurnoverType& t) {
            return std::find(present.begin(), present.end(), t) != present.end();
          });
      report.verdict = all_present ? Verdict::Match : Verdict::Mismatch;
      if (!all_present)
        report.note = "a conjectured turnover was not found up to this depth";
      break;
    }
    case Expectation::Kind::NoneExpected:
      if (found.empty()) {
        report.verdict = Verdict::Inconclusive;
        report.note = "no turnover found; absence certified only up to depth " +
                      std::to_string(cfg.depth);
      } else {
        report.verdict = Verdict::Mismatch;
        report.note = "turnover found where the classification predicts none";
      }
      break;
    case Expectation::Kind::OutOfScope:
      report.verdict = Verdict::Inconclusive;
      report.note = "spec has a finite vertex and matches no classified family";
      break;
  }
  return report;
}

}  // namespace hyptet::turnover
