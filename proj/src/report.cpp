#include "hyptet/report.hpp"

#include <cstdio>
#include <sstream>

namespace hyptet::report {

using nlohmann::json;

double round9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

json to_json(const Manifest& m) {
  json j;
  j["command"] = m.command;
  j["input"] = m.input;
  j["config"] = m.config;
  j["threads"] = m.threads;
  j["version"] = kToolVersion;
  j["wall_ms"] = m.wall_ms;
  return j;
}

json vec_json(const Vec4& v) {
  return json::array({round9(v[0]), round9(v[1]), round9(v[2]), round9(v[3])});
}

namespace {

json type_json(const turnover::TurnoverType& t) {
  return json::array({t.k[0], t.k[1], t.k[2]});
}

std::string vec_text(const Vec4& v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "(% .9g, % .9g, % .9g, % .9g)", round9(v[0]),
                round9(v[1]), round9(v[2]), round9(v[3]));
  return buf;
}

}  // namespace

json realize_json(const tetra::GeneralizedTetrahedron& tet, const Manifest& m) {
  json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["spec"] = tet.spec.str();
  json gram = json::array();
  const auto g = tetra::gram_from_spec(tet.spec);
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(round9(g(r, c)));
    gram.push_back(row);
  }
  j["gram"] = gram;
  j["faces"] = json::array();
  for (const auto& f : tet.faces) j["faces"].push_back(vec_json(f.normal));
  j["vertices"] = json::array();
  static constexpr const char* names[4] = {"A", "B", "C", "D"};
  for (int v = 0; v < 4; ++v) {
    const auto& gv = tet.vertices[v];
    json jv;
    jv["name"] = names[v];
    jv["class"] = tetra::to_string(gv.cls);
    jv["dual"] = vec_json(gv.dual);
    if (gv.truncation) jv["truncation_plane"] = vec_json(gv.truncation->normal);
    j["vertices"].push_back(jv);
  }
  return j;
}

std::string realize_text(const tetra::GeneralizedTetrahedron& tet) {
  std::ostringstream os;
  os << "T[" << tet.spec.str() << "]  hyperbolic generalized tetrahedron\n";
  const auto g = tetra::gram_from_spec(tet.spec);
  os << "gram matrix:\n";
  for (int r = 0; r < 4; ++r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  [% .6f % .6f % .6f % .6f]\n", g(r, 0),
                  g(r, 1), g(r, 2), g(r, 3));
    os << buf;
  }
  static constexpr const char* names[4] = {"A", "B", "C", "D"};
  static constexpr const char* fnames[4] = {"BCD", "ACD", "ABD", "ABC"};
  for (int f = 0; f < 4; ++f)
    os << "face " << fnames[f] << " normal " << vec_text(tet.faces[f].normal)
       << "\n";
  for (int v = 0; v < 4; ++v) {
    const auto& gv = tet.vertices[v];
    os << "vertex " << names[v] << ": " << tetra::to_string(gv.cls);
    if (gv.truncation)
      os << ", truncation plane " << vec_text(gv.truncation->normal);
    os << "\n";
  }
  return os.str();
}

json witness_json(const turnover::TurnoverWitness& w, const tetra::TetSpec& spec) {
  json j;
  j["spec"] = spec.str();
  j["type"] = type_json(w.type);
  j["orders"] = json::array({w.a, w.b, w.c});
  j["pi_f"] = vec_json(w.pi_f.normal);
  j["pi_1"] = vec_json(w.pi_1.normal);
  j["pi_2"] = vec_json(w.pi_2.normal);
  j["invariant_plane"] = vec_json(w.invariant_plane.normal);
  j["e1"] = {{"word", w.e1.word}, {"edge", tetra::edge_name(w.e1.base_edge)}};
  j["e2"] = {{"word", w.e2.word}, {"edge", tetra::edge_name(w.e2.base_edge)}};
  j["words"] = {{"pi_f", w.word_pi_f}, {"pi_1", w.word_pi_1}, {"pi_2", w.word_pi_2}};
  j["supergroups"] = json::array();
  for (const auto& s : w.supergroups) j["supergroups"].push_back(type_json(s));
  return j;
}

namespace {

json expectation_json(const turnover::Expectation& e) {
  json j;
  switch (e.kind) {
    case turnover::Expectation::Kind::Item: j["kind"] = "item"; break;
    case turnover::Expectation::Kind::Conjectural: j["kind"] = "conjectural"; break;
    case turnover::Expectation::Kind::NoneExpected: j["kind"] = "none-expected"; break;
    case turnover::Expectation::Kind::OutOfScope: j["kind"] = "out-of-scope"; break;
  }
  if (e.item) j["item"] = e.item;
  j["types"] = json::array();
  for (const auto& t : e.types) j["types"].push_back(type_json(t));
  return j;
}

}  // namespace

json search_json(const turnover::ClassificationReport& rep, const Manifest& m) {
  json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["spec"] = rep.spec.str();
  j["depth"] = rep.result.depth;
  j["tiles"] = rep.result.tiles;
  j["witnesses"] = json::array();
  for (const auto& w : rep.result.witnesses)
    j["witnesses"].push_back(witness_json(w, rep.spec));
  j["found_types"] = json::array();
  for (const auto& t : rep.result.found_types())
    j["found_types"].push_back(type_json(t));
  j["present_types"] = json::array();
  for (const auto& t : rep.result.present_types())
    j["present_types"].push_back(type_json(t));
  j["maximal_types"] = json::array();
  for (const auto& t : rep.result.maximal_types())
    j["maximal_types"].push_back(type_json(t));
  j["expected"] = expectation_json(rep.expected);
  j["verdict"] = turnover::to_string(rep.verdict);
  if (!rep.note.empty()) j["note"] = rep.note;
  const auto& st = rep.result.stats;
  j["stats"] = {{"edge_pairs", st.edge_pairs},
                {"shared_vertex_pairs", st.shared_vertex_pairs},
                {"same_geodesic_pairs", st.same_geodesic_pairs},
                {"plane_pairs", st.plane_pairs},
                {"non_submultiple_angles", st.non_submultiple_angles},
                {"sign_inconsistent", st.sign_inconsistent},
                {"non_hyperbolic_triples", st.non_hyperbolic_triples},
                {"no_invariant_plane", st.no_invariant_plane},
                {"vertex_parallel", st.vertex_parallel},
                {"raw_hits", st.raw_hits}};
  return j;
}

std::string search_text(const turnover::ClassificationReport& rep) {
  std::ostringstream os;
  os << "T[" << rep.spec.str() << "]  depth " << rep.result.depth << ", "
     << rep.result.tiles << " tiles\n";
  if (rep.result.witnesses.empty()) {
    os << "no immersed turnover found\n";
  } else {
    for (const auto& w : rep.result.witnesses) {
      os << "turnover " << w.type.str() << "  e1=" << tetra::edge_name(w.e1.base_edge)
         << "@\"" << w.e1.word << "\""
         << " e2=" << tetra::edge_name(w.e2.base_edge) << "@\"" << w.e2.word
         << "\"  invariant plane " << vec_text(w.invariant_plane.normal);
      if (!w.supergroups.empty()) {
        os << "  [table supergroups:";
        for (const auto& s : w.supergroups) os << " " << s.str();
        os << "]";
      }
      os << "\n";
    }
  }
  const auto& e = rep.expected;
  os << "expected: ";
  switch (e.kind) {
    case turnover::Expectation::Kind::Item: os << "item (" << e.item << ")"; break;
    case turnover::Expectation::Kind::Conjectural:
      os << "conjectural item (" << e.item << ")";
      break;
    case turnover::Expectation::Kind::NoneExpected: os << "none"; break;
    case turnover::Expectation::Kind::OutOfScope: os << "out of scope"; break;
  }
  for (const auto& t : e.types) os << " " << t.str();
  os << "\nverdict: " << turnover::to_string(rep.verdict);
  if (!rep.note.empty()) os << "  (" << rep.note << ")";
  os << "\n";
  return os.str();
}

json circuits_json(const std::vector<polyhedra::Circuit>& circuits,
                   const Manifest& m) {
  json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["circuits"] = json::array();
  for (const auto& c : circuits) {
    json jc;
    jc["faces"] = c.faces;
    jc["crossed_edges"] = c.crossed_edges;
    jc["labels"] = c.labels;
    jc["kind"] = c.kind == polyhedra::CircuitKind::Hyperbolic
                     ? "hyperbolic"
                     : (c.kind == polyhedra::CircuitKind::Euclidean ? "euclidean"
                                                                    : "spherical");
    jc["vertex_parallel"] = c.vertex_parallel;
    j["circuits"].push_back(jc);
  }
  return j;
}

json violations_json(const std::vector<polyhedra::Violation>& vs,
                     const Manifest& m) {
  json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  j["violations"] = json::array();
  for (const auto& v : vs)
    j["violations"].push_back({{"rule", v.rule}, {"detail", v.detail}});
  return j;
}

json strip_volatile(json j) {
  if (j.contains("manifest")) {
    j["manifest"]["wall_ms"] = 0;
    j["manifest"]["threads"] = 0;
    if (j["manifest"].contains("config")) {
      auto& cfg = j["manifest"]["config"];
      if (cfg.contains("threads")) cfg["threads"] = "0";
    }
  }
  return j;
}

}  // namespace hyptet::report
