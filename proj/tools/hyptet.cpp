// hyptet: hyperbolic Coxeter tetrahedra, reflection tilings and immersed
// turnovers.
//
// Subcommands:
//   realize <spec>          gram matrix, existence, vertex classes, normals
//   search  <spec>          immersed-turnover search + classification
//   verify  --suite <name>  items | conjectural | negative | invariants
//   poly    <file> <mode>   validate | circuits | small
//   lattice <query...>      sub a,b,c super d,e,f | maximal a,b,c | inclusions a,b,c
//
// Exit codes: 0 ok/match (inconclusive prints a warning), 2 parse error,
// 3 not realizable, 4 mismatch, 5 blow-up.

#include <CLI11.hpp>

#include "hyptet/develop.hpp"
#include "hyptet/inclusions.hpp"
#include "hyptet/polyhedra.hpp"
#include "hyptet/report.hpp"
#include "hyptet/tetra.hpp"
#include "hyptet/turnover.hpp"
#include "hyptet/verify.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace hyptet;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotRealizable = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitBlowUp = 5;

struct CommonFlags {
  int depth = 8;
  double eps = 1e-9;
  int cmax = 100;
  std::size_t tile_cap = tiling::kDefaultTileCap;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  std::string format = "text";
};

turnover::SearchConfig to_config(const CommonFlags& f) {
  turnover::SearchConfig cfg;
  cfg.depth = f.depth;
  cfg.eps = f.eps;
  cfg.cmax = f.cmax;
  cfg.tile_cap = f.tile_cap;
  cfg.threads = std::max(1, f.threads);
  return cfg;
}

report::Manifest make_manifest(const std::string& command,
                               const std::string& input, const CommonFlags& f,
                               std::int64_t wall_ms) {
  report::Manifest m;
  m.command = command;
  m.input = input;
  m.config = {{"depth", std::to_string(f.depth)},
              {"eps", std::to_string(f.eps)},
              {"cmax", std::to_string(f.cmax)},
              {"tile_cap", std::to_string(f.tile_cap)},
              {"threads", std::to_string(std::max(1, f.threads))},
              {"format", f.format}};
  m.threads = std::max(1, f.threads);
  m.wall_ms = wall_ms;
  return m;
}

class Timer {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_realize(const std::string& spec_str, const CommonFlags& flags) {
  Timer timer;
  tetra::TetSpec spec;
  try {
    spec = tetra::parse_spec(spec_str);
  } catch (const tetra::SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  tetra::GeneralizedTetrahedron tet;
  try {
    tet = tetra::realize(spec);
  } catch (const tetra::NotRealizableError& e) {
    std::cerr << "not realizable: " << e.what() << "\n";
    return kExitNotRealizable;
  }
  if (flags.format == "records") {
    std::cout << report::realize_json(
                     tet, make_manifest("realize", spec.str(), flags, timer.ms()))
                     .dump(2)
              << "\n";
  } else {
    std::cout << report::realize_text(tet);
  }
  return kExitOk;
}

int cmd_search(const std::string& spec_str, const CommonFlags& flags) {
  Timer timer;
  tetra::TetSpec spec;
  try {
    spec = tetra::parse_spec(spec_str);
  } catch (const tetra::SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  turnover::ClassificationReport rep;
  try {
    rep = turnover::classify_spec(spec, to_config(flags));
  } catch (const tetra::NotRealizableError& e) {
    std::cerr << "not realizable: " << e.what() << "\n";
    return kExitNotRealizable;
  } catch (const tiling::BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  }
  if (flags.format == "records") {
    std::cout << report::search_json(
                     rep, make_manifest("search", spec.str(), flags, timer.ms()))
                     .dump(2)
              << "\n";
  } else {
    std::cout << report::search_text(rep);
  }
  if (rep.verdict == turnover::Verdict::Mismatch) return kExitMismatch;
  if (rep.verdict == turnover::Verdict::Inconclusive)
    std::cerr << "warning: inconclusive (" << rep.note << ")\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite_name, const CommonFlags& flags,
               int max_entry) {
  const int threads = std::max(1, flags.threads);
  verify::SuiteResult suite;
  try {
    if (suite_name == "items") {
      suite = verify::items_suite(flags.depth, threads);
    } else if (suite_name == "conjectural") {
      suite = verify::conjectural_suite(std::max(flags.depth, 10), threads);
    } else if (suite_name == "negative") {
      suite = verify::negative_suite(flags.depth, max_entry, threads);
    } else if (suite_name == "invariants") {
      suite = verify::invariants_suite(std::min(flags.depth, 5), max_entry);
    } else {
      std::cerr << "error: unknown suite " << suite_name << "\n";
      return kExitParse;
    }
  } catch (const tiling::BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  }
  for (const auto& line : suite.lines)
    std::cout << (line.ok ? "[ ok ] " : "[FAIL] ") << line.text << "\n";
  std::cout << "suite " << suite.name << ": "
            << (suite.ok() ? "all checks passed" : "FAILURES") << "\n";
  return suite.ok() ? kExitOk : kExitMismatch;
}

int cmd_poly(const std::string& path, const std::string& mode,
             const CommonFlags& flags) {
  Timer timer;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kExitParse;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  polyhedra::MarkedGraph g;
  try {
    g = polyhedra::parse(buffer.str());
  } catch (const polyhedra::GraphParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  const auto manifest = make_manifest("poly " + mode, path, flags, timer.ms());
  if (mode == "validate") {
    const auto violations = polyhedra::validate(g);
    if (flags.format == "records") {
      std::cout << report::violations_json(violations, manifest).dump(2) << "\n";
    } else if (violations.empty()) {
      std::cout << "valid marked polyhedron graph\n";
    } else {
      for (const auto& v : violations)
        std::cout << "violation [" << v.rule << "] " << v.detail << "\n";
    }
    return kExitOk;
  }
  if (mode == "circuits") {
    try {
      const auto circuits = polyhedra::turnover_circuits(g);
      if (flags.format == "records") {
        std::cout << report::circuits_json(circuits, manifest).dump(2) << "\n";
      } else {
        for (const auto& c : circuits) {
          std::cout << "3-circuit faces (" << c.faces[0] << "," << c.faces[1]
                    << "," << c.faces[2] << ") labels (" << c.labels[0] << ","
                    << c.labels[1] << "," << c.labels[2] << ") "
                    << (c.kind == polyhedra::CircuitKind::Hyperbolic
                            ? "hyperbolic"
                            : (c.kind == polyhedra::CircuitKind::Euclidean
                                   ? "euclidean"
                                   : "spherical"))
                    << (c.vertex_parallel ? " (vertex link)" : "") << "\n";
        }
      }
      return kExitOk;
    } catch (const polyhedra::NotValidatedError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitParse;
    }
  }
  if (mode == "small") {
    const auto verdict = polyhedra::is_small(g);
    std::cout << polyhedra::to_string(verdict) << "\n";
    return kExitOk;
  }
  std::cerr << "error: unknown poly mode " << mode << "\n";
  return kExitParse;
}

int cmd_lattice(const std::vector<std::string>& query) {
  using inclusions::TriangleType;
  auto parse_triple = [](const std::string& text) {
    int a = 0, b = 0, c = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%d", &a, &b, &c) != 3 || a < 2 ||
        b < 2 || c < 2)
      throw std::invalid_argument("expected a triple a,b,c with entries >= 2");
    return TriangleType::of(a, b, c);
  };
  try {
    if (query.size() == 4 && query[0] == "sub" && query[2] == "super") {
      const auto sub = parse_triple(query[1]);
      const auto super = parse_triple(query[3]);
      const auto chain = inclusions::is_subgroup(sub, super);
      if (!chain) {
        std::cout << sub.str() << " is not a subgroup of " << super.str()
                  << " (within the table closure)\n";
        return kExitOk;
      }
      std::cout << sub.str() << " < " << super.str() << "  index "
                << chain->total_index;
      if (chain->steps.size() == 1)
        std::cout << (chain->steps[0].normal ? ", normal" : ", non-normal");
      std::cout << "\n";
      TriangleType at = sub;
      for (const auto& step : chain->steps) {
        std::cout << "  " << at.str() << " < " << step.super.str() << "  index "
                  << step.index << (step.normal ? " normal" : " non-normal")
                  << "  [row " << step.row + 1 << "]\n";
        at = step.super;
      }
      return kExitOk;
    }
    if (query.size() == 2 && query[0] == "maximal") {
      const auto t = parse_triple(query[1]);
      std::cout << (inclusions::is_maximal(t) ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (query.size() == 2 && query[0] == "inclusions") {
      const auto t = parse_triple(query[1]);
      const auto incs = inclusions::direct_inclusions(t);
      if (incs.empty()) std::cout << t.str() << " is maximal\n";
      for (const auto& inc : incs)
        std::cout << t.str() << " < " << inc.super.str() << "  index "
                  << inc.index << (inc.normal ? " normal" : " non-normal")
                  << "  [row " << inc.row + 1 << "]\n";
      return kExitOk;
    }
    if (query.size() == 1 && query[0] == "table") {
      std::cout << inclusions::render_table();
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  std::cerr << "error: lattice query must be one of:\n"
               "  sub a,b,c super d,e,f | maximal a,b,c | inclusions a,b,c | table\n";
  return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic Coxeter tetrahedra, reflection tilings and turnovers"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string spec_str, poly_path, poly_mode, suite_name;
  std::vector<std::string> lattice_query;
  int max_entry = 6;

  auto add_common = [&](CLI::App* cmd, bool search_flags) {
    cmd->add_option("--format", flags.format, "text | records")
        ->check(CLI::IsMember({"text", "records"}));
    if (search_flags) {
      cmd->add_option("--depth", flags.depth, "development depth");
      cmd->add_option("--eps", flags.eps, "classification tolerance");
      cmd->add_option("--cmax", flags.cmax, "largest pi-submultiple denominator");
      cmd->add_option("--tile-cap", flags.tile_cap, "tile count guard");
      cmd->add_option("--threads", flags.threads, "worker threads (0 = cores)");
    }
  };

  auto* realize = app.add_subcommand("realize", "realize a tetrahedron spec");
  realize->add_option("spec", spec_str, "\"l,m,q;n,p,r\"")->required();
  add_common(realize, false);

  auto* search = app.add_subcommand("search", "search for immersed turnovers");
  search->add_option("spec", spec_str, "\"l,m,q;n,p,r\"")->required();
  add_common(search, true);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite_name, "items|conjectural|negative|invariants")
      ->required();
  verify->add_option("--max-entry", max_entry, "entry bound for scans");
  add_common(verify, true);

  auto* poly = app.add_subcommand("poly", "marked polyhedron graph queries");
  poly->add_option("file", poly_path, "polyhedron JSON file")->required();
  poly->add_option("mode", poly_mode, "validate|circuits|small")->required();
  add_common(poly, false);

  auto* lattice = app.add_subcommand("lattice", "triangle-group inclusion queries");
  lattice->add_option("query", lattice_query, "see --help")->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitParse;
  }

  if (flags.threads <= 0)
    flags.threads = std::max(1u, std::thread::hardware_concurrency());

  if (realize->parsed()) return cmd_realize(spec_str, flags);
  if (search->parsed()) return cmd_search(spec_str, flags);
  if (verify->parsed()) return cmd_verify(suite_name, flags, max_entry);
  if (poly->parsed()) return cmd_poly(poly_path, poly_mode, flags);
  if (lattice->parsed()) return cmd_lattice(lattice_query);
  return kExitParse;
}
