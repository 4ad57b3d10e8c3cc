#pragma once

// Report rendering: aligned text for humans, JSON records for machines.
// Every machine-readable report embeds a run manifest; numeric fields are
// rounded to 9 significant digits so reports are stable across runs and
// thread counts (wall_ms and threads are the only volatile fields).

#include "hyptet/polyhedra.hpp"
#include "hyptet/tetra.hpp"
#include "hyptet/turnover.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace hyptet::report {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchema = "hyptet-report/1";

struct Manifest {
  std::string command;
  std::string input;
  std::map<std::string, std::string> config;
  int threads = 1;
  std::int64_t wall_ms = 0;
};

double round9(double x);

nlohmann::json to_json(const Manifest& m);
nlohmann::json vec_json(const Vec4& v);

nlohmann::json realize_json(const tetra::GeneralizedTetrahedron& tet,
                            const Manifest& m);
std::string realize_text(const tetra::GeneralizedTetrahedron& tet);

nlohmann::json witness_json(const turnover::TurnoverWitness& w,
                            const tetra::TetSpec& spec);
nlohmann::json search_json(const turnover::ClassificationReport& rep,
                           const Manifest& m);
std::string search_text(const turnover::ClassificationReport& rep);

nlohmann::json circuits_json(const std::vector<polyhedra::Circuit>& circuits,
                             const Manifest& m);
nlohmann::json violations_json(const std::vector<polyhedra::Violation>& vs,
                               const Manifest& m);

// Normalizes the volatile manifest fields; used by determinism checks.
nlohmann::json strip_volatile(nlohmann::json j);

}  // namespace hyptet::report
