#pragma once

// Named verification suites over the classification results, shared by the
// CLI `verify` subcommand and the acceptance tests.

#include "hyptet/tetra.hpp"
#include "hyptet/turnover.hpp"

#include <string>
#include <vector>

namespace hyptet::verify {

struct CheckLine {
  bool ok;
  std::string text;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckLine> lines;

  int failures() const {
    int n = 0;
    for (const auto& l : lines) n += !l.ok;
    return n;
  }
  bool ok() const { return failures() == 0; }
};

// The classified-family sample set: every spec must Match with exactly the
// predicted maximal turnover type.
extern const std::vector<std::pair<const char*, const char*>> kItemSamples;

// Conjectural-list probes: spec -> turnover types that must be present.
extern const std::vector<std::pair<const char*, const char*>> kConjecturalSamples;

SuiteResult items_suite(int depth = 8, int threads = 1);

// Escalates depth up to max_depth until the expected types are present.
SuiteResult conjectural_suite(int max_depth = 10, int threads = 1);

// Every realizable spec with entries <= max_entry, no finite vertex and no
// classified-family match must yield an empty search (depth-limited
// evidence for the negative half of the classification).
SuiteResult negative_suite(int depth = 8, int max_entry = 6, int threads = 1,
                           bool dedup_by_orbit = false);

// Development-geometry invariants over every realizable spec with entries
// <= max_entry and no finite vertex:
//  (1) distinct truncation planes are pairwise disjoint,
//  (2) distinct developed edge geodesics are pairwise disjoint,
//  (3) every face plane is disjoint from the truncation plane of the
//      opposite vertex of the same developed copy.
SuiteResult invariants_suite(int depth = 5, int max_entry = 6);

// All specs with entries in [2, max_entry], every vertex non-finite, Gram
// signature (3,1); ascending lexicographic order.
std::vector<tetra::TetSpec> all_nonfinite_realizable(int max_entry);

}  // namespace hyptet::verify
