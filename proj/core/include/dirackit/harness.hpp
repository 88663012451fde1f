#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirackit/document.hpp"

namespace dirackit {

// Overrides applied on top of document defaults. Empty optionals defer to the
// block values (map problems) or the engine defaults (100 samples for the
// fiberwise Dirac identities, degree bound 4 for exactness searches).
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> degree_bound;
  bool timings = false;
  bool flip_sharp = false;  // deliberate sign-error control, prove only
};

// One report row. verdict is PASS, FAIL, INCONCLUSIVE or ERROR; detail is a
// certificate for PASS and a witness otherwise. millis is only populated
// when timings were requested, keeping default reports byte-stable.
struct CheckResult {
  std::string id;
  std::string verdict;
  std::string detail;
  std::uint64_t seed = 0;
  std::int64_t millis = -1;
};

// Runs the checks a document declares, in declaration order.
std::vector<CheckResult> run_document(const Document& doc,
                                      const RunOptions& opt);

// Runs every corpus item whose id matches the filter ("" or "*" for all;
// '*' matches any substring). Each row compares the actual verdict of one
// declared check against the item's expected table: the row passes exactly
// when they agree, so expected failures count as passes.
std::vector<CheckResult> run_corpus(const std::string& filter,
                                    const RunOptions& opt);

// Proposition verifiers, each keyed to one statement checked on designated
// corpus instances.
std::vector<std::string> proposition_ids();
CheckResult verify_proposition(const std::string& id, const RunOptions& opt);

// Rendering. JSON output is deterministic for fixed inputs and seed; the
// text form is one line per row.
std::string render_json(const std::vector<CheckResult>& rows, bool timings);
std::string render_text(const std::vector<CheckResult>& rows);

// 0 all PASS; 1 any FAIL; 2 any INCONCLUSIVE but no FAIL; 3 any ERROR.
int exit_code(const std::vector<CheckResult>& rows);

}  // namespace dirackit
