#pragma once

// The verification gate: nine in-process checkpoints covering the exact
// eigen-relations, series/closed-form agreement, commutation residuals,
// symbolic identities, divergence growth, the small-parameter limit,
// analytic continuation, the bounded-operator identities, and the
// bounded/unbounded contrast.  The tenth point (byte-identical reruns of the
// batch driver) needs the installed binary and lives with the test drivers.

#include <cstdint>
#include <string>
#include <vector>

namespace timeop {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured magnitudes, printable next to the verdict
};

// points 1..9; the seed drives every random draw, so a fixed seed fixes the
// whole report byte for byte
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

// one line per point: "PASS  3  name -- detail"
std::string acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace timeop
