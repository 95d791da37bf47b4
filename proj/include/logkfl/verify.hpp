// Programmatic invariant suites, one per module, behind the command-line `verify` verb.
// Each suite re-checks the structural identities the module is built on (exact Smith
// factorization, d after d = 0, closed forms against brute force, exactness of emitted
// sequences) on small deterministic instances. A suite reports the first violated
// invariant; the verb exits zero exactly when every suite passes.
#pragma once

#include <string>
#include <vector>

namespace logkfl {

struct VerifyResult {
  std::string suite;
  bool pass = true;
  std::string detail;  // first failed invariant, empty when the suite passed
};

std::vector<VerifyResult> run_verify_suites();

bool all_pass(const std::vector<VerifyResult>& results);

}  // namespace logkfl
