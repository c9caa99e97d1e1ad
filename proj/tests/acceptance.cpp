// Acceptance suite. One criterion per invocation: `acceptance <1..11>`,
// or no argument to run everything. Prints one PASS/FAIL line per criterion
// and exits with the number of failures.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "polar/verify.hpp"

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using polar::verify::CheckResult;

Outcome from_check(const CheckResult& r) { return {r.pass, r.detail}; }

Outcome run_criterion(int idx) {
  using namespace polar::verify;
  switch (idx) {
    case 1:
      return from_check(check_transform_dense({1, 2, 4, 8}, {16, 1024}, 1000));
    case 2:
      return from_check(check_sc_scl_equivalence());
    case 3:
      return from_check(check_scl_ml_equivalence());
    case 4: {
      PropositionGrid g = proposition_grid({2, 4, 8}, {1, 2, 4}, true);
      return {g.prop1, "exhaustive list-miss bound; " + g.detail};
    }
    case 5: {
      PropositionGrid g = proposition_grid({2, 4, 8}, {1, 2, 4}, true);
      return {g.prop2, "exhaustive average-error bound; " + g.detail};
    }
    case 6:
      return from_check(check_symmetry_identities(2));
    case 7:
      return from_check(check_construction_consistency());
    case 8:
      return from_check(check_polarization_trend());
    case 9:
      return from_check(check_precoding_inequalities({2, 4}));
    case 10:
      return from_check(check_frozen_indifference());
    case 11:
      return from_check(check_mc_regression(1, 4));
    default:
      return {false, "unknown criterion index"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> todo;
  if (argc > 1) {
    for (int a = 1; a < argc; ++a) todo.push_back(std::atoi(argv[a]));
  } else {
    for (int i = 1; i <= 11; ++i) todo.push_back(i);
  }
  int failures = 0;
  for (int idx : todo) {
    Outcome out = run_criterion(idx);
    std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", idx, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
