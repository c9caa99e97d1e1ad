#pragma once

#include <string>
#include <vector>

namespace polar::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Each check returns pass/fail plus a short computed-value summary. The
// parameters default to desk-scale instances; the acceptance suite calls the
// same functions with its full grids.

// Exhaustive-bound and average-bound outcomes over one grid run, so callers
// can report the two inequalities separately.
struct PropositionGrid {
  bool prop1 = true;
  bool prop2 = true;
  std::string detail;
};

// Size arguments are block lengths N.
PropositionGrid proposition_grid(const std::vector<int>& sizes, const std::vector<int>& ls,
                                 bool frozen_average_small);

// Size arguments are block lengths N.
CheckResult check_transform_dense(const std::vector<int>& exhaustive_n,
                                  const std::vector<int>& random_n, int random_count);
CheckResult check_sc_scl_equivalence();
CheckResult check_scl_ml_equivalence();
CheckResult check_propositions(const std::vector<int>& ns, const std::vector<int>& ls,
                               bool include_frozen_average);
CheckResult check_symmetry_identities(int n);
CheckResult check_construction_consistency();
CheckResult check_polarization_trend();
CheckResult check_precoding_inequalities(const std::vector<int>& ls);
CheckResult check_frozen_indifference();
CheckResult check_mc_regression(int workers_a, int workers_b);

std::vector<CheckResult> run_verification_suite();

}  // namespace polar::verify
