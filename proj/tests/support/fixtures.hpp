// fixtures.hpp
// Shared instances and randomized family generation for the test suites.
#ifndef PDI_TESTS_FIXTURES_HPP
#define PDI_TESTS_FIXTURES_HPP

#include <string>

#include "pdi/disjunction.hpp"
#include "pdi/instance.hpp"
#include "pdi/perturb.hpp"

namespace pdi::testing {

/// JSON text of the two-variable instance used throughout:
///   min -x1 - x2   s.t.  2 x1 + x2 <= 2,  x in [0,1]^2,  x1 integer.
/// Standardized row order: structural, x1>=0, -x1>=-1, x2>=0, -x2>=-1.
const std::string& two_var_json();

/// The instance parsed from two_var_json().
Instance two_var_instance();

/// Split disjunction on x1 for the two-variable instance:
/// term 0 = {x1 <= 0}, term 1 = {x1 >= 1}.
Disjunction two_var_split();

/// Two structural rows, both variables integer:
///   min -x1 - x2   s.t.  2 x1 + x2 <= 2,  x1 + 2 x2 <= 2,  x in [0,1]^2.
/// Branching on x1 gives terms {x1<=0} and {x1>=1}; tightening the second
/// structural rhs breaks term 0's stored basis while the term stays
/// feasible.
Instance two_row_instance();

/// One structural row 2 x1 + x2 <= 1.5, x in [0,1]^2, x1 integer. The split
/// on x1 leaves term {x1 >= 1} infeasible, so its certificate entry is
/// zero; relaxing the rhs makes that term feasible again.
Instance tight_instance();

/// Returns a copy with one rhs entry replaced (tests may touch bound rows;
/// parametric replays only need the row layout to match).
Instance with_rhs(const Instance& inst, int row, double value);

/// Returns a copy with one structural coefficient replaced.
Instance with_coeff(const Instance& inst, int row, int col, double value);

struct RandomInstanceOptions {
  int min_vars = 2;
  int max_vars = 5;
  int min_structural = 1;
  int max_structural = 4;
  double integer_prob = 0.8;
};

/// Random feasible bounded MILP: integral bounds in {1,2,3}, integral
/// structural coefficients in [-3,3], rhs backed off from an interior
/// point so the LP relaxation is always feasible.
Instance random_instance(Rng& rng, const RandomInstanceOptions& opt = {});

/// Like random_instance but redraws until the LP optimum has a fractional
/// integer variable (needed by the cut-generation pipeline).
Instance random_fractional_instance(Rng& rng,
                                    const RandomInstanceOptions& opt = {});

} // namespace pdi::testing

#endif
