// fixtures.cpp
#include "support/fixtures.hpp"

#include <cmath>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/simplex.hpp"

namespace pdi::testing {

const std::string& two_var_json() {
  static const std::string text = R"({
  "name": "twovar",
  "numVars": 2,
  "objective": [-1.0, -1.0],
  "rows": [
    {"coeffs": {"0": 2.0, "1": 1.0}, "rhs": 2.0, "sense": "<="}
  ],
  "bounds": [
    {"var": 0, "lb": 0.0, "ub": 1.0},
    {"var": 1, "lb": 0.0, "ub": 1.0}
  ],
  "integers": [0]
})";
  return text;
}

Instance two_var_instance() { return parse_instance_json(two_var_json()); }

Disjunction two_var_split() {
  Disjunction disj;
  disj.source_instance = "twovar";
  Term down, up;
  down.id = 0;
  down.overrides[0].upper = 0.0;
  up.id = 1;
  up.overrides[0].lower = 1.0;
  disj.terms = {down, up};
  return disj;
}

Instance two_row_instance() {
  InstanceDraft draft;
  draft.name = "tworow";
  draft.num_vars = 2;
  draft.objective = {-1.0, -1.0};
  draft.structural_rows = {{-2.0, -1.0}, {-1.0, -2.0}};
  draft.structural_rhs = {-2.0, -2.0};
  draft.lower = {0.0, 0.0};
  draft.upper = {1.0, 1.0};
  draft.integer_vars = {0, 1};
  return standardize(draft);
}

Instance tight_instance() {
  InstanceDraft draft;
  draft.name = "tight";
  draft.num_vars = 2;
  draft.objective = {-1.0, -1.0};
  draft.structural_rows = {{-2.0, -1.0}};
  draft.structural_rhs = {-1.5};
  draft.lower = {0.0, 0.0};
  draft.upper = {1.0, 1.0};
  draft.integer_vars = {0};
  return standardize(draft);
}

Instance with_rhs(const Instance& inst, int row, double value) {
  Instance out = inst;
  out.rhs.at(row) = value;
  out.name = inst.name + "'";
  return out;
}

Instance with_coeff(const Instance& inst, int row, int col, double value) {
  Instance out = inst;
  out.rows(row, col) = value;
  out.name = inst.name + "'";
  return out;
}

Instance random_instance(Rng& rng, const RandomInstanceOptions& opt) {
  const int n =
      opt.min_vars + static_cast<int>(rng.uniform_index(
                         static_cast<std::size_t>(opt.max_vars - opt.min_vars + 1)));
  const int m = opt.min_structural +
                static_cast<int>(rng.uniform_index(static_cast<std::size_t>(
                    opt.max_structural - opt.min_structural + 1)));
  InstanceDraft draft;
  draft.name = "rand";
  draft.num_vars = n;
  draft.lower.assign(n, 0.0);
  draft.upper.resize(n);
  Vector interior(n);
  for (int j = 0; j < n; ++j) {
    draft.upper[j] = 1.0 + static_cast<double>(rng.uniform_index(3));
    interior[j] = rng.uniform(0.25, 0.75) * draft.upper[j];
  }
  for (int i = 0; i < m; ++i) {
    Vector row(n, 0.0);
    bool nonzero = false;
    while (!nonzero) {
      for (int j = 0; j < n; ++j) {
        row[j] = static_cast<double>(
            static_cast<long>(rng.uniform_index(7)) - 3);
        if (row[j] != 0.0) nonzero = true;
      }
    }
    double at_interior = 0.0;
    for (int j = 0; j < n; ++j) at_interior += row[j] * interior[j];
    draft.structural_rows.push_back(row);
    draft.structural_rhs.push_back(at_interior - rng.uniform(0.05, 1.2));
  }
  draft.objective.resize(n);
  for (int j = 0; j < n; ++j) {
    draft.objective[j] = 0.25 * (static_cast<double>(rng.uniform_index(17)) - 8.0);
  }
  for (int j = 0; j < n; ++j) {
    if (rng.next_unit() < opt.integer_prob) {
      draft.integer_vars.push_back(j);
    }
  }
  if (draft.integer_vars.empty()) {
    draft.integer_vars.push_back(0);
  }
  return standardize(draft);
}

Instance random_fractional_instance(Rng& rng,
                                    const RandomInstanceOptions& opt) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    Instance inst = random_instance(rng, opt);
    const LpSolution sol = solve_lp(inst.rows, inst.rhs, inst.objective);
    if (sol.status != LpStatus::kOptimal) continue;
    for (int j : inst.integer_vars) {
      const double f = sol.x[j] - std::floor(sol.x[j]);
      if (std::min(f, 1.0 - f) > 1e-4) {
        return inst;
      }
    }
  }
  throw std::logic_error("random_fractional_instance: no luck in 500 draws");
}

} // namespace pdi::testing
