// disjunction.hpp
// Variable-branching disjunctions built from the leaves of a partial
// branch-and-bound tree, and the stacked per-term polyhedra Q^t.
#ifndef PDI_DISJUNCTION_HPP
#define PDI_DISJUNCTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdi/instance.hpp"
#include "pdi/simplex.hpp"

namespace pdi {

/// Tightened bounds for one variable inside a term. Only the sides that a
/// branching decision actually set are present; a set side contributes one
/// stacked row, so the row layout of a term is a function of the term alone
/// and stays aligned across every member of an instance family.
struct BoundOverride {
  std::optional<double> lower;
  std::optional<double> upper;
  bool operator==(const BoundOverride&) const = default;
};

/// One hyperrectangle term X^t, as bound overrides on integer variables.
struct Term {
  int id = 0;
  std::map<int, BoundOverride> overrides;  // var index -> tightened bounds
  bool operator==(const Term&) const = default;
};

/// A valid disjunction: the union of the terms covers every integer
/// assignment feasible for the source instance (guaranteed by construction
/// from a branch-and-bound tree whose leaves partition the branching space).
struct Disjunction {
  std::string source_instance;
  std::uint64_t seed = 0;
  std::vector<Term> terms;  // term id == position

  int num_terms() const { return static_cast<int>(terms.size()); }
};

/// Provenance of one stacked row.
struct TermRowOrigin {
  int base_row = -1;  // index into the instance rows, or -1 for an override
  int var = -1;       // override variable (when base_row == -1)
  bool is_lower = false;
};

/// The stacked system A^t x >= b^t of one term on one instance: all base
/// rows in original order, then one >= row per override side (variables
/// ascending, lower before upper).
struct TermPolyhedron {
  Matrix rows;
  Vector rhs;
  std::vector<TermRowOrigin> origin;

  int num_rows() const { return static_cast<int>(rows.rows()); }
};

TermPolyhedron term_polyhedron(const Instance& inst, const Term& term);

struct PartialBnbResult {
  Disjunction disjunction;
  bool degenerate_single_term = false;  // LP optimum was already integral
};

/// Grows a best-bound / most-fractional-branching tree until the leaf count
/// reaches `max_terms` (or no fractional leaf remains) and returns the
/// leaves as terms. Infeasible leaves are retained: their term polyhedra are
/// empty on the source instance but may become feasible after perturbation.
/// A nonzero `seed` shuffles branching among near-tied fractional variables
/// so that independent trees can be built for the same instance.
PartialBnbResult build_partial_bnb_disjunction(const Instance& inst,
                                               int max_terms,
                                               std::uint64_t seed = 0);

/// Indices of the terms whose polyhedron on `inst` is nonempty (phase-1 LP
/// per term).
std::vector<int> feasible_terms(const Instance& inst, const Disjunction& disj);

/// The dual bound implied by the disjunction: min over feasible terms of
/// min{c.x : x in Q^t}. Throws when every term is infeasible (the
/// disjunction proves the instance infeasible).
double disjunctive_bound(const Instance& inst, const Disjunction& disj);

/// JSON round trip (used inside certificate bundles and on its own).
std::string disjunction_to_json(const Disjunction& disj);
Disjunction disjunction_from_json(const std::string& text);

} // namespace pdi

#endif
