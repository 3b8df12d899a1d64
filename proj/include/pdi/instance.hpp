// instance.hpp
// Canonical MILP instance: min c.x over A x >= b with explicit bound rows,
// a subset of integer variables, and per-row provenance tags.
#ifndef PDI_INSTANCE_HPP
#define PDI_INSTANCE_HPP

#include <string>
#include <vector>

#include "pdi/dense.hpp"

namespace pdi {

enum class RowKind { kStructural, kLowerBound, kUpperBound };

/// Provenance of one row: structural source row, or the lower/upper bound row
/// of variable `var` (var == -1 for structural rows).
struct RowTag {
  RowKind kind = RowKind::kStructural;
  int var = -1;
  bool operator==(const RowTag&) const = default;
};

/// One member of a parametric MILP family. All rows are >= rows; every
/// variable owns exactly one lower-bound row (x_j >= l_j with l_j >= 0) and
/// one upper-bound row (-x_j >= -u_j). Instances are immutable after
/// construction and safe to share across threads.
///
/// Canonical row order: structural rows in source order, then per variable
/// (ascending) its lower-bound row followed by its upper-bound row.
/// Certificates index rows by position, so members of one family must agree
/// on row count and order.
struct Instance {
  std::string name;
  int num_vars = 0;
  Matrix rows;            // (num_structural + 2*num_vars) x num_vars
  Vector rhs;             // one entry per row
  Vector objective;       // length num_vars
  std::vector<int> integer_vars;  // sorted, unique, subset of [0, num_vars)
  std::vector<RowTag> row_tags;   // one tag per row

  int num_rows() const { return static_cast<int>(rows.rows()); }
  int num_structural() const { return num_rows() - 2 * num_vars; }

  int lower_row(int var) const { return num_structural() + 2 * var; }
  int upper_row(int var) const { return num_structural() + 2 * var + 1; }
  double lower_bound(int var) const { return rhs[lower_row(var)]; }
  double upper_bound(int var) const { return -rhs[upper_row(var)]; }

  bool is_integer(int var) const;

  bool operator==(const Instance&) const = default;
};

/// A cutting plane alpha.x >= beta with provenance.
enum class CutOrigin { kFresh, kPdc, kSpdc };

struct Cut {
  Vector alpha;
  double beta = 0.0;
  CutOrigin origin = CutOrigin::kFresh;
  std::string source_instance;

  bool operator==(const Cut&) const = default;
};

const char* to_string(CutOrigin origin);

/// Elements of an instance that perturbations may target.
enum class Element { kMatrix, kRhs, kObjective };

const char* to_string(Element element);
Element element_from_string(const std::string& s);

/// Builder used by the file readers: structural rows plus per-variable
/// bounds, standardized into the canonical row layout by `standardize`.
struct InstanceDraft {
  std::string name;
  int num_vars = 0;
  Vector objective;
  std::vector<Vector> structural_rows;  // already in >= form
  Vector structural_rhs;
  std::vector<double> lower;  // per variable; NaN = unstated
  std::vector<double> upper;
  std::vector<int> integer_vars;
};

/// Materializes the canonical Instance from a draft: appends one lower and
/// one upper bound row per variable (unstated bounds become l = 0 and
/// u = kDefaultUpperBound).
Instance standardize(const InstanceDraft& draft);

/// Loads an instance from JSON (native schema) or a minimal MPS subset,
/// chosen by extension (.json vs anything else) unless `format` is given.
enum class FileFormat { kAuto, kJson, kMps };
Instance load_instance(const std::string& path,
                       FileFormat format = FileFormat::kAuto);

/// Parses the native JSON schema from a string (used by load and tests).
Instance parse_instance_json(const std::string& text);

/// Serializes to the native JSON schema. load(save(inst)) reproduces the
/// instance bit for bit.
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// Checks every Instance invariant; returns one human-readable diagnostic
/// per violation (empty means well formed).
std::vector<std::string> validate_instance(const Instance& inst);

/// Returns a copy of `inst` with one element replaced. For kMatrix the
/// values are the structural coefficient block (row-major), for kRhs the
/// structural right-hand sides, for kObjective the full objective. Bound
/// rows are never touched. The copy's name gains a lineage suffix.
Instance perturb_element(const Instance& inst, Element element,
                         std::span<const double> new_values);

} // namespace pdi

#endif
