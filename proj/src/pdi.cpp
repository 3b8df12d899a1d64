// pdi.cpp
#include "pdi/pdi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/kernels.hpp"

namespace pdi {

TermCut compute_term_cut(const Vector& v, const TermPolyhedron& poly,
                         int term_id) {
  const std::size_t n = poly.rows.cols();
  TermCut tc;
  tc.term_id = term_id;
  tc.gamma.assign(n, 0.0);
  if (v.empty()) {
    return tc;  // zero multipliers
  }
  if (v.size() != poly.rows.rows()) {
    throw DimensionError("certificate for term " + std::to_string(term_id) +
                         " has " + std::to_string(v.size()) +
                         " multipliers, stacked system has " +
                         std::to_string(poly.rows.rows()) + " rows");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      kernels::axpy(v[i], poly.rows.row(i).data(), tc.gamma.data(), n);
    }
  }
  tc.gamma0 = kernels::dot(v.data(), poly.rhs.data(), v.size());
  return tc;
}

bool FarkasCertificate::term_is_zero(int t) const {
  const Vector& v = per_term[t];
  return v.empty() ||
         std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

namespace {

bool term_feasible_on(const Instance& inst, const Term& term) {
  const TermPolyhedron poly = term_polyhedron(inst, term);
  const Vector zero(inst.num_vars, 0.0);
  return solve_lp(poly.rows, poly.rhs, zero).status == LpStatus::kOptimal;
}

void check_cert_matches_disjunction(const FarkasCertificate& cert,
                                    const Disjunction& disj) {
  if (cert.num_terms() != disj.num_terms()) {
    throw DimensionError("certificate has " +
                         std::to_string(cert.num_terms()) +
                         " terms, disjunction has " +
                         std::to_string(disj.num_terms()));
  }
}

} // namespace

Cut farkas_pdi(const FarkasCertificate& cert, const Disjunction& disj,
               const Instance& target,
               const std::vector<int>* target_feasible) {
  check_cert_matches_disjunction(cert, disj);
  const int n = target.num_vars;
  Vector alpha;
  double beta = 0.0;
  bool first = true;
  for (const Term& term : disj.terms) {
    const int t = term.id;
    const TermPolyhedron poly = term_polyhedron(target, term);
    if (!cert.per_term[t].empty() &&
        cert.per_term[t].size() != poly.rows.rows()) {
      throw DimensionError(
          "certificate/term row mismatch on term " + std::to_string(t) +
          " (certificate was built for a different row layout)");
    }
    TermCut tc;
    if (cert.term_is_zero(t)) {
      // A term that was infeasible at generation time: contributes (0, 0)
      // when it is feasible on the target, otherwise drops out.
      const bool feasible =
          target_feasible
              ? std::binary_search(target_feasible->begin(),
                                   target_feasible->end(), t)
              : term_feasible_on(target, term);
      if (!feasible) continue;
      tc.gamma.assign(n, 0.0);
      tc.gamma0 = 0.0;
    } else {
      tc = compute_term_cut(cert.per_term[t], poly, t);
    }
    if (first) {
      alpha = tc.gamma;
      beta = tc.gamma0;
      first = false;
    } else {
      for (int j = 0; j < n; ++j) {
        alpha[j] = std::max(alpha[j], tc.gamma[j]);
      }
      beta = std::min(beta, tc.gamma0);
    }
  }
  if (first) {
    throw PreconditionError(
        "no term contributes to the parametric cut (all terms dropped)");
  }
  Cut cut;
  cut.alpha = std::move(alpha);
  cut.beta = beta;
  cut.origin = CutOrigin::kPdc;
  cut.source_instance = cert.source_instance;
  return cut;
}

bool is_induced(const FarkasCertificate& cert, const Disjunction& disj,
                const Instance& inst) {
  check_cert_matches_disjunction(cert, disj);
  Vector reference;
  bool have_reference = false;
  for (const Term& term : disj.terms) {
    if (!term_feasible_on(inst, term)) continue;
    const TermPolyhedron poly = term_polyhedron(inst, term);
    Vector gamma(inst.num_vars, 0.0);
    if (!cert.term_is_zero(term.id)) {
      gamma = compute_term_cut(cert.per_term[term.id], poly, term.id).gamma;
    }
    if (!have_reference) {
      reference = std::move(gamma);
      have_reference = true;
      continue;
    }
    for (int j = 0; j < inst.num_vars; ++j) {
      if (std::fabs(gamma[j] - reference[j]) > kEqTol) {
        return false;
      }
    }
  }
  return true;
}

SupportCheck check_support(const Cut& cut, const Instance& inst,
                           const Disjunction& disj) {
  SupportCheck result;
  result.beta = cut.beta;
  result.hull_min = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const Term& term : disj.terms) {
    const TermPolyhedron poly = term_polyhedron(inst, term);
    const LpSolution sol = solve_lp(poly.rows, poly.rhs, cut.alpha);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      throw NumericalError("term LP unbounded despite bound rows");
    }
    any = true;
    if (sol.obj_value < result.hull_min) {
      result.hull_min = sol.obj_value;
      result.witness_term = term.id;
      result.witness = sol.x;
    }
  }
  if (!any) {
    throw PreconditionError("all terms infeasible: support undefined");
  }
  result.supported = std::fabs(result.hull_min - cut.beta) <= kEqTol;
  return result;
}

Reparameterization reparameterize_term(
    const Vector& alpha, const Instance& inst, const Term& term,
    const std::optional<BasisIndexSet>& warm_basis) {
  const TermPolyhedron poly = term_polyhedron(inst, term);
  LpSolution sol;
  bool solved = false;
  if (warm_basis) {
    try {
      sol = solve_lp(poly.rows, poly.rhs, alpha, warm_basis);
      solved = true;
    } catch (const NumericalError&) {
      // Perturbation made the stored basis singular; restart cold.
    }
  }
  if (!solved) {
    sol = solve_lp(poly.rows, poly.rhs, alpha);
  }
  if (sol.status == LpStatus::kInfeasible) {
    throw PreconditionError("reparameterization undefined on empty term " +
                            std::to_string(term.id));
  }
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError("term LP unbounded despite bound rows");
  }
  Reparameterization rep;
  rep.v = sol.duals;
  rep.basis = sol.basis;
  rep.value = sol.obj_value;
  rep.point = sol.x;
  return rep;
}

namespace {

void check_same_family(const Instance& source, const Instance& target) {
  if (source.num_vars != target.num_vars ||
      source.num_rows() != target.num_rows() ||
      source.row_tags != target.row_tags ||
      source.integer_vars != target.integer_vars) {
    throw DimensionError(
        "instances are not members of one family (variable count, row "
        "count/order, and integer set must match)");
  }
}

// Does any row of the stacked system point in exactly alpha's direction?
// When one does, the supporting certificate need not be unique.
bool alpha_parallel_to_some_row(const Vector& alpha,
                                const TermPolyhedron& poly) {
  const std::size_t n = alpha.size();
  const double alpha_norm =
      std::sqrt(kernels::dot(alpha.data(), alpha.data(), n));
  if (alpha_norm == 0.0) return false;
  for (std::size_t i = 0; i < poly.rows.rows(); ++i) {
    const double* row = poly.rows.row(i).data();
    const double row_norm = std::sqrt(kernels::dot(row, row, n));
    if (row_norm == 0.0) continue;
    const double cosine =
        kernels::dot(row, alpha.data(), n) / (row_norm * alpha_norm);
    if (cosine >= 1.0 - 1e-9) return true;
  }
  return false;
}

} // namespace

StrongPdiResult strong_pdi(const Instance& source, const Instance& target,
                           const Disjunction& disj,
                           const FarkasCertificate& cert,
                           const DeterminingBases& bases) {
  check_same_family(source, target);
  check_cert_matches_disjunction(cert, disj);
  if (static_cast<int>(bases.per_term.size()) != disj.num_terms()) {
    throw DimensionError("determining bases do not match the disjunction");
  }
  // Cheap half of the caller contract: the bases determine the certificate.
  for (const Term& term : disj.terms) {
    const int t = term.id;
    if (cert.term_is_zero(t)) continue;
    if (!bases.has_basis(t)) {
      throw PreconditionError("term " + std::to_string(t) +
                              " has multipliers but no determining basis");
    }
    for (std::size_t i = 0; i < cert.per_term[t].size(); ++i) {
      if (cert.per_term[t][i] > 0.0 &&
          !std::binary_search(bases.per_term[t].begin(),
                              bases.per_term[t].end(),
                              static_cast<int>(i))) {
        throw PreconditionError("basis of term " + std::to_string(t) +
                                " does not contain multiplier row " +
                                std::to_string(i));
      }
    }
  }

  const bool matrix_changed = !(source.rows == target.rows);
  const int n = target.num_vars;
  const int num_terms = disj.num_terms();

  std::vector<TermPolyhedron> target_polys;
  target_polys.reserve(num_terms);
  for (const Term& term : disj.terms) {
    target_polys.push_back(term_polyhedron(target, term));
  }

  StrongPdiResult result;

  // Terms whose certificate transfers as-is: nonzero multipliers and a
  // stored basis whose basic solution remains inside the target term.
  std::vector<Vector> kept_points(num_terms);
  for (const Term& term : disj.terms) {
    const int t = term.id;
    if (cert.term_is_zero(t) || !bases.has_basis(t)) continue;
    try {
      Vector point = basic_solution_of(bases.per_term[t], target_polys[t].rows,
                                       target_polys[t].rhs);
      if (point_satisfies(target_polys[t].rows, target_polys[t].rhs, point,
                          kFeasTol)) {
        result.surviving_terms.push_back(t);
        kept_points[t] = std::move(point);
      }
    } catch (const NumericalError&) {
      // Basis went singular under the perturbation: treat as not surviving.
    }
  }
  if (result.surviving_terms.empty()) {
    throw PreconditionError(
        "no stored basis remains feasible on the target with nonzero "
        "multipliers; fall back to fresh cut generation");
  }

  // Fix the cut coefficients from the surviving terms.
  Vector alpha(n, 0.0);
  bool first = true;
  for (int t : result.surviving_terms) {
    const TermCut tc = compute_term_cut(cert.per_term[t], target_polys[t], t);
    if (first) {
      alpha = tc.gamma;
      first = false;
    } else {
      for (int j = 0; j < n; ++j) alpha[j] = std::max(alpha[j], tc.gamma[j]);
    }
  }

  // Reparameterize every target-feasible term that either saw its stacked
  // matrix change or did not survive; record terms that turn out empty.
  result.updated_certificate.source_instance = cert.source_instance;
  result.updated_certificate.disjunction_source = cert.disjunction_source;
  result.updated_certificate.per_term.assign(num_terms, Vector{});
  result.updated_bases.per_term.assign(num_terms, BasisIndexSet{});
  std::vector<Vector> witness_candidates(num_terms);
  std::vector<char> contributes(num_terms, 0);

  for (const Term& term : disj.terms) {
    const int t = term.id;
    const bool survived =
        std::binary_search(result.surviving_terms.begin(),
                           result.surviving_terms.end(), t);
    if (survived && !matrix_changed) {
      result.updated_certificate.per_term[t] = cert.per_term[t];
      result.updated_bases.per_term[t] = bases.per_term[t];
      witness_candidates[t] = kept_points[t];
      contributes[t] = 1;
      continue;
    }
    std::optional<BasisIndexSet> warm;
    if (bases.has_basis(t)) warm = bases.per_term[t];
    try {
      Reparameterization rep = reparameterize_term(alpha, target, term, warm);
      result.updated_certificate.per_term[t] = std::move(rep.v);
      result.updated_bases.per_term[t] = std::move(rep.basis);
      witness_candidates[t] = std::move(rep.point);
      contributes[t] = 1;
      result.reparameterized_terms.push_back(t);
      if (alpha_parallel_to_some_row(alpha, target_polys[t])) {
        result.nonunique_dual_terms.push_back(t);
      }
    } catch (const PreconditionError&) {
      // Term empty on the target: excluded from the regenerated cut.
    }
  }

  // Regenerate: max/min over the target-feasible terms with the updated
  // certificate. The reparameterized duals reproduce alpha exactly, so the
  // coefficient vector is stable; assert that instead of assuming it.
  double beta = std::numeric_limits<double>::infinity();
  Vector alpha_check(n, -std::numeric_limits<double>::infinity());
  int witness_term = -1;
  for (int t = 0; t < num_terms; ++t) {
    if (!contributes[t]) continue;
    const TermCut tc = compute_term_cut(result.updated_certificate.per_term[t],
                                        target_polys[t], t);
    for (int j = 0; j < n; ++j) {
      alpha_check[j] = std::max(alpha_check[j], tc.gamma[j]);
    }
    if (tc.gamma0 < beta) {
      beta = tc.gamma0;
      witness_term = t;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::fabs(alpha_check[j] - alpha[j]) > kEqTol) {
      throw NumericalError(
          "regenerated coefficients drifted from the fixed alpha (term "
          "duals failed to reproduce it)");
    }
  }

  result.cut.alpha = alpha;
  result.cut.beta = beta;
  result.cut.origin = CutOrigin::kSpdc;
  result.cut.source_instance = cert.source_instance;
  result.witness_term = witness_term;
  result.witness_point = witness_candidates[witness_term];
  return result;
}

} // namespace pdi
