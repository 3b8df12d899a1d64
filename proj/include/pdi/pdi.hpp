// pdi.hpp
// Parametric disjunctive inequalities: replaying a stored Farkas certificate
// against a perturbed instance yields a valid cut without solving a
// cut-generating LP; per-term reparameterization restores disjunctive-hull
// support when perturbation breaks it.
#ifndef PDI_PDI_HPP
#define PDI_PDI_HPP

#include <optional>
#include <vector>

#include "pdi/cglp.hpp"
#include "pdi/disjunction.hpp"
#include "pdi/instance.hpp"
#include "pdi/simplex.hpp"

namespace pdi {

/// One term's contribution to a parametric cut: gamma = v^t A^t and
/// gamma0 = v^t b^t evaluated on a given instance's stacked system.
struct TermCut {
  Vector gamma;
  double gamma0 = 0.0;
  int term_id = 0;
};

TermCut compute_term_cut(const Vector& v, const TermPolyhedron& poly,
                         int term_id);

/// The Farkas PDI for `target`: alpha_j is the max of v^t A^t_j over the
/// contributing terms and beta the min of v^t b^t. Terms whose stored
/// multiplier is zero contribute (0, 0) when they are feasible on the
/// target (which is what keeps the cut valid on perturbation-induced
/// feasible terms) and are dropped when they stay infeasible.
///
/// `target_feasible` optionally supplies the target's feasible-term ids to
/// avoid re-deriving them; when absent, zero-multiplier terms are probed
/// with a phase-1 LP.
Cut farkas_pdi(const FarkasCertificate& cert, const Disjunction& disj,
               const Instance& target,
               const std::vector<int>* target_feasible = nullptr);

/// True iff all pairs of terms feasible on `inst` yield the same row vector
/// v^t A^t (componentwise within kEqTol) -- the instance and disjunction
/// induce the certificate.
bool is_induced(const FarkasCertificate& cert, const Disjunction& disj,
                const Instance& inst);

struct SupportCheck {
  bool supported = false;
  double hull_min = 0.0;  // min over feasible terms of min{alpha.x : Q^t}
  double beta = 0.0;
  int witness_term = -1;
  Vector witness;  // argmin point

  double gap() const { return hull_min - beta; }
};

/// Does the cut support the disjunctive hull of (inst, disj)? Solves the
/// per-term LPs and compares the hull minimum against beta within kEqTol.
SupportCheck check_support(const Cut& cut, const Instance& inst,
                           const Disjunction& disj);

struct Reparameterization {
  Vector v;            // dual-optimal multipliers: v A^t = alpha, v >= 0
  BasisIndexSet basis; // optimal basis of the term LP
  double value = 0.0;  // v b^t = min{alpha.x : Q^t}
  Vector point;        // primal argmin
};

/// Solves min{alpha.x : Q^t} on `inst` (warm-started when a basis is given)
/// and returns the dual-optimal multipliers: (alpha, value) supports the
/// term with certificate v. Throws PreconditionError on an empty term.
Reparameterization reparameterize_term(
    const Vector& alpha, const Instance& inst, const Term& term,
    const std::optional<BasisIndexSet>& warm_basis = {});

struct StrongPdiResult {
  Cut cut;
  FarkasCertificate updated_certificate;
  DeterminingBases updated_bases;
  std::vector<int> surviving_terms;        // stored basis still feasible
  std::vector<int> reparameterized_terms;  // certificate recomputed
  std::vector<int> nonunique_dual_terms;   // alpha parallel to a term row
  int witness_term = -1;
  Vector witness_point;  // attains alpha.x = beta inside its term
};

/// The strong PDI generator: keeps the certificate of every term whose
/// stored basis stays feasible on the target, fixes the cut coefficients
/// from those terms, reparameterizes every other target-feasible term (and
/// every term whose stacked matrix changed), then regenerates the rhs from
/// the updated certificates. The output cut supports the target's
/// disjunctive hull.
///
/// Caller contract (checked where cheap): `cert` is induced by the source
/// instance and `bases` determines it. Throws PreconditionError when no
/// stored basis survives on the target (fall back to fresh generation).
StrongPdiResult strong_pdi(const Instance& source, const Instance& target,
                           const Disjunction& disj,
                           const FarkasCertificate& cert,
                           const DeterminingBases& bases);

} // namespace pdi

#endif
