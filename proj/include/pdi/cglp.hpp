// cglp.hpp
// Fresh disjunctive cut generation: the cut-generating LP over the stacked
// term systems, Farkas certificate extraction, and the per-term determining
// bases that make certificates transferable to perturbed instances.
#ifndef PDI_CGLP_HPP
#define PDI_CGLP_HPP

#include <string>
#include <vector>

#include "pdi/disjunction.hpp"
#include "pdi/instance.hpp"
#include "pdi/simplex.hpp"

namespace pdi {

/// Per-term nonnegative row multipliers proving a cut valid on every term:
/// v^t A^t equals the cut coefficients and v^t b^t bounds the cut rhs from
/// above, for every feasible term. An empty per-term vector marks a term
/// that was infeasible when the certificate was generated (v^t = 0).
struct FarkasCertificate {
  std::string source_instance;
  std::string disjunction_source;
  std::vector<Vector> per_term;

  int num_terms() const { return static_cast<int>(per_term.size()); }
  bool term_is_zero(int t) const;
};

/// For each term with a nonzero multiplier, n linearly independent rows of
/// its stacked system containing the multiplier support. An empty set marks
/// an infeasible term.
struct DeterminingBases {
  std::vector<BasisIndexSet> per_term;

  bool has_basis(int t) const {
    return t >= 0 && t < static_cast<int>(per_term.size()) &&
           !per_term[t].empty();
  }
};

struct GeneratedCut {
  Cut cut;
  FarkasCertificate certificate;
  DeterminingBases bases;
  std::vector<int> feasible_terms;
  double cglp_value = 0.0;  // alpha.x_bar - beta at the CGLP optimum
  bool violated = false;    // cglp_value < 0: the point is actually cut off
};

/// Generates one disjunctive cut separating `point_to_cut` by solving the
/// CGLP (multiplier normalization: total multiplier mass 1), then restates
/// it as a certificate of validity: the stored multipliers are the
/// dual-optimal vectors of the per-term LPs min{alpha.x : Q^t}, so the cut
/// supports the disjunctive hull and each term carries its determining
/// basis. Cuts are scaled so that the max-norm of alpha is 1.
///
/// When the CGLP optimum is nonnegative no violated cut exists; the
/// supporting cut is returned with `violated == false`.
GeneratedCut generate_cut(const Instance& inst, const Disjunction& disj,
                          const Vector& point_to_cut);

/// True iff the certificate proves the cut valid for (inst, disj): per
/// feasible term the multipliers are nonnegative, alpha dominates v^t A^t
/// with the maximum attained per coordinate, and beta is the attained
/// minimum of v^t b^t (all within kEqTol).
bool verify_certificate(const Instance& inst, const Disjunction& disj,
                        const Cut& cut, const FarkasCertificate& cert);

/// For each feasible term, the optimal basis of min{alpha.x : Q^t}; by
/// complementary slackness it contains the support of the term's
/// dual-optimal multipliers. Infeasible terms map to an empty marker.
DeterminingBases extract_determining_bases(const Instance& inst,
                                           const Disjunction& disj,
                                           const Cut& cut,
                                           const FarkasCertificate& cert);

/// The warm-start artifact: everything a later instance needs to replay the
/// certificate. Keyed by the base-instance name.
struct CertificateBundle {
  std::string base_instance;
  int num_vars = 0;
  int num_rows = 0;
  Disjunction disjunction;
  Cut cut;
  FarkasCertificate certificate;
  DeterminingBases bases;
  std::vector<int> feasible_terms;
  Vector point_cut;
  double cglp_value = 0.0;
  bool violated = false;
};

CertificateBundle make_bundle(const Instance& inst, const Disjunction& disj,
                              const GeneratedCut& generated,
                              const Vector& point_to_cut);

std::string bundle_to_json(const CertificateBundle& bundle);
CertificateBundle bundle_from_json(const std::string& text);
void save_bundle(const CertificateBundle& bundle, const std::string& path);
CertificateBundle load_bundle(const std::string& path);

} // namespace pdi

#endif
