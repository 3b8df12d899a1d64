// cglp.cpp
#include "pdi/cglp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/kernels.hpp"
#include "pdi/pdi.hpp"

namespace pdi {

using nlohmann::json;

namespace {

// Layout of the CGLP variable vector: alpha (n), beta (1), then one
// multiplier block per feasible term.
struct CglpLayout {
  int n = 0;
  std::vector<int> term_ids;
  std::vector<int> block_offset;  // per feasible term, offset of its block
  std::vector<int> block_size;
  int num_vars = 0;

  int alpha(int j) const { return j; }
  int beta() const { return n; }
};

} // namespace

GeneratedCut generate_cut(const Instance& inst, const Disjunction& disj,
                          const Vector& point_to_cut) {
  const int n = inst.num_vars;
  if (static_cast<int>(point_to_cut.size()) != n) {
    throw DimensionError("point to cut has wrong dimension");
  }
  GeneratedCut out;
  out.feasible_terms = feasible_terms(inst, disj);
  if (out.feasible_terms.empty()) {
    throw PreconditionError("all terms infeasible: no cut can be generated");
  }

  std::vector<TermPolyhedron> polys;
  polys.reserve(disj.terms.size());
  for (const Term& term : disj.terms) {
    polys.push_back(term_polyhedron(inst, term));
  }

  CglpLayout layout;
  layout.n = n;
  layout.term_ids = out.feasible_terms;
  int offset = n + 1;
  for (int t : layout.term_ids) {
    layout.block_offset.push_back(offset);
    layout.block_size.push_back(polys[t].num_rows());
    offset += polys[t].num_rows();
  }
  layout.num_vars = offset;

  // min alpha.x_bar - beta  subject to, for every feasible term t:
  //   alpha_j - v^t A^t_{.j} >= 0          (coefficient domination)
  //   v^t b^t - beta >= 0                  (rhs domination)
  //   v^t >= 0
  // and the normalization sum of all multipliers == 1 (two >= rows).
  const int num_cols = layout.num_vars;
  Matrix g(0, static_cast<std::size_t>(num_cols));
  Vector h;
  Vector row(num_cols, 0.0);
  auto push_row = [&](double rhs) {
    g.append_row(row);
    h.push_back(rhs);
    std::fill(row.begin(), row.end(), 0.0);
  };

  for (std::size_t k = 0; k < layout.term_ids.size(); ++k) {
    const TermPolyhedron& poly = polys[layout.term_ids[k]];
    const int base = layout.block_offset[k];
    for (int j = 0; j < n; ++j) {
      row[layout.alpha(j)] = 1.0;
      for (int i = 0; i < poly.num_rows(); ++i) {
        row[base + i] = -poly.rows(i, j);
      }
      push_row(0.0);
    }
    for (int i = 0; i < poly.num_rows(); ++i) {
      row[base + i] = poly.rhs[i];
    }
    row[layout.beta()] = -1.0;
    push_row(0.0);
  }
  for (std::size_t k = 0; k < layout.term_ids.size(); ++k) {
    for (int i = 0; i < layout.block_size[k]; ++i) {
      row[layout.block_offset[k] + i] = 1.0;
      push_row(0.0);
    }
  }
  for (int sign = 0; sign < 2; ++sign) {
    const double s = sign == 0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < layout.term_ids.size(); ++k) {
      for (int i = 0; i < layout.block_size[k]; ++i) {
        row[layout.block_offset[k] + i] = s;
      }
    }
    push_row(s);
  }

  Vector objective(num_cols, 0.0);
  for (int j = 0; j < n; ++j) objective[layout.alpha(j)] = point_to_cut[j];
  objective[layout.beta()] = -1.0;

  const LpSolution sol = solve_lp(g, h, objective);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("CGLP did not solve to optimality: ") +
                         to_string(sol.status));
  }
  out.cglp_value = sol.obj_value;
  out.violated = sol.obj_value < -kEqTol;

  // Raw CGLP multipliers, clamped to the nonnegative orthant they satisfy
  // within the solver tolerance.
  std::vector<Vector> raw(disj.terms.size());
  for (std::size_t k = 0; k < layout.term_ids.size(); ++k) {
    Vector& v = raw[layout.term_ids[k]];
    v.assign(layout.block_size[k], 0.0);
    for (int i = 0; i < layout.block_size[k]; ++i) {
      v[i] = std::max(sol.x[layout.block_offset[k] + i], 0.0);
    }
  }

  // Tightened coefficients: alpha_j = max_t v^t A^t_{.j}.
  Vector alpha(n, -std::numeric_limits<double>::infinity());
  for (int t : out.feasible_terms) {
    const TermCut tc = compute_term_cut(raw[t], polys[t], t);
    for (int j = 0; j < n; ++j) alpha[j] = std::max(alpha[j], tc.gamma[j]);
  }
  double alpha_norm = 0.0;
  for (double a : alpha) alpha_norm = std::max(alpha_norm, std::fabs(a));
  if (alpha_norm < 1e-12) {
    // No violated cut exists and the CGLP settled on the trivial zero
    // combination. Support the hull in the objective direction instead so
    // the returned inequality still says something.
    alpha = inst.objective;
  }

  // Restate the certificate per term as the dual optimum of
  // min{alpha.x : Q^t}: the stored multipliers then reproduce alpha exactly,
  // support each term, and come paired with their determining basis.
  out.certificate.source_instance = inst.name;
  out.certificate.disjunction_source = disj.source_instance;
  out.certificate.per_term.assign(disj.terms.size(), Vector{});
  out.bases.per_term.assign(disj.terms.size(), BasisIndexSet{});
  double scale_norm = 0.0;
  for (int t : out.feasible_terms) {
    Reparameterization rep = reparameterize_term(alpha, inst, disj.terms[t]);
    out.certificate.per_term[t] = std::move(rep.v);
    out.bases.per_term[t] = std::move(rep.basis);
  }
  for (int t : out.feasible_terms) {
    const TermCut tc =
        compute_term_cut(out.certificate.per_term[t], polys[t], t);
    for (int j = 0; j < n; ++j) {
      scale_norm = std::max(scale_norm, std::fabs(tc.gamma[j]));
    }
  }
  if (scale_norm < 1e-12) {
    throw NumericalError(
        "cut generation degenerated to the zero inequality (zero objective "
        "on a disjunction with no separating direction)");
  }
  const double inv_scale = 1.0 / scale_norm;
  for (int t : out.feasible_terms) {
    kernels::scale(inv_scale, out.certificate.per_term[t].data(),
                   out.certificate.per_term[t].size());
  }

  // The stored cut is the parametric replay of the stored certificate on
  // its own instance, so identity-family replays reproduce it bit for bit.
  out.cut = farkas_pdi(out.certificate, disj, inst, &out.feasible_terms);
  out.cut.origin = CutOrigin::kFresh;
  out.cut.source_instance = inst.name;
  return out;
}

bool verify_certificate(const Instance& inst, const Disjunction& disj,
                        const Cut& cut, const FarkasCertificate& cert) {
  if (cert.num_terms() != disj.num_terms()) {
    throw DimensionError("certificate term count does not match disjunction");
  }
  const int n = inst.num_vars;
  const std::vector<int> feas = feasible_terms(inst, disj);
  if (feas.empty()) return false;
  Vector best_gamma(n, -std::numeric_limits<double>::infinity());
  double best_gamma0 = std::numeric_limits<double>::infinity();
  for (int t : feas) {
    const TermPolyhedron poly = term_polyhedron(inst, disj.terms[t]);
    const Vector& v = cert.per_term[t];
    if (!v.empty() && v.size() != poly.rows.rows()) {
      throw DimensionError("certificate rows do not match term " +
                           std::to_string(t));
    }
    for (double vi : v) {
      if (vi < -kEqTol) return false;  // nonnegativity violated
    }
    const TermCut tc = compute_term_cut(v, poly, t);
    for (int j = 0; j < n; ++j) {
      if (cut.alpha[j] < tc.gamma[j] - kEqTol) return false;
      best_gamma[j] = std::max(best_gamma[j], tc.gamma[j]);
    }
    if (cut.beta > tc.gamma0 + kEqTol) return false;
    best_gamma0 = std::min(best_gamma0, tc.gamma0);
  }
  // Domination must be attained: alpha is the max form and beta the min.
  for (int j = 0; j < n; ++j) {
    if (best_gamma[j] < cut.alpha[j] - kEqTol) return false;
  }
  return best_gamma0 <= cut.beta + kEqTol;
}

DeterminingBases extract_determining_bases(const Instance& inst,
                                           const Disjunction& disj,
                                           const Cut& cut,
                                           const FarkasCertificate& cert) {
  if (cert.num_terms() != disj.num_terms()) {
    throw DimensionError("certificate term count does not match disjunction");
  }
  DeterminingBases bases;
  bases.per_term.assign(disj.terms.size(), BasisIndexSet{});
  for (const Term& term : disj.terms) {
    if (cert.term_is_zero(term.id)) continue;  // infeasible marker
    Reparameterization rep = reparameterize_term(cut.alpha, inst, term);
    bases.per_term[term.id] = std::move(rep.basis);
  }
  return bases;
}

CertificateBundle make_bundle(const Instance& inst, const Disjunction& disj,
                              const GeneratedCut& generated,
                              const Vector& point_to_cut) {
  CertificateBundle bundle;
  bundle.base_instance = inst.name;
  bundle.num_vars = inst.num_vars;
  bundle.num_rows = inst.num_rows();
  bundle.disjunction = disj;
  bundle.cut = generated.cut;
  bundle.certificate = generated.certificate;
  bundle.bases = generated.bases;
  bundle.feasible_terms = generated.feasible_terms;
  bundle.point_cut = point_to_cut;
  bundle.cglp_value = generated.cglp_value;
  bundle.violated = generated.violated;
  return bundle;
}

std::string bundle_to_json(const CertificateBundle& bundle) {
  json doc;
  doc["baseInstance"] = bundle.base_instance;
  doc["numVars"] = bundle.num_vars;
  doc["numRows"] = bundle.num_rows;
  doc["disjunction"] = json::parse(disjunction_to_json(bundle.disjunction));
  doc["cut"] = {{"alpha", bundle.cut.alpha},
                {"beta", bundle.cut.beta},
                {"origin", to_string(bundle.cut.origin)},
                {"source", bundle.cut.source_instance}};
  json cert = json::array();
  for (const Vector& v : bundle.certificate.per_term) {
    cert.push_back(v.empty() ? json(nullptr) : json(v));
  }
  doc["certificate"] = cert;
  json bases = json::array();
  for (const BasisIndexSet& b : bundle.bases.per_term) {
    bases.push_back(b.empty() ? json(nullptr) : json(b));
  }
  doc["bases"] = bases;
  doc["feasibleTerms"] = bundle.feasible_terms;
  doc["pointCut"] = bundle.point_cut;
  doc["cglpValue"] = bundle.cglp_value;
  doc["violated"] = bundle.violated;
  return doc.dump(2);
}

CertificateBundle bundle_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bundle JSON parse error: ") + e.what());
  }
  try {
    CertificateBundle bundle;
    bundle.base_instance = doc.at("baseInstance").get<std::string>();
    bundle.num_vars = doc.at("numVars").get<int>();
    bundle.num_rows = doc.at("numRows").get<int>();
    bundle.disjunction = disjunction_from_json(doc.at("disjunction").dump());
    const auto& cut = doc.at("cut");
    bundle.cut.alpha = cut.at("alpha").get<Vector>();
    bundle.cut.beta = cut.at("beta").get<double>();
    bundle.cut.source_instance = cut.at("source").get<std::string>();
    const std::string origin = cut.at("origin").get<std::string>();
    bundle.cut.origin = origin == "pdc"    ? CutOrigin::kPdc
                        : origin == "spdc" ? CutOrigin::kSpdc
                                           : CutOrigin::kFresh;
    bundle.certificate.source_instance = bundle.base_instance;
    bundle.certificate.disjunction_source =
        bundle.disjunction.source_instance;
    for (const auto& v : doc.at("certificate")) {
      bundle.certificate.per_term.push_back(v.is_null() ? Vector{}
                                                        : v.get<Vector>());
    }
    for (const auto& b : doc.at("bases")) {
      bundle.bases.per_term.push_back(b.is_null() ? BasisIndexSet{}
                                                  : b.get<BasisIndexSet>());
    }
    bundle.feasible_terms = doc.at("feasibleTerms").get<std::vector<int>>();
    bundle.point_cut = doc.at("pointCut").get<Vector>();
    bundle.cglp_value = doc.value("cglpValue", 0.0);
    bundle.violated = doc.value("violated", false);
    return bundle;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bundle JSON field error: ") + e.what());
  }
}

void save_bundle(const CertificateBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot write file: " + path);
  }
  out << bundle_to_json(bundle) << "\n";
}

CertificateBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return bundle_from_json(ss.str());
}

} // namespace pdi
