// disjunction.cpp
#include "pdi/disjunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"

namespace pdi {

using nlohmann::json;

TermPolyhedron term_polyhedron(const Instance& inst, const Term& term) {
  const int n = inst.num_vars;
  TermPolyhedron poly;
  poly.rows = inst.rows;
  poly.rhs = inst.rhs;
  poly.origin.reserve(inst.num_rows() + 2 * term.overrides.size());
  for (int i = 0; i < inst.num_rows(); ++i) {
    poly.origin.push_back({i, -1, false});
  }
  for (const auto& [var, ov] : term.overrides) {
    if (var < 0 || var >= n) {
      throw DimensionError("term override references variable " +
                           std::to_string(var) + " out of range");
    }
    if (!inst.is_integer(var)) {
      throw PreconditionError("term override on non-integer variable x" +
                              std::to_string(var + 1));
    }
    Vector row(n, 0.0);
    if (ov.lower) {
      row[var] = 1.0;
      poly.rows.append_row(row);
      poly.rhs.push_back(*ov.lower);
      poly.origin.push_back({-1, var, true});
      row[var] = 0.0;
    }
    if (ov.upper) {
      row[var] = -1.0;
      poly.rows.append_row(row);
      poly.rhs.push_back(-*ov.upper);
      poly.origin.push_back({-1, var, false});
    }
  }
  return poly;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct BnbNode {
  std::map<int, BoundOverride> overrides;
  double bound = 0.0;
  Vector x;
  bool fractional = false;  // has a fractional integer variable
  bool infeasible = false;
  int creation_index = 0;
};

// Most-fractional integer variable of x; ties go to the lowest index, or to
// a seed-keyed order so independent trees differ. Returns -1 when integral.
int pick_branch_var(const Instance& inst, const Vector& x,
                    std::uint64_t seed) {
  double best_score = kIntTol;
  std::vector<std::pair<int, double>> candidates;
  for (int j : inst.integer_vars) {
    const double f = x[j] - std::floor(x[j]);
    const double score = std::min(f, 1.0 - f);
    if (score > best_score) best_score = score;
    candidates.emplace_back(j, score);
  }
  if (best_score <= kIntTol) return -1;
  int pick = -1;
  if (seed == 0) {
    for (const auto& [j, score] : candidates) {
      if (score >= best_score - 1e-12 && pick < 0) pick = j;
    }
  } else {
    // Near-tied candidates compete under a seeded hash order.
    std::uint64_t best_key = ~0ULL;
    for (const auto& [j, score] : candidates) {
      if (score < best_score - 0.05) continue;
      const std::uint64_t key = splitmix64(seed ^ (0x1234ULL + j));
      if (pick < 0 || key < best_key) {
        best_key = key;
        pick = j;
      }
    }
  }
  return pick;
}

void evaluate_node(const Instance& inst, BnbNode& node) {
  Term probe;
  probe.overrides = node.overrides;
  const TermPolyhedron poly = term_polyhedron(inst, probe);
  const LpSolution sol = solve_lp(poly.rows, poly.rhs, inst.objective);
  if (sol.status == LpStatus::kInfeasible) {
    node.infeasible = true;
    node.bound = std::numeric_limits<double>::infinity();
    return;
  }
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError("node relaxation unbounded despite bound rows");
  }
  node.bound = sol.obj_value;
  node.x = sol.x;
}

} // namespace

PartialBnbResult build_partial_bnb_disjunction(const Instance& inst,
                                               int max_terms,
                                               std::uint64_t seed) {
  if (max_terms < 2) {
    throw PreconditionError("max_terms must be at least 2");
  }
  BnbNode root;
  root.creation_index = 0;
  evaluate_node(inst, root);
  if (root.infeasible) {
    throw PreconditionError("root LP relaxation is infeasible");
  }

  PartialBnbResult result;
  result.disjunction.source_instance = inst.name;
  result.disjunction.seed = seed;

  root.fractional = pick_branch_var(inst, root.x, seed) >= 0;
  if (!root.fractional) {
    // Already integral: degenerate single-term disjunction.
    Term term;
    term.id = 0;
    result.disjunction.terms.push_back(term);
    result.degenerate_single_term = true;
    return result;
  }

  std::vector<BnbNode> open{root};
  std::vector<BnbNode> closed;
  int next_index = 1;
  while (!open.empty() &&
         static_cast<int>(open.size() + closed.size()) < max_terms) {
    // Best bound first; creation order breaks ties.
    auto best = std::min_element(
        open.begin(), open.end(), [](const BnbNode& a, const BnbNode& b) {
          if (a.bound != b.bound) return a.bound < b.bound;
          return a.creation_index < b.creation_index;
        });
    BnbNode node = std::move(*best);
    open.erase(best);

    const int var = pick_branch_var(inst, node.x, seed);
    const double value = node.x[var];
    const double down = std::floor(value);

    for (int side = 0; side < 2; ++side) {
      BnbNode child;
      child.overrides = node.overrides;
      child.creation_index = next_index++;
      BoundOverride& ov = child.overrides[var];
      if (side == 0) {
        ov.upper = down;
      } else {
        ov.lower = down + 1.0;
      }
      evaluate_node(inst, child);
      if (child.infeasible) {
        closed.push_back(std::move(child));
        continue;
      }
      child.fractional = pick_branch_var(inst, child.x, seed) >= 0;
      if (child.fractional) {
        open.push_back(std::move(child));
      } else {
        closed.push_back(std::move(child));
      }
    }
  }

  std::vector<BnbNode> leaves;
  leaves.reserve(open.size() + closed.size());
  for (auto& v : {&open, &closed}) {
    for (auto& node : *v) leaves.push_back(std::move(node));
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const BnbNode& a, const BnbNode& b) {
              return a.creation_index < b.creation_index;
            });
  for (std::size_t t = 0; t < leaves.size(); ++t) {
    Term term;
    term.id = static_cast<int>(t);
    term.overrides = std::move(leaves[t].overrides);
    result.disjunction.terms.push_back(std::move(term));
  }
  return result;
}

std::vector<int> feasible_terms(const Instance& inst,
                                const Disjunction& disj) {
  std::vector<int> feasible;
  const Vector zero(inst.num_vars, 0.0);
  for (const Term& term : disj.terms) {
    const TermPolyhedron poly = term_polyhedron(inst, term);
    const LpSolution sol = solve_lp(poly.rows, poly.rhs, zero);
    if (sol.status == LpStatus::kOptimal) {
      feasible.push_back(term.id);
    }
  }
  return feasible;
}

double disjunctive_bound(const Instance& inst, const Disjunction& disj) {
  double bound = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const Term& term : disj.terms) {
    const TermPolyhedron poly = term_polyhedron(inst, term);
    const LpSolution sol = solve_lp(poly.rows, poly.rhs, inst.objective);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      throw NumericalError("term relaxation unbounded despite bound rows");
    }
    any = true;
    bound = std::min(bound, sol.obj_value);
  }
  if (!any) {
    throw PreconditionError(
        "all terms infeasible: disjunction proves infeasibility");
  }
  return bound;
}

std::string disjunction_to_json(const Disjunction& disj) {
  json doc;
  doc["sourceInstance"] = disj.source_instance;
  doc["seed"] = disj.seed;
  json terms = json::array();
  for (const Term& term : disj.terms) {
    json overrides = json::array();
    for (const auto& [var, ov] : term.overrides) {
      json o;
      o["var"] = var;
      o["lb"] = ov.lower ? json(*ov.lower) : json(nullptr);
      o["ub"] = ov.upper ? json(*ov.upper) : json(nullptr);
      overrides.push_back(o);
    }
    terms.push_back({{"id", term.id}, {"overrides", overrides}});
  }
  doc["terms"] = terms;
  return doc.dump(2);
}

Disjunction disjunction_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("disjunction JSON parse error: ") + e.what());
  }
  try {
    Disjunction disj;
    disj.source_instance = doc.at("sourceInstance").get<std::string>();
    disj.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& t : doc.at("terms")) {
      Term term;
      term.id = t.at("id").get<int>();
      for (const auto& o : t.at("overrides")) {
        BoundOverride ov;
        if (o.contains("lb") && !o.at("lb").is_null()) {
          ov.lower = o.at("lb").get<double>();
        }
        if (o.contains("ub") && !o.at("ub").is_null()) {
          ov.upper = o.at("ub").get<double>();
        }
        term.overrides[o.at("var").get<int>()] = ov;
      }
      if (term.id != static_cast<int>(disj.terms.size())) {
        throw ParseError("disjunction term ids must be 0..T-1 in order");
      }
      disj.terms.push_back(std::move(term));
    }
    return disj;
  } catch (const json::exception& e) {
    throw ParseError(std::string("disjunction JSON field error: ") + e.what());
  }
}

} // namespace pdi
