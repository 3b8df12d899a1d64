// acceptance_main.cpp
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero when any criterion fails.
//
// The randomized portion builds a fixed pool of small families (instance,
// disjunction, certificate bundle) and reuses it across criteria, plus three
// hand-constructed perturbations that each break one support condition
// (matrix change, basis infeasibility, perturbation-induced term
// feasibility).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdi/bench.hpp"
#include "pdi/cglp.hpp"
#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/pdi.hpp"
#include "pdi/perturb.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace pdi;
using namespace pdi::testing;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Family {
  Instance base;
  Disjunction disjunction;
  GeneratedCut generated;
  Element element = Element::kRhs;
  double degree = 0.5;
  std::vector<Instance> perturbed;
};

// Shared pool: >= 100 randomized families within n <= 5 variables and <= 12
// stacked rows, cycling through every (element, degree) combination.
std::vector<Family> build_family_pool(int count) {
  std::vector<Family> pool;
  Rng rng(0xACCE57);
  const Element elements[3] = {Element::kMatrix, Element::kRhs,
                               Element::kObjective};
  const double degrees[2] = {0.5, 2.0};
  while (static_cast<int>(pool.size()) < count) {
    const int n = 2 + static_cast<int>(rng.uniform_index(4));
    RandomInstanceOptions opt;
    opt.min_vars = n;
    opt.max_vars = n;
    opt.min_structural = 1;
    opt.max_structural = std::min(4, 12 - 2 * n);
    Instance base = random_fractional_instance(rng, opt);
    base.name = "fam" + std::to_string(pool.size());
    const LpSolution relax = solve_lp(base.rows, base.rhs, base.objective);
    const int d = 2 + static_cast<int>(pool.size() % 3);
    const Disjunction disj =
        build_partial_bnb_disjunction(base, d).disjunction;
    if (feasible_terms(base, disj).empty()) continue;
    Family fam;
    fam.base = std::move(base);
    fam.disjunction = disj;
    fam.generated = generate_cut(fam.base, disj, relax.x);
    fam.element = elements[pool.size() % 3];
    fam.degree = degrees[(pool.size() / 3) % 2];

    PerturbationSpec spec;
    spec.element = fam.element;
    spec.degree = fam.degree;
    spec.count = 3;
    spec.max_attempts = 90;
    spec.seed = rng.next_u64();
    fam.perturbed = make_test_set(fam.base, spec).instances;
    pool.push_back(std::move(fam));
  }
  return pool;
}

double term_min(const Cut& cut, const Instance& inst, const Term& term,
                bool* feasible) {
  const TermPolyhedron poly = term_polyhedron(inst, term);
  const LpSolution sol = solve_lp(poly.rows, poly.rhs, cut.alpha);
  *feasible = sol.status == LpStatus::kOptimal;
  return *feasible ? sol.obj_value : 0.0;
}

// ---- criterion 1: Farkas-replay validity on every feasible term ----------
void criterion_validity(const std::vector<Family>& pool) {
  const auto start = Clock::now();
  int checked = 0, violations = 0;
  for (const Family& fam : pool) {
    for (const Instance& target : fam.perturbed) {
      const Cut cut =
          farkas_pdi(fam.generated.certificate, fam.disjunction, target);
      for (const Term& term : fam.disjunction.terms) {
        bool feasible = false;
        const double value = term_min(cut, target, term, &feasible);
        if (!feasible) continue;
        ++checked;
        if (value < cut.beta - 1e-7) ++violations;
      }
    }
  }
  const double secs = elapsed_s(start);
  std::ostringstream detail;
  detail << pool.size() << " families, " << checked
         << " term checks, " << violations << " violations, "
         << secs << " s";
  report(1, violations == 0 && checked > 200 && secs < 60.0,
         "parametric cuts valid on every feasible term", detail.str());
}

// ---- criterion 2: strengthened cuts always support the hull --------------
bool strong_supports(const Instance& base, const Instance& target,
                     const Disjunction& disj, const GeneratedCut& gen,
                     int* failures, int* produced) {
  try {
    const StrongPdiResult res =
        strong_pdi(base, target, disj, gen.certificate, gen.bases);
    ++*produced;
    const SupportCheck support = check_support(res.cut, target, disj);
    if (!support.supported || std::fabs(support.hull_min - res.cut.beta) > 1e-6) {
      ++*failures;
      return false;
    }
    return true;
  } catch (const PreconditionError&) {
    return true;  // no output produced; fresh generation is the fallback
  }
}

void criterion_support(const std::vector<Family>& pool) {
  int failures = 0, produced = 0;
  for (const Family& fam : pool) {
    if (fam.element == Element::kObjective) continue;
    for (const Instance& target : fam.perturbed) {
      strong_supports(fam.base, target, fam.disjunction, fam.generated,
                      &failures, &produced);
    }
  }

  // Constructed failure modes.
  bool modes_ok = true;
  {
    // (a) matrix change.
    const Instance inst = two_var_instance();
    const Disjunction disj = two_var_split();
    const LpSolution relax = solve_lp(inst.rows, inst.rhs, inst.objective);
    const GeneratedCut gen = generate_cut(inst, disj, relax.x);
    Instance target = with_coeff(inst, 0, 0, -1.9);
    target.rows(0, 1) = -1.1;
    int f = 0, p = 0;
    modes_ok = strong_supports(inst, target, disj, gen, &f, &p) && p == 1;
  }
  {
    // (b) stored basis infeasible on a still-feasible term.
    const Instance inst = two_row_instance();
    const Disjunction disj = build_partial_bnb_disjunction(inst, 2).disjunction;
    const LpSolution relax = solve_lp(inst.rows, inst.rhs, inst.objective);
    const GeneratedCut gen = generate_cut(inst, disj, relax.x);
    const Instance target = with_rhs(inst, 1, -1.4);
    int f = 0, p = 0;
    modes_ok = modes_ok && strong_supports(inst, target, disj, gen, &f, &p) &&
               p == 1;
  }
  {
    // (c) perturbation-induced feasible term.
    const Instance inst = tight_instance();
    const Disjunction disj = build_partial_bnb_disjunction(inst, 2).disjunction;
    const LpSolution relax = solve_lp(inst.rows, inst.rhs, inst.objective);
    const GeneratedCut gen = generate_cut(inst, disj, relax.x);
    const Instance target = with_rhs(inst, 0, -2.2);
    int f = 0, p = 0;
    modes_ok = modes_ok && strong_supports(inst, target, disj, gen, &f, &p) &&
               p == 1;
  }

  std::ostringstream detail;
  detail << produced << " strengthened cuts, " << failures
         << " support failures; constructed modes "
         << (modes_ok ? "ok" : "BROKEN");
  report(2, produced >= 50 && failures == 0 && modes_ok,
         "strong cuts support the disjunctive hull", detail.str());
}

// ---- criterion 3: Lemma-2 soundness ---------------------------------------
void criterion_lemma2(const std::vector<Family>& pool) {
  int qualifying = 0, unsupported = 0;
  for (const Family& fam : pool) {
    for (const Instance& target : fam.perturbed) {
      if (!is_induced(fam.generated.certificate, fam.disjunction, target)) {
        continue;
      }
      const std::vector<int> target_feasible =
          feasible_terms(target, fam.disjunction);
      bool bases_ok = !target_feasible.empty();
      for (int t : target_feasible) {
        if (fam.generated.certificate.term_is_zero(t) ||
            !fam.generated.bases.has_basis(t)) {
          bases_ok = false;
          break;
        }
        const TermPolyhedron poly =
            term_polyhedron(target, fam.disjunction.terms[t]);
        if (!is_basis_feasible(fam.generated.bases.per_term[t], poly.rows,
                               poly.rhs)) {
          bases_ok = false;
          break;
        }
      }
      for (int t : fam.generated.feasible_terms) {
        if (!std::binary_search(target_feasible.begin(),
                                target_feasible.end(), t)) {
          bases_ok = false;
        }
      }
      if (!bases_ok) continue;
      ++qualifying;
      const Cut cut =
          farkas_pdi(fam.generated.certificate, fam.disjunction, target);
      if (!check_support(cut, target, fam.disjunction).supported) {
        ++unsupported;
      }
    }
  }
  std::ostringstream detail;
  detail << qualifying << " qualifying cases, " << unsupported
         << " without support";
  report(3, qualifying >= 20 && unsupported == 0,
         "plain replay supports whenever induced with live bases",
         detail.str());
}

// ---- criterion 4: identity family -----------------------------------------
void criterion_identity(const std::vector<Family>& pool) {
  int bad = 0, checked = 0;
  auto matches = [&](const Cut& a, const Cut& b) {
    double na = 0.0, nb = 0.0;
    for (double v : a.alpha) na = std::max(na, std::fabs(v));
    for (double v : b.alpha) nb = std::max(nb, std::fabs(v));
    if (na == 0.0 || nb == 0.0) return false;
    for (std::size_t j = 0; j < a.alpha.size(); ++j) {
      if (std::fabs(a.alpha[j] / na - b.alpha[j] / nb) > 1e-9) return false;
    }
    return std::fabs(a.beta / na - b.beta / nb) <= 1e-9;
  };
  for (const Family& fam : pool) {
    ++checked;
    const Cut pdc =
        farkas_pdi(fam.generated.certificate, fam.disjunction, fam.base);
    if (!matches(pdc, fam.generated.cut)) ++bad;
    try {
      const StrongPdiResult spdc =
          strong_pdi(fam.base, fam.base, fam.disjunction,
                     fam.generated.certificate, fam.generated.bases);
      if (!matches(spdc.cut, fam.generated.cut)) ++bad;
      if (!spdc.reparameterized_terms.empty()) ++bad;
    } catch (const PreconditionError&) {
      ++bad;  // must never fire on the identity member
    }
  }
  std::ostringstream detail;
  detail << checked << " bases, " << bad << " mismatches";
  report(4, bad == 0 && checked >= 100,
         "identity replay reproduces the fresh cut", detail.str());
}

// ---- criterion 5: objective-element rule ----------------------------------
void criterion_objective_rule(const std::vector<Family>& pool) {
  int bitwise_bad = 0, checked = 0;
  for (const Family& fam : pool) {
    if (fam.element != Element::kObjective) continue;
    for (const Instance& target : fam.perturbed) {
      ++checked;
      const Cut source =
          farkas_pdi(fam.generated.certificate, fam.disjunction, fam.base);
      const Cut moved =
          farkas_pdi(fam.generated.certificate, fam.disjunction, target);
      if (moved.alpha != source.alpha || moved.beta != source.beta) {
        ++bitwise_bad;  // bit-identical comparison, deliberately
      }
    }
  }

  // Harness marker: spdc rows are emitted as skipped for element = c.
  bool skip_marker_ok = true;
  {
    const std::string path = "/tmp/pdi_acc_base_c.json";
    save_instance(two_var_instance(), path);
    ExperimentConfig cfg;
    cfg.base_instances = {path};
    cfg.elements = {Element::kObjective};
    cfg.degrees = {0.5};
    cfg.terms = {2};
    cfg.methods = {Method::kSpdc, Method::kPdc, Method::kDefault};
    cfg.count_per_family = 2;
    cfg.seed = 17;
    const ExperimentResult result = run_experiment(cfg);
    int skipped = 0;
    for (const RunRecord& rec : result.records) {
      if (rec.method == Method::kSpdc) {
        if (rec.status == RunStatus::kSkipped && rec.note == "--") {
          ++skipped;
        } else {
          skip_marker_ok = false;
        }
      }
    }
    skip_marker_ok = skip_marker_ok && skipped == 2;
    std::remove(path.c_str());
  }

  std::ostringstream detail;
  detail << checked << " objective replays, " << bitwise_bad
         << " not bit-identical; skip markers "
         << (skip_marker_ok ? "ok" : "BROKEN");
  report(5, checked >= 20 && bitwise_bad == 0 && skip_marker_ok,
         "objective perturbations replay bit-identically and skip spdc",
         detail.str());
}

// ---- criterion 6: dominance of the strengthened rhs ------------------------
void criterion_dominance(const std::vector<Family>& pool) {
  int shared = 0, violations = 0;
  for (const Family& fam : pool) {
    if (fam.element == Element::kObjective) continue;
    for (const Instance& target : fam.perturbed) {
      const Cut pdc =
          farkas_pdi(fam.generated.certificate, fam.disjunction, target);
      try {
        const StrongPdiResult spdc =
            strong_pdi(fam.base, target, fam.disjunction,
                       fam.generated.certificate, fam.generated.bases);
        bool same_alpha = pdc.alpha.size() == spdc.cut.alpha.size();
        for (std::size_t j = 0; same_alpha && j < pdc.alpha.size(); ++j) {
          same_alpha = std::fabs(pdc.alpha[j] - spdc.cut.alpha[j]) <= 1e-9;
        }
        if (!same_alpha) continue;
        ++shared;
        if (spdc.cut.beta < pdc.beta - 1e-9) ++violations;
      } catch (const PreconditionError&) {
      }
    }
  }
  std::ostringstream detail;
  detail << shared << " shared-coefficient pairs, " << violations
         << " dominance violations";
  report(6, shared >= 20 && violations == 0,
         "strengthened rhs dominates the plain replay", detail.str());
}

// ---- criteria 7 and 8 use experiment sweeps -------------------------------
void criterion_sandwich() {
  const std::string path_a = "/tmp/pdi_acc_sw_a.json";
  const std::string path_b = "/tmp/pdi_acc_sw_b.json";
  save_instance(two_var_instance(), path_a);
  save_instance(two_row_instance(), path_b);
  ExperimentConfig cfg;
  cfg.base_instances = {path_a, path_b};
  cfg.elements = {Element::kRhs, Element::kObjective};
  cfg.degrees = {0.5};
  cfg.terms = {2};
  cfg.methods = {Method::kVpc, Method::kSpdc, Method::kPdc, Method::kDefault};
  cfg.count_per_family = 3;
  cfg.seed = 23;
  cfg.time_limit = 30.0;
  const ExperimentResult result = run_experiment(cfg);
  int optimal_rows = 0, violations = 0;
  for (const RunRecord& rec : result.records) {
    if (rec.status == RunStatus::kError &&
        rec.note == "bound sandwich violated") {
      ++violations;
    }
    if (rec.status != RunStatus::kOptimal || !rec.ip_opt) continue;
    ++optimal_rows;
    const double ip = *rec.ip_opt;
    const double tol = 1e-6 * (1.0 + std::fabs(ip));
    if (!(rec.lp_bound <= rec.cut_bound + tol &&
          rec.cut_bound <= rec.root_bound + tol && rec.root_bound <= ip + tol)) {
      ++violations;
    }
    std::optional<double> gen_bound;
    if (rec.method == Method::kVpc) gen_bound = rec.disj_bound_vd;
    if (rec.method == Method::kPdc || rec.method == Method::kSpdc) {
      gen_bound = rec.disj_bound_pd;
    }
    if (gen_bound &&
        !(rec.cut_bound <= *gen_bound + tol && *gen_bound <= ip + tol)) {
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << optimal_rows << " optimal rows, " << violations << " violations";
  report(7, optimal_rows >= 30 && violations == 0,
         "lp <= cut <= disjunction bound <= ip on every run", detail.str());
}

void criterion_timing() {
  // Bases large enough for 8-term disjunctions.
  Rng rng(0x8157);
  RandomInstanceOptions opt;
  opt.min_vars = 6;
  opt.max_vars = 7;
  opt.min_structural = 3;
  opt.max_structural = 4;
  opt.integer_prob = 1.0;

  struct Sample {
    double vpc = 0.0, spdc = 0.0, pdc = 0.0;
  };
  std::vector<Sample> samples;
  int bases_used = 0;
  while (static_cast<int>(samples.size()) < 20 && bases_used < 12) {
    Instance base;
    Disjunction disj;
    GeneratedCut gen;
    try {
      base = random_fractional_instance(rng, opt);
      const LpSolution relax = solve_lp(base.rows, base.rhs, base.objective);
      const auto built = build_partial_bnb_disjunction(base, 8);
      if (built.disjunction.num_terms() < 8) continue;
      disj = built.disjunction;
      if (feasible_terms(base, disj).size() < 2) continue;
      gen = generate_cut(base, disj, relax.x);
    } catch (const Error&) {
      continue;
    }
    ++bases_used;

    PerturbationSpec spec;
    spec.element = Element::kRhs;
    spec.degree = 0.5;
    spec.count = 7;
    spec.max_attempts = 120;
    spec.seed = rng.next_u64();
    const TestSet tests = make_test_set(base, spec);
    for (const Instance& target : tests.instances) {
      Sample sample;
      try {
        auto t0 = Clock::now();
        const LpSolution relax =
            solve_lp(target.rows, target.rhs, target.objective);
        const Disjunction fresh =
            build_partial_bnb_disjunction(target, 8, 1).disjunction;
        (void)generate_cut(target, fresh, relax.x);
        sample.vpc = elapsed_s(t0);

        t0 = Clock::now();
        (void)strong_pdi(base, target, disj, gen.certificate, gen.bases);
        sample.spdc = elapsed_s(t0);

        t0 = Clock::now();
        (void)farkas_pdi(gen.certificate, disj, target);
        sample.pdc = elapsed_s(t0);
      } catch (const Error&) {
        continue;  // precondition fallback etc.: not a timing sample
      }
      samples.push_back(sample);
      if (static_cast<int>(samples.size()) >= 40) break;
    }
  }

  double mean_vpc = 0.0, mean_spdc = 0.0, mean_pdc = 0.0;
  for (const Sample& s : samples) {
    mean_vpc += s.vpc;
    mean_spdc += s.spdc;
    mean_pdc += s.pdc;
  }
  const double n = std::max<std::size_t>(samples.size(), 1);
  mean_vpc /= n;
  mean_spdc /= n;
  mean_pdc /= n;
  std::ostringstream detail;
  detail << samples.size() << " instances; mean gen times pdc=" << mean_pdc
         << "s spdc=" << mean_spdc << "s vpc=" << mean_vpc << "s";
  report(8,
         samples.size() >= 20 && mean_pdc < mean_spdc &&
             mean_spdc < mean_vpc && mean_pdc <= 0.5 * mean_vpc,
         "generation time means order pdc < spdc < vpc", detail.str());
}

// ---- criterion 9: perturbation algorithm contracts ------------------------
void criterion_perturbation_contracts() {
  const bool golden =
      find_degree(Vector{1.0, 0.0}, Vector{1.0, 0.0}) == 0.0 &&
      find_degree(Vector{1.0, 0.0}, Vector{0.0, 1.0}) == std::acos(0.0) &&
      find_degree(Vector{1.0, 0.0}, Vector{2.0, 0.0}) == 1.0;

  const Instance inst = two_row_instance();
  int calls = 0, bad = 0, not_found = 0;
  Rng rng(0xA19);
  const Element elements[3] = {Element::kMatrix, Element::kRhs,
                               Element::kObjective};
  while (calls < 1000) {
    const Element element = elements[calls % 3];
    const double theta = calls % 2 == 0 ? 0.5 : 2.0;
    const Vector u = element_values(inst, element);
    const auto v = find_perturbation(u, theta, rng);
    ++calls;
    if (!v) {
      ++not_found;
      continue;
    }
    if (!(find_degree(u, *v) < theta) || *v == u) ++bad;
  }
  std::ostringstream detail;
  detail << calls << " calls, " << bad << " contract violations, "
         << not_found << " not-found; goldens "
         << (golden ? "exact" : "BROKEN");
  report(9, golden && bad == 0 && calls == 1000,
         "perturbation search honors its contract", detail.str());
}

// ---- criterion 10: worked example end-to-end through the CLI ---------------
std::string run_cli(const std::string& cli, const std::string& args,
                    const std::string& capture_path, int* exit_code) {
  const std::string cmd = cli + " " + args + " > " + capture_path + " 2>&1";
  *exit_code = std::system(cmd.c_str());
  std::ifstream in(capture_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli_worked_example() {
  const char* cli_env = std::getenv("PDI_CLI");
  if (!cli_env) {
    report(10, false, "worked example end to end via the CLI",
           "PDI_CLI not set");
    return;
  }
  const std::string cli = cli_env;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pdi_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Base instance and its x2 <= 0.9 family member.
  const Instance base = two_var_instance();
  save_instance(base, (dir / "twovar.json").string());
  const Instance target = with_rhs(base, 4, -0.9);
  {
    Instance named = target;
    named.name = "twovar_rhs";
    save_instance(named, (dir / "twovar_rhs.json").string());
  }

  const auto start = Clock::now();
  int code = 0;
  const std::string gen_out =
      run_cli(cli,
              "gencuts " + (dir / "twovar.json").string() + " --terms 2 --out " +
                  (dir / "bundle.json").string(),
              (dir / "gencuts.out").string(), &code);
  bool ok = code == 0;
  std::string why = ok ? "" : "gencuts failed";

  json summary;
  if (ok) {
    try {
      summary = json::parse(gen_out);
      const auto& alpha = summary.at("cut").at("alpha");
      ok = std::fabs(alpha[0].get<double>() + 1.0) < 1e-9 &&
           std::fabs(alpha[1].get<double>() + 1.0) < 1e-9 &&
           std::fabs(summary.at("cut").at("beta").get<double>() + 1.0) < 1e-9 &&
           summary.at("violated").get<bool>();
      if (!ok) why = "fresh cut is not the facet -x1-x2 >= -1";
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("gencuts output unreadable: ") + e.what();
    }
  }

  // The bundle holds the hand-derived certificate rows.
  if (ok) {
    try {
      const CertificateBundle bundle =
          load_bundle((dir / "bundle.json").string());
      const Vector& v0 = bundle.certificate.per_term[0];
      const Vector& v1 = bundle.certificate.per_term[1];
      ok = std::fabs(v0[4] - 1.0) < 1e-6 && std::fabs(v0[5] - 1.0) < 1e-6 &&
           std::fabs(v1[0] - 1.0) < 1e-6 && std::fabs(v1[5] - 1.0) < 1e-6 &&
           bundle.bases.per_term[0] == BasisIndexSet{4, 5} &&
           bundle.bases.per_term[1] == BasisIndexSet{0, 5};
      if (!ok) why = "bundle certificate differs from the worked values";
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("bundle unreadable: ") + e.what();
    }
  }

  json pdc_rec, spdc_rec;
  if (ok) {
    const std::string pdi_out =
        run_cli(cli,
                "pdi " + (dir / "twovar_rhs.json").string() + " --bundle " +
                    (dir / "bundle.json").string() + " --strong",
                (dir / "pdi.out").string(), &code);
    ok = code == 0;
    if (!ok) {
      why = "pdi --strong failed: " + pdi_out.substr(0, 120);
    } else {
      std::istringstream lines(pdi_out);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json rec = json::parse(line);
        if (rec.at("method") == "pdc") pdc_rec = rec;
        if (rec.at("method") == "spdc") spdc_rec = rec;
      }
      auto is_facet = [](const json& rec) {
        const auto& alpha = rec.at("cut").at("alpha");
        return std::fabs(alpha[0].get<double>() + 1.0) < 1e-9 &&
               std::fabs(alpha[1].get<double>() + 1.0) < 1e-9 &&
               std::fabs(rec.at("cut").at("beta").get<double>() + 1.0) < 1e-9;
      };
      ok = !pdc_rec.is_null() && !spdc_rec.is_null() && is_facet(pdc_rec) &&
           is_facet(spdc_rec) && pdc_rec.at("supported").get<bool>() &&
           spdc_rec.at("supported").get<bool>();
      if (ok) {
        // Support witness sits at the vertex (1, 0) of term {x1 >= 1}.
        const auto& wit = spdc_rec.at("witness");
        ok = wit.at("term").get<int>() == 1 &&
             std::fabs(wit.at("point")[0].get<double>() - 1.0) < 1e-6 &&
             std::fabs(wit.at("point")[1].get<double>()) < 1e-6;
        if (!ok) why = "support witness is not (1, 0)";
      } else {
        why = "parametric cuts differ from the worked values";
      }
    }
  }
  const double secs = elapsed_s(start);
  ok = ok && secs < 1.0;
  std::ostringstream detail;
  if (!why.empty()) detail << why << "; ";
  detail << secs << " s";
  report(10, ok, "worked example end to end via the CLI", detail.str());
  fs::remove_all(dir);
}

} // namespace

int main() {
  std::printf("building family pool...\n");
  const auto t0 = Clock::now();
  const std::vector<Family> pool = build_family_pool(102);
  std::printf("pool ready: %zu families (%.2f s)\n", pool.size(),
              elapsed_s(t0));

  criterion_validity(pool);
  criterion_support(pool);
  criterion_lemma2(pool);
  criterion_identity(pool);
  criterion_objective_rule(pool);
  criterion_dominance(pool);
  criterion_sandwich();
  criterion_timing();
  criterion_perturbation_contracts();
  criterion_cli_worked_example();

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
