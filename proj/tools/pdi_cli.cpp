// pdi_cli.cpp
// Command-line front end: solve an instance, generate a certificate bundle,
// replay/strengthen parametric cuts, draw perturbed families, run the
// benchmark sweep, and emit performance profiles.
//
// Exit codes: 0 success, 1 fatal error, 2 completed with partial failures.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pdi/bench.hpp"
#include "pdi/cglp.hpp"
#include "pdi/disjunction.hpp"
#include "pdi/errors.hpp"
#include "pdi/instance.hpp"
#include "pdi/pdi.hpp"
#include "pdi/perturb.hpp"
#include "pdi/simplex.hpp"

namespace {

using nlohmann::json;

pdi::Instance load_with_format(const std::string& path,
                               const std::string& format) {
  pdi::FileFormat ff = pdi::FileFormat::kAuto;
  if (format == "json") ff = pdi::FileFormat::kJson;
  else if (format == "mps") ff = pdi::FileFormat::kMps;
  return pdi::load_instance(path, ff);
}

json cut_to_json(const pdi::Cut& cut) {
  return json{{"alpha", cut.alpha},
              {"beta", cut.beta},
              {"origin", pdi::to_string(cut.origin)},
              {"source", cut.source_instance}};
}

int cmd_solve(const std::string& path, const std::string& format) {
  const pdi::Instance inst = load_with_format(path, format);
  const auto diags = pdi::validate_instance(inst);
  for (const auto& d : diags) {
    std::cerr << "warning: " << d << "\n";
  }
  const pdi::LpSolution sol =
      pdi::solve_lp(inst.rows, inst.rhs, inst.objective);
  json out;
  out["instance"] = inst.name;
  out["status"] = pdi::to_string(sol.status);
  if (sol.status == pdi::LpStatus::kOptimal) {
    out["objective"] = sol.obj_value;
    out["x"] = sol.x;
    out["basis"] = sol.basis;
  } else if (sol.farkas_ray) {
    out["farkasRay"] = *sol.farkas_ray;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_gencuts(const std::string& path, const std::string& format, int terms,
                std::uint64_t seed, const std::string& out_path) {
  const pdi::Instance inst = load_with_format(path, format);
  const pdi::LpSolution relax =
      pdi::solve_lp(inst.rows, inst.rhs, inst.objective);
  if (relax.status != pdi::LpStatus::kOptimal) {
    throw pdi::PreconditionError(std::string("LP relaxation is ") +
                                 pdi::to_string(relax.status));
  }
  const auto built = pdi::build_partial_bnb_disjunction(inst, terms, seed);
  if (built.degenerate_single_term) {
    std::cerr << "warning: LP optimum already integral; "
                 "single-term disjunction\n";
  }
  const pdi::GeneratedCut gen =
      pdi::generate_cut(inst, built.disjunction, relax.x);
  const pdi::CertificateBundle bundle =
      pdi::make_bundle(inst, built.disjunction, gen, relax.x);
  pdi::save_bundle(bundle, out_path);

  json summary;
  summary["instance"] = inst.name;
  summary["terms"] = built.disjunction.num_terms();
  summary["feasibleTerms"] = gen.feasible_terms;
  summary["cut"] = cut_to_json(gen.cut);
  summary["violated"] = gen.violated;
  summary["cglpValue"] = gen.cglp_value;
  summary["bundle"] = out_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_pdi(const std::string& path, const std::string& format,
            const std::string& bundle_path, bool strong,
            const std::string& out_path) {
  const pdi::Instance target = load_with_format(path, format);
  const pdi::CertificateBundle bundle = pdi::load_bundle(bundle_path);

  std::ostringstream lines;
  const pdi::Cut pdc = pdi::farkas_pdi(bundle.certificate,
                                       bundle.disjunction, target);
  {
    json rec;
    rec["instance"] = target.name;
    rec["method"] = "pdc";
    rec["cut"] = cut_to_json(pdc);
    rec["reparameterizedTerms"] = json::array();
    const pdi::SupportCheck support =
        pdi::check_support(pdc, target, bundle.disjunction);
    rec["supported"] = support.supported;
    rec["hullMin"] = support.hull_min;
    rec["witness"] = {{"term", support.witness_term},
                      {"point", support.witness}};
    lines << rec.dump() << "\n";
  }
  if (strong) {
    const pdi::Instance source =
        [&]() -> pdi::Instance {
      // The bundle stores only the base name; the source instance must sit
      // next to the bundle as <name>.json or be the target's own family
      // base. Try the bundle directory first.
      namespace fs = std::filesystem;
      const fs::path dir = fs::path(bundle_path).parent_path();
      const fs::path candidate = dir / (bundle.base_instance + ".json");
      if (fs::exists(candidate)) {
        return pdi::load_instance(candidate.string());
      }
      throw pdi::PreconditionError(
          "cannot locate base instance '" + bundle.base_instance +
          ".json' beside the bundle (needed for --strong)");
    }();
    const pdi::StrongPdiResult strong_result =
        pdi::strong_pdi(source, target, bundle.disjunction,
                        bundle.certificate, bundle.bases);
    json rec;
    rec["instance"] = target.name;
    rec["method"] = "spdc";
    rec["cut"] = cut_to_json(strong_result.cut);
    rec["reparameterizedTerms"] = strong_result.reparameterized_terms;
    rec["survivingTerms"] = strong_result.surviving_terms;
    rec["witness"] = {{"term", strong_result.witness_term},
                      {"point", strong_result.witness_point}};
    const pdi::SupportCheck support =
        pdi::check_support(strong_result.cut, target, bundle.disjunction);
    rec["supported"] = support.supported;
    rec["hullMin"] = support.hull_min;
    lines << rec.dump() << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw pdi::ParseError("cannot write file: " + out_path);
    out << lines.str();
  }
  std::cout << lines.str();
  return 0;
}

int cmd_perturb(const std::string& path, const std::string& format,
                const std::string& element, double degree, int count,
                std::uint64_t seed, int max_attempts,
                const std::string& out_dir) {
  const pdi::Instance inst = load_with_format(path, format);
  pdi::PerturbationSpec spec;
  spec.element = pdi::element_from_string(element);
  spec.degree = degree;
  spec.count = count;
  spec.seed = seed;
  spec.max_attempts = max_attempts;
  const pdi::TestSet family = pdi::make_test_set(inst, spec);

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  json manifest;
  manifest["base"] = inst.name;
  manifest["element"] = element;
  manifest["degree"] = degree;
  manifest["seed"] = seed;
  manifest["attempts"] = family.stats.attempts;
  manifest["rejectedInfeasible"] = family.stats.rejected_infeasible;
  manifest["notFound"] = family.stats.not_found;
  json files = json::array();
  json achieved = json::array();
  for (std::size_t i = 0; i < family.instances.size(); ++i) {
    const std::string file = family.instances[i].name + ".json";
    pdi::save_instance(family.instances[i], (fs::path(out_dir) / file).string());
    files.push_back(file);
    achieved.push_back(family.stats.degrees_achieved[i]);
  }
  manifest["files"] = files;
  manifest["degreesAchieved"] = achieved;
  std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";
  std::cout << manifest.dump(2) << "\n";
  return family.instances.empty() ? 2 : 0;
}

int cmd_experiment(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw pdi::ParseError("cannot open config: " + config_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const pdi::ExperimentConfig cfg =
      pdi::experiment_config_from_json(ss.str());
  const pdi::ExperimentResult result = pdi::run_experiment(cfg);
  if (cfg.out_dir.empty()) {
    std::cout << pdi::records_to_csv(result.records);
  } else {
    std::cout << "rows: " << result.records.size()
              << " failures: " << result.failures << " -> " << cfg.out_dir
              << "\n";
  }
  return result.failures == 0 ? 0 : 2;
}

int cmd_report(const std::vector<std::string>& csv_paths,
               const std::string& dir, const std::string& baseline,
               double min_default_time, bool with_profiles,
               const std::string& out_path) {
  std::vector<pdi::RunRecord> records;
  std::vector<std::string> paths = csv_paths;
  if (!dir.empty()) {
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".csv") {
        paths.push_back(entry.path().string());
      }
    }
    std::sort(paths.begin(), paths.end());
  }
  if (paths.empty()) {
    throw pdi::PreconditionError("report: no CSV inputs given");
  }
  for (const std::string& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw pdi::ParseError("cannot open CSV: " + p);
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto part = pdi::records_from_csv(ss.str());
    records.insert(records.end(), part.begin(), part.end());
  }
  double threshold = min_default_time;
  if (threshold < 0.0) {
    // Default: 75th percentile of the default method's runtimes.
    std::vector<double> times;
    for (const auto& r : records) {
      if (r.method == pdi::Method::kDefault &&
          r.status == pdi::RunStatus::kOptimal) {
        times.push_back(r.total_time);
      }
    }
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      threshold = times[(times.size() * 3) / 4];
    } else {
      threshold = 0.0;
    }
  }
  json out;
  out["gapSummary"] = json::parse(pdi::summary_to_json(records));
  bool warned = false;
  if (with_profiles) {
    const pdi::PerformanceProfile profile = pdi::performance_profile(
        records, pdi::method_from_string(baseline), threshold);
    out["baseline"] = baseline;
    out["minDefaultTime"] = threshold;
    out["profiles"] = json::parse(pdi::profile_to_json(profile));
    warned = !profile.warning.empty();
  }
  const std::string text = out.dump(2);
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    file << text << "\n";
  }
  std::cout << text << "\n";
  return warned ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric disjunctive cuts for MILP families"};
  app.require_subcommand(1);

  std::string path, format = "auto", out_path, bundle_path, element = "b";
  std::string config_path, dir, baseline = "vpc";
  std::vector<std::string> csv_paths;
  int terms = 2, count = 5, max_attempts = 1000;
  double degree = 0.5, min_default_time = -1.0;
  std::uint64_t seed = 0;
  bool strong = false, profiles = false;

  auto* solve = app.add_subcommand("solve", "Solve an instance's LP relaxation");
  solve->add_option("instance", path)->required();
  solve->add_option("--format", format)->check(CLI::IsMember({"auto", "json", "mps"}));

  auto* gencuts = app.add_subcommand(
      "gencuts", "Generate a disjunctive cut and its certificate bundle");
  gencuts->add_option("instance", path)->required();
  gencuts->add_option("--format", format);
  gencuts->add_option("--terms", terms)->check(CLI::Range(2, 1024));
  gencuts->add_option("--seed", seed);
  gencuts->add_option("--out", out_path)->required();

  auto* pdi_cmd = app.add_subcommand(
      "pdi", "Replay a certificate bundle on a perturbed instance");
  pdi_cmd->add_option("instance", path)->required();
  pdi_cmd->add_option("--format", format);
  pdi_cmd->add_option("--bundle", bundle_path)->required();
  pdi_cmd->add_flag("--strong", strong, "Also run the strong PDI generator");
  pdi_cmd->add_option("--out", out_path, "Write cut records (JSON lines)");

  auto* perturb = app.add_subcommand(
      "perturb", "Draw a perturbed instance family");
  perturb->add_option("instance", path)->required();
  perturb->add_option("--format", format);
  perturb->add_option("--element", element)
      ->check(CLI::IsMember({"A", "b", "c"}));
  perturb->add_option("--degree", degree)->check(CLI::PositiveNumber);
  perturb->add_option("--count", count)->check(CLI::PositiveNumber);
  perturb->add_option("--seed", seed);
  perturb->add_option("--max-attempts", max_attempts);
  perturb->add_option("--out-dir", dir)->required();

  auto* experiment = app.add_subcommand(
      "experiment", "Run the branch-and-cut comparison sweep");
  experiment->add_option("--config", config_path)->required();

  auto* report = app.add_subcommand(
      "report", "Performance profiles from experiment CSV output");
  report->add_option("--csv", csv_paths);
  report->add_option("--dir", dir);
  report->add_flag("--profiles", profiles);
  report->add_option("--baseline", baseline);
  report->add_option("--min-default-time", min_default_time);
  report->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(path, format);
    if (gencuts->parsed())
      return cmd_gencuts(path, format, terms, seed, out_path);
    if (pdi_cmd->parsed())
      return cmd_pdi(path, format, bundle_path, strong, out_path);
    if (perturb->parsed())
      return cmd_perturb(path, format, element, degree, count, seed,
                         max_attempts, dir);
    if (experiment->parsed()) return cmd_experiment(config_path);
    if (report->parsed())
      return cmd_report(csv_paths, dir, baseline, min_default_time, profiles,
                        out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
