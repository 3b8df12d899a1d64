// bench.hpp
// Branch-and-cut driver with a root cut pool, the experiment sweep comparing
// fresh cuts against parametric ones, and performance-profile emission.
#ifndef PDI_BENCH_HPP
#define PDI_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdi/cglp.hpp"
#include "pdi/disjunction.hpp"
#include "pdi/instance.hpp"

namespace pdi {

enum class Method { kVpc, kSpdc, kPdc, kDefault };

const char* to_string(Method method);
Method method_from_string(const std::string& s);

enum class RunStatus { kOptimal, kTimeLimit, kError, kSkipped };

const char* to_string(RunStatus status);

struct BranchAndCutLimits {
  double time_limit = 60.0;  // seconds; 0 stops at the root
  long node_limit = 1'000'000;
};

struct BranchAndCutResult {
  RunStatus status = RunStatus::kOptimal;
  double lp_bound = 0.0;    // plain LP relaxation
  double cut_bound = 0.0;   // root LP with the cut pool appended
  double root_bound = 0.0;  // bound after root processing (== cut_bound:
                            // this solver runs no other root generators)
  std::optional<double> ip_opt;
  double best_bound = 0.0;  // proven dual bound (== ip_opt when optimal)
  Vector incumbent;
  long nodes = 0;           // branchings performed
  double root_time = 0.0;   // seconds spent on the two root LPs
  double total_time = 0.0;
};

/// LP-based branch and bound (best-bound node order, most-fractional
/// branching) with `root_cuts` appended to the root LP. When `known_opt` is
/// supplied and the solve finishes strictly above it, a root cut must have
/// sliced off the true optimum and the driver throws instead of returning a
/// wrong answer.
BranchAndCutResult run_branch_and_cut(const Instance& inst,
                                      const std::vector<Cut>& root_cuts,
                                      const BranchAndCutLimits& limits,
                                      std::optional<double> known_opt = {});

/// Percentage of the lp->ip gap recovered by `improved`, clamped to
/// [0, 100]. A closed gap (ip == lp) reports 100 with `degenerate` set.
double gap_closed(double lp_bound, double improved_bound, double ip_opt,
                  bool* degenerate = nullptr);

struct RunRecord {
  std::string instance_id;
  Method method = Method::kDefault;
  Element element = Element::kRhs;
  double degree = 0.0;
  int terms = 0;
  double lp_bound = 0.0;
  double cut_bound = 0.0;
  double root_bound = 0.0;
  std::optional<double> disj_bound_vd;  // fresh disjunction (vpc rows)
  std::optional<double> disj_bound_pd;  // bundle disjunction (pdc/spdc rows)
  std::optional<double> ip_opt;
  double gen_time = 0.0;   // cut-generation seconds for this method
  double root_time = 0.0;  // generation + root LP processing
  double total_time = 0.0;
  long nodes = 0;
  RunStatus status = RunStatus::kOptimal;
  std::string note;
};

struct ExperimentConfig {
  std::vector<std::string> base_instances;  // file paths
  std::vector<Element> elements;
  std::vector<double> degrees;
  std::vector<int> terms;
  std::vector<Method> methods;
  int count_per_family = 5;
  int max_attempts = 1000;
  std::uint64_t seed = 1;
  double time_limit = 60.0;
  long node_limit = 100000;
  int root_cut_rounds = 1;  // extra fresh rounds apply to vpc only
  int jobs = 1;
  std::string out_dir;      // when set, CSV files + manifest land here
};

ExperimentConfig experiment_config_from_json(const std::string& text);

struct ExperimentResult {
  std::vector<RunRecord> records;
  int failures = 0;  // rows with status error
};

/// Runs the full sweep: per base instance and term count a certificate
/// bundle is generated once; per (element, degree) a perturbed family is
/// drawn; per test instance each method contributes one row. vpc builds a
/// fresh disjunction and cut on the test instance, pdc replays the bundle
/// certificate, spdc strengthens it (skipped for objective perturbations,
/// which cannot break support), default adds no cuts. Row failures are
/// recorded and the sweep continues.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV with one row per record (fixed column order, "--" for absent
/// values). Files are grouped per (element, degree, terms) under `out_dir`
/// with a manifest.json index when requested by run_experiment.
std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text);
void write_experiment_outputs(const ExperimentConfig& config,
                              const ExperimentResult& result);

struct ProfilePoint {
  double value = 0.0;     // (t_method - t_baseline) / t_baseline
  double fraction = 0.0;  // cumulative share of instances
};

struct PerformanceProfile {
  std::map<std::string, std::vector<ProfilePoint>> curves;  // per method
  int instances = 0;
  std::string warning;
};

/// Relative-runtime profile of every non-baseline method against
/// `baseline`, over keys solved by all involved methods, plus the virtual
/// "Best" curve (pointwise min over methods; checked to dominate).
/// `min_default_time` keeps only keys whose default run took at least that
/// long; pass a negative value to keep everything.
PerformanceProfile performance_profile(const std::vector<RunRecord>& records,
                                       Method baseline,
                                       double min_default_time);

std::string profile_to_json(const PerformanceProfile& profile);

/// Per (element, degree, terms, method) averages over optimal rows: percent
/// gap closed by the cuts alone, percent closed after root processing, the
/// bound implied by the generating disjunction, and the mean root time.
/// Serialized as JSON (consumed by the report subcommand).
std::string summary_to_json(const std::vector<RunRecord>& records);

} // namespace pdi

#endif
