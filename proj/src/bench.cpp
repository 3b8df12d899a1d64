// bench.cpp
#include "pdi/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/pdi.hpp"
#include "pdi/perturb.hpp"

namespace pdi {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::kVpc: return "vpc";
    case Method::kSpdc: return "spdc";
    case Method::kPdc: return "pdc";
    case Method::kDefault: return "default";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "vpc") return Method::kVpc;
  if (s == "spdc") return Method::kSpdc;
  if (s == "pdc") return Method::kPdc;
  if (s == "default") return Method::kDefault;
  throw ParseError("unknown method '" + s + "'");
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kOptimal: return "optimal";
    case RunStatus::kTimeLimit: return "timeLimit";
    case RunStatus::kError: return "error";
    case RunStatus::kSkipped: return "skipped";
  }
  return "?";
}

namespace {

RunStatus run_status_from_string(const std::string& s) {
  if (s == "optimal") return RunStatus::kOptimal;
  if (s == "timeLimit") return RunStatus::kTimeLimit;
  if (s == "error") return RunStatus::kError;
  if (s == "skipped") return RunStatus::kSkipped;
  throw ParseError("unknown run status '" + s + "'");
}

// Stacked system of the instance plus root cuts plus node bound overrides.
struct CutSystem {
  Matrix rows;
  Vector rhs;

  CutSystem(const Instance& inst, const std::vector<Cut>& cuts) {
    rows = inst.rows;
    rhs = inst.rhs;
    for (const Cut& cut : cuts) {
      const bool nonzero =
          std::any_of(cut.alpha.begin(), cut.alpha.end(),
                      [](double a) { return a != 0.0; });
      if (!nonzero) continue;  // trivial 0 >= beta<=0 rows add nothing
      rows.append_row(cut.alpha);
      rhs.push_back(cut.beta);
    }
  }
};

struct BcNode {
  std::map<int, BoundOverride> overrides;
  double bound = 0.0;
  Vector x;
  int creation = 0;
};

void append_overrides(const std::map<int, BoundOverride>& overrides,
                      Matrix& rows, Vector& rhs, int n) {
  Vector r(n, 0.0);
  for (const auto& [var, ov] : overrides) {
    if (ov.lower) {
      r[var] = 1.0;
      rows.append_row(r);
      rhs.push_back(*ov.lower);
      r[var] = 0.0;
    }
    if (ov.upper) {
      r[var] = -1.0;
      rows.append_row(r);
      rhs.push_back(-*ov.upper);
      r[var] = 0.0;
    }
  }
}

int most_fractional_var(const Instance& inst, const Vector& x) {
  int pick = -1;
  double best = kIntTol;
  for (int j : inst.integer_vars) {
    const double f = x[j] - std::floor(x[j]);
    const double score = std::min(f, 1.0 - f);
    if (score > best) {
      best = score;
      pick = j;
    }
  }
  return pick;
}

} // namespace

BranchAndCutResult run_branch_and_cut(const Instance& inst,
                                      const std::vector<Cut>& root_cuts,
                                      const BranchAndCutLimits& limits,
                                      std::optional<double> known_opt) {
  const auto t_start = Clock::now();
  BranchAndCutResult result;

  const auto t_root = Clock::now();
  const LpSolution plain = solve_lp(inst.rows, inst.rhs, inst.objective);
  if (plain.status != LpStatus::kOptimal) {
    throw PreconditionError(std::string("root LP relaxation is ") +
                            to_string(plain.status));
  }
  result.lp_bound = plain.obj_value;

  const CutSystem root(inst, root_cuts);
  const LpSolution cut_lp = solve_lp(root.rows, root.rhs, inst.objective);
  if (cut_lp.status != LpStatus::kOptimal) {
    throw Error("invalid cut detected: root LP infeasible after cuts");
  }
  result.cut_bound = cut_lp.obj_value;
  result.root_bound = cut_lp.obj_value;
  result.best_bound = cut_lp.obj_value;
  result.root_time = seconds_since(t_root);

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(limits.time_limit));
  if (limits.time_limit <= 0.0) {
    result.status = RunStatus::kTimeLimit;
    result.total_time = seconds_since(t_start);
    return result;
  }

  double incumbent_value = std::numeric_limits<double>::infinity();
  Vector incumbent;
  auto try_incumbent = [&](const Vector& x, double value) {
    if (value < incumbent_value - 1e-12) {
      incumbent_value = value;
      incumbent = x;
    }
  };

  std::vector<BcNode> open;
  BcNode root_node;
  root_node.bound = cut_lp.obj_value;
  root_node.x = cut_lp.x;
  if (most_fractional_var(inst, cut_lp.x) < 0) {
    try_incumbent(cut_lp.x, cut_lp.obj_value);
  } else {
    open.push_back(std::move(root_node));
  }

  int next_creation = 1;
  bool hit_limit = false;
  while (!open.empty()) {
    if (result.nodes >= limits.node_limit || Clock::now() >= deadline) {
      hit_limit = true;
      break;
    }
    auto best = std::min_element(
        open.begin(), open.end(), [](const BcNode& a, const BcNode& b) {
          if (a.bound != b.bound) return a.bound < b.bound;
          return a.creation < b.creation;
        });
    BcNode node = std::move(*best);
    open.erase(best);
    if (node.bound >= incumbent_value - 1e-9) {
      continue;  // cannot improve
    }
    const int var = most_fractional_var(inst, node.x);
    const double down = std::floor(node.x[var]);
    ++result.nodes;
    for (int side = 0; side < 2; ++side) {
      BcNode child;
      child.overrides = node.overrides;
      child.creation = next_creation++;
      BoundOverride& ov = child.overrides[var];
      if (side == 0) {
        ov.upper = down;
      } else {
        ov.lower = down + 1.0;
      }
      Matrix rows = root.rows;
      Vector rhs = root.rhs;
      append_overrides(child.overrides, rows, rhs, inst.num_vars);
      const LpSolution sol = solve_lp(rows, rhs, inst.objective);
      if (sol.status == LpStatus::kInfeasible) continue;
      if (sol.status != LpStatus::kOptimal) {
        throw NumericalError("node LP unbounded despite bound rows");
      }
      if (sol.obj_value >= incumbent_value - 1e-9) continue;
      if (most_fractional_var(inst, sol.x) < 0) {
        try_incumbent(sol.x, sol.obj_value);
      } else {
        child.bound = sol.obj_value;
        child.x = sol.x;
        open.push_back(std::move(child));
      }
    }
  }

  if (hit_limit) {
    result.status = RunStatus::kTimeLimit;
    double bound = std::isfinite(incumbent_value) ? incumbent_value
                                                  : result.root_bound;
    for (const BcNode& node : open) bound = std::min(bound, node.bound);
    result.best_bound = bound;
    if (std::isfinite(incumbent_value)) {
      result.incumbent = incumbent;
    }
  } else if (!std::isfinite(incumbent_value)) {
    result.status = RunStatus::kError;  // no integer point exists
  } else {
    result.status = RunStatus::kOptimal;
    result.ip_opt = incumbent_value;
    result.best_bound = incumbent_value;
    result.incumbent = incumbent;
    if (known_opt &&
        incumbent_value > *known_opt + kEqTol * (1.0 + std::fabs(*known_opt))) {
      throw Error("invalid cut detected: branch and cut finished at " +
                  std::to_string(incumbent_value) +
                  " but the true optimum is " + std::to_string(*known_opt));
    }
  }
  result.total_time = seconds_since(t_start);
  return result;
}

double gap_closed(double lp_bound, double improved_bound, double ip_opt,
                  bool* degenerate) {
  if (degenerate) *degenerate = false;
  if (ip_opt < lp_bound - kEqTol * (1.0 + std::fabs(lp_bound))) {
    throw PreconditionError("gap_closed: ip optimum below the LP bound");
  }
  const double gap = ip_opt - lp_bound;
  if (gap <= 1e-12 * (1.0 + std::fabs(ip_opt))) {
    if (degenerate) *degenerate = true;
    return 100.0;
  }
  const double pct = 100.0 * (improved_bound - lp_bound) / gap;
  return std::clamp(pct, 0.0, 100.0);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config parse error: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.base_instances = doc.at("bases").get<std::vector<std::string>>();
    for (const auto& e : doc.at("elements")) {
      cfg.elements.push_back(element_from_string(e.get<std::string>()));
    }
    cfg.degrees = doc.at("degrees").get<std::vector<double>>();
    cfg.terms = doc.at("terms").get<std::vector<int>>();
    if (doc.contains("methods")) {
      for (const auto& m : doc.at("methods")) {
        cfg.methods.push_back(method_from_string(m.get<std::string>()));
      }
    } else {
      cfg.methods = {Method::kVpc, Method::kSpdc, Method::kPdc,
                     Method::kDefault};
    }
    cfg.count_per_family = doc.value("countPerFamily", 5);
    cfg.max_attempts = doc.value("maxAttempts", 1000);
    cfg.seed = doc.value("seed", std::uint64_t{1});
    cfg.time_limit = doc.value("timeLimit", 60.0);
    cfg.node_limit = doc.value("nodeLimit", long{100000});
    cfg.root_cut_rounds = doc.value("rootCutRounds", 1);
    cfg.jobs = doc.value("jobs", 1);
    cfg.out_dir = doc.value("outDir", std::string{});
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config field error: ") + e.what());
  }
}

namespace {

struct Bundle {
  CertificateBundle data;
  std::string error;  // nonempty when generation failed
};

// One sweep job: a single (test instance, term count) pair, all methods.
struct TaskInput {
  const Instance* base = nullptr;
  const Instance* test = nullptr;
  const Bundle* bundle = nullptr;
  Element element = Element::kRhs;
  double degree = 0.0;
  int terms = 0;
  std::uint64_t vd_seed = 0;
};

void validate_sandwich(RunRecord& rec) {
  if (rec.status != RunStatus::kOptimal || !rec.ip_opt) return;
  const double ip = *rec.ip_opt;
  const double tol = kEqTol * (1.0 + std::fabs(ip));
  bool ok = rec.lp_bound <= rec.cut_bound + tol &&
            rec.cut_bound <= rec.root_bound + tol && rec.root_bound <= ip + tol;
  // The cut bound may not exceed the dual bound of its generating
  // disjunction.
  std::optional<double> gen_bound;
  if (rec.method == Method::kVpc) gen_bound = rec.disj_bound_vd;
  if (rec.method == Method::kPdc || rec.method == Method::kSpdc) {
    gen_bound = rec.disj_bound_pd;
  }
  if (gen_bound.has_value()) {
    ok = ok && rec.cut_bound <= *gen_bound + tol && *gen_bound <= ip + tol;
  }
  if (!ok) {
    rec.status = RunStatus::kError;
    rec.note = "bound sandwich violated";
  }
}

std::vector<RunRecord> run_task(const ExperimentConfig& cfg,
                                const TaskInput& task) {
  std::vector<RunRecord> rows;
  const BranchAndCutLimits limits{cfg.time_limit, cfg.node_limit};

  auto base_record = [&](Method m) {
    RunRecord rec;
    rec.instance_id = task.test->name;
    rec.method = m;
    rec.element = task.element;
    rec.degree = task.degree;
    rec.terms = task.terms;
    return rec;
  };

  // The default run doubles as the reference optimum for cut validation.
  std::optional<double> known_opt;
  std::optional<BranchAndCutResult> bc_default;
  std::optional<double> pd_bound;
  std::string pd_bound_error;
  try {
    bc_default = run_branch_and_cut(*task.test, {}, limits);
    if (bc_default->status == RunStatus::kOptimal) {
      known_opt = bc_default->ip_opt;
    }
  } catch (const std::exception&) {
    bc_default.reset();
  }
  if (task.bundle->error.empty()) {
    try {
      pd_bound =
          disjunctive_bound(*task.test, task.bundle->data.disjunction);
    } catch (const std::exception& e) {
      pd_bound_error = e.what();
    }
  }

  for (Method method : cfg.methods) {
    RunRecord rec = base_record(method);
    try {
      if (method != Method::kDefault && method != Method::kVpc &&
          !task.bundle->error.empty()) {
        throw Error("bundle generation failed: " + task.bundle->error);
      }
      std::vector<Cut> cuts;
      const auto t_gen = Clock::now();
      switch (method) {
        case Method::kDefault:
          break;
        case Method::kVpc: {
          // Fresh disjunction and fresh cut on the test instance itself.
          const LpSolution relax =
              solve_lp(task.test->rows, task.test->rhs, task.test->objective);
          if (relax.status != LpStatus::kOptimal) {
            throw PreconditionError("test instance LP relaxation unsolved");
          }
          Vector point = relax.x;
          Disjunction vd =
              build_partial_bnb_disjunction(*task.test, task.terms,
                                            task.vd_seed)
                  .disjunction;
          GeneratedCut gen = generate_cut(*task.test, vd, point);
          cuts.push_back(gen.cut);
          for (int round = 1; round < cfg.root_cut_rounds; ++round) {
            // Extra rounds separate the current cut-augmented optimum with
            // an independently seeded tree.
            CutSystem sys(*task.test, cuts);
            const LpSolution again =
                solve_lp(sys.rows, sys.rhs, task.test->objective);
            if (again.status != LpStatus::kOptimal) break;
            Disjunction vd2 =
                build_partial_bnb_disjunction(
                    *task.test, task.terms,
                    derive_seed(task.vd_seed, {static_cast<std::uint64_t>(
                                                  round)}))
                    .disjunction;
            cuts.push_back(generate_cut(*task.test, vd2, again.x).cut);
          }
          rec.gen_time = seconds_since(t_gen);
          rec.disj_bound_vd = disjunctive_bound(*task.test, vd);
          break;
        }
        case Method::kPdc: {
          cuts.push_back(farkas_pdi(task.bundle->data.certificate,
                                    task.bundle->data.disjunction,
                                    *task.test));
          rec.gen_time = seconds_since(t_gen);
          break;
        }
        case Method::kSpdc: {
          if (task.element == Element::kObjective) {
            // Objective perturbations keep the plain parametric cut
            // supporting, so the strengthened generator has nothing to do.
            rec.status = RunStatus::kSkipped;
            rec.note = "--";
            rows.push_back(std::move(rec));
            continue;
          }
          try {
            StrongPdiResult strong = strong_pdi(
                *task.base, *task.test, task.bundle->data.disjunction,
                task.bundle->data.certificate, task.bundle->data.bases);
            cuts.push_back(strong.cut);
          } catch (const PreconditionError&) {
            // No stored basis survived: regenerate on the test instance
            // over the same disjunction, as the error directs.
            const LpSolution relax = solve_lp(
                task.test->rows, task.test->rhs, task.test->objective);
            if (relax.status != LpStatus::kOptimal) throw;
            cuts.push_back(generate_cut(*task.test,
                                        task.bundle->data.disjunction,
                                        relax.x)
                               .cut);
            rec.note = "fresh fallback (no surviving basis)";
          }
          rec.gen_time = seconds_since(t_gen);
          break;
        }
      }
      if (method == Method::kPdc || method == Method::kSpdc) {
        if (!pd_bound_error.empty()) {
          throw Error("bundle disjunction bound failed: " + pd_bound_error);
        }
        rec.disj_bound_pd = pd_bound;
      }

      BranchAndCutResult bc =
          method == Method::kDefault && bc_default
              ? *bc_default
              : run_branch_and_cut(*task.test, cuts, limits, known_opt);
      rec.lp_bound = bc.lp_bound;
      rec.cut_bound = bc.cut_bound;
      rec.root_bound = bc.root_bound;
      rec.ip_opt = bc.ip_opt;
      rec.nodes = bc.nodes;
      rec.root_time = rec.gen_time + bc.root_time;
      rec.total_time = rec.gen_time + bc.total_time;
      rec.status = bc.status;
      validate_sandwich(rec);
    } catch (const std::exception& e) {
      rec.status = RunStatus::kError;
      rec.note = e.what();
    }
    rows.push_back(std::move(rec));
  }
  return rows;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;

  std::vector<Instance> bases;
  bases.reserve(config.base_instances.size());
  for (const std::string& path : config.base_instances) {
    bases.push_back(load_instance(path));
  }

  // One bundle per (base, terms): generated on the base instance and shared
  // by every parametric row of the sweep.
  std::vector<std::map<int, Bundle>> bundles(bases.size());
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    for (int d : config.terms) {
      Bundle bundle;
      try {
        const LpSolution relax =
            solve_lp(bases[bi].rows, bases[bi].rhs, bases[bi].objective);
        if (relax.status != LpStatus::kOptimal) {
          throw PreconditionError("base LP relaxation unsolved");
        }
        const std::uint64_t pd_seed = derive_seed(
            config.seed, {0xBD15ULL, bi, static_cast<std::uint64_t>(d)});
        Disjunction disj =
            build_partial_bnb_disjunction(bases[bi], d, pd_seed).disjunction;
        GeneratedCut gen = generate_cut(bases[bi], disj, relax.x);
        bundle.data = make_bundle(bases[bi], disj, gen, relax.x);
      } catch (const std::exception& e) {
        bundle.error = e.what();
      }
      bundles[bi].emplace(d, std::move(bundle));
    }
  }

  // Perturbed families, then one task per (test instance, term count).
  std::vector<std::vector<Instance>> families;
  std::vector<TaskInput> tasks;
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    for (std::size_t ei = 0; ei < config.elements.size(); ++ei) {
      for (std::size_t di = 0; di < config.degrees.size(); ++di) {
        PerturbationSpec spec;
        spec.element = config.elements[ei];
        spec.degree = config.degrees[di];
        spec.count = config.count_per_family;
        spec.max_attempts = config.max_attempts;
        spec.seed = derive_seed(config.seed, {0x7E57, bi, ei, di});
        TestSet family = make_test_set(bases[bi], spec);
        families.push_back(std::move(family.instances));
        const std::vector<Instance>& tests = families.back();
        for (std::size_t ti = 0; ti < tests.size(); ++ti) {
          for (int d : config.terms) {
            TaskInput task;
            task.base = &bases[bi];
            task.test = &tests[ti];
            task.bundle = &bundles[bi].at(d);
            task.element = config.elements[ei];
            task.degree = config.degrees[di];
            task.terms = d;
            task.vd_seed = derive_seed(
                config.seed,
                {0xFD15ULL, bi, ei, di, ti, static_cast<std::uint64_t>(d)});
            tasks.push_back(task);
          }
        }
      }
    }
  }

  std::vector<std::vector<RunRecord>> slots(tasks.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      slots[i] = run_task(config, tasks[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        slots[i] = run_task(config, tasks[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& rows : slots) {
    for (auto& rec : rows) {
      if (rec.status == RunStatus::kError) ++result.failures;
      result.records.push_back(std::move(rec));
    }
  }
  if (!config.out_dir.empty()) {
    write_experiment_outputs(config, result);
  }
  return result;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_double(*v) : "--";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

constexpr const char* kCsvHeader =
    "instance,method,element,degree,terms,lpBound,cutBound,rootBound,"
    "disjBoundVD,disjBoundPD,ipOpt,genTime,rootTime,totalTime,nodes,status,"
    "note";

} // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const RunRecord& r : records) {
    out << csv_escape(r.instance_id) << "," << to_string(r.method) << ","
        << to_string(r.element) << "," << fmt_double(r.degree) << ","
        << r.terms << "," << fmt_double(r.lp_bound) << ","
        << fmt_double(r.cut_bound) << "," << fmt_double(r.root_bound) << ","
        << fmt_opt(r.disj_bound_vd) << "," << fmt_opt(r.disj_bound_pd) << ","
        << fmt_opt(r.ip_opt) << "," << fmt_double(r.gen_time) << ","
        << fmt_double(r.root_time) << "," << fmt_double(r.total_time) << ","
        << r.nodes << "," << to_string(r.status) << ","
        << csv_escape(r.note) << "\n";
  }
  return out.str();
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty CSV");
  }
  if (line != kCsvHeader) {
    throw ParseError("unexpected CSV header");
  }
  auto opt_field = [](const std::string& f) -> std::optional<double> {
    if (f == "--") return std::nullopt;
    return std::stod(f);
  };
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 17) {
      throw ParseError("CSV row with " + std::to_string(f.size()) +
                       " fields");
    }
    RunRecord r;
    r.instance_id = f[0];
    r.method = method_from_string(f[1]);
    r.element = element_from_string(f[2]);
    r.degree = std::stod(f[3]);
    r.terms = std::stoi(f[4]);
    r.lp_bound = std::stod(f[5]);
    r.cut_bound = std::stod(f[6]);
    r.root_bound = std::stod(f[7]);
    r.disj_bound_vd = opt_field(f[8]);
    r.disj_bound_pd = opt_field(f[9]);
    r.ip_opt = opt_field(f[10]);
    r.gen_time = std::stod(f[11]);
    r.root_time = std::stod(f[12]);
    r.total_time = std::stod(f[13]);
    r.nodes = std::stol(f[14]);
    r.status = run_status_from_string(f[15]);
    r.note = f[16];
    records.push_back(std::move(r));
  }
  return records;
}

void write_experiment_outputs(const ExperimentConfig& config,
                              const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  // Group per (element, degree, terms).
  std::map<std::string, std::vector<RunRecord>> groups;
  for (const RunRecord& r : result.records) {
    char deg[32];
    std::snprintf(deg, sizeof(deg), "%g", r.degree);
    const std::string key = std::string("results_") + to_string(r.element) +
                            "_" + deg + "_" + std::to_string(r.terms);
    groups[key].push_back(r);
  }
  json manifest;
  manifest["failures"] = result.failures;
  manifest["rows"] = result.records.size();
  json files = json::array();
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(),
              [](const RunRecord& a, const RunRecord& b) {
                if (a.instance_id != b.instance_id)
                  return a.instance_id < b.instance_id;
                return to_string(a.method) < std::string(to_string(b.method));
              });
    const std::string file = key + ".csv";
    std::ofstream out(fs::path(config.out_dir) / file, std::ios::binary);
    out << records_to_csv(rows);
    files.push_back(file);
  }
  manifest["files"] = files;
  std::ofstream mf(fs::path(config.out_dir) / "manifest.json",
                   std::ios::binary);
  mf << manifest.dump(2) << "\n";
}

PerformanceProfile performance_profile(const std::vector<RunRecord>& records,
                                       Method baseline,
                                       double min_default_time) {
  PerformanceProfile profile;
  struct Key {
    std::string instance;
    int terms;
    bool operator<(const Key& o) const {
      return std::tie(instance, terms) < std::tie(o.instance, o.terms);
    }
  };
  std::map<Key, std::map<Method, const RunRecord*>> by_key;
  for (const RunRecord& r : records) {
    by_key[{r.instance_id, r.terms}][r.method] = &r;
  }

  std::map<Method, std::vector<double>> rel_values;
  std::vector<double> best_values;
  int eligible = 0;
  for (const auto& [key, methods] : by_key) {
    const auto base_it = methods.find(baseline);
    if (base_it == methods.end() ||
        base_it->second->status != RunStatus::kOptimal) {
      continue;
    }
    if (min_default_time >= 0.0) {
      const auto def_it = methods.find(Method::kDefault);
      if (def_it == methods.end() ||
          def_it->second->status != RunStatus::kOptimal ||
          def_it->second->total_time < min_default_time) {
        continue;
      }
    }
    // "Solved by all methods": skipped rows are exempt, errors and time
    // limits disqualify the key.
    bool all_solved = true;
    for (const auto& [m, rec] : methods) {
      if (rec->status == RunStatus::kSkipped) continue;
      if (rec->status != RunStatus::kOptimal) all_solved = false;
    }
    if (!all_solved) continue;

    ++eligible;
    const double t_base = std::max(base_it->second->total_time, 1e-12);
    double t_best = t_base;
    for (const auto& [m, rec] : methods) {
      if (rec->status != RunStatus::kOptimal) continue;
      t_best = std::min(t_best, rec->total_time);
    }
    const double best_rel = (t_best - t_base) / t_base;
    for (const auto& [m, rec] : methods) {
      if (m == baseline || rec->status != RunStatus::kOptimal) continue;
      const double rel = (rec->total_time - t_base) / t_base;
      rel_values[m].push_back(rel);
      if (best_rel > rel + 1e-12) {
        throw std::logic_error("Best profile failed to dominate");
      }
    }
    best_values.push_back(best_rel);
  }

  profile.instances = eligible;
  if (eligible == 0) {
    profile.warning = "no common solved instances";
    return profile;
  }
  auto to_curve = [](std::vector<double>& vals) {
    std::sort(vals.begin(), vals.end());
    std::vector<ProfilePoint> curve;
    curve.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      curve.push_back(
          {vals[i], static_cast<double>(i + 1) / static_cast<double>(vals.size())});
    }
    return curve;
  };
  for (auto& [m, vals] : rel_values) {
    profile.curves[to_string(m)] = to_curve(vals);
  }
  profile.curves["Best"] = to_curve(best_values);
  return profile;
}

std::string summary_to_json(const std::vector<RunRecord>& records) {
  struct Group {
    int rows = 0;
    double cut_gap = 0.0;
    double root_gap = 0.0;
    double disj_gap = 0.0;
    int disj_rows = 0;
    double root_time = 0.0;
  };
  std::map<std::string, Group> groups;
  for (const RunRecord& r : records) {
    if (r.status != RunStatus::kOptimal || !r.ip_opt) continue;
    char key[96];
    std::snprintf(key, sizeof(key), "%s|%g|%d|%s", to_string(r.element),
                  r.degree, r.terms, to_string(r.method));
    Group& g = groups[key];
    ++g.rows;
    g.cut_gap += gap_closed(r.lp_bound, r.cut_bound, *r.ip_opt);
    g.root_gap += gap_closed(r.lp_bound, r.root_bound, *r.ip_opt);
    g.root_time += r.root_time;
    const std::optional<double> disj_bound =
        r.method == Method::kVpc ? r.disj_bound_vd : r.disj_bound_pd;
    if (disj_bound) {
      g.disj_gap += gap_closed(r.lp_bound, *disj_bound, *r.ip_opt);
      ++g.disj_rows;
    }
  }
  json out = json::array();
  for (const auto& [key, g] : groups) {
    std::istringstream parts(key);
    std::string element, degree, terms, method;
    std::getline(parts, element, '|');
    std::getline(parts, degree, '|');
    std::getline(parts, terms, '|');
    std::getline(parts, method, '|');
    json row;
    row["element"] = element;
    row["degree"] = std::stod(degree);
    row["terms"] = std::stoi(terms);
    row["method"] = method;
    row["rows"] = g.rows;
    row["meanGapClosedCutsOnly"] = g.cut_gap / g.rows;
    row["meanGapClosedRoot"] = g.root_gap / g.rows;
    if (g.disj_rows > 0) {
      row["meanGapClosedDisjunction"] = g.disj_gap / g.disj_rows;
    }
    row["meanRootTime"] = g.root_time / g.rows;
    out.push_back(row);
  }
  return out.dump(2);
}

std::string profile_to_json(const PerformanceProfile& profile) {
  json doc;
  doc["instances"] = profile.instances;
  if (!profile.warning.empty()) doc["warning"] = profile.warning;
  json curves = json::object();
  for (const auto& [name, curve] : profile.curves) {
    json points = json::array();
    for (const ProfilePoint& p : curve) {
      points.push_back({{"value", p.value}, {"fraction", p.fraction}});
    }
    curves[name] = points;
  }
  doc["curves"] = curves;
  return doc.dump(2);
}

} // namespace pdi
