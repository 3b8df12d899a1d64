// perturb.cpp
#include "pdi/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/kernels.hpp"
#include "pdi/simplex.hpp"

namespace pdi {

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

std::size_t Rng::uniform_index(std::size_t n) {
  return static_cast<std::size_t>(next_u64() % n);
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts) {
  Rng mixer(base);
  std::uint64_t out = mixer.next_u64();
  for (std::uint64_t p : parts) {
    Rng step(out ^ (p + 0x517cc1b727220a95ULL));
    out = step.next_u64();
  }
  return out;
}

double find_degree(const Vector& u, const Vector& u_new) {
  if (u.size() != u_new.size()) {
    throw DimensionError("find_degree: vectors differ in length");
  }
  const std::size_t n = u.size();
  const double norm_u = std::sqrt(kernels::dot(u.data(), u.data(), n));
  const double norm_v =
      std::sqrt(kernels::dot(u_new.data(), u_new.data(), n));
  if (norm_u == 0.0 || norm_v == 0.0) {
    throw PreconditionError("find_degree: zero-norm input");
  }
  double cosine = kernels::dot(u.data(), u_new.data(), n) / (norm_u * norm_v);
  cosine = std::clamp(cosine, -1.0, 1.0);
  const double angle_difference = std::acos(cosine);
  const double norm_difference = std::fabs((norm_u - norm_v) / norm_u);
  return std::max(angle_difference, norm_difference);
}

namespace {

// Degree for loop control; a random walk that lands exactly on the zero
// vector counts as maximally perturbed rather than erroring out.
double degree_or_huge(const Vector& u, const Vector& v) {
  const double norm_v = std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
  if (norm_v == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return find_degree(u, v);
}

} // namespace

std::optional<Vector> find_perturbation(const Vector& u, double theta,
                                        Rng& rng) {
  if (theta <= 0.0) {
    throw PreconditionError("find_perturbation: theta must be positive");
  }
  const double norm_u = std::sqrt(kernels::dot(u.data(), u.data(), u.size()));
  if (u.empty() || norm_u == 0.0) {
    throw PreconditionError("find_perturbation: zero input vector");
  }
  // Safety valve for degenerate parameter combinations; unreachable for the
  // degree ranges this library targets (theta within a few radians).
  const long iteration_cap = 4'000'000;

  std::optional<Vector> v_final;
  for (double eps = 1.0; eps >= 1e-6 && !v_final; eps /= 2.0) {
    Vector v_new = u;
    std::optional<Vector> v_prev;
    long iters = 0;
    while (degree_or_huge(u, v_new) < theta) {
      if (++iters > iteration_cap) {
        v_prev.reset();  // treat this epsilon level as failed
        break;
      }
      v_prev = v_new;
      const std::size_t i = rng.uniform_index(u.size());
      v_new[i] += rng.uniform(-eps, eps);
    }
    if (v_prev && *v_prev != u) {
      v_final = std::move(v_prev);
    }
  }
  if (v_final) {
    // Contract enforced on every return.
    if (!(find_degree(u, *v_final) < theta) || *v_final == u) {
      throw NumericalError("find_perturbation violated its own contract");
    }
  }
  return v_final;
}

Vector element_values(const Instance& inst, Element element) {
  switch (element) {
    case Element::kMatrix: {
      const int m = inst.num_structural();
      const int n = inst.num_vars;
      Vector flat(static_cast<std::size_t>(m) * n);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          flat[static_cast<std::size_t>(i) * n + j] = inst.rows(i, j);
        }
      }
      return flat;
    }
    case Element::kRhs:
      return Vector(inst.rhs.begin(),
                    inst.rhs.begin() + inst.num_structural());
    case Element::kObjective:
      return inst.objective;
  }
  throw PreconditionError("unknown element");
}

TestSet make_test_set(const Instance& inst, const PerturbationSpec& spec) {
  if (spec.count < 1) {
    throw PreconditionError("make_test_set: count must be at least 1");
  }
  const Vector base = element_values(inst, spec.element);
  Rng rng(spec.seed);
  TestSet out;
  char deg_buf[32];
  std::snprintf(deg_buf, sizeof(deg_buf), "%g", spec.degree);
  while (static_cast<int>(out.instances.size()) < spec.count &&
         out.stats.attempts < spec.max_attempts) {
    ++out.stats.attempts;
    std::optional<Vector> draw = find_perturbation(base, spec.degree, rng);
    if (!draw) {
      ++out.stats.not_found;
      continue;
    }
    Instance candidate = perturb_element(inst, spec.element, *draw);
    // Admissibility: the LP relaxation must be solvable downstream.
    const LpSolution relax =
        solve_lp(candidate.rows, candidate.rhs, candidate.objective);
    if (relax.status != LpStatus::kOptimal) {
      ++out.stats.rejected_infeasible;
      continue;
    }
    candidate.name = inst.name + "__" + to_string(spec.element) + deg_buf +
                     "_" + std::to_string(out.instances.size());
    out.stats.degrees_achieved.push_back(find_degree(base, *draw));
    out.instances.push_back(std::move(candidate));
  }
  return out;
}

} // namespace pdi
