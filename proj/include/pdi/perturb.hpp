// perturb.hpp
// Randomized instance perturbation: the degree metric (max of angle change
// and relative norm change), the halving-epsilon random-walk perturbation
// search, and assembly of perturbed test families.
#ifndef PDI_PERTURB_HPP
#define PDI_PERTURB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pdi/instance.hpp"

namespace pdi {

/// SplitMix64 stream. Chosen over the standard-library engines because the
/// draw sequence must be identical on every platform; golden families are
/// pinned by seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform index in [0, n).
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t state_;
};

/// Mixes values into a derived stream seed (order-sensitive).
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts);

/// Perturbation degree between two equal-length vectors: the larger of the
/// angle between them and the relative change in norm. Zero-norm inputs are
/// rejected; the cosine is clamped to [-1, 1] before the arccos.
double find_degree(const Vector& u, const Vector& u_new);

/// Randomly perturbs one coordinate at a time (uniform coordinate, uniform
/// step in [-eps, eps]) until the degree reaches `theta`, then returns the
/// last iterate strictly below it; eps starts at 1 and halves (down to 1e-6)
/// whenever a level fails to produce an iterate different from `u`.
/// Returns nullopt when no level produced one. Whenever a vector is
/// returned it satisfies find_degree(u, v) < theta and v != u.
std::optional<Vector> find_perturbation(const Vector& u, double theta,
                                        Rng& rng);

struct PerturbationSpec {
  Element element = Element::kRhs;
  double degree = 0.5;
  int count = 5;
  int max_attempts = 1000;
  std::uint64_t seed = 0;
};

struct TestSetStats {
  int attempts = 0;
  int rejected_infeasible = 0;
  int not_found = 0;
  std::vector<double> degrees_achieved;  // one per accepted instance
};

struct TestSet {
  std::vector<Instance> instances;
  TestSetStats stats;
};

/// Flattened view of the element that perturbations target: the structural
/// coefficient block (row-major), the structural rhs, or the objective.
Vector element_values(const Instance& inst, Element element);

/// Draws up to `spec.count` perturbed instances of `inst`: each accepted
/// instance passes find_perturbation and has a feasible (and, by its bound
/// rows, bounded) LP relaxation. Stops after max_attempts draws. Same seed,
/// same family, bit for bit.
TestSet make_test_set(const Instance& inst, const PerturbationSpec& spec);

} // namespace pdi

#endif
