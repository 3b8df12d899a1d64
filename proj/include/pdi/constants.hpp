// constants.hpp
// Global numeric tolerances shared across the library.
#ifndef PDI_CONSTANTS_HPP
#define PDI_CONSTANTS_HPP

namespace pdi {

/// Feasibility tolerance: a row i is satisfied at x when a_i.x >= b_i - kFeasTol.
inline constexpr double kFeasTol = 1e-7;

/// Equality tolerance for comparing computed scalars/vectors (duality gaps,
/// certificate identities, support checks).
inline constexpr double kEqTol = 1e-6;

/// Integrality tolerance: x_j is integral when |x_j - round(x_j)| <= kIntTol.
inline constexpr double kIntTol = 1e-6;

/// Threshold below which a pivot element is treated as zero.
inline constexpr double kPivotTol = 1e-9;

/// Dual feasibility tolerance (reduced-cost sign checks).
inline constexpr double kDualTol = 1e-9;

/// Default upper bound assigned to variables with no stated upper bound.
inline constexpr double kDefaultUpperBound = 1e6;

} // namespace pdi

#endif
