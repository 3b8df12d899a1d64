// kernels.hpp
// Dense vector kernels used by the LP pivoting and certificate arithmetic.
//
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// active variant is selected once at startup from CPUID (override with the
// PDI_KERNEL_ISA environment variable, values "scalar" or "avx2").
//
// All variants are bit-identical by construction: reductions use a fixed
// 4-lane blocked accumulation order in both implementations, and no FMA
// contraction is used. Equivalence is enforced by tests, so results do not
// depend on the machine the binary lands on.
#ifndef PDI_KERNELS_HPP
#define PDI_KERNELS_HPP

#include <cstddef>
#include <string>

namespace pdi::kernels {

/// Sum of x[i]*y[i], 4-lane blocked reduction order.
double dot(const double* x, const double* y, std::size_t n);

/// y[i] += a * x[i].
void axpy(double a, const double* x, double* y, std::size_t n);

/// x[i] *= a.
void scale(double a, double* x, std::size_t n);

/// Index of the entry with the largest |x[i]| (lowest index wins ties);
/// returns n when n == 0.
std::size_t iamax(const double* x, std::size_t n);

/// Name of the active variant ("scalar" or "avx2").
const std::string& active_isa();

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);
#if defined(__x86_64__)
bool avx2_available();
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);
#endif
} // namespace detail

} // namespace pdi::kernels

#endif
