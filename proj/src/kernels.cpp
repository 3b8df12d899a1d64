// kernels.cpp
// Scalar reference kernels and the runtime dispatch table.
#include "pdi/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace pdi::kernels {

namespace detail {

// Reference dot product. The 4 accumulators mirror the AVX2 lane layout so
// both variants perform the same additions in the same order.
double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += x[i] * y[i];
    acc1 += x[i + 1] * y[i + 1];
    acc2 += x[i + 2] * y[i + 2];
    acc3 += x[i + 3] * y[i + 3];
  }
  double sum = ((acc0 + acc1) + (acc2 + acc3));
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] *= a;
  }
}

} // namespace detail

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  std::string isa;
};

Dispatch make_dispatch() {
  Dispatch d{&detail::dot_scalar, &detail::axpy_scalar, &detail::scale_scalar,
             "scalar"};
  bool want_avx2 = true;
  if (const char* env = std::getenv("PDI_KERNEL_ISA")) {
    want_avx2 = (std::string(env) == "avx2");
    if (std::string(env) == "scalar") {
      return d;
    }
  }
#if defined(__x86_64__)
  if (want_avx2 && detail::avx2_available()) {
    d.dot = &detail::dot_avx2;
    d.axpy = &detail::axpy_avx2;
    d.scale = &detail::scale_avx2;
    d.isa = "avx2";
  }
#endif
  return d;
}

const Dispatch& dispatch() {
  static const Dispatch d = make_dispatch();
  return d;
}

} // namespace

double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().axpy(a, x, y, n);
}

void scale(double a, double* x, std::size_t n) {
  dispatch().scale(a, x, n);
}

std::size_t iamax(const double* x, std::size_t n) {
  std::size_t best = n;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

const std::string& active_isa() { return dispatch().isa; }

} // namespace pdi::kernels
