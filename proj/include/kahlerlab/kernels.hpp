#pragma once

#include <complex>
#include <cstddef>

namespace kl::kernels {

using cplx = std::complex<double>;

// Pointwise r x r matrix kernels over `pts` row-major matrices stored contiguously.
// `out` must not alias the inputs. The serial namespace is the reference used by the
// tests; the parallel one produces bitwise identical results.
#define KL_KERNEL_DECLS                                                                        \
  void matmul(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r);                \
  void matmul_acc(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r, cplx alpha); \
  void adjoint(const cplx* a, cplx* out, std::size_t pts, int r);                              \
  void h_adjoint(const cplx* kinv, const cplx* a, const cplx* k, cplx* out, std::size_t pts,   \
                 int r);                                                                       \
  void trace(const cplx* a, cplx* out, std::size_t pts, int r);                                \
  void trace_product(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r);         \
  cplx deterministic_sum(const cplx* v, std::size_t count);

namespace serial {
KL_KERNEL_DECLS
}
namespace parallel {
KL_KERNEL_DECLS
}

#undef KL_KERNEL_DECLS

using parallel::adjoint;
using parallel::deterministic_sum;
using parallel::h_adjoint;
using parallel::matmul;
using parallel::matmul_acc;
using parallel::trace;
using parallel::trace_product;

// Reduction block length; sums are compensated inside a block and combined in order.
inline constexpr std::size_t kSumBlock = 4096;

// Largest supported bundle rank.
inline constexpr int kMaxRank = 16;

}  // namespace kl::kernels
