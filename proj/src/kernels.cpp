#include "kahlerlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kl::kernels {

namespace {

inline void matmul_at(const cplx* a, const cplx* b, cplx* o, int r) {
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < r; ++k) s += a[i * r + k] * b[k * r + j];
      o[i * r + j] = s;
    }
}

inline void matmul_acc_at(const cplx* a, const cplx* b, cplx* o, int r, cplx alpha) {
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < r; ++k) s += a[i * r + k] * b[k * r + j];
      o[i * r + j] += alpha * s;
    }
}

inline void adjoint_at(const cplx* a, cplx* o, int r) {
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) o[i * r + j] = std::conj(a[j * r + i]);
}

// kinv * a^dagger * k
inline void h_adjoint_at(const cplx* kinv, const cplx* a, const cplx* k, cplx* o, int r) {
  cplx tmp[kMaxRank * kMaxRank];
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cplx s = 0.0;
      for (int l = 0; l < r; ++l) s += std::conj(a[l * r + i]) * k[l * r + j];
      tmp[i * r + j] = s;
    }
  matmul_at(kinv, tmp, o, r);
}

inline cplx trace_at(const cplx* a, int r) {
  cplx s = 0.0;
  for (int i = 0; i < r; ++i) s += a[i * r + i];
  return s;
}

inline cplx trace_product_at(const cplx* a, const cplx* b, int r) {
  cplx s = 0.0;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) s += a[i * r + k] * b[k * r + i];
  return s;
}

// Neumaier-compensated sum of one block, real and imaginary parts separately.
inline cplx block_sum(const cplx* v, std::size_t count) {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  };
  for (std::size_t i = 0; i < count; ++i) {
    add(sr, cr, v[i].real());
    add(si, ci, v[i].imag());
  }
  return {sr + cr, si + ci};
}

inline cplx combine(const std::vector<cplx>& partial) { return block_sum(partial.data(), partial.size()); }

}  // namespace

#define KL_POINTWISE(BODY)                                                          \
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pts); ++p) {          \
    const std::size_t o = static_cast<std::size_t>(p) * static_cast<std::size_t>(r * r); \
    BODY;                                                                           \
  }

#define KL_TRACE_LOOP(BODY)                                                         \
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pts); ++p) {          \
    const std::size_t o = static_cast<std::size_t>(p) * static_cast<std::size_t>(r * r); \
    out[p] = BODY;                                                                  \
  }

namespace serial {

void matmul(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r) {
  KL_POINTWISE(matmul_at(a + o, b + o, out + o, r))
}
void matmul_acc(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r, cplx alpha) {
  KL_POINTWISE(matmul_acc_at(a + o, b + o, out + o, r, alpha))
}
void adjoint(const cplx* a, cplx* out, std::size_t pts, int r) { KL_POINTWISE(adjoint_at(a + o, out + o, r)) }
void h_adjoint(const cplx* kinv, const cplx* a, const cplx* k, cplx* out, std::size_t pts, int r) {
  KL_POINTWISE(h_adjoint_at(kinv + o, a + o, k + o, out + o, r))
}
void trace(const cplx* a, cplx* out, std::size_t pts, int r) { KL_TRACE_LOOP(trace_at(a + o, r)) }
void trace_product(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r) {
  KL_TRACE_LOOP(trace_product_at(a + o, b + o, r))
}
cplx deterministic_sum(const cplx* v, std::size_t count) {
  const std::size_t blocks = (count + kSumBlock - 1) / kSumBlock;
  std::vector<cplx> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t start = b * kSumBlock;
    partial[b] = block_sum(v + start, std::min(kSumBlock, count - start));
  }
  return combine(partial);
}

}  // namespace serial

namespace parallel {

void matmul(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r) {
#pragma omp parallel for schedule(static)
  KL_POINTWISE(matmul_at(a + o, b + o, out + o, r))
}
void matmul_acc(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r, cplx alpha) {
#pragma omp parallel for schedule(static)
  KL_POINTWISE(matmul_acc_at(a + o, b + o, out + o, r, alpha))
}
void adjoint(const cplx* a, cplx* out, std::size_t pts, int r) {
#pragma omp parallel for schedule(static)
  KL_POINTWISE(adjoint_at(a + o, out + o, r))
}
void h_adjoint(const cplx* kinv, const cplx* a, const cplx* k, cplx* out, std::size_t pts, int r) {
#pragma omp parallel for schedule(static)
  KL_POINTWISE(h_adjoint_at(kinv + o, a + o, k + o, out + o, r))
}
void trace(const cplx* a, cplx* out, std::size_t pts, int r) {
#pragma omp parallel for schedule(static)
  KL_TRACE_LOOP(trace_at(a + o, r))
}
void trace_product(const cplx* a, const cplx* b, cplx* out, std::size_t pts, int r) {
#pragma omp parallel for schedule(static)
  KL_TRACE_LOOP(trace_product_at(a + o, b + o, r))
}
cplx deterministic_sum(const cplx* v, std::size_t count) {
  const std::size_t blocks = (count + kSumBlock - 1) / kSumBlock;
  std::vector<cplx> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t start = static_cast<std::size_t>(b) * kSumBlock;
    partial[b] = block_sum(v + start, std::min(kSumBlock, count - start));
  }
  return combine(partial);
}

}  // namespace parallel

}  // namespace kl::kernels
