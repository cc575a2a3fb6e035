#include "kahlerlab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "kahlerlab/error.hpp"

namespace kl::spectral {

namespace {

struct PlanKey {
  std::vector<int> extents;
  std::size_t comps;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(extents, comps, sign) < std::tie(o.extents, o.comps, o.sign);
  }
};

// Plans are created once per shape and executed on arbitrary (unaligned) buffers.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Chart& c, std::size_t comps, int sign, cplx* buffer) {
    PlanKey key{{}, comps, sign};
    for (int d = 0; d < c.real_dims(); ++d) key.extents.push_back(c.extent(d));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const int rank = c.real_dims();
    std::vector<fftw_iodim> dims(rank);
    int stride = static_cast<int>(comps);
    for (int d = rank - 1; d >= 0; --d) {
      dims[d].n = key.extents[d];
      dims[d].is = stride;
      dims[d].os = stride;
      stride *= key.extents[d];
    }
    fftw_iodim many{static_cast<int>(comps), 1, 1};
    auto* data = reinterpret_cast<fftw_complex*>(buffer);
    fftw_plan plan = fftw_plan_guru_dft(rank, dims.data(), 1, &many, data, data, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(const Chart& c, cplx* data, std::size_t comps, int sign) {
  fftw_plan plan = cache().get(c, comps, sign, data);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

// Angular wavenumbers for one direction; the Nyquist mode is dropped for first derivatives.
std::vector<double> wavenumbers(const Chart& c, int dir) {
  const int N = c.extent(dir);
  std::vector<double> k(N);
  for (int j = 0; j < N; ++j) {
    const int m = (j < N / 2) ? j : (j == N / 2 ? 0 : j - N);
    k[j] = 2.0 * std::numbers::pi * m / c.period(dir);
  }
  return k;
}

}  // namespace

void apply(const Chart& c, const cplx* in, std::size_t comps, const std::vector<Derivative>& derivs,
           const std::vector<cplx*>& outs) {
  if (derivs.size() != outs.size()) throw InvalidArgument("spectral::apply: size mismatch");
  if (derivs.empty()) return;
  const std::size_t pts = c.points();
  const std::size_t total = pts * comps;
  std::vector<cplx> work(in, in + total);
  execute(c, work.data(), comps, FFTW_FORWARD);

  const int dims = c.real_dims();
  std::vector<std::vector<double>> k(dims);
  for (int d = 0; d < dims; ++d) k[d] = wavenumbers(c, d);
  std::vector<int> extents(dims);
  for (int d = 0; d < dims; ++d) extents[d] = c.extent(d);
  const double norm = 1.0 / static_cast<double>(pts);

  for (std::size_t s = 0; s < derivs.size(); ++s) {
    const Derivative dv = derivs[s];
    int dx = 0, dy = 0;
    if (dv.kind == Kind::Real) {
      if (dv.index < 0 || dv.index >= dims) throw InvalidArgument("spectral: direction out of range");
      dx = dv.index;
    } else {
      if (dv.index < 1 || dv.index > c.n()) throw InvalidArgument("spectral: axis out of range");
      dx = 2 * (dv.index - 1);
      dy = dx + 1;
    }
    cplx* out = outs[s];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ip = 0; ip < static_cast<std::ptrdiff_t>(pts); ++ip) {
      std::size_t rest = static_cast<std::size_t>(ip);
      int jx = 0, jy = 0;
      for (int d = dims - 1; d >= 0; --d) {
        const int j = static_cast<int>(rest % extents[d]);
        rest /= extents[d];
        if (d == dx) jx = j;
        if (d == dy) jy = j;
      }
      cplx mult;
      switch (dv.kind) {
        case Kind::Real: mult = cplx(0.0, k[dx][jx]); break;
        case Kind::Holo: mult = cplx(k[dy][jy], k[dx][jx]) * 0.5; break;
        case Kind::Anti: mult = cplx(-k[dy][jy], k[dx][jx]) * 0.5; break;
      }
      mult *= norm;
      const std::size_t base = static_cast<std::size_t>(ip) * comps;
      for (std::size_t q = 0; q < comps; ++q) out[base + q] = work[base + q] * mult;
    }
    execute(c, out, comps, FFTW_BACKWARD);
  }
}

void inverse_unnormalized(const Chart& c, cplx* data, std::size_t comps) {
  execute(c, data, comps, FFTW_BACKWARD);
}

}  // namespace kl::spectral
