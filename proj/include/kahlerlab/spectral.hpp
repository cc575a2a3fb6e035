#pragma once

#include <vector>

#include "kahlerlab/lattice.hpp"

namespace kl::spectral {

enum class Kind { Real, Holo, Anti };

struct Derivative {
  Kind kind;
  int index;  // real direction for Kind::Real, complex axis (1-based) otherwise
};

// Differentiates `comps` interleaved components (component index fastest) with one
// forward transform shared by all requested derivatives. outs[k] receives derivative k.
void apply(const Chart& chart, const cplx* in, std::size_t comps,
           const std::vector<Derivative>& derivs, const std::vector<cplx*>& outs);

// Unnormalized inverse transform in place: f(x_j) = sum_k F[k] exp(+2 pi i k.j / N).
void inverse_unnormalized(const Chart& chart, cplx* data, std::size_t comps);

}  // namespace kl::spectral
