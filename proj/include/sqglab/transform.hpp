#pragma once

#include "sqglab/field.hpp"

namespace sqg {

// Transform convention (used everywhere):
//   coeff(k) = (1/n^2) sum_j f(x_j) exp(-i kappa.x_j),
//   f(x_j)   =         sum_k coeff(k) exp(+i kappa.x_j),
// with kappa = pi*k/l and nodes x_j = -l + j*dx. Parseval then reads
//   sum |f|^2 dx^2 = (2l)^2 sum |coeff|^2.

SpectralField to_spectral(const RealField& f);
RealField to_real(const SpectralField& F);

/// Spectral derivative (i*kappa_j multiplier); Nyquist modes of each
/// derivative are zeroed so the result of a real field stays real.
VectorField gradient(const SpectralField& F);

/// 2/3-rule truncation: modes with max(|k1|,|k2|) > n/3 are zeroed.
SpectralField dealias(const SpectralField& F);
void dealias_inplace(SpectralField& F);

double parseval_physical(const RealField& f);   // sum |f|^2 dx^2
double parseval_spectral(const SpectralField& F); // (2l)^2 sum |coeff|^2

} // namespace sqg
