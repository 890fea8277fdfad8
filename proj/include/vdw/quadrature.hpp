#pragma once

// Cumulative Filon-Simpson quadrature of e^{-i omega s} g(s) on a uniform
// sample grid: g is interpolated by quadratics on panels of two intervals,
// the oscillatory factor is integrated exactly.  For omega = 0 the values at
// even nodes coincide with composite Simpson.

#include <functional>
#include <span>
#include <vector>

#include "vdw/spectral.hpp"

namespace vdw {

// Returns I_j = int_0^{t_j} e^{-i omega s} g(s) ds, t_j = j h, j = 0..n-1.
std::vector<cplx> cumulative_filon(std::span<const cplx> g, double h, double omega);

// Fieldwise version with a mode-dependent frequency omega(k).
std::vector<SpectralField> cumulative_filon(std::span<const SpectralField> g, double h,
                                            const std::function<double(int)>& omega);
// Fieldwise version with a common frequency.
std::vector<SpectralField> cumulative_filon(std::span<const SpectralField> g, double h, double omega);

}  // namespace vdw
