#pragma once

#include <span>

#include "vdw/spectral.hpp"

namespace vdw::detail {

// Unnormalized DFTs of length in.size():
//   forward:  out[n] = sum_j in[j] e^{-2 pi i j n / N}
//   backward: out[j] = sum_n in[n] e^{+2 pi i j n / N}
void dft_forward(std::span<const cplx> in, std::span<cplx> out);
void dft_backward(std::span<const cplx> in, std::span<cplx> out);

}  // namespace vdw::detail
