#pragma once

// Closed-form functions of 2x2 complex matrices, used to apply the stiff
// linear part of the systems exactly mode by mode.

#include <array>
#include <complex>

namespace vdw {

using cplx = std::complex<double>;

// Row-major {a, b, c, d} for [[a, b], [c, d]].
using Mat2 = std::array<cplx, 4>;

Mat2 mat2_identity();
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, Mat2 a);
Mat2 operator+(Mat2 a, const Mat2& b);

// phi_0(z) = e^z, phi_1(z) = (e^z - 1)/z, phi_2(z) = (e^z - 1 - z)/z^2.
cplx phi(int j, cplx z);
// d/dz phi_j(z)
cplx phi_prime(int j, cplx z);

// phi_j(M) through the Newton form f(l1) I + f[l1, l2](M - l1 I), where the
// divided difference falls back to f'((l1+l2)/2) for nearly equal
// eigenvalues (|l1 - l2| < 1e-8 * max(1, |l|)).
Mat2 phi_matrix(int j, const Mat2& m);

// Eigenvalues, the small-magnitude one computed as det / large one.
std::array<cplx, 2> eigenvalues(const Mat2& m);

}  // namespace vdw
