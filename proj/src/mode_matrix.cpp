#include "vdw/mode_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "vdw/error.hpp"

namespace vdw {

Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 operator*(cplx s, Mat2 a) {
  for (auto& x : a) x *= s;
  return a;
}

Mat2 operator+(Mat2 a, const Mat2& b) {
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

namespace {

// Taylor series of phi_j: sum_n z^n / (n + j)!
cplx phi_series(int j, cplx z) {
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  cplx term = 1.0 / fact;
  cplx sum = term;
  for (int n = 1; n < 30; ++n) {
    term *= z / static_cast<double>(n + j);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

cplx phi(int j, cplx z) {
  if (j < 0 || j > 2) fail(ErrorCode::invalid_argument, "phi index must be 0, 1 or 2");
  if (j == 0) return std::exp(z);
  if (std::abs(z) < 0.5) return phi_series(j, z);
  const cplx e = std::exp(z);
  if (j == 1) return (e - 1.0) / z;
  return (e - 1.0 - z) / (z * z);
}

cplx phi_prime(int j, cplx z) {
  // phi_j' = phi_{j+1} + ... ; use phi_j'(z) = (phi_{j-1}(z) - j phi_j(z)) / z away from 0.
  if (j == 0) return std::exp(z);
  if (std::abs(z) < 0.5) {
    // derivative of sum z^n/(n+j)!
    double fact = 1.0;
    for (int i = 2; i <= j + 1; ++i) fact *= i;
    cplx term = 1.0 / fact;  // n = 1 coefficient: 1/(1+j)!
    cplx sum = term;
    cplx zn = 1.0;
    double c = 1.0 / fact;
    for (int n = 2; n < 32; ++n) {
      c /= static_cast<double>(n + j);
      zn *= z;
      term = static_cast<double>(n) * c * zn;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (phi(j - 1, z) - static_cast<double>(j) * phi(j, z)) / z;
}

std::array<cplx, 2> eigenvalues(const Mat2& m) {
  const cplx half_tr = 0.5 * (m[0] + m[3]);
  const cplx det = m[0] * m[3] - m[1] * m[2];
  const cplx disc = std::sqrt(half_tr * half_tr - det);
  const cplx a = half_tr + disc, b = half_tr - disc;
  const cplx big = std::abs(a) >= std::abs(b) ? a : b;
  if (std::abs(big) == 0.0) return {0.0, 0.0};
  return {big, det / big};
}

Mat2 phi_matrix(int j, const Mat2& m) {
  const auto [l1, l2] = eigenvalues(m);
  const double scale = std::max({1.0, std::abs(l1), std::abs(l2)});
  const cplx f1 = phi(j, l1);
  cplx dd;
  if (j == 0)
    dd = std::exp(l2) * phi(1, l1 - l2);  // cancellation-free
  else if (std::abs(l1 - l2) < 1e-8 * scale)
    dd = phi_prime(j, 0.5 * (l1 + l2));
  else
    dd = (f1 - phi(j, l2)) / (l1 - l2);
  Mat2 shifted = m;
  shifted[0] -= l1;
  shifted[3] -= l1;
  return f1 * mat2_identity() + dd * shifted;
}

}  // namespace vdw
