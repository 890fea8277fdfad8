#pragma once

// Fourier fields on the torus R/2piZ.  Coefficients follow the mean-value
// convention u_k = (1/2pi) int e^{-iky} u(y) dy, so u_0 is the mean.

#include <complex>
#include <span>
#include <vector>

#include "vdw/error.hpp"

namespace vdw {

using cplx = std::complex<double>;

class Grid {
 public:
  Grid() = default;
  // n_points = 0 selects the square transform, 2K+1 points.
  explicit Grid(int n_modes, int n_points = 0);

  int n_modes() const { return n_modes_; }
  int n_points() const { return n_points_; }
  int size() const { return 2 * n_modes_ + 1; }
  // Padded length for alias-free cubic and quartic products.
  int padded_points() const { return 2 * size(); }

  bool operator==(const Grid& o) const { return n_modes_ == o.n_modes_ && n_points_ == o.n_points_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int n_modes_ = 0;
  int n_points_ = 0;
};

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid_(g), c_(g.size()) {}
  SpectralField(const Grid& g, std::vector<cplx> coeffs);

  static SpectralField mode(const Grid& g, int k, cplx amp = 1.0);

  const Grid& grid() const { return grid_; }
  int n_modes() const { return grid_.n_modes(); }
  bool empty() const { return c_.empty(); }

  // Wavenumber indexing, k in [-K, K].
  cplx operator[](int k) const { return c_[k + grid_.n_modes()]; }
  cplx& operator[](int k) { return c_[k + grid_.n_modes()]; }
  cplx at(int k) const;

  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx a);
  // this += a * x
  SpectralField& axpy(cplx a, const SpectralField& x);

  bool is_finite() const;

 private:
  Grid grid_;
  std::vector<cplx> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a);
SpectralField operator*(cplx s, SpectralField a);
SpectralField operator*(SpectralField a, cplx s);

void check_same_grid(const SpectralField& a, const SpectralField& b);

std::vector<cplx> to_physical(const SpectralField& f);
std::vector<cplx> to_physical(const SpectralField& f, int n_points);
SpectralField to_spectral(std::span<const cplx> values, const Grid& g);

// Pointwise conjugate: coefficient k of conj(u) is conj(u_{-k}).
SpectralField conj(const SpectralField& f);
SpectralField apply_m(const SpectralField& f);
cplx project_mean(const SpectralField& f);
// (Id - Pi0) u
SpectralField remove_mean(const SpectralField& f);
SpectralField derivative(const SpectralField& f, int order = 1);

struct Norm {
  enum class Kind { L2, Hs, Linf };
  Kind kind = Kind::L2;
  double s = 0.0;

  static Norm L2() { return {Kind::L2, 0.0}; }
  static Norm H(double s) { return {Kind::Hs, s}; }
  static Norm Linf() { return {Kind::Linf, 0.0}; }
};

double norm(const SpectralField& f, Norm kind);
inline double norm_l2(const SpectralField& f) { return norm(f, Norm::L2()); }
inline double norm_h1(const SpectralField& f) { return norm(f, Norm::H(1.0)); }
inline double norm_linf(const SpectralField& f) { return norm(f, Norm::Linf()); }

// Dealiased product of two or three fields, truncated to |k| <= K.
SpectralField multiply(std::span<const SpectralField> fields);
SpectralField multiply(const SpectralField& a, const SpectralField& b);
SpectralField multiply(const SpectralField& a, const SpectralField& b, const SpectralField& c);

// int_T of a product of up to four fields (physical measure, 2pi * mean).
cplx integrate_product(std::span<const SpectralField> fields);

// Values of f on the padded grid, and back.  Used by kernels that combine
// several pointwise products before a single forward transform.
std::vector<cplx> to_padded(const SpectralField& f);
SpectralField from_padded(std::span<const cplx> values, const Grid& g);

// Value at an arbitrary point by direct summation.
cplx evaluate(const SpectralField& f, double x);

}  // namespace vdw
