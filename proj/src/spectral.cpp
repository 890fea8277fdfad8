#include "vdw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"

namespace vdw {

Grid::Grid(int n_modes, int n_points) : n_modes_(n_modes), n_points_(n_points) {
  require(n_modes >= 1, "n_modes must be >= 1");
  if (n_points_ == 0) n_points_ = 2 * n_modes + 1;
  require(n_points_ >= 2 * n_modes + 1,
          "n_points must be >= 2*n_modes+1 (got " + std::to_string(n_points_) + ")");
}

SpectralField::SpectralField(const Grid& g, std::vector<cplx> coeffs) : grid_(g), c_(std::move(coeffs)) {
  require(static_cast<int>(c_.size()) == g.size(), "coefficient array length must be 2*n_modes+1");
}

SpectralField SpectralField::mode(const Grid& g, int k, cplx amp) {
  require(std::abs(k) <= g.n_modes(), "wavenumber outside the grid");
  SpectralField f(g);
  f[k] = amp;
  return f;
}

cplx SpectralField::at(int k) const {
  require(std::abs(k) <= n_modes(), "wavenumber outside the grid");
  return (*this)[k];
}

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) fail(ErrorCode::grid_mismatch, "fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_same_grid(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_same_grid(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
  for (auto& c : c_) c *= a;
  return *this;
}

SpectralField& SpectralField::axpy(cplx a, const SpectralField& x) {
  check_same_grid(*this, x);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
  return *this;
}

bool SpectralField::is_finite() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, cplx s) { return a *= s; }

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

std::vector<cplx> to_physical(const SpectralField& f, int n_points) {
  const int K = f.n_modes();
  require(n_points >= 2 * K + 1, "to_physical needs n_points >= 2K+1");
  std::vector<cplx> spec(n_points), out(n_points);
  for (int k = -K; k <= K; ++k) spec[wrap(k, n_points)] = f[k];
  detail::dft_backward(spec, out);
  return out;
}

std::vector<cplx> to_physical(const SpectralField& f) { return to_physical(f, f.grid().n_points()); }

SpectralField to_spectral(std::span<const cplx> values, const Grid& g) {
  const int n = static_cast<int>(values.size());
  if (n != g.n_points())
    fail(ErrorCode::invalid_argument, "to_spectral: expected " + std::to_string(g.n_points()) +
                                          " values, got " + std::to_string(n));
  std::vector<cplx> out(n);
  detail::dft_forward(values, out);
  SpectralField f(g);
  const int K = g.n_modes();
  const double inv = 1.0 / n;
  for (int k = -K; k <= K; ++k) f[k] = out[wrap(k, n)] * inv;
  return f;
}

std::vector<cplx> to_padded(const SpectralField& f) { return to_physical(f, f.grid().padded_points()); }

SpectralField from_padded(std::span<const cplx> values, const Grid& g) {
  const int n = static_cast<int>(values.size());
  require(n >= g.size(), "from_padded: too few values");
  std::vector<cplx> out(n);
  detail::dft_forward(values, out);
  SpectralField f(g);
  const int K = g.n_modes();
  const double inv = 1.0 / n;
  for (int k = -K; k <= K; ++k) f[k] = out[wrap(k, n)] * inv;
  return f;
}

SpectralField conj(const SpectralField& f) {
  SpectralField r(f.grid());
  const int K = f.n_modes();
  for (int k = -K; k <= K; ++k) r[k] = std::conj(f[-k]);
  return r;
}

SpectralField apply_m(const SpectralField& f) {
  SpectralField r(f.grid());
  const int K = f.n_modes();
  for (int k = -K; k <= K; ++k)
    if (k != 0) r[k] = f[k] / static_cast<double>(k);
  return r;
}

cplx project_mean(const SpectralField& f) { return f[0]; }

SpectralField remove_mean(const SpectralField& f) {
  SpectralField r = f;
  r[0] = 0.0;
  return r;
}

SpectralField derivative(const SpectralField& f, int order) {
  require(order >= 1, "derivative order must be >= 1");
  SpectralField r(f.grid());
  const int K = f.n_modes();
  for (int k = -K; k <= K; ++k) r[k] = f[k] * std::pow(cplx(0.0, k), order);
  return r;
}

double norm(const SpectralField& f, Norm kind) {
  const int K = f.n_modes();
  switch (kind.kind) {
    case Norm::Kind::L2: {
      double s = 0.0;
      for (cplx c : f.coeffs()) s += std::norm(c);
      return std::sqrt(s);
    }
    case Norm::Kind::Hs: {
      double s = 0.0;
      for (int k = -K; k <= K; ++k) s += std::pow(std::max(1.0, std::abs(double(k))), 2.0 * kind.s) * std::norm(f[k]);
      return std::sqrt(s);
    }
    case Norm::Kind::Linf: {
      // Band-limited fields peak between nodes; oversample 4x.
      const auto v = to_physical(f, 4 * f.grid().size());
      double m = 0.0;
      for (cplx z : v) m = std::max(m, std::abs(z));
      return m;
    }
  }
  return 0.0;
}

SpectralField multiply(std::span<const SpectralField> fields) {
  require(fields.size() == 2 || fields.size() == 3, "multiply takes two or three fields");
  for (size_t i = 1; i < fields.size(); ++i) check_same_grid(fields[0], fields[i]);
  std::vector<cplx> acc = to_padded(fields[0]);
  for (size_t i = 1; i < fields.size(); ++i) {
    const auto v = to_padded(fields[i]);
    for (size_t j = 0; j < acc.size(); ++j) acc[j] *= v[j];
  }
  return from_padded(acc, fields[0].grid());
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  const SpectralField f[] = {a, b};
  return multiply(f);
}

SpectralField multiply(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
  const SpectralField f[] = {a, b, c};
  return multiply(f);
}

cplx integrate_product(std::span<const SpectralField> fields) {
  require(!fields.empty() && fields.size() <= 4, "integrate_product takes one to four fields");
  for (size_t i = 1; i < fields.size(); ++i) check_same_grid(fields[0], fields[i]);
  // With 4K+2 points the mean of a degree-4 product is alias-free.
  std::vector<cplx> acc = to_padded(fields[0]);
  for (size_t i = 1; i < fields.size(); ++i) {
    const auto v = to_padded(fields[i]);
    for (size_t j = 0; j < acc.size(); ++j) acc[j] *= v[j];
  }
  cplx s = 0.0;
  for (cplx z : acc) s += z;
  return 2.0 * M_PI * s / static_cast<double>(acc.size());
}

cplx evaluate(const SpectralField& f, double x) {
  const int K = f.n_modes();
  const cplx step = std::polar(1.0, x);
  cplx up = 1.0, down = 1.0;
  cplx s = f[0];
  for (int k = 1; k <= K; ++k) {
    up *= step;
    down = std::conj(up);
    s += f[k] * up + f[-k] * down;
  }
  return s;
}

}  // namespace vdw
