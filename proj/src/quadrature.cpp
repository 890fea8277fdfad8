#include "vdw/quadrature.hpp"

#include <array>
#include <cmath>

namespace vdw {
namespace {

// m[p] = int_0^1 tau^p e^{-i theta tau} dtau, p = 0, 1, 2.
std::array<cplx, 3> moments(double theta) {
  std::array<cplx, 3> m{};
  const cplx mi(0.0, -theta);
  if (std::abs(theta) < 1.0) {
    for (int p = 0; p < 3; ++p) {
      cplx term = 1.0, sum = 1.0 / (p + 1.0);
      for (int n = 1; n < 40; ++n) {
        term *= mi / static_cast<double>(n);
        const cplx add = term / static_cast<double>(n + p + 1);
        sum += add;
        if (std::abs(add) < 1e-18) break;
      }
      m[p] = sum;
    }
    return m;
  }
  const cplx e = std::exp(mi);
  const cplx it(0.0, theta);
  m[0] = (1.0 - e) / it;
  m[1] = (m[0] - e) / it;
  m[2] = (2.0 * m[1] - e) / it;
  return m;
}

// Weights of nodes tau = 0, 1, 2 for int over [0,1] and [1,2] of
// e^{-i theta tau} times the interpolating quadratic.
struct PanelWeights {
  std::array<cplx, 3> first;
  std::array<cplx, 3> second;
};

PanelWeights panel_weights(double theta) {
  const auto m = moments(theta);
  // int_1^2 tau^p e^{-i theta tau} = e^{-i theta} int_0^1 (s+1)^p e^{-i theta s}
  const cplx e = std::exp(cplx(0.0, -theta));
  const std::array<cplx, 3> n = {e * m[0], e * (m[1] + m[0]), e * (m[2] + 2.0 * m[1] + m[0])};
  auto weights = [](const std::array<cplx, 3>& q) {
    // l0 = (t^2 - 3t + 2)/2, l1 = -t^2 + 2t, l2 = (t^2 - t)/2
    return std::array<cplx, 3>{0.5 * (q[2] - 3.0 * q[1] + 2.0 * q[0]), -q[2] + 2.0 * q[1],
                               0.5 * (q[2] - q[1])};
  };
  return {weights(m), weights(n)};
}

}  // namespace

std::vector<cplx> cumulative_filon(std::span<const cplx> g, double h, double omega) {
  const int n = static_cast<int>(g.size());
  if (n < 3) fail(ErrorCode::insufficient_sampling, "quadrature needs at least three samples");
  const PanelWeights w = panel_weights(omega * h);
  std::vector<cplx> out(n);
  out[0] = 0.0;
  for (int j = 0; j + 1 < n; j += 2) {
    int base = j;
    bool tail = false;
    if (j + 2 >= n) {  // odd number of intervals: last one closes the previous panel
      base = j - 1;
      tail = true;
    }
    const cplx ph = h * std::exp(cplx(0.0, -omega * base * h));
    const cplx* x = g.data() + base;
    if (tail) {
      out[j + 1] = out[j] + ph * (w.second[0] * x[0] + w.second[1] * x[1] + w.second[2] * x[2]);
      break;
    }
    out[j + 1] = out[j] + ph * (w.first[0] * x[0] + w.first[1] * x[1] + w.first[2] * x[2]);
    out[j + 2] = out[j + 1] + ph * (w.second[0] * x[0] + w.second[1] * x[1] + w.second[2] * x[2]);
  }
  return out;
}

std::vector<SpectralField> cumulative_filon(std::span<const SpectralField> g, double h,
                                            const std::function<double(int)>& omega) {
  const int n = static_cast<int>(g.size());
  if (n < 3) fail(ErrorCode::insufficient_sampling, "quadrature needs at least three samples");
  const Grid grid = g[0].grid();
  std::vector<SpectralField> out(n, SpectralField(grid));
  std::vector<cplx> col(n);
  const int K = grid.n_modes();
  for (int k = -K; k <= K; ++k) {
    for (int j = 0; j < n; ++j) col[j] = g[j][k];
    const auto c = cumulative_filon(col, h, omega(k));
    for (int j = 0; j < n; ++j) out[j][k] = c[j];
  }
  return out;
}

std::vector<SpectralField> cumulative_filon(std::span<const SpectralField> g, double h, double omega) {
  return cumulative_filon(g, h, [omega](int) { return omega; });
}

}  // namespace vdw
