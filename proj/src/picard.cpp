#include <cmath>

#include "vdw/integrate.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {
namespace {

// e^{-i t dx^2 / eps^3}: mode k picks up e^{i k^2 t / eps^3}.
SpectralField schrodinger(const SpectralField& f, double t, double eps) {
  SpectralField r = f;
  const int K = f.n_modes();
  const double c = t / (eps * eps * eps);
  for (int k = -K; k <= K; ++k) r[k] *= std::polar(1.0, c * k * k);
  return r;
}

}  // namespace

PicardResult picard_solve(const SpectralField& w1_0, const SpectralField& w2_0, const NormalFormSetting& s,
                          double T, int max_iter, int n_samples, double tol) {
  s.validate();
  check_same_grid(w1_0, w2_0);
  require(T > 0.0, "T must be positive");
  require(max_iter >= 1, "max_iter must be >= 1");
  require(n_samples >= 3, "need at least three samples");
  require(norm_h1(w1_0) < 1.0 / 6.0 && norm_l2(w2_0) < 1.0 / 6.0,
          "Picard datum must satisfy max(|w1|_H1, |w2|_L2) < 1/6");
  require(std::abs(project_mean(w1_0)) < 1e-12 && std::abs(project_mean(w2_0)) < 1e-12,
          "Picard datum must have zero mean");

  const double eps = s.epsilon;
  const double h = T / (n_samples - 1);
  PicardResult res;
  res.times.resize(n_samples);
  std::vector<SpectralField> W1(n_samples, w1_0), W2(n_samples);
  for (int j = 0; j < n_samples; ++j) {
    res.times[j] = j * h;
    W2[j] = schrodinger(w2_0, res.times[j], eps);
  }
  const double inv_e3 = 1.0 / (eps * eps * eps);
  auto omega = [inv_e3](int k) { return double(k) * k * inv_e3; };

  double prev = std::nan("");
  int bad = 0;
  PicardReport& rep = res.report;
  std::vector<SpectralField> N1(n_samples), N2(n_samples);
  for (int it = 1; it <= max_iter; ++it) {
    for (int j = 0; j < n_samples; ++j) {
      ReducedRhs r = reduced_terms(s, {W1[j], W2[j], res.times[j]});
      N1[j] = std::move(r.dw1);
      N2[j] = std::move(r.dw2_nonstiff);
    }
    const auto I1 = cumulative_filon(N1, h, 0.0);
    const auto I2 = cumulative_filon(N2, h, omega);
    double diff = 0.0;
    for (int j = 0; j < n_samples; ++j) {
      SpectralField f1 = w1_0 + I1[j];
      SpectralField f2 = schrodinger(w2_0 + I2[j], res.times[j], eps);
      diff = std::max({diff, norm_h1(f1 - W1[j]), norm_l2(f2 - W2[j])});
      W1[j] = std::move(f1);
      W2[j] = std::move(f2);
    }
    rep.iterates = it;
    rep.final_residual = diff;
    if (!std::isfinite(diff)) {
      rep.message = "iteration diverged";
      break;
    }
    if (std::isfinite(prev) && prev > 0.0) {
      const double ratio = diff / prev;
      rep.contraction_ratios.push_back(ratio);
      bad = ratio >= 1.0 ? bad + 1 : 0;
      if (bad >= 3) {
        rep.message = "non-contraction: ratio >= 1 for 3 consecutive iterates";
        break;
      }
    }
    if (diff < tol) {
      rep.converged = true;
      rep.message = "converged";
      break;
    }
    prev = diff;
  }
  if (!rep.converged && rep.message.empty()) rep.message = "max_iter reached";
  res.states.resize(n_samples);
  for (int j = 0; j < n_samples; ++j) res.states[j] = {W1[j], W2[j], res.times[j]};
  return res;
}

}  // namespace vdw
