#include "vdw/jets_ibp.hpp"

#include <cmath>

#include "vdw/quadrature.hpp"

namespace vdw {
namespace {

using Values = std::vector<cplx>;

// Cauchy products on the padded grid: q[m] = sum_{a+b=m} p_a p_b.
void extend_pair_sums(const std::vector<Values>& p, std::vector<Values>& q) {
  const size_t m = q.size();
  Values s(p[0].size(), 0.0);
  for (size_t a = 0; a <= m; ++a) {
    const Values& x = p[a];
    const Values& y = p[m - a];
    for (size_t i = 0; i < s.size(); ++i) s[i] += x[i] * y[i];
  }
  q.push_back(std::move(s));
}

// sum_{m=0}^{j} q[m] * d[j-m]
Values convolve(const std::vector<Values>& q, const std::vector<Values>& d, size_t j) {
  Values s(q[0].size(), 0.0);
  for (size_t m = 0; m <= j; ++m) {
    const Values& x = q[m];
    const Values& y = d[j - m];
    for (size_t i = 0; i < s.size(); ++i) s[i] += x[i] * y[i];
  }
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (2i)^{k+1} (k+1)!
cplx ibp_denominator(int k) { return std::pow(cplx(0.0, 2.0), k + 1) * factorial(k + 1); }

void check_samples(const W1Samples& s) {
  const size_t n = s.times.size();
  if (n < 3 || s.w1.size() != n || s.R1.size() != n)
    fail(ErrorCode::insufficient_sampling, "trajectory needs at least three aligned samples");
  for (size_t j = 1; j < n; ++j)
    if (std::abs(s.times[j] - s.times[0] - j * s.h) > 1e-9 * (1.0 + std::abs(s.times[j])))
      fail(ErrorCode::insufficient_sampling, "trajectory samples must be uniform with spacing h");
  if (s.times[0] != 0.0) fail(ErrorCode::invalid_argument, "trajectory must start at t = 0");
}

}  // namespace

JetSequence ode_jet(const SpectralField& u, int depth) {
  if (depth < 0 || depth > max_jet_depth)
    fail(ErrorCode::depth_exceeded, "jet depth must lie in [0, " + std::to_string(max_jet_depth) + "]");
  JetSequence jet;
  jet.base = u;
  jet.coeffs.push_back(u);
  std::vector<Values> p{to_padded(u)}, q;
  for (int j = 0; j < depth; ++j) {
    extend_pair_sums(p, q);
    const Values s = convolve(q, p, j);
    SpectralField next = remove_mean(from_padded(s, u.grid()));
    next *= 1.0 / (j + 1.0);
    p.push_back(to_padded(next));
    jet.coeffs.push_back(std::move(next));
  }
  return jet;
}

std::vector<SpectralField> tangent_jet(const JetSequence& jet, const SpectralField& v) {
  check_same_grid(jet.base, v);
  const int depth = static_cast<int>(jet.coeffs.size()) - 1;
  std::vector<Values> p, q, d;
  for (const auto& c : jet.coeffs) p.push_back(to_padded(c));
  std::vector<SpectralField> out{v};
  d.push_back(to_padded(v));
  for (int j = 0; j < depth; ++j) {
    extend_pair_sums(p, q);
    const Values s = convolve(q, d, j);
    SpectralField next = remove_mean(from_padded(s, v.grid()));
    next *= 3.0 / (j + 1.0);
    d.push_back(to_padded(next));
    out.push_back(std::move(next));
  }
  return out;
}

SpectralField f_n(const SpectralField& u, int n) {
  require(n >= 0, "f_n needs n >= 0");
  const JetSequence jet = ode_jet(u, n + 1);
  return (factorial(n) * (n + 1)) * jet.coeffs[n + 1];
}

SpectralField f_n_directional(const SpectralField& u, int n, const SpectralField& v) {
  require(n >= 0, "f_n needs n >= 0");
  const JetSequence jet = ode_jet(u, n + 1);
  const auto d = tangent_jet(jet, v);
  return (factorial(n) * (n + 1)) * d[n + 1];
}

cplx mu(double t, double lambda, double epsilon) {
  return cplx(0.0, -lambda * lambda) * std::polar(1.0, 2.0 * t / epsilon);
}

SpectralField P_n_eval(const SpectralField& w1_t, const SpectralField& w1_0, double t, const IbpCoefficients& c) {
  require(c.n >= 1, "P_n needs n >= 1");
  const cplx mt = mu(t, c.lambda, c.epsilon);
  const cplx m0 = mu(0.0, c.lambda, c.epsilon);
  SpectralField out = w1_0;
  if (c.lambda == 0.0) return out;
  const JetSequence jt = ode_jet(w1_t, c.n);
  const JetSequence j0 = ode_jet(w1_0, c.n);
  for (int k = 0; k < c.n; ++k) {
    const double fk = factorial(k) * (k + 1);
    const cplx w = std::pow(-1.0, k) / ibp_denominator(k);
    out.axpy(w * std::pow(mt, k + 1) * fk, jt.coeffs[k + 1]);
    out.axpy(-w * std::pow(m0, k + 1) * fk, j0.coeffs[k + 1]);
  }
  return out;
}

SpectralField bold_R_n(const SpectralField& w1, const SpectralField& R1, double t, const IbpCoefficients& c) {
  require(c.n >= 1, "R_n needs n >= 1");
  SpectralField out = R1;
  if (c.lambda == 0.0) return out;
  const cplx m = -mu(t, c.lambda, c.epsilon);
  const JetSequence jet = ode_jet(w1, c.n);
  const auto d = tangent_jet(jet, R1);
  for (int k = 0; k < c.n; ++k)
    out.axpy(std::pow(m, k + 1) / ibp_denominator(k) * (factorial(k) * (k + 1)), d[k + 1]);
  return out;
}

double implicit_residual(const W1Samples& tr, const IbpCoefficients& c) {
  require(c.n >= 1 && c.n < max_jet_depth, "n out of range");
  check_samples(tr);
  if (tr.h > c.epsilon / 4.0)
    fail(ErrorCode::insufficient_sampling, "sample spacing must not exceed epsilon/4");
  const size_t ns = tr.times.size();
  const int n = c.n;
  const double l2 = c.lambda * c.lambda;

  // Per-sample jets give f_n(w1) and f_k'(w1)[R1] for k < n.
  std::vector<SpectralField> fn(ns), r1 = tr.R1;
  std::vector<std::vector<SpectralField>> fk(n, std::vector<SpectralField>(ns));
  for (size_t j = 0; j < ns; ++j) {
    const JetSequence jet = ode_jet(tr.w1[j], n + 1);
    const auto d = tangent_jet(jet, tr.R1[j]);
    fn[j] = (factorial(n) * (n + 1)) * jet.coeffs[n + 1];
    for (int k = 0; k < n; ++k) fk[k][j] = (factorial(k) * (k + 1)) * d[k + 1];
  }
  // mu^{n+1} = (-i l2)^{n+1} e^{2i(n+1)s/eps}: frequency omega = -2(n+1)/eps.
  const auto I_main = cumulative_filon(fn, tr.h, -2.0 * (n + 1) / c.epsilon);
  const cplx main_w = std::pow(-1.0, n) / (c.epsilon * std::pow(cplx(0.0, 2.0), n) * factorial(n)) *
                      std::pow(cplx(0.0, -l2), n + 1);
  const auto I_R = cumulative_filon(r1, tr.h, 0.0);
  std::vector<std::vector<SpectralField>> I_k(n);
  for (int k = 0; k < n; ++k) I_k[k] = cumulative_filon(fk[k], tr.h, -2.0 * (k + 1) / c.epsilon);

  double worst = 0.0;
  for (size_t j = 0; j < ns; ++j) {
    SpectralField r = tr.w1[j] - P_n_eval(tr.w1[j], tr.w1[0], tr.times[j], c);
    r.axpy(-main_w, I_main[j]);
    r -= I_R[j];
    // (-mu)^{k+1} = (i l2)^{k+1} e^{2i(k+1)s/eps}
    for (int k = 0; k < n; ++k) r.axpy(-std::pow(cplx(0.0, l2), k + 1) / ibp_denominator(k), I_k[k][j]);
    worst = std::max(worst, norm_h1(r));
  }
  return worst;
}

IbpP2Report ibp_once_p2(const W1Samples& tr, double alpha, double epsilon) {
  check_samples(tr);
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  if (tr.h > epsilon / 4.0) fail(ErrorCode::insufficient_sampling, "sample spacing must not exceed epsilon/4");
  const size_t ns = tr.times.size();
  const double e2a = std::pow(epsilon, 2.0 * alpha);
  const double e4a1 = std::pow(epsilon, 4.0 * alpha - 1.0);
  std::vector<SpectralField> F(ns), G(ns), H(ns);
  for (size_t j = 0; j < ns; ++j) {
    const SpectralField wb = conj(tr.w1[j]);
    F[j] = remove_mean(multiply(wb, wb, wb));
    G[j] = remove_mean(multiply(wb, wb, remove_mean(multiply(tr.w1[j], tr.w1[j], tr.w1[j]))));
    H[j] = remove_mean(multiply(wb, wb, conj(tr.R1[j])));
  }
  const auto IG = cumulative_filon(G, tr.h, 0.0);
  const auto IH = cumulative_filon(H, tr.h, 4.0 / epsilon);
  const auto IR = cumulative_filon(tr.R1, tr.h, 0.0);
  IbpP2Report rep;
  for (size_t j = 0; j < ns; ++j) {
    SpectralField boundary = std::polar(1.0, -4.0 * tr.times[j] / epsilon) * F[j] - F[0];
    boundary *= e2a / 4.0;
    SpectralField r = tr.w1[j] - tr.w1[0] - boundary;
    r.axpy(cplx(0.0, 0.75 * e4a1), IG[j]);
    r.axpy(-0.75 * e2a, IH[j]);
    r += IR[j];
    rep.residual = std::max(rep.residual, norm_h1(r));
    rep.boundary_norm = std::max(rep.boundary_norm, norm_h1(boundary));
  }
  return rep;
}

int choose_n(double lambda, double epsilon, double c_embed) {
  const double cl = c_embed * lambda;
  if (!(cl < 1.0)) fail(ErrorCode::no_solution, "choose_n needs c*lambda < 1");
  require(cl >= 0.0 && epsilon > 0.0, "choose_n needs c*lambda >= 0 and epsilon > 0");
  for (int n = 1; n < 100000; ++n)
    if ((2.0 * n + 1.0) * std::pow(cl, 2.0 * (n + 1)) <= epsilon) return n;
  fail(ErrorCode::no_solution, "no n found for the requested epsilon");
}

FnBoundReport verify_fn_bound(const SpectralField& u, int n, const SpectralField* direction) {
  require(n >= 0 && n <= 8, "verify_fn_bound needs 0 <= n <= 8");
  double prod = 1.0;
  for (int k = 0; k <= n; ++k) prod *= 2.0 * k + 1.0;
  const double linf = norm_linf(u);
  const double h1 = norm_h1(u);
  const SpectralField f = f_n(u, n);
  FnBoundReport r;
  r.norm = norm_h1(f);
  r.bound = prod * std::pow(linf, 2.0 * (n + 1)) * h1;
  r.ratio = r.bound > 0.0 ? r.norm / r.bound : (r.norm > 0.0 ? INFINITY : 0.0);
  r.norm_l2 = norm_l2(f);
  r.bound_l2 = prod * std::pow(linf, 2.0 * (n + 1)) * norm_l2(u);
  r.ratio_l2 = r.bound_l2 > 0.0 ? r.norm_l2 / r.bound_l2 : (r.norm_l2 > 0.0 ? INFINITY : 0.0);
  if (direction) {
    const SpectralField& v = *direction;
    r.d_norm = norm_h1(f_n_directional(u, n, v));
    r.d_bound = prod * (std::pow(linf, 2.0 * (n + 1)) * norm_h1(v) + std::pow(linf, 2.0 * n + 1) * norm_linf(v) * h1);
    r.d_ratio = r.d_bound > 0.0 ? r.d_norm / r.d_bound : (r.d_norm > 0.0 ? INFINITY : 0.0);
  }
  return r;
}

}  // namespace vdw
