#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "vdw/jets_ibp.hpp"

using namespace vdw;

namespace {

SpectralField cube(const SpectralField& u) {
  SpectralField c = oracle::convolve3(u, u, u);
  c[0] = 0.0;
  return c;
}

// d/ds F(u + s v) at s = 0 for F polynomial in u of degree < N, by the
// discrete Cauchy formula on a circle of radius r.
SpectralField cauchy_derivative(const std::function<SpectralField(const SpectralField&)>& F, const SpectralField& u,
                                const SpectralField& v, int N = 12, double r = 0.5) {
  SpectralField acc(u.grid());
  for (int j = 0; j < N; ++j) {
    const cplx s = std::polar(r, 2.0 * M_PI * j / N);
    acc.axpy(1.0 / (s * double(N)), F(u + s * v));
  }
  return acc;
}

// f_0 = (Id - Pi0) u^3, f_{n+1}(u) = f_n'(u)[f_0(u)] literally.
SpectralField literal_fn(const SpectralField& u, int n) {
  if (n == 0) return cube(u);
  return cauchy_derivative([n](const SpectralField& x) { return literal_fn(x, n - 1); }, u, cube(u));
}

W1Samples samples(const NormalFormSetting& s, int seed, double dt, int n_steps, int store_every) {
  const Grid g(16);
  std::mt19937_64 rng(seed);
  SpectralField w = oracle::random(rng, g, 4, true);
  w *= 0.3 / norm_h1(w);
  return sample_w1_equation(s, w, dt, n_steps, store_every);
}

}  // namespace

TEST_CASE("jets of a single mode") {
  const Grid g(8);
  const SpectralField u = SpectralField::mode(g, 1);
  const JetSequence jet = ode_jet(u, 3);
  REQUIRE(jet.coeffs.size() == 4);
  CHECK(norm_l2(jet.coeffs[1] - SpectralField::mode(g, 3)) < 1e-15);
  CHECK(norm_l2(jet.coeffs[2] - SpectralField::mode(g, 5, 1.5)) < 1e-15);
  CHECK(norm_l2(jet.coeffs[3] - SpectralField::mode(g, 7, 2.5)) < 1e-14);
  CHECK(norm_l2(f_n(u, 0) - SpectralField::mode(g, 3)) < 1e-15);
  CHECK(norm_l2(f_n(u, 1) - SpectralField::mode(g, 5, 3.0)) < 1e-14);
  CHECK(norm_l2(f_n(u, 2) - SpectralField::mode(g, 7, 15.0)) < 1e-13);
  CHECK(norm_l2(f_n(SpectralField(g), 3)) == 0.0);
}

TEST_CASE("jets follow the literal Lie-derivative recursion") {
  const Grid g(4);
  std::mt19937_64 rng(51);
  for (int i = 0; i < 3; ++i) {
    const SpectralField u = oracle::random(rng, g, 4, true, 0.6);
    for (int n = 0; n <= 3; ++n) {
      const SpectralField want = literal_fn(u, n);
      CHECK(norm_l2(f_n(u, n) - want) < 1e-11 * std::max(1.0, norm_l2(want)));
    }
  }
}

TEST_CASE("tangent jets give the derivative of f_n") {
  const Grid g(4);
  std::mt19937_64 rng(52);
  const SpectralField u = oracle::random(rng, g, 4, true, 0.6), v = oracle::random(rng, g, 4, true, 0.4);
  for (int n = 0; n <= 4; ++n) {
    const SpectralField want = cauchy_derivative([n](const SpectralField& x) { return f_n(x, n); }, u, v, 16);
    CHECK(norm_l2(f_n_directional(u, n, v) - want) < 1e-11 * std::max(1.0, norm_l2(want)));
  }
  // f_0'(u)[v] = 3 (Id - Pi0)(u^2 v)
  SpectralField d0 = 3.0 * oracle::convolve3(u, u, v);
  d0[0] = 0.0;
  CHECK(norm_l2(f_n_directional(u, 0, v) - d0) < 1e-13);
}

TEST_CASE("depth limits") {
  const Grid g(4);
  const SpectralField u = SpectralField::mode(g, 1, 0.1);
  CHECK_NOTHROW(ode_jet(u, max_jet_depth));
  try {
    ode_jet(u, max_jet_depth + 1);
    FAIL("expected depth error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::depth_exceeded);
  }
}

TEST_CASE("boundary polynomial P_n and remainder R_n") {
  const Grid g(8);
  const double eps = 0.1, lambda = 0.7;
  const SpectralField e1 = SpectralField::mode(g, 1);
  IbpCoefficients c{1, lambda, eps, 0.0};
  // e^{2it/eps} = -1: P_1 = e^{ix} + lambda^2 e^{3ix}.
  const double t = M_PI * eps / 2.0;
  const SpectralField p = P_n_eval(e1, e1, t, c);
  CHECK(norm_l2(p - (e1 + lambda * lambda * SpectralField::mode(g, 3))) < 1e-14);
  CHECK(norm_l2(P_n_eval(e1, e1, 0.0, c) - e1) < 1e-15);
  c.lambda = 0.0;
  CHECK(norm_l2(P_n_eval(e1, SpectralField(g), t, c)) == 0.0);

  // R_1 = R1 + (-mu / 2i) 3 (Id - Pi0)(w^2 R1)
  c.lambda = lambda;
  std::mt19937_64 rng(53);
  const SpectralField w = oracle::random(rng, g, 4, true, 0.5), r1 = oracle::random(rng, g, 4, true, 0.2);
  const double s = 0.037;
  SpectralField d = 3.0 * oracle::convolve3(w, w, r1);
  d[0] = 0.0;
  const SpectralField want = r1 + (-mu(s, lambda, eps) / cplx(0.0, 2.0)) * d;
  CHECK(norm_l2(bold_R_n(w, r1, s, c) - want) < 1e-14);
  CHECK(std::abs(mu(t, lambda, eps) - cplx(0.0, lambda * lambda)) < 1e-15);
}

TEST_CASE("implicit representation holds along computed trajectories") {
  const NormalFormSetting s{0.1, true, PressureLaw::P0, 0.5};
  for (int n : {1, 2}) {
    const IbpCoefficients c{n, 0.5, 0.1, 0.0};
    const double coarse = implicit_residual(samples(s, 54, 1e-3, 200, 5), c);
    const double fine = implicit_residual(samples(s, 54, 5e-4, 400, 10), c);
    CHECK(fine < 1e-6);
    CHECK(coarse / fine > 3.0);
  }
  // lambda = 0 reduces to w1(t) = w1(0) + int R1.
  const NormalFormSetting s0{0.1, true, PressureLaw::P0, 0.0};
  CHECK(implicit_residual(samples(s0, 55, 5e-4, 400, 10), {1, 0.0, 0.1, 0.0}) < 1e-6);
  // A wrong lambda in the identity is detected.
  CHECK(implicit_residual(samples(s, 54, 5e-4, 400, 10), {1, 0.25, 0.1, 0.0}) > 1e-4);
}

TEST_CASE("single integration by parts for the p2 equation") {
  const double eps = 0.05, alpha = 0.25;
  const NormalFormSetting s{eps, false, PressureLaw::P2, std::pow(eps, alpha)};
  const IbpP2Report coarse = ibp_once_p2(samples(s, 56, 2e-4, 500, 5), alpha, eps);
  const IbpP2Report fine = ibp_once_p2(samples(s, 56, 1e-4, 1000, 10), alpha, eps);
  CHECK(fine.residual < 1e-7);
  CHECK(coarse.residual / fine.residual > 3.0);
  CHECK(fine.boundary_norm > 0.0);

  const Grid g(4);
  W1Samples z;
  z.h = 1e-3;
  for (int j = 0; j < 5; ++j) {
    z.times.push_back(j * z.h);
    z.w1.emplace_back(g);
    z.R1.emplace_back(g);
  }
  const IbpP2Report zr = ibp_once_p2(z, alpha, eps);
  CHECK(zr.residual == 0.0);
  CHECK(zr.boundary_norm == 0.0);
  z.h = 1.0;
  CHECK_THROWS_AS(ibp_once_p2(z, alpha, eps), Error);
}

TEST_CASE("choice of the number of integrations by parts") {
  // (2n+1) 0.5^{2(n+1)}: 0.1875, 0.078, 0.0273, 0.00879
  CHECK(choose_n(0.5, 0.01, 1.0) == 4);
  CHECK(choose_n(0.5, 0.1, 1.0) == 2);
  CHECK(choose_n(0.5, 0.2, 1.0) == 1);
  CHECK(choose_n(0.25, 0.01, 2.0) == 4);
  int prev = 1;
  for (double eps : {0.1, 0.01, 1e-3, 1e-4, 1e-6}) {
    const int n = choose_n(0.8, eps, 1.0);
    CHECK(n >= prev);
    CHECK((2.0 * n + 1.0) * std::pow(0.8, 2.0 * (n + 1)) <= eps);
    if (n > 1) CHECK((2.0 * n - 1.0) * std::pow(0.8, 2.0 * n) > eps);
    prev = n;
  }
  CHECK_THROWS_AS(choose_n(1.0, 0.1, 1.0), Error);
}

TEST_CASE("f_n bound on a single mode") {
  // f_n(a e^{ix}) = (2n+1)!! a^{2n+3} e^{i(2n+3)x}: the L2 form of the bound is
  // attained and the H1 form is exceeded by the factor 2n+3.
  const Grid g(16);
  const SpectralField u = SpectralField::mode(g, 1, 0.4);
  for (int n = 0; n <= 3; ++n) {
    const FnBoundReport r = verify_fn_bound(u, n);
    CHECK(r.ratio_l2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(2.0 * n + 3.0).epsilon(1e-12));
  }
  const SpectralField v = SpectralField::mode(g, 2, 0.1);
  const FnBoundReport d = verify_fn_bound(u, 1, &v);
  CHECK(d.d_norm > 0.0);
  CHECK(std::isfinite(d.d_ratio));
  CHECK_THROWS_AS(verify_fn_bound(u, 9), Error);
}
