#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vdw/experiments.hpp"

using namespace vdw;

TEST_CASE("datum invariants") {
  const Grid g(16);
  for (PressureLaw law : {PressureLaw::P0, PressureLaw::P1, PressureLaw::P2}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      DatumSpec ds;
      ds.seed = seed;
      ds.law = law;
      ds.k_max = 6;
      const State d = make_datum(ds, g);
      CHECK(std::abs(norm_h1(d.u1) - ds.target_norm) < 1e-12);
      CHECK(norm_l2(d.u2) <= ds.target_norm * (1.0 + 1e-12));
      CHECK(std::abs(project_mean(d.u1)) == 0.0);
      CHECK(std::abs(project_mean(d.u2)) == 0.0);
      CHECK(datum_energy(ds, d) <= 0.0);
      for (int k = 7; k <= 16; ++k) CHECK(std::abs(d.u1[k]) + std::abs(d.u1[-k]) == 0.0);
      // Deterministic in the seed.
      const State e = make_datum(ds, g);
      CHECK(norm_l2(d.u1 - e.u1) + norm_l2(d.u2 - e.u2) == 0.0);
    }
  }
  DatumSpec ds;
  ds.conjugated = true;
  ds.law = PressureLaw::P0;
  const State c = make_datum(ds, g);
  CHECK(norm_l2(c.u1 - conj(c.u1)) < 1e-15);
  CHECK(datum_energy(ds, c) <= 0.0);
  ds.zero_velocity = true;
  CHECK(norm_l2(make_datum(ds, g).u2) == 0.0);

  DatumSpec other;
  other.seed = 2;
  CHECK(norm_l2(make_datum(other, g).u1 - make_datum(DatumSpec{}, g).u1) > 1e-3);

  DatumSpec bad;
  bad.target_norm = 0.2;
  CHECK_THROWS_AS(make_datum(bad, g), Error);
  bad = DatumSpec{};
  bad.k_max = 20;
  CHECK_THROWS_AS(make_datum(bad, g), Error);
  bad = DatumSpec{};
  bad.conjugated = true;
  CHECK_THROWS_AS(make_datum(bad, g), Error);
}

TEST_CASE("Sobolev embedding constant") {
  CHECK(sobolev_constant(0) == 1.0);
  CHECK(sobolev_constant(1) == doctest::Approx(std::sqrt(3.0)));
  // Limit sqrt(1 + pi^2/3).
  CHECK(sobolev_constant(100000) == doctest::Approx(std::sqrt(1.0 + M_PI * M_PI / 3.0)).epsilon(1e-5));
  const Grid g(12);
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    const SpectralField u = oracle::random(rng, g, 12, true);
    CHECK(norm_linf(u) <= sobolev_constant(12) * norm_h1(u) * (1.0 + 1e-12));
  }
  // Attained by the extremal field u_k = max(1,|k|)^{-2}.
  SpectralField ext(g);
  for (int k = -12; k <= 12; ++k) ext[k] = 1.0 / std::max(1.0, double(k * k));
  CHECK(std::abs(ext[0]) == 1.0);
  CHECK(norm_linf(ext) == doctest::Approx(sobolev_constant(12) * norm_h1(ext)).epsilon(1e-12));
}

TEST_CASE("energy inequality ratio") {
  const Grid g(8);
  const SpectralField e1 = SpectralField::mode(g, 1, 0.1);
  const NormalFormSetting p1{0.1, false, PressureLaw::P1, std::sqrt(0.1)};
  const State v(e1, 0.5 * e1);
  CHECK(energy_inequality_ratio(p1, v) == doctest::Approx(0.5 * 0.9 / 1.1));
  CHECK(std::isnan(energy_inequality_ratio({0.1, false, PressureLaw::P0, 1.0}, v)));
  const NormalFormSetting p2{0.1, false, PressureLaw::P2, std::pow(0.1, 0.25)};
  const double b = 1.0 + std::sqrt(0.1) * std::pow(0.1 + 0.1 * 0.05, 2);
  CHECK(energy_inequality_ratio(p2, v) == doctest::Approx(0.25 / (b / (1.0 - 0.4 * b) * 1.5)));
  // 1 - 4 eps b <= 0: no constraint.
  CHECK(energy_inequality_ratio({0.3, true, PressureLaw::P0, 0.5}, v) == 0.0);
}

TEST_CASE("continuation schedule") {
  CHECK_THROWS_AS(continuation_schedule(0.5, 0.1, 0.5, 1.0, 1.0), Error);
  const ContinuationSchedule cs = continuation_schedule(0.5, 0.01, 0.5, 1.0, 1.0);
  // eps^{2(1-a)} = 0.01, j = floor(0.25 / 0.02) - 1 = 11.
  CHECK(cs.j_star == 11);
  REQUIRE(cs.rho.size() == 12);
  CHECK(cs.T_low == doctest::Approx(0.005));
  CHECK(cs.T_high == doctest::Approx(0.02));
  double sum = 0.0;
  int first = -1;
  bool bounded = true, bracket = true;
  for (int k = 0; k <= 11; ++k) {
    const double r = k == 0 ? 0.5 : 0.6 + 6.0 * sum;
    const double T = 0.01 / (2.0 * r * r);
    CHECK(cs.rho[k] == doctest::Approx(r).epsilon(1e-14));
    CHECK(cs.T[k] == doctest::Approx(T).epsilon(1e-14));
    bounded = bounded && r <= 1.0;
    bracket = bracket && T >= 0.005 && T <= 0.02;
    if (first < 0 && (r > 1.0 || T < 0.005 || T > 0.02)) first = k;
    sum += T;
  }
  CHECK(cs.rho[1] == doctest::Approx(0.72));
  CHECK(cs.t_star == doctest::Approx(sum));
  CHECK(cs.rho_bounded == bounded);
  CHECK(cs.bracketing == bracket);
  CHECK(cs.first_violation == first);
  // rho_k passes 2 rho at k = 8 for these constants.
  CHECK(first == 8);
  CHECK(cs.t_star_bound == (sum >= 11 * 0.005));

  // Longer schedules leave the bracket.
  const ContinuationSchedule lg = continuation_schedule(0.5, 1e-4, 0.5, 1.0, 1.0);
  CHECK(!lg.rho_bounded);
  CHECK(lg.first_violation > 0);
  CHECK(lg.rho[lg.first_violation] > 1.0);
}

TEST_CASE("linearized growth rates") {
  const auto rows = growth_experiment(PressureLaw::P0, 0.0, {1, 2, 4, 8});
  for (const auto& r : rows) {
    CHECK(r.predicted == doctest::Approx(std::abs(r.k)));
    CHECK(r.measured == doctest::Approx(r.predicted).epsilon(1e-6));
  }
  // Hyperbolic state: the weighted norm is conserved.
  for (const auto& r : growth_experiment(PressureLaw::P0, 1.0, {1, 3})) {
    CHECK(r.predicted == 0.0);
    CHECK(std::abs(r.measured) < 1e-8);
  }
  CHECK_THROWS_AS(growth_experiment(PressureLaw::P0, 0.0, {0}), Error);
}

TEST_CASE("multiplier identities") {
  const LemmaMReport r = lemma_m_suite(7, 12, {0.0, 1.0, 2.0}, 20);
  CHECK(r.passed());
  CHECK(r.est_l2 < 1e-12);
  CHECK(r.m1 < 1e-12);
  CHECK(r.pointwise == 0.0);
  CHECK(r.m2 < 1e-12);
  CHECK(r.m3 < 1e-12);
  const LemmaMReport bad =
      lemma_m_suite(7, 12, {0.0, 1.0}, 20, [](const SpectralField& f) { return cplx(1.01) * apply_m(f); });
  CHECK(!bad.passed());
  CHECK(bad.est_l2 > 1e-3);
  CHECK(bad.m2 > 1e-3);
}

TEST_CASE("existence runs and sweeps") {
  RunParams p;
  p.law = PressureLaw::P1;
  p.alpha = 0.5;
  p.epsilon = 0.2;
  p.n_modes = 8;
  p.datum.k_max = 3;
  p.t_end = 0.02;
  const ExistenceRun r = existence_time(p);
  CHECK(r.status == TerminalStatus::completed);
  CHECK(!r.time);
  CHECK(r.final_time == doctest::Approx(0.02));
  CHECK(r.energy_drift < 1e-4);
  CHECK(r.mean_drift < 1e-14);
  CHECK(r.energy_inequality_ratio < 1.0);
  CHECK(r.max_norm < 0.2);

  CHECK_THROWS_AS(scaling_sweep(p, {0.2, 0.1}), Error);
  const SweepResult none = scaling_sweep(p, {0.3, 0.25, 0.2}, 2);
  CHECK(!none.has_fit);
  CHECK(none.message == "no blow-up observed");
  REQUIRE(none.rows.size() == 3);
  CHECK(none.rows[1].epsilon == 0.25);

  // Long-wave instability for eps > 1/2 (p0, alpha = 0).
  RunParams q = p;
  q.law = PressureLaw::P0;
  q.alpha = 0.0;
  q.datum.k_max = 2;
  q.t_end = 10.0;
  const SweepResult s = scaling_sweep(q, {0.9, 0.8, 0.7}, 3);
  REQUIRE(s.has_fit);
  std::vector<double> x, y;
  for (const auto& row : s.rows) {
    REQUIRE(row.time);
    x.push_back(std::log(row.epsilon));
    y.push_back(std::log(*row.time));
  }
  const double mx = (x[0] + x[1] + x[2]) / 3.0, my = (y[0] + y[1] + y[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  CHECK(s.slope == doctest::Approx(sxy / sxx).epsilon(1e-12));
  CHECK(s.intercept == doctest::Approx(my - s.slope * mx).epsilon(1e-12));

  const SweepResult partial = scaling_sweep(q, {0.9, 0.3, 0.25}, 1);
  CHECK(!partial.has_fit);
  CHECK(partial.message == "fewer than three blow-up runs; no fit");
}
