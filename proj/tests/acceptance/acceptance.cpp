// Acceptance checks.  Usage: acceptance <criterion 1..11>
// Prints one [PASS]/[FAIL] line and exits non-zero on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vdw/experiments.hpp"
#include "vdw/jets_ibp.hpp"

using namespace vdw;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  double budget_s = 0.0;
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

const std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.025};

RunParams run_params(PressureLaw law, bool conjugated, double alpha_or_lambda, double eps) {
  RunParams p;
  p.law = law;
  p.conjugated = conjugated;
  if (conjugated)
    p.lambda = alpha_or_lambda;
  else
    p.alpha = alpha_or_lambda;
  p.epsilon = eps;
  p.datum.law = law;
  p.datum.conjugated = conjugated;
  return p;
}

struct LawCase {
  const char* name;
  PressureLaw law;
  bool conjugated;
  double param;
};

const std::vector<LawCase> law_cases = {{"p0", PressureLaw::P0, false, 0.0},
                                        {"p1", PressureLaw::P1, false, 0.5},
                                        {"p2", PressureLaw::P2, false, 0.25},
                                        {"modified", PressureLaw::P0, true, 0.2}};

Outcome c1() {
  const LemmaMReport r = lemma_m_suite(1, 64, {0.0, 1.0, 2.0}, 100);
  const double worst = std::max({r.est_l2, r.m1, r.pointwise, r.m2, r.m3});
  return {worst < 1e-10,
          "K=64, 100 fields: L2 " + fmt(r.est_l2) + ", m1 " + fmt(r.m1) + ", pointwise " + fmt(r.pointwise) +
              ", m2 " + fmt(r.m2) + ", m3 " + fmt(r.m3),
          1.0};
}

Outcome c2() {
  const Grid g(64);
  std::mt19937_64 rng(2);
  double cp = 0.0, cm = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State u(random_field(rng(), g, 0, 64, false), random_field(rng(), g, 0, 64, false));
    cp = std::max(cp, cancellation_residual({0.1, false, PressureLaw::P1, 1.0}, u));
    cm = std::max(cm, cancellation_residual({0.1, true, PressureLaw::P0, 1.0}, u));
  }
  return {cp < 1e-12 && cm < 1e-12, "plain " + fmt(cp) + ", conjugated " + fmt(cm), 1.0};
}

Outcome c3() {
  bool ok = true;
  std::string d;
  for (const LawCase& lc : law_cases) {
    if (lc.law == PressureLaw::P0 && !lc.conjugated) continue;
    double drift[2] = {0.0, 0.0};
    double mean = 0.0;
    for (int i = 0; i < 2; ++i) {
      RunParams p = run_params(lc.law, lc.conjugated, lc.param, 0.05);
      p.n_modes = 8;
      p.datum.k_max = 3;
      p.t_end = 0.2;
      p.dt = i == 0 ? 5e-6 : 2.5e-6;
      p.rho_max = 1e300;
      p.store_every = 200;
      const ExistenceRun r = existence_time(p);
      drift[i] = r.energy_drift;
      mean = std::max(mean, r.mean_drift);
    }
    const double order = std::log2(drift[0] / drift[1]);
    const bool case_ok = drift[1] < 1e-6 && mean < 1e-12 && order >= 1.8;
    ok = ok && case_ok;
    d += std::string(d.empty() ? "" : "; ") + lc.name + " drift " + fmt(drift[1]) + " order " + fmt(order) +
         " mean " + fmt(mean) + (case_ok ? "" : " (fail)");
  }
  return {ok, d, 4 * 60.0};
}

double h1l2(const State& a) { return std::hypot(norm_h1(a.u1), norm_l2(a.u2)); }

Outcome c4() {
  bool ok = true;
  std::string d;
  const double eps = 0.1, T = 0.1 * eps * eps;
  const int steps = 200;
  const double dt = T / steps;
  const double tol = std::max(10.0 * dt, 1e-7);
  for (const LawCase& lc : law_cases) {
    const RunParams p = run_params(lc.law, lc.conjugated, lc.param, eps);
    const NormalFormSetting s = p.setting();
    const State u0 = make_datum(p.datum, Grid(p.n_modes));
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = T;
    cfg.rho_max = 1e300;
    cfg.store_every = steps;
    const Trajectory full = solve_full(s, u0, cfg);
    const Trajectory red = solve_reduced(s, to_reduced(s, to_normal_coords(s, u0), 0.0), cfg);
    const State& w = red.states.back();
    const State back = from_normal_coords(s, from_reduced(s, {w.u1, w.u2, red.times.back()}));
    const double diff = h1l2(back - full.states.back());
    ok = ok && diff < tol && full.status == TerminalStatus::completed && red.status == TerminalStatus::completed;
    d += std::string(d.empty() ? "" : "; ") + lc.name + " " + fmt(diff);
  }
  return {ok, d + " (tolerance " + fmt(tol) + ")", 120.0};
}

// Literal recursion f_0 = (Id - Pi0) u^3, f_{n+1}(u) = f_n'(u)[f_0(u)], the
// derivative taken by the discrete Cauchy formula (exact for polynomials of
// degree below the node count).
SpectralField cube(const SpectralField& u) {
  SpectralField c = oracle::convolve3(u, u, u);
  c[0] = 0.0;
  return c;
}

SpectralField literal_fn(const SpectralField& u, int n) {
  if (n == 0) return cube(u);
  const SpectralField v = cube(u);
  const int N = 16;
  SpectralField acc(u.grid());
  for (int j = 0; j < N; ++j) {
    const cplx s = std::polar(1.0, 2.0 * M_PI * j / N);
    acc.axpy(1.0 / (s * double(N)), literal_fn(u + s * v, n - 1));
  }
  return acc;
}

Outcome c5() {
  std::string d;
  // Jets against the literal recursion.
  const Grid gj(4);
  std::mt19937_64 rng(5);
  double jet = 0.0;
  for (int i = 0; i < 3; ++i) {
    const SpectralField u = oracle::random(rng, gj, 4, true, 0.5);
    for (int n = 0; n <= 4; ++n) {
      const SpectralField want = literal_fn(u, n);
      jet = std::max(jet, norm_l2(f_n(u, n) - want) / std::max(1.0, norm_l2(want)));
    }
  }
  const bool jet_ok = jet < 1e-10;

  // Implicit representations along reference w1 trajectories.
  const double eps = 0.1, lambda = 0.5, dt = 5e-4;
  const double tol = 5.0 * dt + 1e-8;
  SpectralField w0 = random_field(5, Grid(16), 1, 4);
  w0 *= 0.3 / norm_h1(w0);
  const W1Samples mod = sample_w1_equation({eps, true, PressureLaw::P0, lambda}, w0, dt, 1000, 5);
  const double r1 = implicit_residual(mod, {1, lambda, eps, 0.0});
  const double r2 = implicit_residual(mod, {2, lambda, eps, 0.0});
  const W1Samples p2 =
      sample_w1_equation({eps, false, PressureLaw::P2, std::pow(eps, 0.25)}, w0, dt, 1000, 5);
  const double rp2 = ibp_once_p2(p2, 0.25, eps).residual;
  const bool ibp_ok = r1 < tol && r2 < tol && rp2 < tol;

  // Bound on f_n over random fields.
  const Grid gb(32);
  double worst = 0.0, worst_l2 = 0.0;
  for (int i = 0; i < 50; ++i) {
    SpectralField u = random_field(5000 + i, gb, 1, 2);
    u *= 0.3 / norm_h1(u);
    for (int n = 0; n <= 6; ++n) {
      const FnBoundReport b = verify_fn_bound(u, n);
      worst = std::max(worst, b.ratio);
      worst_l2 = std::max(worst_l2, b.ratio_l2);
    }
  }
  const bool bound_ok = worst <= 1.0;

  d = "jets " + fmt(jet) + "; implicit n=1 " + fmt(r1) + ", n=2 " + fmt(r2) + ", p2 single " + fmt(rp2) +
      " (tolerance " + fmt(tol) + "); f_n bound worst ratio H1 " + fmt(worst) + ", L2 " + fmt(worst_l2);
  return {jet_ok && ibp_ok && bound_ok, d, 120.0};
}

Outcome c6() {
  const int a = choose_n(0.5, 0.1, 1.0), b = choose_n(0.5, 1e-3, 1.0), c = choose_n(0.5, 0.9, 1.0);
  bool cond = true;
  for (double cl : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double eps = 0.9; eps > 1e-8; eps /= 3.0) {
      const int n = choose_n(cl, eps, 1.0);
      cond = cond && n >= 1 && (2.0 * n + 1.0) * std::pow(cl, 2.0 * (n + 1)) <= eps;
    }
  return {a == 2 && b == 6 && c == 1 && cond,
          "eps 0.1 -> " + std::to_string(a) + ", 1e-3 -> " + std::to_string(b) + ", 0.9 -> " + std::to_string(c) +
              "; condition " + (cond ? "holds" : "violated"),
          1.0};
}

std::string sweep_detail(const SweepResult& r) {
  std::string d;
  for (const auto& row : r.rows)
    d += std::string(d.empty() ? "" : ", ") + "eps " + fmt(row.epsilon) + ": " +
         (row.time ? "T " + fmt(*row.time) : std::string(to_string(row.status)));
  return d;
}

Outcome c7() {
  const RunParams p = run_params(PressureLaw::P0, false, 0.0, 0.1);
  const SweepResult r = scaling_sweep(p, eps_list, 4);
  const bool ok = r.has_fit && std::abs(r.slope - 2.0) <= 0.4;
  std::string d = sweep_detail(r) + "; ";
  d += r.has_fit ? "slope " + fmt(r.slope) + " (residual " + fmt(r.fit_residual) + ")" : r.message;
  return {ok, d, 600.0};
}

Outcome c8() {
  bool ok = true;
  std::string d;
  for (const LawCase& lc : law_cases) {
    if (lc.law == PressureLaw::P0 && !lc.conjugated) continue;
    const RunParams p = run_params(lc.law, lc.conjugated, lc.param, 0.1);
    const SweepResult r = scaling_sweep(p, eps_list, 4);
    double worst = 0.0;
    bool case_ok = true;
    for (const auto& row : r.rows) {
      case_ok = case_ok && row.status == TerminalStatus::completed && !row.time && row.final_time >= 0.5 - 1e-12;
      if (!std::isnan(row.energy_inequality_ratio)) worst = std::max(worst, row.energy_inequality_ratio);
    }
    case_ok = case_ok && worst <= 1.0;
    ok = ok && case_ok;
    d += std::string(d.empty() ? "" : "; ") + lc.name + " " + (case_ok ? "bounded" : sweep_detail(r)) +
         ", inequality ratio " + fmt(worst);
  }
  return {ok, d, 600.0};
}

Outcome c9() {
  double worst = 0.0, hyper = 0.0;
  for (const auto& r : growth_experiment(PressureLaw::P0, 0.0, {1, 2, 4, 8}))
    worst = std::max(worst, std::abs(r.measured - r.predicted) / r.predicted);
  for (const auto& r : growth_experiment(PressureLaw::P0, 1.0, {1, 2, 4, 8}))
    hyper = std::max(hyper, std::abs(r.measured));
  return {worst < 0.01 && hyper < 1e-6,
          "elliptic relative error " + fmt(worst) + ", hyperbolic rate " + fmt(hyper), 10.0};
}

Outcome c10() {
  bool ok = true;
  std::string d;
  for (double eps : {0.2, 0.1, 0.05}) {
    const RunParams p = run_params(PressureLaw::P0, false, 0.0, eps);
    const NormalFormSetting s = p.setting();
    const State u0 = make_datum(p.datum, Grid(p.n_modes));
    const ReducedState w = to_reduced(s, to_normal_coords(s, u0), 0.0);
    const double T = 0.1 * eps * eps;
    const int ns = 512;
    const PicardResult pr = picard_solve(w.w1, w.w2, s, T, 50, ns, 1e-10);
    IntegratorConfig cfg;
    cfg.dt = T / (ns - 1);
    cfg.t_end = T;
    cfg.rho_max = 1e300;
    const Trajectory tr = solve_reduced(s, w, cfg);
    double diff = 0.0;
    for (size_t j = 0; j < std::min(tr.states.size(), pr.states.size()); ++j)
      diff = std::max({diff, norm_h1(tr.states[j].u1 - pr.states[j].w1), norm_l2(tr.states[j].u2 - pr.states[j].w2)});
    double ratio = 0.0;
    for (double r : pr.report.contraction_ratios) ratio = std::max(ratio, r);
    const double tol = std::max(5.0 * cfg.dt, 1e-7);
    ok = ok && pr.report.converged && ratio < 1.0 && diff < tol && tr.states.size() == pr.states.size();
    d += std::string(d.empty() ? "" : "; ") + "eps " + fmt(eps) + ": " + std::to_string(pr.report.iterates) +
         " iterates, ratio " + fmt(ratio) + ", difference " + fmt(diff) + " (tolerance " + fmt(tol) + ")";
  }
  return {ok, d, 60.0};
}

Outcome c11() {
  const ContinuationSchedule s = continuation_schedule(0.5, 0.01, 0.5, 1.0, 1.0);
  const bool worked =
      std::abs(s.T[0] - 0.02) < 1e-15 && std::abs(s.rho[1] - 0.72) < 1e-15 && s.j_star == 11;
  std::string d = "T_0 " + fmt(s.T[0]) + ", rho_1 " + fmt(s.rho[1]) + ", j " + std::to_string(s.j_star) +
                  "; bracketing " + (s.bracketing ? "holds" : "fails") + ", rho_k <= 2 rho " +
                  (s.rho_bounded ? "holds" : "fails");
  if (s.first_violation >= 0)
    d += " from k=" + std::to_string(s.first_violation) + " (rho_k " + fmt(s.rho[s.first_violation]) + ", T_k " +
         fmt(s.T[s.first_violation]) + " vs T_low " + fmt(s.T_low) + ")";
  return {worked && s.bracketing && s.rho_bounded, d, 1.0};
}

const char* title(int c) {
  static const char* t[] = {"",
                            "multiplier identities",
                            "key cancellation",
                            "energy and mean conservation",
                            "transform consistency",
                            "jets and integration by parts",
                            "choice of n",
                            "existence-time scaling",
                            "boundedness for the regularized laws",
                            "elliptic growth",
                            "Picard iteration",
                            "continuation arithmetic"};
  return t[c];
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <criterion 1..11>\n", argv[0]);
    return 1;
  }
  const int c = std::atoi(argv[1]);
  const std::vector<std::function<Outcome()>> table = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  if (c < 1 || c > 11) {
    std::fprintf(stderr, "criterion must be in 1..11\n");
    return 1;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = table[c - 1]();
  } catch (const std::exception& e) {
    o.detail = std::string("error: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = o.budget_s <= 0.0 || secs <= o.budget_s;
  const bool pass = o.pass && in_time;
  std::printf("[%s] criterion %d: %s: %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c, title(c), o.detail.c_str(), secs,
              in_time ? "" : " (over budget)");
  return pass ? 0 : 1;
}
