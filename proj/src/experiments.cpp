#include "vdw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace vdw {

void DatumSpec::validate() const {
  require(target_norm > 0.0 && target_norm < 1.0 / 6.0, "target_norm must lie in (0, 1/6)");
  require(k_min >= 1 && k_max >= k_min, "mode band must satisfy 1 <= k_min <= k_max");
  require(!conjugated || law == PressureLaw::P0, "conjugated data use p0");
}

SpectralField random_field(std::uint64_t seed, const Grid& g, int k_min, int k_max, bool zero_mean) {
  require(k_min >= 0 && k_max >= k_min, "invalid mode band");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SpectralField f(g);
  const int K = g.n_modes();
  for (int k = -K; k <= K; ++k) {
    const int a = std::abs(k);
    const double re = nd(rng), im = nd(rng);
    if (a < k_min || a > k_max || (zero_mean && k == 0)) continue;
    f[k] = cplx(re, im);
  }
  const double n = norm_l2(f);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

namespace {

SpectralField hermitian(const SpectralField& f) { return 0.5 * (f + conj(f)); }

}  // namespace

double datum_energy(const DatumSpec& spec, const State& d) { return energy(spec.law, d, spec.conjugated).value; }

State make_datum(const DatumSpec& spec, const Grid& g) {
  spec.validate();
  require(spec.k_max <= g.n_modes(), "mode band exceeds the grid");
  SpectralField u1 = random_field(spec.seed, g, spec.k_min, spec.k_max);
  if (spec.conjugated) u1 = hermitian(u1);
  u1 *= spec.target_norm / norm_h1(u1);
  State d(u1, SpectralField(g));
  if (spec.zero_velocity) return d;
  SpectralField u2 = random_field(spec.seed ^ 0x9e3779b97f4a7c15ULL, g, spec.k_min, spec.k_max);
  u2 *= spec.target_norm / norm_l2(u2);
  d.u2 = u2;
  while (datum_energy(spec, d) > 0.0) d.u2 *= 0.9;
  return d;
}

double sobolev_constant(int n_modes) {
  require(n_modes >= 0, "n_modes must be non-negative");
  double s = 0.0;
  // Smallest terms first.
  for (int k = n_modes; k >= 1; --k) s += 2.0 / (double(k) * k);
  return std::sqrt(1.0 + s);
}

NormalFormSetting RunParams::setting() const {
  NormalFormSetting s;
  s.epsilon = epsilon;
  s.conjugated = conjugated;
  s.law = law;
  s.amplitude = conjugated ? lambda : std::pow(epsilon, alpha);
  return s;
}

double RunParams::step() const {
  if (dt > 0.0) return dt;
  return std::min(dt_factor * epsilon * epsilon, epsilon / 20.0);
}

double energy_inequality_ratio(const NormalFormSetting& s, const State& v) {
  const double eps = s.epsilon;
  const double n1 = norm_l2(v.u1), n2 = norm_l2(v.u2);
  if (!s.conjugated && s.law == PressureLaw::P1) {
    const double rhs = (1.0 + eps) / (1.0 - eps) * n1;
    return rhs > 0.0 ? n2 / rhs : (n2 > 0.0 ? INFINITY : 0.0);
  }
  if (!s.conjugated && s.law == PressureLaw::P0) return std::nan("");
  const double a2 = s.amplitude * s.amplitude;
  const double b = 1.0 + a2 * std::pow(norm_linf(v.u1) + eps * n2, 2);
  const double den = 1.0 - 4.0 * eps * b;
  // A non-positive denominator leaves no constraint.
  if (den <= 0.0) return 0.0;
  const double rhs = b / den * (1.0 + 5.0 * eps) * n1 * n1;
  return rhs > 0.0 ? n2 * n2 / rhs : (n2 > 0.0 ? INFINITY : 0.0);
}

ExistenceRun existence_time(const RunParams& p, Trajectory* keep) {
  const NormalFormSetting s = p.setting();
  s.validate();
  DatumSpec ds = p.datum;
  ds.law = p.law;
  ds.conjugated = p.conjugated;
  const Grid g(p.n_modes);
  const State datum = make_datum(ds, g);

  IntegratorConfig cfg;
  cfg.dt = p.step();
  cfg.t_end = p.t_end;
  cfg.scheme = p.scheme;
  cfg.rho_max = p.rho_max;
  cfg.store_every = p.store_every;
  Trajectory tr = solve_full(s, datum, cfg);

  ExistenceRun r;
  r.epsilon = p.epsilon;
  r.status = tr.status;
  r.final_time = tr.final_time;
  if (tr.status == TerminalStatus::blowup) r.time = tr.blowup_time;
  const double e0 = tr.diagnostics.front().energy;
  // E(0) <= 0 is reached by shrinking u2, so E(0) itself can sit near zero;
  // drift is measured against the size of the separate energy terms.
  const EnergyReport er = energy(s.law, s.amplitude * datum, s.conjugated);
  const double scale =
      std::abs(er.quartic_part) + std::abs(er.quadratic_u1_part) + std::abs(er.quadratic_u2_part);
  const bool has_ineq = p.conjugated || p.law != PressureLaw::P0;
  r.energy_inequality_ratio = has_ineq ? 0.0 : std::nan("");
  for (size_t j = 0; j < tr.states.size(); ++j) {
    const Diagnostics& d = tr.diagnostics[j];
    r.max_norm = std::max({r.max_norm, d.norm_w1_h1, d.norm_w2_l2});
    r.energy_drift = std::max(r.energy_drift, std::abs(d.energy - e0) / (scale > 0.0 ? scale : 1.0));
    r.mean_drift = std::max({r.mean_drift, d.mean_abs_u1, d.mean_abs_u2});
    if (has_ineq) {
      const State v = to_normal_coords(s, tr.states[j]);
      r.energy_inequality_ratio = std::max(r.energy_inequality_ratio, energy_inequality_ratio(s, v));
    }
  }
  if (!tr.diagnostics.empty()) {
    r.final_norm_w1 = tr.diagnostics.back().norm_w1_h1;
    r.final_norm_w2 = tr.diagnostics.back().norm_w2_l2;
  }
  if (keep) *keep = std::move(tr);
  return r;
}

SweepResult scaling_sweep(const RunParams& base, const std::vector<double>& epsilons, int jobs) {
  require(epsilons.size() >= 3, "a sweep needs at least three epsilon values");
  for (double e : epsilons) require(e > 0.0 && e < 1.0, "epsilon must lie in (0, 1)");
  SweepResult res;
  res.rows.resize(epsilons.size());
  std::vector<std::exception_ptr> errors(epsilons.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < epsilons.size(); i = next++) {
      try {
        RunParams p = base;
        p.epsilon = epsilons[i];
        res.rows[i] = existence_time(p);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(jobs, 1, static_cast<int>(epsilons.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> x, y;
  for (const auto& r : res.rows)
    if (r.time && *r.time > 0.0) {
      x.push_back(std::log(r.epsilon));
      y.push_back(std::log(*r.time));
    }
  if (x.empty()) {
    res.message = "no blow-up observed";
    return res;
  }
  if (x.size() < 3) {
    res.message = "fewer than three blow-up runs; no fit";
    return res;
  }
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = m * sxx - sx * sx;
  require(den > 0.0, "degenerate epsilon list", ErrorCode::insufficient_sampling);
  res.slope = (m * sxy - sx * sy) / den;
  res.intercept = (sy - res.slope * sx) / m;
  double ss = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - res.intercept - res.slope * x[i];
    ss += e * e;
  }
  res.fit_residual = std::sqrt(ss / m);
  res.has_fit = true;
  res.message = "fit over blow-up runs";
  return res;
}

ContinuationSchedule continuation_schedule(double rho, double epsilon, double alpha, double C, double C0) {
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(C > 0.0 && C0 > 0.0, "constants must be positive");
  ContinuationSchedule cs;
  const double e = std::pow(epsilon, 2.0 * (1.0 - alpha));
  const double j = std::floor(C0 * rho * rho / (2.0 * C * e)) - 1.0;
  require(j >= 1.0, "epsilon too large for these constants: j < 1", ErrorCode::no_solution);
  require(j < 1e7, "schedule too long");
  cs.j_star = static_cast<int>(j);
  cs.T_low = e / (2.0 * C0 * 4.0 * rho * rho);
  cs.T_high = e / (2.0 * C0 * rho * rho);
  double sum = 0.0;
  for (int k = 0; k <= cs.j_star; ++k) {
    const double r = k == 0 ? rho : 1.2 * rho + 12.0 * C * rho * sum;
    const double T = e / (2.0 * C0 * r * r);
    cs.rho.push_back(r);
    cs.T.push_back(T);
    sum += T;
    const bool rb = r <= 2.0 * rho;
    const bool br = T >= cs.T_low && T <= cs.T_high;
    cs.rho_bounded = cs.rho_bounded && rb;
    cs.bracketing = cs.bracketing && br;
    if ((!rb || !br) && cs.first_violation < 0) cs.first_violation = k;
  }
  cs.t_star = sum;
  cs.t_star_bound = cs.t_star >= cs.j_star * cs.T_low;
  return cs;
}

std::vector<GrowthRow> growth_experiment(PressureLaw law, double u_star, const std::vector<int>& ks, int n_steps) {
  require(std::isfinite(u_star), "u_star must be finite");
  require(n_steps >= 8, "n_steps must be >= 8");
  const double dp = pressure_slope(law, u_star);
  const double w = std::abs(dp);
  std::vector<GrowthRow> out;
  for (int k : ks) {
    require(k != 0, "k must be nonzero");
    GrowthRow row;
    row.k = k;
    row.predicted = linear_growth_rate(law, u_star, k);
    const double horizon = 20.0 / (row.predicted > 0.0 ? row.predicted : std::abs(k));
    const double h = horizon / n_steps;
    const cplx ik(0.0, k);
    const Mat2 m{0.0, -ik, -ik * dp, 0.0};
    const Mat2 e = phi_matrix(0, cplx(h) * m);
    cplx a = 1.0, b = 0.0;
    std::vector<double> t, y;
    for (int n = 1; n <= n_steps; ++n) {
      const cplx a2 = e[0] * a + e[1] * b;
      const cplx b2 = e[2] * a + e[3] * b;
      a = a2;
      b = b2;
      if (2 * n >= n_steps) {
        const double nrm = std::sqrt(w * std::norm(a) + std::norm(b));
        t.push_back(n * h);
        y.push_back(std::log(nrm));
      }
    }
    const double mm = static_cast<double>(t.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      sx += t[i];
      sy += y[i];
      sxx += t[i] * t[i];
      sxy += t[i] * y[i];
    }
    row.measured = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
    out.push_back(row);
  }
  return out;
}

bool LemmaMReport::passed() const {
  return est_l2 < tolerance && m1 < tolerance && pointwise < tolerance && m2 < tolerance && m3 < tolerance;
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

LemmaMReport lemma_m_suite(std::uint64_t seed, int n_modes, const std::vector<double>& s_list, int n_fields,
                           const MultiplierOp& m_op) {
  require(n_modes >= 1 && n_fields >= 1, "need n_modes >= 1 and n_fields >= 1");
  const Grid g(n_modes);
  const double c = sobolev_constant(n_modes);
  std::vector<double> gx, gw;
  gauss_legendre(10, gx, gw);
  const int N = g.n_points();
  const double dx = 2.0 * M_PI / N;

  LemmaMReport rep;
  std::mt19937_64 seeder(seed);
  for (int f = 0; f < n_fields; ++f) {
    // Nonzero mean on purpose: m must discard it.
    const SpectralField u = random_field(seeder(), g, 0, n_modes, false);
    const SpectralField u0 = remove_mean(u);
    const SpectralField mu = m_op(u);

    for (double s : s_list)
      rep.est_l2 = std::max(rep.est_l2, std::abs(norm(mu, Norm::H(s + 1.0)) - norm(u0, Norm::H(s))));

    const auto vals = to_physical(mu);
    cplx acc = 0.0;
    double m1 = 0.0;
    for (int j = 1; j < N; ++j) {
      const double a = (j - 1) * dx;
      for (size_t q = 0; q < gx.size(); ++q) acc += 0.5 * dx * gw[q] * evaluate(u0, a + 0.5 * dx * (gx[q] + 1.0));
      m1 = std::max(m1, std::abs(vals[j] - vals[0] - cplx(0.0, 1.0) * acc));
    }
    rep.m1 = std::max(rep.m1, m1);

    rep.pointwise = std::max(rep.pointwise, norm_linf(mu) - c * norm_l2(u0));

    const SpectralField id = u0;
    const cplx mi(0.0, -1.0);
    rep.m2 = std::max({rep.m2, norm_l2(mi * derivative(mu) - id), norm_l2(mi * m_op(derivative(u)) - id)});
    const SpectralField du = derivative(u);
    rep.m3 = std::max({rep.m3, norm_l2(mi * derivative(mu, 2) - du), norm_l2(mi * m_op(derivative(u, 2)) - du)});
  }
  rep.pointwise = std::max(0.0, rep.pointwise);
  return rep;
}

}  // namespace vdw
