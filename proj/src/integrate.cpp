#include "vdw/integrate.hpp"

#include <cmath>

namespace vdw {

const char* to_string(Scheme s) { return s == Scheme::exp_rk2 ? "exp_rk2" : "exp_euler"; }

const char* to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::completed: return "completed";
    case TerminalStatus::blowup: return "blowup";
    case TerminalStatus::diverged: return "diverged";
  }
  return "?";
}

void IntegratorConfig::validate() const {
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end must be positive");
  require(rho_max > 0.0, "rho_max must be positive");
  require(store_every >= 1, "store_every must be >= 1");
}

ModeOperator full_linear_operator(const SystemSpec& spec) {
  const double tau = spec.transport();
  const double delta = spec.dispersion();
  const cplx I(0.0, 1.0);
  ModeOperator op;
  if (spec.kind == SystemKind::regularized) {
    op.a = [=](int k) { return Mat2{0.0, -I * (k * tau), I * (k * tau), I * (double(k) * k * delta)}; };
    return op;
  }
  op.conjugate_pairing = true;
  op.a = [=](int k) { return Mat2{0.0, -I * (k * tau), I * (k * tau), -I * (double(k) * k * delta)}; };
  op.b = [=](int k) { return Mat2{I * (double(k) * k * delta), I * (k * tau), -I * (k * tau), 0.0}; };
  return op;
}

ModeOperator reduced_linear_operator(double epsilon) {
  const double delta = 1.0 / (epsilon * epsilon * epsilon);
  ModeOperator op;
  op.a = [=](int k) { return Mat2{0.0, 0.0, 0.0, cplx(0.0, double(k) * k * delta)}; };
  return op;
}

ModeBlocks::ModeBlocks(const ModeOperator& op, int n_modes, int phi_index, double h, double scale)
    : conj_(op.conjugate_pairing), K_(n_modes) {
  a_.resize(2 * K_ + 1);
  if (conj_) b_.resize(2 * K_ + 1);
  for (int k = -K_; k <= K_; ++k) {
    a_[k + K_] = scale * phi_matrix(phi_index, h * op.a(k));
    if (conj_) b_[k + K_] = scale * phi_matrix(phi_index, h * op.b(k));
  }
}

State ModeBlocks::apply(const State& u) const {
  State r(u.grid());
  if (!conj_) {
    for (int k = -K_; k <= K_; ++k) {
      const Mat2& m = a_[k + K_];
      const cplx x = u.u1[k], y = u.u2[k];
      r.u1[k] = m[0] * x + m[1] * y;
      r.u2[k] = m[2] * x + m[3] * y;
    }
    return r;
  }
  for (int k = -K_; k <= K_; ++k) {
    const Mat2& ma = a_[k + K_];
    const Mat2& mb = b_[k + K_];
    r.u1[k] = ma[0] * u.u1[k] + ma[1] * std::conj(u.u2[-k]);
    r.u2[k] = mb[0] * u.u2[k] + mb[1] * std::conj(u.u1[-k]);
  }
  return r;
}

ExpStepper::ExpStepper(const ModeOperator& op, int n_modes, double dt, Scheme scheme, Nonlinear n)
    : dt_(dt), scheme_(scheme), n_(std::move(n)) {
  require(dt > 0.0, "dt must be positive");
  e_full_ = ModeBlocks(op, n_modes, 0, dt, 1.0);
  if (scheme_ == Scheme::exp_euler) {
    b1_ = ModeBlocks(op, n_modes, 1, dt, dt);
    return;
  }
  // Exponential midpoint rule (c2 = 1/2, b2 = 2 phi2, b1 = phi1 - 2 phi2).
  e_half_ = ModeBlocks(op, n_modes, 0, 0.5 * dt, 1.0);
  p1_half_ = ModeBlocks(op, n_modes, 1, 0.5 * dt, 0.5 * dt);
  const ModeBlocks p1(op, n_modes, 1, dt, dt);
  const ModeBlocks p2(op, n_modes, 2, dt, 2.0 * dt);
  // b1 = h phi1 - 2 h phi2 is linear in the blocks; keep both and combine on apply.
  b1_ = p1;
  b2_ = p2;
}

State ExpStepper::step(const State& u, double t) const {
  const State nu = n_(t, u);
  if (scheme_ == Scheme::exp_euler) return e_full_.apply(u) + b1_.apply(nu);
  const State U = e_half_.apply(u) + p1_half_.apply(nu);
  const State nU = n_(t + 0.5 * dt_, U);
  State out = e_full_.apply(u) + b1_.apply(nu);
  out += b2_.apply(nU - nu);
  return out;
}

ExpStepper make_full_stepper(const SystemSpec& spec, PressureLaw law, const Grid& g, double dt, Scheme scheme) {
  return ExpStepper(full_linear_operator(spec), g.n_modes(), dt, scheme,
                    [spec, law](double, const State& u) { return rhs_nonlinear(spec, law, u); });
}

ExpStepper make_reduced_stepper(const NormalFormSetting& s, const Grid& g, double dt, Scheme scheme,
                                bool w2_frozen) {
  require(dt <= s.epsilon / 20.0, "dt must not exceed epsilon/20 for the reduced system");
  return ExpStepper(reduced_linear_operator(s.epsilon), g.n_modes(), dt, scheme,
                    [s, w2_frozen](double t, const State& w) {
                      ReducedRhs r = reduced_terms(s, {w.u1, w.u2, t}, w2_frozen);
                      return State(std::move(r.dw1), std::move(r.dw2_nonstiff));
                    });
}

State step_full(const SystemSpec& spec, PressureLaw law, const State& u, double t, double dt, Scheme scheme) {
  return make_full_stepper(spec, law, u.grid(), dt, scheme).step(u, t);
}

ReducedState step_reduced(const NormalFormSetting& s, const ReducedState& w, double dt, Scheme scheme) {
  const State r = make_reduced_stepper(s, w.w1.grid(), dt, scheme).step(State(w.w1, w.w2), w.t);
  return {r.u1, r.u2, w.t + dt};
}

namespace {

double mean_abs(const SpectralField& f) { return std::abs(project_mean(f)); }

Diagnostics diagnose(const NormalFormSetting& s, const State& ut, const State& v) {
  Diagnostics d;
  d.norm_w1_h1 = norm_h1(v.u1);
  d.norm_w2_l2 = norm_l2(v.u2);
  d.norm_u1_h1 = norm_h1(ut.u1);
  d.norm_u2_l2 = norm_l2(ut.u2);
  d.energy = energy(s.law, s.amplitude * ut, s.conjugated).value;
  d.mean_abs_u1 = mean_abs(ut.u1);
  d.mean_abs_u2 = mean_abs(ut.u2);
  d.cancellation_residual = cancellation_residual(s, ut);
  return d;
}

double blowup_norm(const NormalFormSetting& s, const State& ut) {
  const State v = to_normal_coords(s, ut);
  return std::max(norm_h1(v.u1), norm_l2(v.u2));
}

void check_zero_mean(const State& u) {
  const double tol = 1e-12;
  require(std::abs(project_mean(u.u1)) < tol && std::abs(project_mean(u.u2)) < tol, "datum must have zero mean");
}

// Shared driver.  `advance(u, t, h)` makes one step of size h.
template <class Advance, class Norm, class Diagnose>
Trajectory run(State u, const IntegratorConfig& cfg, bool reduced, Advance advance, Norm blow_norm,
               Diagnose diag) {
  cfg.validate();
  Trajectory tr;
  tr.reduced = reduced;
  double t = 0.0;
  auto record = [&](const State& x, double time) {
    tr.times.push_back(time);
    tr.states.push_back(x);
    tr.diagnostics.push_back(diag(x, time));
  };
  record(u, 0.0);
  if (blow_norm(u, 0.0) > cfg.rho_max) {
    tr.status = TerminalStatus::blowup;
    tr.blowup_time = 0.0;
    return tr;
  }
  const long n_steps = std::max(1L, std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  for (long n = 1; n <= n_steps; ++n) {
    const double h = std::min(cfg.dt, cfg.t_end - t);
    State next = advance(u, t, h);
    const double tn = (n == n_steps) ? cfg.t_end : t + h;
    if (!next.is_finite()) {
      tr.status = TerminalStatus::diverged;
      tr.final_time = t;
      return tr;
    }
    const double nn = blow_norm(next, tn);
    if (!std::isfinite(nn)) {
      tr.status = TerminalStatus::diverged;
      tr.final_time = t;
      return tr;
    }
    if (nn > cfg.rho_max) {
      // Bisect the step length for the crossing, relative accuracy 1e-3.
      double lo = 0.0, hi = h;
      State at_hi = next;
      while (hi - lo > 5e-4 * (t + lo) && hi - lo > 1e-15 * (1.0 + t)) {
        const double mid = 0.5 * (lo + hi);
        State x = advance(u, t, mid);
        if (x.is_finite() && blow_norm(x, t + mid) <= cfg.rho_max) {
          lo = mid;
        } else {
          hi = mid;
          at_hi = std::move(x);
        }
      }
      tr.status = TerminalStatus::blowup;
      tr.blowup_time = t + 0.5 * (lo + hi);
      tr.final_time = t + hi;
      if (at_hi.is_finite()) record(at_hi, t + hi);
      return tr;
    }
    u = std::move(next);
    t = tn;
    if (n % cfg.store_every == 0 || n == n_steps) record(u, t);
  }
  tr.final_time = t;
  return tr;
}

}  // namespace

Diagnostics diagnose_full(const NormalFormSetting& s, const State& ut) {
  return diagnose(s, ut, to_normal_coords(s, ut));
}

Diagnostics diagnose_reduced(const NormalFormSetting& s, const ReducedState& w) {
  const State v = from_reduced(s, w);
  return diagnose(s, from_normal_coords(s, v), v);
}

Trajectory solve_full(const NormalFormSetting& s, const State& datum, const IntegratorConfig& cfg) {
  s.validate();
  check_zero_mean(datum);
  const SystemSpec spec = s.system();
  const ExpStepper main = make_full_stepper(spec, s.law, datum.grid(), cfg.dt, cfg.scheme);
  auto advance = [&](const State& u, double t, double h) {
    if (h == cfg.dt) return main.step(u, t);
    return make_full_stepper(spec, s.law, u.grid(), h, cfg.scheme).step(u, t);
  };
  auto bn = [&](const State& u, double) { return blowup_norm(s, u); };
  auto dg = [&](const State& u, double) { return diagnose_full(s, u); };
  return run(datum, cfg, false, advance, bn, dg);
}

Trajectory solve_reduced(const NormalFormSetting& s, const ReducedState& datum, const IntegratorConfig& cfg) {
  s.validate();
  const State w0(datum.w1, datum.w2);
  check_zero_mean(w0);
  const ExpStepper main = make_reduced_stepper(s, w0.grid(), cfg.dt, cfg.scheme);
  const double t0 = datum.t;
  auto advance = [&](const State& w, double t, double h) {
    if (h == cfg.dt) return main.step(w, t0 + t);
    return make_reduced_stepper(s, w.grid(), h, cfg.scheme).step(w, t0 + t);
  };
  auto bn = [](const State& w, double) { return std::max(norm_h1(w.u1), norm_l2(w.u2)); };
  auto dg = [&](const State& w, double t) { return diagnose_reduced(s, {w.u1, w.u2, t0 + t}); };
  Trajectory tr = run(w0, cfg, true, advance, bn, dg);
  for (double& t : tr.times) t += t0;
  if (!std::isnan(tr.blowup_time)) tr.blowup_time += t0;
  tr.final_time += t0;
  return tr;
}

W1Samples sample_w1_equation(const NormalFormSetting& s, const SpectralField& w1_0, double dt, int n_steps,
                             int store_every) {
  s.validate();
  require(n_steps >= 2 && store_every >= 1, "need at least two steps");
  const Grid& g = w1_0.grid();
  const ExpStepper st = make_reduced_stepper(s, g, dt, Scheme::exp_rk2, true);
  W1Samples out;
  out.h = dt * store_every;
  State w(w1_0, SpectralField(g));
  auto record = [&](double t) {
    out.times.push_back(t);
    out.w1.push_back(w.u1);
    out.R1.push_back(reduced_terms(s, {w.u1, w.u2, t}, true).R1);
  };
  record(0.0);
  for (int n = 1; n <= n_steps; ++n) {
    w = st.step(w, (n - 1) * dt);
    if (n % store_every == 0) record(n * dt);
  }
  return out;
}

}  // namespace vdw
