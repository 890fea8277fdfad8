#include "vdw/normalform.hpp"

#include <cmath>

namespace vdw {

void NormalFormSetting::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  require(!conjugated || law == PressureLaw::P0, "the conjugated normal form requires p0");
  require(std::isfinite(amplitude) && amplitude >= 0.0, "amplitude must be finite and >= 0");
}

SystemSpec NormalFormSetting::system() const {
  SystemSpec spec;
  spec.kind = conjugated ? SystemKind::modified : SystemKind::regularized;
  spec.epsilon = epsilon;
  spec.rescaled = true;
  spec.amplitude = amplitude;
  return spec;
}

namespace {

State apply_M_signed(const NormalFormSetting& s, const State& v, double sign) {
  if (s.conjugated) return State(sign * apply_m(conj(v.u2)), -sign * apply_m(conj(v.u1)));
  return State(-sign * apply_m(v.u2), -sign * apply_m(v.u1));
}

// i D dx^2 u = (0, i dx^2 u2)
State idxx(const State& u) { return State(SpectralField(u.grid()), cplx(0.0, 1.0) * derivative(u.u2, 2)); }

// A dx u = (dx u2, -dx u1), conjugated for the modified system.
State transport(const NormalFormSetting& s, const State& u) {
  State r(derivative(u.u2), -derivative(u.u1));
  if (s.conjugated) {
    r.u1 = conj(r.u1);
    r.u2 = conj(r.u2);
  }
  return r;
}

}  // namespace

State apply_M(const NormalFormSetting& s, const State& v) { return apply_M_signed(s, v, 1.0); }

State from_normal_coords(const NormalFormSetting& s, const State& v) {
  State u = v;
  u.axpy(s.epsilon, apply_M(s, v));
  return u;
}

State to_normal_coords(const NormalFormSetting& s, const State& ut) {
  require(s.epsilon > 0.0 && s.epsilon < 1.0, "normal form needs 0 < epsilon < 1");
  const double eps = s.epsilon;
  if (!s.conjugated) {
    // Mode k block: [[1, -eps/k], [-eps/k, 1]], inverse [[1, e], [e, 1]] / (1 - e^2), e = eps/k.
    State v(ut.grid());
    const int K = ut.grid().n_modes();
    v.u1[0] = ut.u1[0];
    v.u2[0] = ut.u2[0];
    for (int k = -K; k <= K; ++k) {
      if (k == 0) continue;
      const double e = eps / k;
      const double det = 1.0 - e * e;
      v.u1[k] = (ut.u1[k] + e * ut.u2[k]) / det;
      v.u2[k] = (e * ut.u1[k] + ut.u2[k]) / det;
    }
    return v;
  }
  // Neumann iteration v <- u~ - eps M v, contraction ratio eps.
  const double scale = std::hypot(norm_l2(ut.u1), norm_l2(ut.u2));
  if (scale == 0.0) return ut;
  const double tol = 1e-13 * std::min(1.0, scale);
  State v = ut;
  for (int it = 0; it < 2000; ++it) {
    State next = ut;
    next.axpy(-eps, apply_M(s, v));
    const State d = next - v;
    const double res = std::hypot(norm_l2(d.u1), norm_l2(d.u2));
    v = std::move(next);
    if (!std::isfinite(res)) break;
    if (res <= tol) return v;
  }
  fail(ErrorCode::non_convergence, "Neumann iteration for (Id + eps M)^{-1} did not converge");
}

double cancellation_residual(const NormalFormSetting& s, const State& u, double sign) {
  State r = idxx(apply_M_signed(s, u, sign));
  r -= apply_M_signed(s, idxx(u), sign);
  r += transport(s, u);
  return std::hypot(norm_l2(r.u1), norm_l2(r.u2));
}

State oscillate(const State& v, double t, double eps, Direction dir) {
  const double sgn = dir == Direction::forward ? 1.0 : -1.0;
  return State(std::polar(1.0, -sgn * t / eps) * v.u1, std::polar(1.0, sgn * t / eps) * v.u2);
}

ReducedState to_reduced(const NormalFormSetting& s, const State& v, double t) {
  State w = oscillate(v, t, s.epsilon, Direction::forward);
  if (s.conjugated) w.u1 = std::polar(1.0, -t / s.epsilon) * conj(v.u1);
  return {w.u1, w.u2, t};
}

State from_reduced(const NormalFormSetting& s, const ReducedState& w) {
  if (s.conjugated)
    return State(std::polar(1.0, -w.t / s.epsilon) * conj(w.w1), std::polar(1.0, -w.t / s.epsilon) * w.w2);
  return oscillate(State(w.w1, w.w2), w.t, s.epsilon, Direction::backward);
}

namespace {

// Cubic part of E's first component before (Id - Pi0): p(v1) + v1.
SpectralField cubic(PressureLaw law, const SpectralField& v) {
  switch (law) {
    case PressureLaw::P0: return multiply(v, v, v);
    case PressureLaw::P1: return multiply(v, conj(v), v);
    case PressureLaw::P2: {
      const SpectralField vb = conj(v);
      return multiply(vb, vb, vb);
    }
  }
  return SpectralField(v.grid());
}

}  // namespace

State operator_E(const NormalFormSetting& s, const State& v, const State& ut) {
  const cplx I(0.0, 1.0);
  const double a2 = s.amplitude * s.amplitude;
  const SpectralField ua = s.amplitude * ut.u1;
  if (s.conjugated) {
    SpectralField e1 = I * v.u1;
    e1.axpy(-I * a2, remove_mean(cubic(PressureLaw::P0, v.u1)));
    SpectralField e2 = I * v.u2;
    e2.axpy(-I, conj(q_apply(PressureLaw::P0, ua, conj(v.u2))));
    return State(std::move(e1), std::move(e2));
  }
  SpectralField e1 = -I * v.u1;
  e1.axpy(I * a2, remove_mean(cubic(s.law, v.u1)));
  // q is only real-linear for p1, p2: keep the -i inside.
  SpectralField e2 = I * v.u2 + q_apply(s.law, ua, -I * v.u2);
  return State(std::move(e1), std::move(e2));
}

SpectralField remainder_r1(const NormalFormSetting& s, const State& v) {
  const double a = s.amplitude;
  // (u~1 - v1)/eps, exactly.
  const SpectralField delta = s.conjugated ? apply_m(conj(v.u2)) : -apply_m(v.u2);
  const SpectralField x = derivative(v.u1);
  const auto pu = to_padded(a * (v.u1 + s.epsilon * delta));
  const auto pw = to_padded(a * v.u1);
  const auto pd = to_padded(a * delta);
  const auto px = to_padded(x);
  std::vector<cplx> acc(pu.size());
  const PressureLaw law = s.conjugated ? PressureLaw::P0 : s.law;
  for (size_t j = 0; j < acc.size(); ++j) {
    const cplx u = pu[j], w = pw[j], d = pd[j], xx = px[j];
    switch (law) {
      case PressureLaw::P0: acc[j] = 3.0 * d * (u + w) * xx; break;
      case PressureLaw::P1:
        acc[j] = 2.0 * (d * std::conj(u) + w * std::conj(d)) * xx + d * (u + w) * std::conj(xx);
        break;
      case PressureLaw::P2: acc[j] = 3.0 * std::conj(d) * std::conj(u + w) * std::conj(xx); break;
    }
  }
  return apply_m(from_padded(acc, v.grid()));
}

State remainder_R(const NormalFormSetting& s, const State& v, const State& ut) {
  State x = apply_M(s, operator_E(s, v, ut));
  const SpectralField r1 = remainder_r1(s, v);
  if (s.conjugated)
    x.u1 += r1;
  else
    x.u1 -= r1;
  return -1.0 * to_normal_coords(s, x);
}

ReducedRhs reduced_terms(const NormalFormSetting& s, const ReducedState& w, bool w2_frozen) {
  const cplx I(0.0, 1.0);
  const double eps = s.epsilon;
  const double a2 = s.amplitude * s.amplitude;
  const double t = w.t;
  const Grid& g = w.w1.grid();
  ReducedState wz = w;
  if (w2_frozen) wz.w2 = SpectralField(g);
  const State v = from_reduced(s, wz);
  const State ut = from_normal_coords(s, v);
  const State Rv = remainder_R(s, v, ut);
  const cplx ep = std::polar(1.0, t / eps);  // e^{it/eps}
  const cplx em = std::conj(ep);

  ReducedRhs r;
  if (s.conjugated) {
    r.R1 = -em * conj(Rv.u1);
    r.R2 = -ep * Rv.u2;
    r.dw1 = (-I * a2 / eps * ep * ep) * remove_mean(multiply(wz.w1, wz.w1, wz.w1));
    r.dw1 += r.R1;
    if (w2_frozen) {
      r.dw2_nonstiff = SpectralField(g);
    } else {
      const SpectralField ub = conj(ut.u1);
      r.dw2_nonstiff = (-3.0 * a2 / (eps * eps) * ep * ep) * multiply(ub, ub, derivative(wz.w1));
      r.dw2_nonstiff.axpy(3.0 * I * a2 / eps, multiply(ub, ub, wz.w2));
      r.dw2_nonstiff += r.R2;
    }
    return r;
  }

  r.R1 = em * Rv.u1;
  r.R2 = ep * Rv.u2;
  SpectralField g1;
  cplx phase = 1.0;
  switch (s.law) {
    case PressureLaw::P0:
      g1 = multiply(wz.w1, wz.w1, wz.w1);
      phase = ep * ep;
      break;
    case PressureLaw::P1: g1 = multiply(wz.w1, conj(wz.w1), wz.w1); break;
    case PressureLaw::P2: {
      const SpectralField wb = conj(wz.w1);
      g1 = multiply(wb, wb, wb);
      phase = em * em * em * em;
      break;
    }
  }
  r.dw1 = (-I * a2 / eps * phase) * remove_mean(g1);
  r.dw1 -= r.R1;
  if (w2_frozen) {
    r.dw2_nonstiff = SpectralField(g);
  } else {
    const SpectralField ua = s.amplitude * ut.u1;
    r.dw2_nonstiff = (-ep / (eps * eps)) * q_apply(s.law, ua, derivative(v.u1));
    r.dw2_nonstiff.axpy(-ep / eps, q_apply(s.law, ua, -I * v.u2));
    r.dw2_nonstiff -= r.R2;
  }
  return r;
}

ReducedState reduced_rhs(const NormalFormSetting& s, const ReducedState& w) {
  ReducedRhs r = reduced_terms(s, w);
  const double eps = s.epsilon;
  SpectralField dw2 = std::move(r.dw2_nonstiff);
  dw2.axpy(cplx(0.0, -1.0 / (eps * eps * eps)), derivative(w.w2, 2));
  return {std::move(r.dw1), std::move(dw2), 1.0};
}

}  // namespace vdw
