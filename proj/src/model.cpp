#include "vdw/model.hpp"

#include <cmath>

namespace vdw {

const char* to_string(PressureLaw law) {
  switch (law) {
    case PressureLaw::P0: return "p0";
    case PressureLaw::P1: return "p1";
    case PressureLaw::P2: return "p2";
  }
  return "?";
}

State::State(SpectralField a, SpectralField b) : u1(std::move(a)), u2(std::move(b)) { check_same_grid(u1, u2); }

State& State::operator+=(const State& o) {
  u1 += o.u1;
  u2 += o.u2;
  return *this;
}

State& State::operator-=(const State& o) {
  u1 -= o.u1;
  u2 -= o.u2;
  return *this;
}

State& State::operator*=(cplx a) {
  u1 *= a;
  u2 *= a;
  return *this;
}

State& State::axpy(cplx a, const State& x) {
  u1.axpy(a, x.u1);
  u2.axpy(a, x.u2);
  return *this;
}

State operator+(State a, const State& b) { return a += b; }
State operator-(State a, const State& b) { return a -= b; }
State operator*(cplx s, State a) { return a *= s; }

void SystemSpec::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  require(std::isfinite(amplitude) && amplitude >= 0.0, "amplitude must be finite and >= 0");
}

double SystemSpec::transport() const { return rescaled ? 1.0 / (epsilon * epsilon) : 1.0; }
double SystemSpec::dispersion() const { return rescaled ? 1.0 / (epsilon * epsilon * epsilon) : epsilon; }

SpectralField pressure(PressureLaw law, const SpectralField& u) {
  SpectralField cube;
  switch (law) {
    case PressureLaw::P0: cube = multiply(u, u, u); break;
    case PressureLaw::P1: cube = multiply(u, conj(u), u); break;
    case PressureLaw::P2: {
      const SpectralField ub = conj(u);
      cube = multiply(ub, ub, ub);
      break;
    }
  }
  return cube - u;
}

SpectralField q_apply(PressureLaw law, const SpectralField& u, const SpectralField& v) {
  check_same_grid(u, v);
  switch (law) {
    case PressureLaw::P0: return 3.0 * multiply(u, u, v);
    case PressureLaw::P1: {
      // Same padded transforms for both terms.
      const auto pu = to_padded(u);
      const auto pv = to_padded(v);
      std::vector<cplx> acc(pu.size());
      for (size_t j = 0; j < pu.size(); ++j)
        acc[j] = 2.0 * std::norm(pu[j]) * pv[j] + pu[j] * pu[j] * std::conj(pv[j]);
      return from_padded(acc, u.grid());
    }
    case PressureLaw::P2: {
      const SpectralField ub = conj(u);
      return 3.0 * multiply(ub, ub, conj(v));
    }
  }
  return SpectralField(u.grid());
}

EnergyReport energy(PressureLaw law, const State& s, bool conjugated) {
  require(!conjugated || law == PressureLaw::P0, "the modified energy is defined for p0 only");
  check_same_grid(s.u1, s.u2);
  const auto pu = to_padded(s.u1);
  const auto pv = to_padded(s.u2);
  double quart = 0.0, quad1 = 0.0, quad2 = 0.0;
  for (size_t j = 0; j < pu.size(); ++j) {
    const cplx z = pu[j];
    const cplx z2 = z * z;
    if (!conjugated && law == PressureLaw::P1)
      quart += 0.25 * std::norm(z) * std::norm(z);
    else
      quart += 0.25 * (z2 * z2).real();
    quad1 += conjugated ? -0.5 * z2.real() : -0.5 * std::norm(z);
    quad2 += 0.5 * std::norm(pv[j]);
  }
  const double w = 2.0 * M_PI / static_cast<double>(pu.size());
  EnergyReport r;
  r.quartic_part = w * quart;
  r.quadratic_u1_part = w * quad1;
  r.quadratic_u2_part = w * quad2;
  r.value = r.quartic_part + r.quadratic_u1_part + r.quadratic_u2_part;
  return r;
}

State rhs_nonlinear(const SystemSpec& spec, PressureLaw law, const State& s) {
  require(spec.kind == SystemKind::regularized || law == PressureLaw::P0,
          "the modified system uses p0");
  const double tau = spec.transport();
  State out(s.grid());
  if (spec.amplitude == 0.0) return out;
  const SpectralField ua = spec.amplitude * s.u1;
  SpectralField f = q_apply(law, ua, derivative(s.u1));
  if (spec.kind == SystemKind::modified) f = conj(f);
  out.u2 = -tau * f;
  return out;
}

State rhs_full(const SystemSpec& spec, PressureLaw law, const State& s, double) {
  const double tau = spec.transport();
  const double delta = spec.dispersion();
  const SpectralField dx1 = derivative(s.u1);
  const SpectralField dx2 = derivative(s.u2);
  const SpectralField dxx2 = derivative(s.u2, 2);
  // A dx u = (dx u2, -dx u1); D dx^2 u = (0, dx^2 u2).
  SpectralField a1 = dx2;
  SpectralField a2 = -dx1;
  if (spec.kind == SystemKind::modified) {
    a1 = conj(a1);
    a2 = conj(a2);
  }
  State out(-tau * a1, -tau * a2);
  out.u2.axpy(cplx(0.0, -delta), dxx2);
  out += rhs_nonlinear(spec, law, s);
  return out;
}

double pressure_slope(PressureLaw, double u_star) { return -1.0 + 3.0 * u_star * u_star; }

double linear_growth_rate(PressureLaw law, double u_star, int k) {
  const double dp = pressure_slope(law, u_star);
  return dp < 0.0 ? std::abs(k) * std::sqrt(-dp) : 0.0;
}

}  // namespace vdw
