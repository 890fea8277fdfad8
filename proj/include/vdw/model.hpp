#pragma once

// Pressure laws, energies and right-hand sides of the regularized
// Van der Waals system, its high-frequency rescaling and the modified
// (component-wise conjugated) variant.

#include "vdw/spectral.hpp"

namespace vdw {

enum class PressureLaw { P0, P1, P2 };

const char* to_string(PressureLaw law);

struct State {
  SpectralField u1;
  SpectralField u2;

  State() = default;
  explicit State(const Grid& g) : u1(g), u2(g) {}
  State(SpectralField a, SpectralField b);

  const Grid& grid() const { return u1.grid(); }
  State& operator+=(const State& o);
  State& operator-=(const State& o);
  State& operator*=(cplx a);
  State& axpy(cplx a, const State& x);
  bool is_finite() const { return u1.is_finite() && u2.is_finite(); }
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(cplx s, State a);

enum class SystemKind { regularized, modified };

struct SystemSpec {
  SystemKind kind = SystemKind::regularized;
  double epsilon = 0.1;
  bool rescaled = true;
  // eps^alpha (or lambda) multiplying u1 inside q; 1 for the unscaled system.
  double amplitude = 1.0;

  void validate() const;
  // Coefficients of the transport and dispersion terms:
  // 1/eps^2 and 1/eps^3 when rescaled, 1 and eps otherwise.
  double transport() const;
  double dispersion() const;
};

struct EnergyReport {
  double value = 0.0;
  double quartic_part = 0.0;
  double quadratic_u1_part = 0.0;
  double quadratic_u2_part = 0.0;
};

// p(u), computed alias-free.
SpectralField pressure(PressureLaw law, const SpectralField& u);
// q(u)v: q0 = 3u^2 v, q1 = 2|u|^2 v + u^2 conj(v), q2 = 3 conj(u)^2 conj(v).
SpectralField q_apply(PressureLaw law, const SpectralField& u, const SpectralField& v);

// int_T (P(u1) - 1/2|u1|^2 + 1/2|u2|^2) dx with P = 1/4 Re u^4 (P0, P2) or
// 1/4 |u|^4 (P1).  conjugated selects 1/4 Re u1^4 - 1/2 Re u1^2 + 1/2|u2|^2
// and requires P0.
EnergyReport energy(PressureLaw law, const State& s, bool conjugated = false);

State rhs_full(const SystemSpec& spec, PressureLaw law, const State& s, double t = 0.0);
// Nonlinear part of rhs_full: everything except the per-mode linear symbol.
State rhs_nonlinear(const SystemSpec& spec, PressureLaw law, const State& s);

// p'(u) at a real point, identical for the three laws.
double pressure_slope(PressureLaw law, double u_star);
double linear_growth_rate(PressureLaw law, double u_star, int k);

}  // namespace vdw
