#pragma once

// Normal form v = (Id + eps M)^{-1} u~ of the rescaled systems, the time
// oscillation factorization, and the reduced (w1, w2) right-hand sides.
//
// Plain system:     M v = (-m v2, -m v1).
// Modified system:  M v = (m conj(v2), -m conj(v1)).  This is the antilinear
//   operator for which [iD dx^2, M] + C A dx = 0 holds exactly.
//
// Reduced variables: w1 = e^{-it/eps} v1 (plain) or e^{-it/eps} conj(v1)
// (modified), w2 = e^{it/eps} v2 in both cases.

#include "vdw/model.hpp"

namespace vdw {

struct NormalFormSetting {
  double epsilon = 0.1;
  bool conjugated = false;
  PressureLaw law = PressureLaw::P1;
  // eps^alpha (plain) or lambda (modified), the factor inside q.
  double amplitude = 1.0;

  void validate() const;
  SystemSpec system() const;
};

struct ReducedState {
  SpectralField w1;
  SpectralField w2;
  double t = 0.0;
};

State apply_M(const NormalFormSetting& s, const State& v);
// Solves (Id + eps M) v = u~.  Exact per mode in the plain case, Neumann
// iteration (ratio eps) in the conjugated case.
State to_normal_coords(const NormalFormSetting& s, const State& u_tilde);
State from_normal_coords(const NormalFormSetting& s, const State& v);

// || ([iD dx^2, M] + A dx) u ||_L2, with C A dx in the conjugated case.
// sign = -1 flips M (fault injection for tests).
double cancellation_residual(const NormalFormSetting& s, const State& u, double sign = 1.0);

enum class Direction { forward, backward };
// Forward: (e^{-it/eps} v1, e^{it/eps} v2).  Backward undoes it.
State oscillate(const State& v, double t, double eps, Direction dir);

// v -> w at time t, including the conjugation of the first component in
// the modified case; and the inverse.
ReducedState to_reduced(const NormalFormSetting& s, const State& v, double t);
State from_reduced(const NormalFormSetting& s, const ReducedState& w);

State operator_E(const NormalFormSetting& s, const State& v, const State& u_tilde);
// r1 = eps^{-1} m((q(a u~1) - q(a v1)) dx v1), using the symbolic difference.
SpectralField remainder_r1(const NormalFormSetting& s, const State& v);
// Plain:    R v = -(Id + eps M)^{-1} (M E v - (r1, 0)).
// Modified: R v = -(Id + eps M)^{-1} (M E v + (r1, 0)).
State remainder_R(const NormalFormSetting& s, const State& v, const State& u_tilde);

struct ReducedRhs {
  // d/dt w1, full.
  SpectralField dw1;
  // d/dt w2 without the stiff term -(i/eps^3) dx^2 w2.
  SpectralField dw2_nonstiff;
  // Remainders as they enter the w-equations: dw1 = (...) -/+ R1.
  SpectralField R1;
  SpectralField R2;
};

// Assembled reduced system.  With w2_frozen the second unknown is held at
// zero (the w1 equation driven by the remainder of v2 = 0).
ReducedRhs reduced_terms(const NormalFormSetting& s, const ReducedState& w, bool w2_frozen = false);
// Full time derivative including the stiff dispersion.
ReducedState reduced_rhs(const NormalFormSetting& s, const ReducedState& w);

}  // namespace vdw
