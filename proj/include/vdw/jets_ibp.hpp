#pragma once

// Integration-by-parts tower for eps dt w1 = mu f(w1) + eps R1 with
// f(u) = (Id - Pi0) u^3 and mu = -i lambda^2 e^{2it/eps}.
//
// f_n is the n-th time derivative of f along the flow of u' = f(u), so
// f_n(u) = n! (n+1) u_{n+1} where u_j are the Taylor coefficients of that
// flow.  Tangent jets give f_n'(u)[v] the same way.

#include <vector>

#include "vdw/integrate.hpp"

namespace vdw {

constexpr int max_jet_depth = 16;

struct JetSequence {
  SpectralField base;
  std::vector<SpectralField> coeffs;  // u_0 .. u_depth
};

struct IbpCoefficients {
  int n = 1;
  double lambda = 0.0;
  double epsilon = 0.1;
  double c_embed = 0.0;
};

JetSequence ode_jet(const SpectralField& u, int depth);
// Tangent jet: coefficients du_0 = v, ..., du_depth.
std::vector<SpectralField> tangent_jet(const JetSequence& jet, const SpectralField& v);

SpectralField f_n(const SpectralField& u, int n);
SpectralField f_n_directional(const SpectralField& u, int n, const SpectralField& v);

cplx mu(double t, double lambda, double epsilon);

SpectralField P_n_eval(const SpectralField& w1_t, const SpectralField& w1_0, double t, const IbpCoefficients& c);
SpectralField bold_R_n(const SpectralField& w1, const SpectralField& R1, double t, const IbpCoefficients& c);

// max over samples of || w1(t) - P_n - (-1)^n/(eps (2i)^n n!) int mu^{n+1} f_n(w1)
//                        - int R_n ||_H1
double implicit_residual(const W1Samples& traj, const IbpCoefficients& c);

struct IbpP2Report {
  double residual = 0.0;
  // max over samples of the boundary term (eps^{2a}/4)(e^{-4it/eps} F(t) - F(0)).
  double boundary_norm = 0.0;
};

// Single integration by parts for the p2 equation
//   dt w1 = -i eps^{2a-1} e^{-4it/eps} (Id - Pi0) conj(w1)^3 - R1:
//   w1(t) = w1(0) + (eps^{2a}/4)(e^{-4it/eps} F(t) - F(0))
//           - (3i/4) eps^{4a-1} int (Id - Pi0)(conj(w1)^2 (Id - Pi0) w1^3)
//           + (3/4) eps^{2a} int e^{-4is/eps} (Id - Pi0)(conj(w1)^2 conj(R1))
//           - int R1,
// F = (Id - Pi0) conj(w1)^3.
IbpP2Report ibp_once_p2(const W1Samples& traj, double alpha, double epsilon);

// Smallest n >= 1 with (2n+1)(c lambda)^{2(n+1)} <= eps.
int choose_n(double lambda, double epsilon, double c_embed);

struct FnBoundReport {
  double norm = 0.0;   // ||f_n(u)||_H1
  double bound = 0.0;  // prod_{k<=n}(2k+1) ||u||_Linf^{2(n+1)} ||u||_H1
  double ratio = 0.0;
  double norm_l2 = 0.0;   // ||f_n(u)||_L2
  double bound_l2 = 0.0;  // same bound with ||u||_L2
  double ratio_l2 = 0.0;
  // f_n'(u)v against prod(2k+1)(|u|_inf^{2(n+1)}|v|_H1 + |u|_inf^{2n+1}|v|_inf|u|_H1)
  double d_norm = 0.0;
  double d_bound = 0.0;
  double d_ratio = 0.0;
};

FnBoundReport verify_fn_bound(const SpectralField& u, int n, const SpectralField* direction = nullptr);

}  // namespace vdw
