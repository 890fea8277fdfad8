#pragma once

// Exponential integrators for the full rescaled systems and the reduced
// (w1, w2) systems, trajectory recording with blow-up detection, and the
// Picard solver for the Duhamel maps F1, F2.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vdw/mode_matrix.hpp"
#include "vdw/normalform.hpp"

namespace vdw {

enum class Scheme { exp_rk2, exp_euler };

const char* to_string(Scheme s);

struct IntegratorConfig {
  double dt = 1e-4;
  double t_end = 1.0;
  Scheme scheme = Scheme::exp_rk2;
  double rho_max = 1.0;
  int store_every = 1;

  void validate() const;
};

// Per-mode linear operator.  Plain pairing couples (u1_k, u2_k); conjugate
// pairing couples (u1_k, conj u2_{-k}) through `a` and (u2_k, conj u1_{-k})
// through `b`.
struct ModeOperator {
  bool conjugate_pairing = false;
  std::function<Mat2(int)> a;
  std::function<Mat2(int)> b;
};

// Linear part of the rescaled (or unscaled) full system.
ModeOperator full_linear_operator(const SystemSpec& spec);
// Linear part of the reduced system: 0 on w1, +i k^2/eps^3 on w2.
ModeOperator reduced_linear_operator(double epsilon);

// Precomputed f(h L) acting on states.
class ModeBlocks {
 public:
  ModeBlocks() = default;
  ModeBlocks(const ModeOperator& op, int n_modes, int phi_index, double h, double scale);
  State apply(const State& u) const;

 private:
  bool conj_ = false;
  int K_ = 0;
  std::vector<Mat2> a_, b_;
};

class ExpStepper {
 public:
  using Nonlinear = std::function<State(double t, const State&)>;

  ExpStepper(const ModeOperator& op, int n_modes, double dt, Scheme scheme, Nonlinear n);
  State step(const State& u, double t) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  Scheme scheme_;
  Nonlinear n_;
  ModeBlocks e_full_, e_half_, p1_half_, b1_, b2_;
};

ExpStepper make_full_stepper(const SystemSpec& spec, PressureLaw law, const Grid& g, double dt, Scheme scheme);
// With w2_frozen the w2 unknown stays zero and only the w1 equation runs.
ExpStepper make_reduced_stepper(const NormalFormSetting& s, const Grid& g, double dt, Scheme scheme,
                                bool w2_frozen = false);

State step_full(const SystemSpec& spec, PressureLaw law, const State& u, double t, double dt,
                Scheme scheme = Scheme::exp_rk2);
ReducedState step_reduced(const NormalFormSetting& s, const ReducedState& w, double dt,
                          Scheme scheme = Scheme::exp_rk2);

enum class TerminalStatus { completed, blowup, diverged };

const char* to_string(TerminalStatus s);

struct Diagnostics {
  double norm_w1_h1 = 0.0;
  double norm_w2_l2 = 0.0;
  double norm_u1_h1 = 0.0;
  double norm_u2_l2 = 0.0;
  double energy = 0.0;
  double mean_abs_u1 = 0.0;
  double mean_abs_u2 = 0.0;
  double cancellation_residual = 0.0;
};

struct Trajectory {
  // Full runs store u~, reduced runs store (w1, w2) in u1, u2.
  bool reduced = false;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Diagnostics> diagnostics;
  TerminalStatus status = TerminalStatus::completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  double final_time = 0.0;
};

// Diagnostics of a full-system state u~ (normal form taken with s).
Diagnostics diagnose_full(const NormalFormSetting& s, const State& u_tilde);
Diagnostics diagnose_reduced(const NormalFormSetting& s, const ReducedState& w);

Trajectory solve_full(const NormalFormSetting& s, const State& datum, const IntegratorConfig& cfg);
Trajectory solve_reduced(const NormalFormSetting& s, const ReducedState& datum, const IntegratorConfig& cfg);

// Samples of the w1 equation driven by the remainder of v2 = 0:
// times, w1(t_j) and R1(t_j) on a uniform grid of spacing dt * store_every.
struct W1Samples {
  double h = 0.0;
  std::vector<double> times;
  std::vector<SpectralField> w1;
  std::vector<SpectralField> R1;
};

W1Samples sample_w1_equation(const NormalFormSetting& s, const SpectralField& w1_0, double dt, int n_steps,
                             int store_every = 1);

struct PicardReport {
  int iterates = 0;
  double final_residual = 0.0;
  std::vector<double> contraction_ratios;
  bool converged = false;
  std::string message;
};

struct PicardResult {
  std::vector<double> times;
  std::vector<ReducedState> states;
  PicardReport report;
};

// Iterates w = F(w) on n_samples uniform samples of [0, T].  F1 = w1^0 +
// int dw1, F2 = S(t) w2^0 + int S(t - s) N2(s) ds, S = e^{-i t dx^2/eps^3}.
PicardResult picard_solve(const SpectralField& w1_0, const SpectralField& w2_0, const NormalFormSetting& s,
                          double T, int max_iter, int n_samples = 512, double tol = 1e-10);

}  // namespace vdw
