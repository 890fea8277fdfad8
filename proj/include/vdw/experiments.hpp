#pragma once

// Theorem-compliant data, existence-time sweeps, the continuation schedule,
// linearized growth rates and the multiplier identity suite.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vdw/integrate.hpp"

namespace vdw {

struct DatumSpec {
  std::uint64_t seed = 1;
  double target_norm = 0.15;
  int k_min = 1;
  int k_max = 8;
  PressureLaw law = PressureLaw::P1;
  bool conjugated = false;
  // Force u2 = 0.
  bool zero_velocity = false;

  void validate() const;
};

// Zero-mean (u1, u2) with max(|u1|_H1, |u2|_L2) = target_norm and E <= 0.
// For the conjugated system u1 is drawn real-valued so that the modified
// energy, which involves Re u1^2, can be made negative.
State make_datum(const DatumSpec& spec, const Grid& g);

// Energy used by make_datum and the datum checks.
double datum_energy(const DatumSpec& spec, const State& datum);

double sobolev_constant(int n_modes);

// One existence-time run of the rescaled system.
struct RunParams {
  PressureLaw law = PressureLaw::P1;
  bool conjugated = false;
  double alpha = 0.5;   // amplitude eps^alpha (plain)
  double lambda = 0.2;  // amplitude lambda (modified)
  double epsilon = 0.1;
  int n_modes = 32;
  DatumSpec datum;
  double t_end = 0.5;
  double dt = 0.0;          // 0 selects dt_factor * eps^2, capped at eps/20
  double dt_factor = 0.05;
  double rho_max = 1.0;
  int store_every = 10;
  Scheme scheme = Scheme::exp_rk2;

  NormalFormSetting setting() const;
  double step() const;
};

struct ExistenceRun {
  double epsilon = 0.0;
  TerminalStatus status = TerminalStatus::completed;
  std::optional<double> time;  // first rho_max crossing
  double final_time = 0.0;
  double final_norm_w1 = 0.0;
  double final_norm_w2 = 0.0;
  double max_norm = 0.0;
  // |E(t) - E(0)| over the sum of the absolute energy terms at t = 0, worst
  // sample.
  double energy_drift = 0.0;
  double mean_drift = 0.0;
  // Worst ratio lhs/rhs of the v2 <= v1 energy inequality (<= 1 holds);
  // NaN when no inequality applies (p0, plain).
  double energy_inequality_ratio = 0.0;
};

// lhs / rhs of the energy inequality for a normal-form state v.
double energy_inequality_ratio(const NormalFormSetting& s, const State& v);

ExistenceRun existence_time(const RunParams& p, Trajectory* keep = nullptr);

struct SweepResult {
  std::vector<ExistenceRun> rows;
  bool has_fit = false;
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0;
  std::string message;
};

// Runs existence_time for each eps (concurrently, up to jobs at a time) and
// fits log T against log eps over the blow-up rows.
SweepResult scaling_sweep(const RunParams& base, const std::vector<double>& epsilons, int jobs = 1);

struct ContinuationSchedule {
  std::vector<double> rho;  // rho_0 .. rho_j
  std::vector<double> T;    // T_0 .. T_j
  int j_star = 0;
  double t_star = 0.0;
  double T_low = 0.0;   // eps^{2(1-a)} / (2 C0 (2 rho)^2)
  double T_high = 0.0;  // eps^{2(1-a)} / (2 C0 rho^2)
  bool rho_bounded = true;     // rho_k <= 2 rho for all k <= j
  bool bracketing = true;      // T_low <= T_k <= T_high for all k <= j
  bool t_star_bound = true;    // t_star >= j * T_low
  int first_violation = -1;    // first k breaking rho_k <= 2 rho or the bracketing
};

ContinuationSchedule continuation_schedule(double rho, double epsilon, double alpha, double C, double C0);

struct GrowthRow {
  int k = 0;
  double measured = 0.0;
  double predicted = 0.0;
};

// Exact evolution of the mode-k linearization of the eps = 0 system about
// (u*, 0); the rate is the slope of log of the weighted norm
// |p'| |u1|^2 + |u2|^2 over the second half of the run.
std::vector<GrowthRow> growth_experiment(PressureLaw law, double u_star, const std::vector<int>& ks,
                                         int n_steps = 4000);

struct LemmaMReport {
  double est_l2 = 0.0;     // | |m u|_{H^{s+1}} - |u - Pi0 u|_{H^s} |, worst
  double m1 = 0.0;         // (m u)(x) - (m u)(0) - i int_0^x (u - Pi0 u)
  double pointwise = 0.0;  // max(0, |m u|_Linf - c |u - Pi0 u|_L2)
  double m2 = 0.0;         // -i dx m - (Id - Pi0), -i m dx - (Id - Pi0)
  double m3 = 0.0;         // -i dx^2 m - dx, -i m dx^2 - dx
  double tolerance = 1e-10;
  bool passed() const;
};

using MultiplierOp = std::function<SpectralField(const SpectralField&)>;

LemmaMReport lemma_m_suite(std::uint64_t seed, int n_modes, const std::vector<double>& s_list, int n_fields = 100,
                           const MultiplierOp& m_op = apply_m);

// Random complex field with zero mean, modes k_min <= |k| <= k_max,
// normalized in L2.
SpectralField random_field(std::uint64_t seed, const Grid& g, int k_min, int k_max, bool zero_mean = true);

}  // namespace vdw
