// Time evolution on the N-point circle.
//
// The sole dynamical postulate is the generalized Ehrenfest relation
//   d/dt <psi, Q(f) psi> = <psi, P^k(grad f) psi>   for all real f,
// which fixes rho_dot.  Two independent evaluations are kept:
//
//   rho_dot_ehrenfest    oracle: applies P^k(grad delta_l) as assembled mode
//                        operators, one delta per lattice site.  Equivalent
//                        mode-space kernel (reconstructed from the Ehrenfest
//                        definition): rho_dot contributions carry
//                        c_{l,j} = i [l-j]_q ( [k(j+(l-j)/2+alpha)]_q/[k]_q
//                                             + i D [l-j]_q ).
//   rho_dot_fokker_planck  discrete continuity form
//                        rho_dot = -i [N_z]_q (I0 - i D [N_z]_q rho)
//                        with the deformed current I0 (see `current`).
//
// The two agree to rounding for every admissible parameter set; this is the
// central consistency property the suite certifies.
//
// The wavefunction evolution splits i psi_dot conj(psi) = F_L + F_NL with
//   F_L  = ([N_z][k/2 N_z]/[k] psi)(S1 conj(psi)) + alpha-correction terms,
//   S1   = (K_{k/2+1} + K_{k/2-1})/2,
//   F_NL = i G psi (R conj(psi)),  G real, fixed by
//          G 2Re(psi R conj(psi)) = C - D [N_z]^2 rho.
// Two right-hand-side backends are kept: `spectral` assembles F_L + F_NL via
// mode-space operator applications; `stencil` is the equivalent fused
// position-space kernel (alpha = 0), with serial and OpenMP variants.
//
// The current-density normalization uses the inner product
// <psi, phi> = (2 pi / N) sum conj(psi) phi.

#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qwitt/kinematics.hpp"

namespace qwitt::dynamics {

using qcalc::UnitPhase;
using qcalc::cplx;
using kinematics::KinematicsParams;

// Thrown when an amplitude guard trips: the evolution equation divides by
// conj(psi) and by 2Re(psi R conj(psi)); a vanishing divisor is a legitimate
// singular outcome, never regularized.
class guard_violation : public std::runtime_error {
 public:
  guard_violation(int site, double magnitude, const std::string& what)
      : std::runtime_error(what), site(site), magnitude(magnitude) {}
  int site;
  double magnitude;
};

class WaveFunction {
 public:
  WaveFunction(UnitPhase phase, Eigen::VectorXcd samples);

  static WaveFunction constant(const UnitPhase& phase, cplx value);
  static WaveFunction plane_wave(const UnitPhase& phase, int mode);
  static WaveFunction gaussian_bump(const UnitPhase& phase, double width);
  // Random mode coefficients with exponential decay, support |n| <= N/4,
  // resampled until nowhere-vanishing; deterministic for a given generator
  // state.
  static WaveFunction random_smooth(const UnitPhase& phase, std::mt19937_64& rng);

  const UnitPhase& phase() const { return phase_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const Eigen::VectorXcd& samples() const { return samples_; }
  Eigen::VectorXcd& samples() { return samples_; }
  cplx at(int l) const;  // index mod N

  // <psi, phi> = (2 pi / N) sum conj(psi) phi
  cplx inner(const WaveFunction& other) const;
  double norm() const;
  double total_probability() const;  // sum_l rho(l), dimensionless
  WaveFunction normalized() const;

  Eigen::VectorXd density() const;

  // Mode coefficients hat_m (storage index i holds mode rep(i)):
  // psi(l) = sum_m hat_m q^{m l}.
  Eigen::VectorXcd to_modes() const;
  static WaveFunction from_modes(const UnitPhase& phase, const Eigen::VectorXcd& modes);

 private:
  UnitPhase phase_;
  Eigen::VectorXcd samples_;
};

// R = a1 K_{k1} + a2 K_{k2} acting on conj(psi); defaults to the identity.
struct ShiftSpec {
  cplx a1{1.0, 0.0};
  int k1 = 0;
  cplx a2{0.0, 0.0};
  int k2 = 0;
};

enum class Backend { stencil, spectral };

struct DynParams {
  KinematicsParams kin;
  ShiftSpec R;
  double dt = 1e-3;
  double t_end = 1.0;
  double guard_eps = 1e-8;  // relative amplitude floor
  Backend backend = Backend::stencil;

  DynParams(KinematicsParams kin, ShiftSpec R = {}, double dt = 1e-3,
            double t_end = 1.0, double guard_eps = 1e-8,
            Backend backend = Backend::stencil);
};

// Probability-density time derivative from the Ehrenfest constraint (oracle).
Eigen::VectorXd rho_dot_ehrenfest(const WaveFunction& psi, const DynParams& p);

// Deformed current I0^{alpha,k}.
Eigen::VectorXcd current(const WaveFunction& psi, const DynParams& p);

// rho_dot = -i [N_z]_q (I0 - i D [N_z]_q rho).
Eigen::VectorXd rho_dot_fokker_planck(const WaveFunction& psi, const DynParams& p);

// Pointwise gap |I0^{alpha,k} + I0^{-alpha,k}|; diagnostic only (the formal
// antisymmetry does not hold pointwise).
double current_antisymmetry_gap(const WaveFunction& psi, const DynParams& p);

// Linear and nonlinear parts of i psi_dot conj(psi).
Eigen::VectorXcd linear_part(const WaveFunction& psi, const DynParams& p);
Eigen::VectorXcd nonlinear_part(const WaveFunction& psi, const DynParams& p);

// psi_dot = -i (F_L + F_NL)/conj(psi); dispatches on p.backend.
Eigen::VectorXcd rhs_evolution(const WaveFunction& psi, const DynParams& p);

// max |stencil - spectral| right-hand sides (alpha = 0 only).
double backend_agreement(const WaveFunction& psi, const DynParams& p);

// Closed-form phase-rotation frequency of a single-mode state (alpha = 0,
// R = identity): psi(t) = exp(-i E_m t) psi(0).
double plane_wave_energy(int mode, const DynParams& p);

struct Diagnostics {
  double total_probability = 0.0;
  Eigen::VectorXcd current_profile;
  double fp_ehrenfest_residual = -1.0;  // <0 when not evaluated
  double backend_residual = -1.0;
  Eigen::VectorXd mode_occupancy;
  // occupancy-weighted phase-rotation frequencies; filled when the closed
  // form applies (alpha = 0, R = identity)
  Eigen::VectorXd mode_energy;
};

Diagnostics compute_diagnostics(const WaveFunction& psi, const DynParams& p,
                                bool with_cross_checks);

struct EvolutionState {
  WaveFunction psi;
  double t = 0.0;
  Diagnostics diag;
};

EvolutionState step_rk4(const EvolutionState& state, const DynParams& p);

struct TrajectoryRecord {
  double t;
  Eigen::VectorXcd psi;
  Diagnostics diag;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  bool singular = false;
  double singular_time = 0.0;
  int singular_site = -1;
  std::string singular_reason;
};

struct IntegrateOptions {
  int record_stride = 1;
  bool check_every_step = false;  // FP/Ehrenfest + backend cross-checks per record
};

Trajectory integrate(const WaveFunction& psi0, const DynParams& p,
                     const IntegrateOptions& opts = {});

// ---------------------------------------------------------------------------
// Continuum (q -> 1) reference: spectral integration of
//   i psi_t = -1/2 psi'' - i alpha psi' + i (D / 2 rho) rho'' psi
// on a fine periodic grid; the q -> 1 oracle for trajectories.

struct ContinuumParams {
  double alpha = 0.0;
  double D = 0.0;
  double t_end = 0.2;
  double dt = 1e-3;         // clipped to the spectral stability limit
  int grid = 128;           // fine-grid size
  double density_floor = 1e-10;
};

class ContinuumSolution {
 public:
  ContinuumSolution(int grid, Eigen::VectorXcd modes);
  // Trigonometric evaluation at an arbitrary angle.
  cplx eval(double angle) const;
  double total_probability(int n_points) const;

 private:
  int grid_;
  Eigen::VectorXcd modes_;  // storage index i holds mode rep(i)
};

ContinuumSolution continuum_reference(const std::function<cplx(double)>& profile,
                                      const ContinuumParams& p);

// The five real functionals (j0^alpha)'/rho, rho''/rho, (j0^alpha)^2/rho^2,
// j0^alpha rho'/rho^2, (rho')^2/rho^2 combined with weights D1..D5; evaluated
// spectrally on the given samples.
Eigen::VectorXd dg_nonlinear_functionals(const WaveFunction& psi, double alpha,
                                         const std::array<double, 5>& weights,
                                         double density_floor = 1e-12);

}  // namespace qwitt::dynamics
