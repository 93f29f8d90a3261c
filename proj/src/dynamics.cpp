#include "qwitt/dynamics.hpp"

#include <cmath>

#include "qwitt/stencil.hpp"

namespace qwitt::dynamics {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Lattice size above which the OpenMP stencil kernel takes over; both kernels
// produce bitwise-identical output.
constexpr int kParallelThreshold = 512;

Eigen::VectorXcd cyc_shift(const Eigen::VectorXcd& f, int j) {
  const int n = static_cast<int>(f.size());
  Eigen::VectorXcd out(n);
  for (int l = 0; l < n; ++l) out(l) = f((((l + j) % n) + n) % n);
  return out;
}

// Apply a q-number diagonal operator sym(m) through mode space.
Eigen::VectorXcd apply_mode_diag(const Eigen::VectorXcd& f, const UnitPhase& q,
                                 const std::function<double(double)>& sym) {
  const int n = static_cast<int>(f.size());
  Eigen::VectorXcd modes = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (int l = 0; l < n; ++l) acc += f(l) * q.q_pow(-static_cast<double>(q.mode_rep(i)) * l);
    modes(i) = acc / static_cast<double>(n) * sym(q.mode_rep(i));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int l = 0; l < n; ++l) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += modes(i) * q.q_pow(static_cast<double>(q.mode_rep(i)) * l);
    out(l) = acc;
  }
  return out;
}

// [N_z]_q f as the two-point stencil (f(l+1) - f(l-1))/(q - q^-1).
Eigen::VectorXcd number_op(const Eigen::VectorXcd& f, const UnitPhase& q) {
  const cplx denom = q.q_pow(1.0) - q.q_pow(-1.0);
  return (cyc_shift(f, 1) - cyc_shift(f, -1)) / denom;
}

Eigen::VectorXcd apply_R(const Eigen::VectorXcd& conj_psi, const ShiftSpec& r) {
  Eigen::VectorXcd out = r.a1 * cyc_shift(conj_psi, r.k1);
  if (r.a2 != cplx(0.0)) out += r.a2 * cyc_shift(conj_psi, r.k2);
  return out;
}

StencilContext make_context(const DynParams& p, double max_abs) {
  StencilContext ctx;
  const UnitPhase& q = p.kin.q;
  ctx.n = q.cycle_or_throw();
  // Shifts normalized into [0, n) so the kernel's cheap wrap suffices.
  const auto norm_shift = [&ctx](int s) { return ((s % ctx.n) + ctx.n) % ctx.n; };
  ctx.half_k = norm_shift(p.kin.k / 2);
  const double s1 = std::sin(q.phi0());
  const double sk = std::sin(p.kin.k * q.phi0());
  ctx.inv_4s1sk = 1.0 / (4.0 * s1 * sk);
  ctx.inv_4s1s1 = 1.0 / (4.0 * s1 * s1);
  ctx.diffusion = p.kin.D;
  ctx.r_a1 = p.R.a1;
  ctx.r_a2 = p.R.a2;
  ctx.r_k1 = norm_shift(p.R.k1);
  ctx.r_k2 = norm_shift(p.R.k2);
  ctx.guard_floor = p.guard_eps * max_abs;
  return ctx;
}

}  // namespace

// ---------------------------------------------------------------------------
// WaveFunction

WaveFunction::WaveFunction(UnitPhase phase, Eigen::VectorXcd samples)
    : phase_(std::move(phase)), samples_(std::move(samples)) {
  if (samples_.size() != phase_.cycle_or_throw()) {
    throw std::invalid_argument("WaveFunction: sample count must equal N");
  }
}

WaveFunction WaveFunction::constant(const UnitPhase& phase, cplx value) {
  return WaveFunction(phase,
                      Eigen::VectorXcd::Constant(phase.cycle_or_throw(), value));
}

WaveFunction WaveFunction::plane_wave(const UnitPhase& phase, int mode) {
  const int n = phase.cycle_or_throw();
  Eigen::VectorXcd s(n);
  const double amp = 1.0 / std::sqrt(2.0 * kPi);
  for (int l = 0; l < n; ++l) s(l) = amp * phase.q_pow(static_cast<double>(mode) * l);
  return WaveFunction(phase, std::move(s));
}

WaveFunction WaveFunction::gaussian_bump(const UnitPhase& phase, double width) {
  const int n = phase.cycle_or_throw();
  Eigen::VectorXcd s(n);
  for (int l = 0; l < n; ++l) {
    s(l) = std::exp(-width * (1.0 - std::cos(phase.phi0() * l)));
  }
  WaveFunction psi(phase, std::move(s));
  return psi.normalized();
}

WaveFunction WaveFunction::random_smooth(const UnitPhase& phase,
                                         std::mt19937_64& rng) {
  const int n = phase.cycle_or_throw();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::VectorXcd modes = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) {
      const int m = phase.mode_rep(i);
      if (std::abs(m) > n / 4) continue;
      const double decay = std::exp(-0.7 * std::abs(m));
      cplx c(gauss(rng), gauss(rng));
      if (m == 0) c = 3.0 + cplx(gauss(rng), gauss(rng)) * 0.2;
      modes(i) = decay * c;
    }
    WaveFunction psi = from_modes(phase, modes);
    const Eigen::VectorXd mag = psi.samples().cwiseAbs();
    if (mag.minCoeff() > 0.25 * mag.maxCoeff()) return psi.normalized();
  }
  throw std::runtime_error("random_smooth: failed to draw a nowhere-vanishing state");
}

cplx WaveFunction::at(int l) const {
  const int n = size();
  return samples_((((l % n) + n) % n));
}

cplx WaveFunction::inner(const WaveFunction& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("WaveFunction::inner: size mismatch");
  }
  return (2.0 * kPi / size()) * samples_.dot(other.samples_);  // dot conjugates lhs
}

double WaveFunction::norm() const { return std::sqrt(std::real(inner(*this))); }

double WaveFunction::total_probability() const { return samples_.squaredNorm(); }

WaveFunction WaveFunction::normalized() const {
  return WaveFunction(phase_, samples_ / norm());
}

Eigen::VectorXd WaveFunction::density() const {
  return samples_.cwiseAbs2();
}

Eigen::VectorXcd WaveFunction::to_modes() const {
  const int n = size();
  Eigen::VectorXcd modes(n);
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (int l = 0; l < n; ++l) {
      acc += samples_(l) * phase_.q_pow(-static_cast<double>(phase_.mode_rep(i)) * l);
    }
    modes(i) = acc / static_cast<double>(n);
  }
  return modes;
}

WaveFunction WaveFunction::from_modes(const UnitPhase& phase,
                                      const Eigen::VectorXcd& modes) {
  const int n = phase.cycle_or_throw();
  if (modes.size() != n) {
    throw std::invalid_argument("WaveFunction::from_modes: size mismatch");
  }
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      s(l) += modes(i) * phase.q_pow(static_cast<double>(phase.mode_rep(i)) * l);
    }
  }
  return WaveFunction(phase, std::move(s));
}

// ---------------------------------------------------------------------------

DynParams::DynParams(KinematicsParams kin_in, ShiftSpec R_in, double dt_in,
                     double t_end_in, double guard_eps_in, Backend backend_in)
    : kin(std::move(kin_in)),
      R(R_in),
      dt(dt_in),
      t_end(t_end_in),
      guard_eps(guard_eps_in),
      backend(backend_in) {
  if (dt <= 0.0) throw std::invalid_argument("DynParams: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("DynParams: t_end must be >= 0");
  if (guard_eps <= 0.0) {
    throw std::invalid_argument("DynParams: guard_eps must be positive");
  }
  if (R.k1 % 2 != 0 || R.k2 % 2 != 0) {
    throw std::invalid_argument("DynParams: R shifts must be even lattice shifts");
  }
  if (backend == Backend::stencil && kin.alpha != 0.0) {
    throw std::invalid_argument(
        "DynParams: the stencil backend is defined for alpha = 0; use the "
        "spectral backend for alpha != 0");
  }
}

Eigen::VectorXd rho_dot_ehrenfest(const WaveFunction& psi, const DynParams& p) {
  const UnitPhase& q = p.kin.q;
  const int n = q.cycle_or_throw();
  const Eigen::VectorXcd modes = psi.to_modes();
  Eigen::VectorXd out(n);
  for (int l0 = 0; l0 < n; ++l0) {
    // Test function: the delta at site l0, f_n = q^{-n l0}/N.
    kinematics::FieldCoefficients delta(q, kinematics::FieldCoefficients::Kind::function);
    for (int i = 0; i < n; ++i) {
      const int mode = q.mode_rep(i);
      delta.set_coeff(mode, q.q_pow(static_cast<double>(-mode) * l0) /
                                static_cast<double>(n));
    }
    const witt::ModeOperator P =
        kinematics::quantize_momentum(kinematics::gradient_field(delta), p.kin);
    const cplx expectation = modes.dot(P.apply(modes)) * static_cast<double>(n);
    out(l0) = std::real(expectation);
  }
  return out;
}

Eigen::VectorXcd current(const WaveFunction& psi, const DynParams& p) {
  const UnitPhase& q = p.kin.q;
  const int h = p.kin.k / 2;
  const double k = p.kin.k;
  const double alpha = p.kin.alpha;
  const Eigen::VectorXcd& s = psi.samples();
  const Eigen::VectorXcd cbar = s.conjugate();

  const Eigen::VectorXcd u =
      apply_mode_diag(s, q, [&](double m) { return q.q_number(0.5 * k * (m + alpha)); });
  const Eigen::VectorXcd v = q.q_pow(-0.5 * k * alpha) * cyc_shift(cbar, h);
  const Eigen::VectorXcd w = q.q_pow(0.5 * k * alpha) * cyc_shift(s, h);
  const Eigen::VectorXcd x =
      apply_mode_diag(cbar, q, [&](double m) { return q.q_number(0.5 * k * (m - alpha)); });

  return (u.cwiseProduct(v) - w.cwiseProduct(x)) / q.q_number(k);
}

Eigen::VectorXd rho_dot_fokker_planck(const WaveFunction& psi, const DynParams& p) {
  const UnitPhase& q = p.kin.q;
  const Eigen::VectorXcd rho = psi.density().cast<cplx>();
  const Eigen::VectorXcd flux =
      current(psi, p) - cplx(0.0, p.kin.D) * number_op(rho, q);
  const Eigen::VectorXcd out = cplx(0.0, -1.0) * number_op(flux, q);
  return out.real();
}

double current_antisymmetry_gap(const WaveFunction& psi, const DynParams& p) {
  KinematicsParams flipped(-p.kin.alpha, p.kin.D, p.kin.k, p.kin.q);
  DynParams p2(flipped, p.R, p.dt, p.t_end, p.guard_eps, Backend::spectral);
  return (current(psi, p) + current(psi, p2)).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd linear_part(const WaveFunction& psi, const DynParams& p) {
  const UnitPhase& q = p.kin.q;
  const int h = p.kin.k / 2;
  const double k = p.kin.k;
  const Eigen::VectorXcd& s = psi.samples();
  const Eigen::VectorXcd cbar = s.conjugate();

  const Eigen::VectorXcd main = apply_mode_diag(s, q, [&](double m) {
    return q.q_number(m) * q.q_number(0.5 * k * m) / q.q_number(k);
  });
  const Eigen::VectorXcd smooth = 0.5 * (cyc_shift(cbar, h + 1) + cyc_shift(cbar, h - 1));
  Eigen::VectorXcd out = main.cwiseProduct(smooth);

  if (p.kin.alpha != 0.0) {
    const double alpha = p.kin.alpha;
    const double pref = q.q_number(0.5 * k * alpha) / q.q_number(k);
    const Eigen::VectorXcd t1 =
        q.q_pow(-0.5 * k * alpha) * number_op(cyc_shift(s, -h), q);
    const Eigen::VectorXcd t2 =
        q.q_pow(0.5 * k * alpha) * number_op(cyc_shift(s, h), q);
    out += pref * (t1.cwiseProduct(smooth) +
                   t2.cwiseProduct(cyc_shift(smooth, -p.kin.k)));
  }
  return out;
}

Eigen::VectorXcd nonlinear_part(const WaveFunction& psi, const DynParams& p) {
  const UnitPhase& q = p.kin.q;
  const int h = p.kin.k / 2;
  const double k = p.kin.k;
  const Eigen::VectorXcd& s = psi.samples();
  const Eigen::VectorXcd cbar = s.conjugate();

  const auto a_op = [&](const Eigen::VectorXcd& f) {
    return number_op(cyc_shift(f, h), q);
  };
  const auto b_op = [&](const Eigen::VectorXcd& f) {
    return apply_mode_diag(cyc_shift(f, 1) + cyc_shift(f, -1), q,
                           [&](double m) { return q.q_number(0.5 * k * m); });
  };
  const Eigen::VectorXcd c_num = b_op(s).cwiseProduct(a_op(cbar)) -
                                 a_op(s).cwiseProduct(b_op(cbar));
  const Eigen::VectorXd c_term =
      (c_num / (cplx(0.0, 2.0) * q.q_number(k))).real();

  const Eigen::VectorXcd rho = psi.density().cast<cplx>();
  const Eigen::VectorXd nz2rho = number_op(number_op(rho, q), q).real();

  const Eigen::VectorXcd r_conj = apply_R(cbar, p.R);
  const double floor = p.guard_eps * s.cwiseAbs().maxCoeff();

  const int n = psi.size();
  Eigen::VectorXcd out(n);
  for (int l = 0; l < n; ++l) {
    const double w = 2.0 * std::real(s(l) * r_conj(l));
    if (std::abs(w) < floor * floor) {
      throw guard_violation(l, std::abs(w),
                            "nonlinear_part: density-like bilinear vanished at site " +
                                std::to_string(l));
    }
    const double g = (c_term(l) - p.kin.D * nz2rho(l)) / w;
    out(l) = cplx(0.0, 1.0) * g * s(l) * r_conj(l);
  }
  return out;
}

namespace {

Eigen::VectorXcd rhs_assembled(const WaveFunction& psi, const DynParams& p) {
  const Eigen::VectorXcd& s = psi.samples();
  const double floor = p.guard_eps * s.cwiseAbs().maxCoeff();
  for (int l = 0; l < psi.size(); ++l) {
    if (std::abs(s(l)) < floor) {
      throw guard_violation(l, std::abs(s(l)),
                            "rhs_evolution: |psi| below guard at site " +
                                std::to_string(l));
    }
  }
  const Eigen::VectorXcd total = linear_part(psi, p) + nonlinear_part(psi, p);
  return cplx(0.0, -1.0) * total.cwiseQuotient(s.conjugate());
}

Eigen::VectorXcd rhs_stencil(const WaveFunction& psi, const DynParams& p) {
  const Eigen::VectorXcd& s = psi.samples();
  const StencilContext ctx = make_context(p, s.cwiseAbs().maxCoeff());
  Eigen::VectorXcd out(psi.size());
  if (psi.size() >= kParallelThreshold) {
    rhs_stencil_parallel(s.data(), ctx, out.data());
  } else {
    rhs_stencil_serial(s.data(), ctx, out.data());
  }
  return out;
}

}  // namespace

Eigen::VectorXcd rhs_evolution(const WaveFunction& psi, const DynParams& p) {
  return p.backend == Backend::stencil ? rhs_stencil(psi, p) : rhs_assembled(psi, p);
}

double backend_agreement(const WaveFunction& psi, const DynParams& p) {
  if (p.kin.alpha != 0.0) {
    throw std::invalid_argument("backend_agreement: stencil path requires alpha = 0");
  }
  return (rhs_stencil(psi, p) - rhs_assembled(psi, p)).cwiseAbs().maxCoeff();
}

double plane_wave_energy(int mode, const DynParams& p) {
  if (p.kin.alpha != 0.0 || p.R.a1 != cplx(1.0) || p.R.k1 != 0 ||
      p.R.a2 != cplx(0.0)) {
    throw std::invalid_argument(
        "plane_wave_energy: closed form holds for alpha = 0, R = identity");
  }
  const UnitPhase& q = p.kin.q;
  const double k = p.kin.k;
  const double m = mode;
  return q.q_number(m) * q.q_number(0.5 * k * m) * std::cos(m * q.phi0()) *
         std::cos(0.5 * k * m * q.phi0()) / q.q_number(k);
}

Diagnostics compute_diagnostics(const WaveFunction& psi, const DynParams& p,
                                bool with_cross_checks) {
  Diagnostics d;
  d.total_probability = psi.total_probability();
  d.current_profile = current(psi, p);
  d.mode_occupancy = psi.to_modes().cwiseAbs2();
  const bool identity_R = p.R.a1 == cplx(1.0) && p.R.k1 == 0 && p.R.a2 == cplx(0.0);
  if (p.kin.alpha == 0.0 && identity_R) {
    d.mode_energy.resize(psi.size());
    for (int i = 0; i < psi.size(); ++i) {
      d.mode_energy(i) =
          d.mode_occupancy(i) * plane_wave_energy(p.kin.q.mode_rep(i), p);
    }
  }
  if (with_cross_checks) {
    d.fp_ehrenfest_residual =
        (rho_dot_fokker_planck(psi, p) - rho_dot_ehrenfest(psi, p))
            .cwiseAbs()
            .maxCoeff();
    if (p.kin.alpha == 0.0) {
      d.backend_residual = backend_agreement(psi, p);
    }
  }
  return d;
}

EvolutionState step_rk4(const EvolutionState& state, const DynParams& p) {
  const double dt = p.dt;
  const UnitPhase& q = state.psi.phase();
  const Eigen::VectorXcd& y = state.psi.samples();

  const Eigen::VectorXcd k1 = rhs_evolution(state.psi, p);
  const Eigen::VectorXcd k2 =
      rhs_evolution(WaveFunction(q, y + 0.5 * dt * k1), p);
  const Eigen::VectorXcd k3 =
      rhs_evolution(WaveFunction(q, y + 0.5 * dt * k2), p);
  const Eigen::VectorXcd k4 = rhs_evolution(WaveFunction(q, y + dt * k3), p);

  EvolutionState next{WaveFunction(q, y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)),
                      state.t + dt, Diagnostics{}};
  return next;
}

Trajectory integrate(const WaveFunction& psi0, const DynParams& p,
                     const IntegrateOptions& opts) {
  Trajectory traj;
  const int n_steps = static_cast<int>(std::llround(p.t_end / p.dt));
  EvolutionState state{psi0, 0.0, Diagnostics{}};

  const auto record = [&](bool checks) {
    TrajectoryRecord rec;
    rec.t = state.t;
    rec.psi = state.psi.samples();
    rec.diag = compute_diagnostics(state.psi, p, checks);
    traj.records.push_back(std::move(rec));
  };

  try {
    record(true);  // cross-checks always run at t = 0
    for (int step = 1; step <= n_steps; ++step) {
      state = step_rk4(state, p);
      const bool last = step == n_steps;
      if (step % opts.record_stride == 0 || last) {
        record(opts.check_every_step || last);
      }
    }
  } catch (const guard_violation& g) {
    traj.singular = true;
    traj.singular_time = state.t;
    traj.singular_site = g.site;
    traj.singular_reason = g.what();
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Continuum reference

ContinuumSolution::ContinuumSolution(int grid, Eigen::VectorXcd modes)
    : grid_(grid), modes_(std::move(modes)) {}

cplx ContinuumSolution::eval(double angle) const {
  cplx acc = 0.0;
  for (int i = 0; i < modes_.size(); ++i) {
    const int m = (i < (grid_ + 1) / 2) ? i : i - grid_;
    acc += modes_(i) * std::polar(1.0, m * angle);
  }
  return acc;
}

double ContinuumSolution::total_probability(int n_points) const {
  double acc = 0.0;
  for (int l = 0; l < n_points; ++l) {
    acc += std::norm(eval(2.0 * kPi * l / n_points));
  }
  return acc;
}

ContinuumSolution continuum_reference(const std::function<cplx(double)>& profile,
                                      const ContinuumParams& p) {
  const int m_pts = p.grid;
  const int half = m_pts / 2;

  // Precomputed transforms: modes = F * samples / M, samples = Fh * modes.
  Eigen::MatrixXcd fwd(m_pts, m_pts);
  for (int i = 0; i < m_pts; ++i) {
    const int m = (i < (m_pts + 1) / 2) ? i : i - m_pts;
    for (int l = 0; l < m_pts; ++l) {
      fwd(i, l) = std::polar(1.0, -2.0 * kPi * m * l / m_pts);
    }
  }
  const Eigen::MatrixXcd inv = fwd.adjoint();

  Eigen::VectorXd deriv1(m_pts), deriv2(m_pts);
  for (int i = 0; i < m_pts; ++i) {
    const int m = (i < (m_pts + 1) / 2) ? i : i - m_pts;
    deriv1(i) = m;
    deriv2(i) = -static_cast<double>(m) * m;
  }

  Eigen::VectorXcd psi(m_pts);
  for (int l = 0; l < m_pts; ++l) psi(l) = profile(2.0 * kPi * l / m_pts);

  // psi_t = (i/2) psi'' - alpha psi' + (D / 2 rho) rho'' psi
  const auto rhs = [&](const Eigen::VectorXcd& y) {
    const Eigen::VectorXcd modes = fwd * y / static_cast<double>(m_pts);
    const Eigen::VectorXcd d1 =
        inv * (modes.cwiseProduct(deriv1.cast<cplx>()) * cplx(0.0, 1.0));
    const Eigen::VectorXcd d2 = inv * modes.cwiseProduct(deriv2.cast<cplx>());
    Eigen::VectorXcd out = cplx(0.0, 0.5) * d2 - p.alpha * d1;
    if (p.D != 0.0) {
      const Eigen::VectorXcd rho = y.cwiseAbs2().cast<cplx>();
      const Eigen::VectorXcd rho_modes = fwd * rho / static_cast<double>(m_pts);
      const Eigen::VectorXcd rho_dd = inv * rho_modes.cwiseProduct(deriv2.cast<cplx>());
      for (int l = 0; l < m_pts; ++l) {
        const double density = std::real(rho(l));
        if (density < p.density_floor) {
          throw guard_violation(l, density,
                                "continuum_reference: density floor violated");
        }
        out(l) += 0.5 * p.D * std::real(rho_dd(l)) / density * y(l);
      }
    }
    return out;
  };

  // Clip the step to the RK4 stability limit of the stiffest mode.
  const double stiffness = 0.5 * static_cast<double>(half) * half;
  double dt = std::min(p.dt, 2.5 / stiffness);
  const int n_steps = std::max(1, static_cast<int>(std::ceil(p.t_end / dt)));
  dt = p.t_end / n_steps;

  for (int step = 0; step < n_steps; ++step) {
    const Eigen::VectorXcd k1 = rhs(psi);
    const Eigen::VectorXcd k2 = rhs(psi + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = rhs(psi + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = rhs(psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return ContinuumSolution(m_pts, fwd * psi / static_cast<double>(m_pts));
}

Eigen::VectorXd dg_nonlinear_functionals(const WaveFunction& psi, double alpha,
                                         const std::array<double, 5>& weights,
                                         double density_floor) {
  const UnitPhase& q = psi.phase();
  const int n = psi.size();
  const Eigen::VectorXcd& s = psi.samples();

  // Spectral d/dphi: mode m multiplies by i m.
  const auto d_phi = [&](const Eigen::VectorXcd& f) -> Eigen::VectorXcd {
    return apply_mode_diag(f, q, [](double m) { return m; }) * cplx(0.0, 1.0);
  };

  const Eigen::VectorXcd ds = d_phi(s);
  const Eigen::VectorXcd rho = psi.density().cast<cplx>();
  const Eigen::VectorXd drho = d_phi(rho).real();
  const Eigen::VectorXd ddrho = d_phi(d_phi(rho)).real();

  // j0 = (i/2)(conj(psi)' psi - conj(psi) psi') + alpha rho
  Eigen::VectorXcd j0(n);
  for (int l = 0; l < n; ++l) {
    j0(l) = cplx(0.0, 0.5) * (std::conj(ds(l)) * s(l) - std::conj(s(l)) * ds(l)) +
            alpha * rho(l);
  }
  const Eigen::VectorXd dj0 = d_phi(j0).real();

  Eigen::VectorXd out(n);
  for (int l = 0; l < n; ++l) {
    const double density = std::real(rho(l));
    if (density < density_floor) {
      throw guard_violation(l, density,
                            "dg_nonlinear_functionals: density floor violated");
    }
    const double j = std::real(j0(l));
    out(l) = weights[0] * dj0(l) / density + weights[1] * ddrho(l) / density +
             weights[2] * j * j / (density * density) +
             weights[3] * j * drho(l) / (density * density) +
             weights[4] * drho(l) * drho(l) / (density * density);
  }
  return out;
}

}  // namespace qwitt::dynamics
