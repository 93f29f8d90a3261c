#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qwitt/dynamics.hpp"
#include "qwitt/stencil.hpp"

using namespace qwitt;
using dynamics::Backend;
using dynamics::DynParams;
using dynamics::WaveFunction;
using kinematics::KinematicsParams;
using qcalc::UnitPhase;
using qcalc::cplx;

namespace {

constexpr double kPi = 3.14159265358979323846;

DynParams make_params(int n_pts, int k, double alpha, double D,
                      Backend backend = Backend::spectral) {
  const UnitPhase q = UnitPhase::for_cycle(n_pts);
  return DynParams(KinematicsParams(alpha, D, k, q), {}, 1e-3, 1.0, 1e-8, backend);
}

WaveFunction random_state(int n_pts, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const UnitPhase q = UnitPhase::for_cycle(n_pts);
  Eigen::VectorXcd s(n_pts);
  for (int l = 0; l < n_pts; ++l) s(l) = cplx(g(rng), g(rng));
  return WaveFunction(q, s).normalized();
}

// Spectral d/dphi on samples.
Eigen::VectorXcd d_phi(const Eigen::VectorXcd& f, const UnitPhase& q) {
  const int n = static_cast<int>(f.size());
  Eigen::VectorXcd modes = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      modes(i) += f(l) * q.q_pow(-static_cast<double>(q.mode_rep(i)) * l);
    }
    modes(i) *= cplx(0.0, q.mode_rep(i)) / static_cast<double>(n);
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      out(l) += modes(i) * q.q_pow(static_cast<double>(q.mode_rep(i)) * l);
    }
  }
  return out;
}

// Smooth complex test state: modulated bump, nowhere vanishing.
WaveFunction smooth_state(const UnitPhase& q) {
  const int n = q.cycle_or_throw();
  Eigen::VectorXcd s(n);
  for (int l = 0; l < n; ++l) {
    const double phi = q.phi0() * l;
    s(l) = std::exp(-1.5 * (1.0 - std::cos(phi))) *
           std::exp(cplx(0.0, 0.8 * std::sin(phi)));
  }
  return WaveFunction(q, s);
}

}  // namespace

TEST_CASE("wavefunction basics") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  const auto psi = WaveFunction::plane_wave(q8, 2);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi.at(3 + 8) == psi.at(3));
  CHECK(psi.at(-1) == psi.at(7));

  // transform round trip
  const auto back = WaveFunction::from_modes(q8, psi.to_modes());
  CHECK((back.samples() - psi.samples()).cwiseAbs().maxCoeff() < 1e-13);

  std::mt19937_64 rng(9);
  const auto r = WaveFunction::random_smooth(q8, rng);
  CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.samples().cwiseAbs().minCoeff() > 0.0);
}

TEST_CASE("parameter validation") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  const KinematicsParams kin(0.3, 0.0, 2, q8);
  CHECK_THROWS_AS(DynParams(kin, {}, 1e-3, 1.0, 1e-8, Backend::stencil),
                  std::invalid_argument);
  CHECK_NOTHROW(DynParams(kin, {}, 1e-3, 1.0, 1e-8, Backend::spectral));
  CHECK_THROWS_AS(DynParams(kin, {}, -1e-3, 1.0, 1e-8, Backend::spectral),
                  std::invalid_argument);
  dynamics::ShiftSpec odd_shift;
  odd_shift.k1 = 1;
  const KinematicsParams kin0(0.0, 0.0, 2, q8);
  CHECK_THROWS_AS(DynParams(kin0, odd_shift, 1e-3, 1.0, 1e-8, Backend::stencil),
                  std::invalid_argument);
}

TEST_CASE("density evolution vanishes on stationary profiles") {
  const auto p = make_params(8, 2, 0.3, 0.1);
  const auto constant = WaveFunction::constant(p.kin.q, cplx(0.7, 0.2));
  CHECK(dynamics::rho_dot_ehrenfest(constant, p).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(dynamics::rho_dot_fokker_planck(constant, p).cwiseAbs().maxCoeff() < 1e-13);

  const auto plane = WaveFunction::plane_wave(p.kin.q, 3);
  CHECK(dynamics::rho_dot_ehrenfest(plane, p).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(dynamics::rho_dot_fokker_planck(plane, p).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("continuity and Ehrenfest agree for every admissible parameter set") {
  int idx = 0;
  for (const int n_pts : {8, 12, 16}) {
    for (const int k : {2, 4}) {
      if (2 * k % n_pts == 0) continue;  // k = N/2 is unconstructible
      for (const double alpha : {0.0, 0.7}) {
        for (const double D : {0.0, 0.3}) {
          const auto p = make_params(n_pts, k, alpha, D);
          for (int draw = 0; draw < 3; ++draw) {
            const auto psi = random_state(n_pts, 100 + idx++);
            const auto fp = dynamics::rho_dot_fokker_planck(psi, p);
            const auto ehr = dynamics::rho_dot_ehrenfest(psi, p);
            CHECK((fp - ehr).cwiseAbs().maxCoeff() <= 1e-10);
            // total probability is conserved exactly
            CHECK(std::abs(fp.sum()) < 1e-12);
            CHECK(std::abs(ehr.sum()) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("deformed current") {
  const auto p = make_params(8, 2, 0.0, 0.0);
  const auto constant = WaveFunction::constant(p.kin.q, cplx(1.3));
  CHECK(dynamics::current(constant, p).cwiseAbs().maxCoeff() < 1e-14);

  // plane waves carry a spatially constant current rho [k m]_q / [k]_q
  const int m = 2;
  const auto plane = WaveFunction::plane_wave(p.kin.q, m);
  const auto j = dynamics::current(plane, p);
  const double rho = plane.density()(0);
  const double expect = rho * p.kin.q.q_number(2.0 * m) / p.kin.q.q_number(2.0);
  for (int l = 0; l < 8; ++l) {
    CHECK(std::abs(j(l) - cplx(expect)) < 1e-13);
  }
}

TEST_CASE("current approximates the continuum current density") {
  // I0 -> j0 = (i/2)(psi_bar' psi - psi_bar psi') + alpha rho at O(1/N^2)
  double prev = 0.0;
  for (const int n_pts : {128, 256}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    const auto psi = smooth_state(q);
    DynParams p(KinematicsParams(0.3, 0.0, 2, q), {}, 1e-3, 1.0, 1e-8,
                Backend::spectral);
    const auto deformed = dynamics::current(psi, p);

    const Eigen::VectorXcd ds = d_phi(psi.samples(), q);
    Eigen::VectorXcd continuum(n_pts);
    for (int l = 0; l < n_pts; ++l) {
      continuum(l) = cplx(0.0, 0.5) * (std::conj(ds(l)) * psi.samples()(l) -
                                       std::conj(psi.samples()(l)) * ds(l)) +
                     0.3 * std::norm(psi.samples()(l));
    }
    const double gap = (deformed - continuum).cwiseAbs().maxCoeff() /
                       continuum.cwiseAbs().maxCoeff();
    if (prev > 0.0) {
      CHECK(prev / gap > 3.0);  // O(1/N^2)
      CHECK(gap < 2e-3);
    }
    prev = gap;
  }
}

TEST_CASE("current antisymmetry in alpha fails pointwise (diagnostic)") {
  const auto p = make_params(12, 2, 0.7, 0.0);
  const auto psi = random_state(12, 77);
  // the formal identity I0^alpha = -I0^{-alpha} does not hold; the gap is O(1)
  CHECK(dynamics::current_antisymmetry_gap(psi, p) > 1e-3);
}

TEST_CASE("linear part") {
  const auto p = make_params(16, 2, 0.0, 0.0);
  const auto constant = WaveFunction::constant(p.kin.q, cplx(0.9, 0.1));
  CHECK(dynamics::linear_part(constant, p).cwiseAbs().maxCoeff() < 1e-14);

  // plane wave: F_L = rho [m][km/2]/[k] exp(-i m k phi0/2) cos(m phi0)
  const int m = 3;
  const auto plane = WaveFunction::plane_wave(p.kin.q, m);
  const auto fl = dynamics::linear_part(plane, p);
  const UnitPhase& q = p.kin.q;
  const double rho = plane.density()(0);
  const cplx expect = rho * q.q_number(m) * q.q_number(m) / q.q_number(2.0) *
                      q.q_pow(-m) * std::cos(m * q.phi0());
  for (int l = 0; l < 16; ++l) CHECK(std::abs(fl(l) - expect) < 1e-14);
}

TEST_CASE("linear part tends to the undeformed quadratic form") {
  // F_L / conj(psi) -> (N_z^2/2 + alpha N_z) psi with N_z = -i d/dphi
  double prev = 0.0;
  for (const int n_pts : {128, 256}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    const auto psi = smooth_state(q);
    DynParams p(KinematicsParams(0.3, 0.0, 2, q), {}, 1e-3, 1.0, 1e-8,
                Backend::spectral);
    const Eigen::VectorXcd fl = dynamics::linear_part(psi, p);
    const Eigen::VectorXcd ds = d_phi(psi.samples(), q);
    const Eigen::VectorXcd dds = d_phi(ds, q);
    Eigen::VectorXcd target(n_pts);
    for (int l = 0; l < n_pts; ++l) {
      // N_z = -i d/dphi: (1/2) N_z^2 psi = -psi''/2, alpha N_z psi = -i alpha psi'
      target(l) = -0.5 * dds(l) - cplx(0.0, 0.3) * ds(l);
    }
    double gap = 0.0;
    for (int l = 0; l < n_pts; ++l) {
      gap = std::max(gap,
                     std::abs(fl(l) / std::conj(psi.samples()(l)) - target(l)));
    }
    gap /= target.cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(prev / gap > 1.7);  // one-sided smoothing: O(1/N)
    prev = gap;
    CHECK(gap < 0.1);
  }
}

TEST_CASE("nonlinear part") {
  const auto p = make_params(16, 2, 0.0, 0.0);
  const auto constant = WaveFunction::constant(p.kin.q, cplx(1.1));
  CHECK(dynamics::nonlinear_part(constant, p).cwiseAbs().maxCoeff() < 1e-14);

  // plane wave: multiplier G is spatially constant with a closed form
  const int m = 2;
  const UnitPhase& q = p.kin.q;
  const auto plane = WaveFunction::plane_wave(q, m);
  const auto fnl = dynamics::nonlinear_part(plane, p);
  const double g_expect = std::cos(m * q.phi0()) * q.q_number(m) * q.q_number(m) *
                          std::sin(m * q.phi0()) / q.q_number(2.0);
  const double rho = plane.density()(0);
  for (int l = 0; l < 16; ++l) {
    // F_NL = i G rho for R = identity
    CHECK(std::abs(fnl(l) - cplx(0.0, g_expect * rho)) < 1e-14);
  }
}

TEST_CASE("nonlinear multiplier tends to the diffusion term") {
  // G -> (D/2) rho''/rho
  double prev = 0.0;
  for (const int n_pts : {128, 256}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    const auto psi = smooth_state(q);
    DynParams p(KinematicsParams(0.0, 0.1, 2, q), {}, 1e-3, 1.0, 1e-8,
                Backend::spectral);
    const Eigen::VectorXcd fnl = dynamics::nonlinear_part(psi, p);
    const Eigen::VectorXcd rho = psi.density().cast<cplx>();
    const Eigen::VectorXd ddrho = d_phi(d_phi(rho, q), q).real();
    double gap = 0.0;
    double scale = 0.0;
    for (int l = 0; l < n_pts; ++l) {
      // recover G from F_NL = i G psi conj(psi)
      const double g = (fnl(l) / (cplx(0.0, 1.0) * rho(l))).real();
      const double target = 0.05 * ddrho(l) / std::real(rho(l));
      gap = std::max(gap, std::abs(g - target));
      scale = std::max(scale, std::abs(target));
    }
    gap /= scale;
    if (prev > 0.0) CHECK(prev / gap > 1.7);
    prev = gap;
    CHECK(gap < 0.2);
  }
}

TEST_CASE("split consistency: the evolution reproduces the continuity equation") {
  // 2 Re(conj(psi) psi_dot) must equal the Fokker-Planck density derivative
  int idx = 0;
  for (const int n_pts : {8, 16}) {
    for (const double alpha : {0.0, 0.7}) {
      for (const double D : {0.0, 0.2}) {
        const auto p = make_params(n_pts, 2, alpha, D);
        std::mt19937_64 rng(300 + idx++);
        const auto psi = dynamics::WaveFunction::random_smooth(p.kin.q, rng);
        const Eigen::VectorXcd psi_dot = dynamics::rhs_evolution(psi, p);
        Eigen::VectorXd reconstructed(n_pts);
        for (int l = 0; l < n_pts; ++l) {
          reconstructed(l) =
              2.0 * std::real(std::conj(psi.samples()(l)) * psi_dot(l));
        }
        const auto fp = dynamics::rho_dot_fokker_planck(psi, p);
        CHECK((reconstructed - fp).cwiseAbs().maxCoeff() <= 1e-9);
      }
    }
  }
}

TEST_CASE("stencil and assembled backends agree") {
  std::mt19937_64 rng(404);
  for (const int n_pts : {8, 64}) {
    for (const double D : {0.0, 0.05}) {
      const UnitPhase q = UnitPhase::for_cycle(n_pts);
      DynParams p(KinematicsParams(0.0, D, 2, q), {}, 1e-3, 1.0, 1e-8,
                  Backend::stencil);
      for (int draw = 0; draw < 4; ++draw) {
        const auto psi = WaveFunction::random_smooth(q, rng);
        CHECK(dynamics::backend_agreement(psi, p) <= 1e-10);
      }
      // non-identity shift R = 0.75 + 0.25 K_2
      dynamics::ShiftSpec r;
      r.a1 = 0.75;
      r.a2 = 0.25;
      r.k2 = 2;
      const int k_wide = n_pts == 8 ? 2 : 4;
      DynParams pr(KinematicsParams(0.0, D, k_wide, q), r, 1e-3, 1.0, 1e-8,
                   Backend::stencil);
      const auto psi = WaveFunction::random_smooth(q, rng);
      CHECK(dynamics::backend_agreement(psi, pr) <= 1e-10);
    }
  }
}

TEST_CASE("serial and parallel stencil kernels are bitwise identical") {
  std::mt19937_64 rng(606);
  for (const int n_pts : {128, 1024}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    const auto psi = WaveFunction::random_smooth(q, rng);
    dynamics::StencilContext ctx;
    ctx.n = n_pts;
    ctx.half_k = 2;
    const double s1 = std::sin(q.phi0());
    ctx.inv_4s1sk = 1.0 / (4.0 * s1 * std::sin(4.0 * q.phi0()));
    ctx.inv_4s1s1 = 1.0 / (4.0 * s1 * s1);
    ctx.diffusion = 0.2;
    ctx.guard_floor = 1e-8;
    Eigen::VectorXcd a(n_pts), b(n_pts);
    dynamics::rhs_stencil_serial(psi.samples().data(), ctx, a.data());
    dynamics::rhs_stencil_parallel(psi.samples().data(), ctx, b.data());
    for (int l = 0; l < n_pts; ++l) {
      CHECK(a(l).real() == b(l).real());
      CHECK(a(l).imag() == b(l).imag());
    }
    // both kernels report the same guard site
    Eigen::VectorXcd dead = psi.samples();
    dead(7) = 0.0;
    int serial_site = -1, parallel_site = -2;
    try {
      dynamics::rhs_stencil_serial(dead.data(), ctx, a.data());
    } catch (const dynamics::guard_violation& g) {
      serial_site = g.site;
    }
    try {
      dynamics::rhs_stencil_parallel(dead.data(), ctx, b.data());
    } catch (const dynamics::guard_violation& g) {
      parallel_site = g.site;
    }
    CHECK(serial_site == 7);
    CHECK(parallel_site == 7);
  }
}

TEST_CASE("evolution right-hand side is local") {
  const UnitPhase q = UnitPhase::for_cycle(16);
  for (const int k : {2, 4}) {
    DynParams p(KinematicsParams(0.0, 0.1, k, q), {}, 1e-3, 1.0, 1e-8,
                Backend::stencil);
    std::mt19937_64 rng(55);
    const auto psi = WaveFunction::random_smooth(q, rng);
    const Eigen::VectorXcd base = dynamics::rhs_evolution(psi, p);

    const int l0 = 5;
    Eigen::VectorXcd bumped = psi.samples();
    bumped(l0) += cplx(1e-5, -2e-5);
    const Eigen::VectorXcd shifted =
        dynamics::rhs_evolution(WaveFunction(q, bumped), p);

    const int k_minus = 1 - k / 2;
    const int k_plus = 1 + k / 2;
    for (int l = 0; l < 16; ++l) {
      const int off = ((l - l0) % 16 + 16) % 16;
      bool allowed = off == 0;
      for (const int d : {k_minus, -k_minus, k_plus, -k_plus, 2, -2}) {
        if (off == ((d % 16) + 16) % 16) allowed = true;
      }
      if (!allowed) {
        CHECK(std::abs(shifted(l) - base(l)) < 1e-13);
      }
    }
  }
}

TEST_CASE("plane waves rotate by the closed-form phase") {
  const UnitPhase q = UnitPhase::for_cycle(16);
  DynParams p(KinematicsParams(0.0, 0.25, 2, q), {}, 1e-3, 1.0, 1e-8,
              Backend::stencil);
  const int m = 2;
  const auto psi = WaveFunction::plane_wave(q, m);
  const double energy = dynamics::plane_wave_energy(m, p);

  // instantaneous: psi_dot = -i E psi
  const Eigen::VectorXcd rhs = dynamics::rhs_evolution(psi, p);
  CHECK((rhs + cplx(0.0, energy) * psi.samples()).cwiseAbs().maxCoeff() < 1e-13);

  // integrated: pure phase rotation, amplitudes preserved
  const auto traj = dynamics::integrate(psi, p, {1000, false});
  REQUIRE_FALSE(traj.singular);
  const auto& final_psi = traj.records.back().psi;
  const double t_final = traj.records.back().t;
  CHECK(t_final == doctest::Approx(1.0));
  const cplx rotation = std::polar(1.0, -energy * t_final);
  for (int l = 0; l < 16; ++l) {
    CHECK(std::abs(std::abs(final_psi(l)) - std::abs(psi.samples()(l))) < 1e-12);
    CHECK(std::abs(final_psi(l) - rotation * psi.samples()(l)) < 1e-10);
  }
  CHECK_THROWS_AS(dynamics::plane_wave_energy(m, make_params(16, 2, 0.5, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("integrator is fourth order") {
  const UnitPhase q = UnitPhase::for_cycle(32);
  const auto psi0 = WaveFunction::gaussian_bump(q, 2.0);
  const auto run = [&](double dt) {
    DynParams p(KinematicsParams(0.0, 0.1, 2, q), {}, dt, 0.1, 1e-8,
                Backend::stencil);
    return dynamics::integrate(psi0, p, {1 << 20, false}).records.back().psi;
  };
  const Eigen::VectorXcd ref = run(2.5e-4);
  const double err_coarse = (run(4e-3) - ref).cwiseAbs().maxCoeff();
  const double err_fine = (run(2e-3) - ref).cwiseAbs().maxCoeff();
  CHECK(err_coarse / err_fine > 14.0);
  CHECK(err_coarse / err_fine < 18.0);
}

TEST_CASE("probability is conserved along trajectories") {
  const UnitPhase q = UnitPhase::for_cycle(16);
  DynParams p(KinematicsParams(0.0, 0.1, 2, q), {}, 1e-3, 1.0, 1e-8,
              Backend::stencil);
  const auto psi0 = WaveFunction::gaussian_bump(q, 2.0);
  const auto traj = dynamics::integrate(psi0, p, {100, false});
  REQUIRE_FALSE(traj.singular);
  const double p0 = traj.records.front().diag.total_probability;
  for (const auto& rec : traj.records) {
    CHECK(std::abs(rec.diag.total_probability - p0) <= 1e-8);
  }
}

TEST_CASE("guard violations truncate the trajectory") {
  const UnitPhase q = UnitPhase::for_cycle(16);
  // absurdly high relative floor trips immediately on a bump profile
  DynParams p(KinematicsParams(0.0, 0.0, 2, q), {}, 1e-3, 1.0, 0.5,
              Backend::stencil);
  const auto traj = dynamics::integrate(WaveFunction::gaussian_bump(q, 3.0), p, {});
  CHECK(traj.singular);
  CHECK(traj.singular_site >= 0);
  CHECK_FALSE(traj.singular_reason.empty());
}

TEST_CASE("continuum reference integrator") {
  // free plane wave: exact phase rotation exp(-i m^2 t / 2)
  dynamics::ContinuumParams cp;
  cp.alpha = 0.0;
  cp.D = 0.0;
  cp.t_end = 0.4;
  cp.grid = 64;
  const int m = 3;
  const auto sol = dynamics::continuum_reference(
      [m](double phi) { return std::polar(1.0, m * phi); }, cp);
  const cplx expect0 = std::polar(1.0, -0.5 * m * m * cp.t_end);
  for (int l = 0; l < 8; ++l) {
    const double phi = 2.0 * kPi * l / 8.0;
    CHECK(std::abs(sol.eval(phi) - expect0 * std::polar(1.0, m * phi)) < 1e-9);
  }

  // alpha adds a drift: frequency m^2/2 + alpha m
  cp.alpha = 0.3;
  const auto sol2 = dynamics::continuum_reference(
      [m](double phi) { return std::polar(1.0, m * phi); }, cp);
  const cplx expect1 = std::polar(1.0, -(0.5 * m * m + 0.3 * m) * cp.t_end);
  CHECK(std::abs(sol2.eval(1.0) - expect1 * std::polar(1.0, m * 1.0)) < 1e-9);

  // the diffusion-like term conserves total probability
  cp.alpha = 0.0;
  cp.D = 0.2;
  const auto bump = [](double phi) {
    return cplx(std::exp(-2.0 * (1.0 - std::cos(phi))), 0.0);
  };
  const auto sol3 = dynamics::continuum_reference(bump, cp);
  dynamics::ContinuumParams cp0 = cp;
  cp0.t_end = 0.0;
  const auto sol0 = dynamics::continuum_reference(bump, cp0);
  CHECK(sol3.total_probability(64) ==
        doctest::Approx(sol0.total_probability(64)).epsilon(1e-8));
}

TEST_CASE("nonlinear functional family") {
  const UnitPhase q = UnitPhase::for_cycle(64);
  // plane wave, alpha = 0: only the (j0/rho)^2 functional survives, value m^2
  const int m = 3;
  const auto plane = WaveFunction::plane_wave(q, m);
  const auto d3 = dynamics::dg_nonlinear_functionals(plane, 0.0, {0, 0, 1, 0, 0});
  for (int l = 0; l < 64; ++l) CHECK(d3(l) == doctest::Approx(m * m).epsilon(1e-9));

  // real profile: zero current kills the D1, D3, D4 functionals
  const auto bump = WaveFunction::gaussian_bump(q, 2.0);
  const auto odd = dynamics::dg_nonlinear_functionals(bump, 0.0, {1, 0, 1, 1, 0});
  CHECK(odd.cwiseAbs().maxCoeff() < 1e-9);

  // constants kill everything
  const auto flat = WaveFunction::constant(q, cplx(0.8));
  const auto all = dynamics::dg_nonlinear_functionals(flat, 0.0, {1, 1, 1, 1, 1});
  CHECK(all.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("diagnostics are recomputed from the state") {
  const auto p = make_params(8, 2, 0.0, 0.1, Backend::stencil);
  const auto psi = WaveFunction::gaussian_bump(p.kin.q, 1.5);
  const auto diag = dynamics::compute_diagnostics(psi, p, true);
  CHECK(diag.total_probability == doctest::Approx(psi.total_probability()));
  CHECK(diag.fp_ehrenfest_residual >= 0.0);
  CHECK(diag.fp_ehrenfest_residual <= 1e-10);
  CHECK(diag.backend_residual <= 1e-10);
  CHECK(diag.mode_occupancy.sum() == doctest::Approx(psi.to_modes().cwiseAbs2().sum()));
}
