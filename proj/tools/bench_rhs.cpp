// Timing comparison of the evolution right-hand-side paths:
// serial stencil (reference), OpenMP stencil, assembled spectral backend.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "qwitt/dynamics.hpp"
#include "qwitt/stencil.hpp"

using namespace qwitt;

namespace {

double time_ms(const std::function<void()>& fn, int iterations) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < iterations; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / iterations;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%8s %10s %14s %16s %16s %9s\n", "N", "iters", "serial (ms)",
              "openmp (ms)", "spectral (ms)", "speedup");

  for (const int n : {64, 256, 1024, 4096, 16384, 65536}) {
    const auto q = qcalc::UnitPhase::for_cycle(n);
    kinematics::KinematicsParams kin(0.0, 0.1, 2, q);
    dynamics::DynParams params(kin, {}, 1e-3, 1.0, 1e-8, dynamics::Backend::stencil);
    // smooth nowhere-vanishing state, O(N) construction
    Eigen::VectorXcd s(n);
    for (int l = 0; l < n; ++l) {
      const double phi = q.phi0() * l;
      s(l) = std::exp(-1.5 * (1.0 - std::cos(phi))) *
             std::exp(std::complex<double>(0.0, 0.8 * std::sin(phi)));
    }
    const dynamics::WaveFunction psi(q, s);

    Eigen::VectorXcd out(n);
    dynamics::StencilContext ctx;
    {
      // Rebuild the context the way the production path does.
      const double s1 = std::sin(q.phi0());
      const double sk = std::sin(kin.k * q.phi0());
      ctx.n = n;
      ctx.half_k = kin.k / 2;
      ctx.inv_4s1sk = 1.0 / (4.0 * s1 * sk);
      ctx.inv_4s1s1 = 1.0 / (4.0 * s1 * s1);
      ctx.diffusion = kin.D;
      ctx.guard_floor = params.guard_eps * psi.samples().cwiseAbs().maxCoeff();
    }

    const int iters = n <= 4096 ? 2000 : 200;
    const double serial = time_ms(
        [&] { dynamics::rhs_stencil_serial(psi.samples().data(), ctx, out.data()); },
        iters);
    const double parallel = time_ms(
        [&] { dynamics::rhs_stencil_parallel(psi.samples().data(), ctx, out.data()); },
        iters);

    // The dense mode-space backend scales as N^2; only time it where that
    // stays interactive.
    double spectral = -1.0;
    if (n <= 1024) {
      spectral = time_ms(
          [&] {
            dynamics::DynParams sp(kin, {}, 1e-3, 1.0, 1e-8,
                                   dynamics::Backend::spectral);
            out = dynamics::rhs_evolution(psi, sp);
          },
          n <= 256 ? 50 : 10);
    }

    if (spectral >= 0.0) {
      std::printf("%8d %10d %14.4f %16.4f %16.3f %8.2fx\n", n, iters, serial,
                  parallel, spectral, serial / parallel);
    } else {
      std::printf("%8d %10d %14.4f %16.4f %16s %8.2fx\n", n, iters, serial,
                  parallel, "-", serial / parallel);
    }
  }
  return 0;
}
