// Fused position-space kernel for the evolution right-hand side at alpha = 0.
//
// Per site l (h = k/2, all indices mod N):
//   P(l)   = -(psi(l+1+h) - psi(l+1-h) - psi(l-1+h) + psi(l-1-h)) / (4 s1 sk)
//   S(l)   =  (conj(psi)(l+1+h) + conj(psi)(l-1+h)) / 2
//   a(l)   =  psi(l+1+h) - psi(l-1+h)
//   b(l)   =  psi(l+1+h) + psi(l-1+h) - psi(l+1-h) - psi(l-1-h)
//   C(l)   = -Im(b conj(a)) / (4 s1 sk)
//   G(l)   = (C + D (rho(l+2) - 2 rho(l) + rho(l-2)) / (4 s1^2)) / W(l)
//   W(l)   =  2 Re(psi(l) (R conj(psi))(l))
//   out(l) = -i (P S + i G psi(l) (R conj(psi))(l)) / conj(psi(l))
// with s1 = sin(2 pi/N), sk = sin(2 pi k/N).
//
// The serial kernel is the reference; the OpenMP kernel is the production
// path and produces bitwise-identical output (site-local, no reductions).

#pragma once

#include <complex>

namespace qwitt::dynamics {

struct StencilContext {
  int n = 0;        // lattice size
  int half_k = 1;   // k/2, normalized into [0, n)
  double inv_4s1sk = 0.0;
  double inv_4s1s1 = 0.0;
  double diffusion = 0.0;         // D
  std::complex<double> r_a1{1.0, 0.0};
  std::complex<double> r_a2{0.0, 0.0};
  int r_k1 = 0;  // normalized into [0, n)
  int r_k2 = 0;
  double guard_floor = 0.0;       // absolute amplitude floor
};

// Both throw guard_violation on a vanishing divisor.
void rhs_stencil_serial(const std::complex<double>* psi, const StencilContext& ctx,
                        std::complex<double>* out);
void rhs_stencil_parallel(const std::complex<double>* psi, const StencilContext& ctx,
                          std::complex<double>* out);

}  // namespace qwitt::dynamics
