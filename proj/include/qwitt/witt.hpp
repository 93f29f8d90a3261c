// Matrix representations of the undeformed and deformed (inhomogeneous) Witt
// algebra generators on the cyclic mode space, and the verification suite for
// their commutation, coupling, Hopf and closure relations.
//
// Generator zoo (entries at (m + n mod N, m), canonical representatives m):
//
//   T_n               1                                   (mode raising)
//   L_n^alpha         m + n/2 + alpha                     (undeformed; exact
//                                                          only wrap-free)
//   Ldef_{n,k}^alpha  [k(m + n/2 + alpha)]_q / [k]_q      (deformed; exact on
//                                                          the full cycle)
//   K_k               diagonal q^{k m}                    (shift algebra)
//   Ttilde_n^delta    T_n K_delta
//   A_n^{alpha,I}     sum of three diagonal terms, each with its own
//                     q^{lambda_i} phase and K_{beta_i} shift; the scalar
//                     reading of the n/2 and alpha terms is used, which
//                     reproduces Ldef under the standard parameter table.
//
// All check_* functions return a structured report (never booleans): residual
// in the entrywise max norm, the parameter tuple as a stable string key, and
// an applicability flag.  A relation whose right-hand side would require an
// unconstructible generator ([k]_q = 0) is reported inapplicable, not failed.

#pragma once

#include <array>
#include <string>

#include "qwitt/mode_operator.hpp"

namespace qwitt::witt {

ModeOperator make_T(int n, const UnitPhase& q);
ModeOperator make_L_undeformed(int n, double alpha, const UnitPhase& q);
ModeOperator make_L_deformed(int n, int k, double alpha, const UnitPhase& q);
ModeOperator make_K(double k, const UnitPhase& q);
ModeOperator make_T_tilde(int n, int delta, const UnitPhase& q);

// Nine-parameter generalised generator: lambda (global phases), alpha_i
// (bracket scales), beta_i (shift exponents).  For alpha = 0 the third term
// vanishes identically and alpha_i[2] may be zero.
struct GeneralParams {
  std::array<double, 3> lambda{0.0, 0.0, 0.0};
  std::array<double, 3> alpha_i{1.0, 1.0, 1.0};
  std::array<double, 3> beta{0.0, 0.0, 0.0};
};

ModeOperator make_A_general(int n, const GeneralParams& params, double alpha,
                            const UnitPhase& q);

// One-parameter-family generators closing under the two-phase q-bracket:
//   A_n = q^{n(a+1)b} (q - q^-1) z^n ([b N_z]_q/[b]_q) K_b,
//   q^{-2mb} A_n A_m - q^{-2nb} A_m A_n = ((q^{-2bn} - q^{-2bm})/[b]_q) A_{n+m}.
// Exact on the cycle for integer b.
ModeOperator make_A_scaling(int n, double a_param, double b_param,
                            const UnitPhase& q);

// GeneralParams realising Ldef_{n,k}^alpha through make_A_general.
GeneralParams deformed_specialization(int n, int k, double alpha);

// Membership in the index family C(p, k0) = { p * k0 * nu, nu >= 1 }.
bool in_coupling_set(int k, int p, int k0);

// Tagged generator descriptor; build() dispatches on kind.
struct GeneratorLabel {
  enum class Kind { T, L_undeformed, L_deformed, K, T_tilde, A_general };
  Kind kind = Kind::T;
  int n = 0;
  int k = 1;
  double alpha = 0.0;
  int delta = 0;
  GeneralParams I;

  ModeOperator build(const UnitPhase& q) const;
};

struct CheckReport {
  std::string relation;  // stable machine key, e.g. "deformed-commutator"
  std::string params;    // stable parameter string, e.g. "N=8 m=1 n=2 ..."
  double residual = 0.0;
  double tol = 0.0;
  bool applicable = true;
  std::string note;

  bool passed() const { return !applicable || residual <= tol; }
};

// Deformed Witt commutators.  For j1 != j2:
//   [L_{m,j1}, L_{n,j2}] = c1 L_{m+n,j1+j2} + c2 L_{m+n,j2-j1},
//   c1 = [j1 n/2 - j2 m/2][j1+j2]/([j1][j2]),
//   c2 = [j1 n/2 + j2 m/2][j2-j1]/([j1][j2]);
// for j1 = j2 = j the coefficient is [j(n-m)/2][2j]/[j]^2 (the j1 -> j2
// limit of the general form).  `fault` perturbs c1 (self-test hook).
CheckReport check_deformed_relations(int m, int n, int j1, int j2, double alpha,
                                     const UnitPhase& q, double tol,
                                     double fault = 0.0);

// Undeformed relations [T,T] = 0, [L_n,T_m] = m T_{m+n},
// [L_m,L_n] = (n-m) L_{m+n}, evaluated on wrap-free columns only.
CheckReport check_undeformed_relations(int m, int n, double alpha,
                                       const UnitPhase& q, double tol);

// Quadratic coupling Ldef_{m,k} T_n = T_{-n} Ldef_{m+2n,k}.
CheckReport check_coupling(int m, int n, int k, double alpha, const UnitPhase& q,
                           double tol);

// K_k T_n = q^{kn} T_n K_k,  K_k Ldef_{n,l} = q^{kn} Ldef_{n,l} K_k,
// [K_k, K_k'] = 0.
CheckReport check_K_relations(int k, int n, int l, double alpha,
                              const UnitPhase& q, double tol);

// Coproduct homomorphism on the N^2 tensor space plus antipode identities.
CheckReport check_hopf_homomorphism(int m, int n, int j1, int j2, double alpha,
                                    const UnitPhase& q, double tol);

// Ttilde exchange phase and the alpha-shifted coupling
//   q^{-delta n} Ttilde_m Ldef_{n,j}^{alpha+m} = Ldef_{n,j}^alpha Ttilde_m.
CheckReport check_T_tilde_relations(int m, int n, int delta, int j, double alpha,
                                    const UnitPhase& q, double tol);

// q-bracket closure of the scaling family (see make_A_scaling) together with
// the specialization of the generalised generators to Ldef_{n,k}.
CheckReport check_qbracket_closure(int n, int m, double a_param, double b_param,
                                   const UnitPhase& q, double tol);

// Additive-unit form with a = i phi0 equals the deformed generator entrywise
// (sinh(ix) = i sin x).
CheckReport check_implicit_additive(int n, int k, double alpha,
                                    const UnitPhase& q, double tol);

// Entrywise residual of make_A_general(deformed_specialization) vs
// make_L_deformed.
double a_general_specialization_residual(int n, int k, double alpha,
                                         const UnitPhase& q);

// |Ldef - L_undeformed| at a fixed wrap-free mode; O(phi0^2) as N grows.
double continuum_gap(int n, int k, double alpha, int mode, const UnitPhase& q);

}  // namespace qwitt::witt
