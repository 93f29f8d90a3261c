// Assembly of position and momentum observables from Fourier data of real
// functions f and vector fields X on the N-point circle.
//
//   Q(f)        = sum_n f_n T_n                       (multiplication by f)
//   P^k(X)      = sum_n X_n (Ldef_{n,k}^alpha + i [n]_q D T_n)
//   P_und(X)    = sum_n X_n (L_n^alpha + i n D T_n)   (continuum oracle)
//   grad f      has coefficients i [n]_q f_n.
//
// Reality f_{-n} = conj(f_n) makes Q and P Hermitian; P^k acting in position
// space couples a point only to itself and its k-th neighbours.

#pragma once

#include <cstdint>
#include <vector>

#include "qwitt/witt.hpp"

namespace qwitt::kinematics {

using qcalc::UnitPhase;
using qcalc::cplx;
using witt::ModeOperator;

class FieldCoefficients {
 public:
  enum class Kind { function, vector_field };

  FieldCoefficients(UnitPhase phase, Kind kind);

  // From (n, re, im) triples; n must lie in the canonical window.
  static FieldCoefficients from_triples(
      const UnitPhase& phase, Kind kind,
      const std::vector<std::tuple<int, double, double>>& triples);

  static FieldCoefficients constant(const UnitPhase& phase, double value,
                                    Kind kind = Kind::function);
  static FieldCoefficients cosine(const UnitPhase& phase,
                                  Kind kind = Kind::function);
  static FieldCoefficients sine(const UnitPhase& phase,
                                Kind kind = Kind::function);
  // Coefficients of exp(-width (1 - cos phi)) truncated to |n| <= N/4.
  static FieldCoefficients gaussian_bump(const UnitPhase& phase, double width,
                                         Kind kind = Kind::function);

  const UnitPhase& phase() const { return phase_; }
  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(c_.size()); }

  cplx coeff(int mode) const;          // by canonical mode number
  void set_coeff(int mode, cplx value);
  const Eigen::VectorXcd& storage() const { return c_; }

  // max |c_{-n} - conj(c_n)|; zero for real fields.
  double reality_violation() const;

  // Pointwise samples sum_n c_n q^{n l}.
  Eigen::VectorXcd samples() const;

 private:
  UnitPhase phase_;
  Kind kind_;
  Eigen::VectorXcd c_;  // storage index i holds mode rep(i)
};

struct KinematicsParams {
  double alpha = 0.0;  // topological quantum number, [0, 2 pi)
  double D = 0.0;      // second quantum number
  int k = 2;           // internal-space coordinate, even, [k]_q != 0
  UnitPhase q;

  KinematicsParams(double alpha, double D, int k, UnitPhase q);
};

// Q(f) = sum f_n T_n; Hermitian for real f (violation beyond tol throws).
ModeOperator quantize_position(const FieldCoefficients& f, double reality_tol = 1e-9);

// P^k(X) = sum X_n (Ldef_{n,k}^alpha + i [n]_q D T_n).
ModeOperator quantize_momentum(const FieldCoefficients& X,
                               const KinematicsParams& params,
                               double reality_tol = 1e-9);

// Undeformed assembly, the q -> 1 oracle (wrap-free caveat applies).
ModeOperator quantize_undeformed_position(const FieldCoefficients& f);
ModeOperator quantize_undeformed_momentum(const FieldCoefficients& X,
                                          double alpha, double D);

// grad f: vector-field coefficients i [n]_q f_n (reality preserved).
FieldCoefficients gradient_field(const FieldCoefficients& f);

// Continuum derivative action X f' used by the undeformed commutator
// contract [P(X), Q(f)] = -i Q(X f'): coefficients sum_{a+b=j} X_a (i b) f_b.
FieldCoefficients derivation_action(const FieldCoefficients& X,
                                    const FieldCoefficients& f);

// Circular convolution (pointwise product of the sampled functions).
FieldCoefficients convolve(const FieldCoefficients& f, const FieldCoefficients& g);

}  // namespace qwitt::kinematics
