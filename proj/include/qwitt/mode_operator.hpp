// Dense operators on the cyclic Fourier-mode space of the N-point circle.
//
// Basis: modes m = 0..N-1 by storage index, with canonical representatives
// m in [-floor(N/2), ceil(N/2)) wherever a non-periodic quantity (the
// undeformed m + n/2 + alpha) enters.  All deformed generators are exactly
// N-periodic because q^N = 1, so for them the representative choice is
// immaterial.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qwitt/qcalc.hpp"

namespace qwitt::witt {

using qcalc::UnitPhase;
using qcalc::cplx;

class ModeOperator {
 public:
  ModeOperator(UnitPhase phase, Eigen::MatrixXcd entries);

  static ModeOperator zero(const UnitPhase& phase);
  static ModeOperator identity(const UnitPhase& phase);

  int size() const { return static_cast<int>(mat_.rows()); }
  const UnitPhase& phase() const { return phase_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }

  ModeOperator adjoint() const { return ModeOperator(phase_, mat_.adjoint()); }
  double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

  ModeOperator& operator+=(const ModeOperator& other);
  ModeOperator& operator-=(const ModeOperator& other);
  friend ModeOperator operator+(ModeOperator a, const ModeOperator& b) { return a += b; }
  friend ModeOperator operator-(ModeOperator a, const ModeOperator& b) { return a -= b; }
  friend ModeOperator operator*(const ModeOperator& a, const ModeOperator& b);
  friend ModeOperator operator*(cplx s, const ModeOperator& a);

  Eigen::VectorXcd apply(const Eigen::VectorXcd& mode_coeffs) const;

 private:
  UnitPhase phase_;
  Eigen::MatrixXcd mat_;
};

// AB - BA.
ModeOperator commutator(const ModeOperator& a, const ModeOperator& b);

// q^r AB - q^s BA.
ModeOperator q_commutator(const ModeOperator& a, const ModeOperator& b,
                          double r, double s);

// Kronecker product on the N^2-dimensional two-site space.  The result keeps
// the factors' UnitPhase; it is not itself a single-cycle mode operator.
Eigen::MatrixXcd tensor(const ModeOperator& a, const ModeOperator& b);

}  // namespace qwitt::witt
