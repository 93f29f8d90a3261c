#include "qwitt/mode_operator.hpp"

#include <stdexcept>

namespace qwitt::witt {

namespace {
void require_same_space(const ModeOperator& a, const ModeOperator& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("ModeOperator: size mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}
}  // namespace

ModeOperator::ModeOperator(UnitPhase phase, Eigen::MatrixXcd entries)
    : phase_(std::move(phase)), mat_(std::move(entries)) {
  const int n = phase_.cycle_or_throw();
  if (mat_.rows() != n || mat_.cols() != n) {
    throw std::invalid_argument("ModeOperator: matrix dimension does not match N");
  }
}

ModeOperator ModeOperator::zero(const UnitPhase& phase) {
  const int n = phase.cycle_or_throw();
  return ModeOperator(phase, Eigen::MatrixXcd::Zero(n, n));
}

ModeOperator ModeOperator::identity(const UnitPhase& phase) {
  const int n = phase.cycle_or_throw();
  return ModeOperator(phase, Eigen::MatrixXcd::Identity(n, n));
}

ModeOperator& ModeOperator::operator+=(const ModeOperator& other) {
  require_same_space(*this, other);
  mat_ += other.mat_;
  return *this;
}

ModeOperator& ModeOperator::operator-=(const ModeOperator& other) {
  require_same_space(*this, other);
  mat_ -= other.mat_;
  return *this;
}

ModeOperator operator*(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a, b);
  return ModeOperator(a.phase_, a.mat_ * b.mat_);
}

ModeOperator operator*(cplx s, const ModeOperator& a) {
  return ModeOperator(a.phase_, s * a.mat_);
}

Eigen::VectorXcd ModeOperator::apply(const Eigen::VectorXcd& mode_coeffs) const {
  if (mode_coeffs.size() != mat_.rows()) {
    throw std::invalid_argument("ModeOperator::apply: vector size mismatch");
  }
  return mat_ * mode_coeffs;
}

ModeOperator commutator(const ModeOperator& a, const ModeOperator& b) {
  require_same_space(a, b);
  return ModeOperator(a.phase(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

ModeOperator q_commutator(const ModeOperator& a, const ModeOperator& b,
                          double r, double s) {
  require_same_space(a, b);
  const cplx qr = a.phase().q_pow(r);
  const cplx qs = a.phase().q_pow(s);
  return ModeOperator(a.phase(), qr * (a.matrix() * b.matrix()) -
                                     qs * (b.matrix() * a.matrix()));
}

Eigen::MatrixXcd tensor(const ModeOperator& a, const ModeOperator& b) {
  const int na = a.size();
  const int nb = b.size();
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return out;
}

}  // namespace qwitt::witt
