#include "qwitt/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace qwitt::kinematics {

FieldCoefficients::FieldCoefficients(UnitPhase phase, Kind kind)
    : phase_(std::move(phase)), kind_(kind) {
  c_ = Eigen::VectorXcd::Zero(phase_.cycle_or_throw());
}

FieldCoefficients FieldCoefficients::from_triples(
    const UnitPhase& phase, Kind kind,
    const std::vector<std::tuple<int, double, double>>& triples) {
  FieldCoefficients f(phase, kind);
  const int n_pts = phase.cycle_or_throw();
  for (const auto& [mode, re, im] : triples) {
    if (phase.mode_rep(((mode % n_pts) + n_pts) % n_pts) != mode) {
      throw std::invalid_argument("FieldCoefficients: mode " + std::to_string(mode) +
                                  " outside the canonical window for N = " +
                                  std::to_string(n_pts));
    }
    f.set_coeff(mode, cplx(re, im));
  }
  return f;
}

FieldCoefficients FieldCoefficients::constant(const UnitPhase& phase, double value,
                                              Kind kind) {
  FieldCoefficients f(phase, kind);
  f.set_coeff(0, value);
  return f;
}

FieldCoefficients FieldCoefficients::cosine(const UnitPhase& phase, Kind kind) {
  FieldCoefficients f(phase, kind);
  f.set_coeff(1, 0.5);
  f.set_coeff(-1, 0.5);
  return f;
}

FieldCoefficients FieldCoefficients::sine(const UnitPhase& phase, Kind kind) {
  FieldCoefficients f(phase, kind);
  f.set_coeff(1, cplx(0.0, -0.5));
  f.set_coeff(-1, cplx(0.0, 0.5));
  return f;
}

FieldCoefficients FieldCoefficients::gaussian_bump(const UnitPhase& phase,
                                                   double width, Kind kind) {
  FieldCoefficients f(phase, kind);
  const int n_pts = phase.cycle_or_throw();
  // Sample, transform, truncate to the aliasing-safe window |n| <= N/4.
  Eigen::VectorXcd g(n_pts);
  for (int l = 0; l < n_pts; ++l) {
    g(l) = std::exp(-width * (1.0 - std::cos(phase.phi0() * l)));
  }
  for (int i = 0; i < n_pts; ++i) {
    const int mode = phase.mode_rep(i);
    if (std::abs(mode) > n_pts / 4) continue;
    cplx acc = 0.0;
    for (int l = 0; l < n_pts; ++l) acc += g(l) * phase.q_pow(-mode * l);
    f.c_(i) = acc / static_cast<double>(n_pts);
  }
  return f;
}

cplx FieldCoefficients::coeff(int mode) const {
  const int n_pts = phase_.cycle_or_throw();
  const int idx = ((mode % n_pts) + n_pts) % n_pts;
  return c_(idx);
}

void FieldCoefficients::set_coeff(int mode, cplx value) {
  const int n_pts = phase_.cycle_or_throw();
  const int idx = ((mode % n_pts) + n_pts) % n_pts;
  c_(idx) = value;
}

double FieldCoefficients::reality_violation() const {
  double worst = 0.0;
  for (int i = 0; i < c_.size(); ++i) {
    const int mode = phase_.mode_rep(i);
    worst = std::max(worst, std::abs(coeff(-mode) - std::conj(coeff(mode))));
  }
  return worst;
}

Eigen::VectorXcd FieldCoefficients::samples() const {
  const int n_pts = phase_.cycle_or_throw();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_pts);
  for (int l = 0; l < n_pts; ++l) {
    for (int i = 0; i < n_pts; ++i) {
      out(l) += c_(i) * phase_.q_pow(static_cast<double>(phase_.mode_rep(i)) * l);
    }
  }
  return out;
}

KinematicsParams::KinematicsParams(double alpha_in, double D_in, int k_in,
                                   UnitPhase q_in)
    : alpha(alpha_in), D(D_in), k(k_in), q(std::move(q_in)) {
  if (k <= 0 || k % 2 != 0) {
    throw std::invalid_argument("KinematicsParams: k must be a positive even integer");
  }
  if (q.q_number_is_zero(k)) {
    throw qcalc::degenerate_parameter("KinematicsParams: [k]_q = 0 for k = " +
                                      std::to_string(k));
  }
  if (q.q_number_is_zero(k / 2)) {
    throw qcalc::degenerate_parameter("KinematicsParams: [k/2]_q = 0 for k = " +
                                      std::to_string(k));
  }
}

namespace {

void require_real(const FieldCoefficients& f, double tol, const char* who) {
  const double v = f.reality_violation();
  if (v > tol) {
    throw std::invalid_argument(std::string(who) +
                                ": coefficients violate the reality condition "
                                "c_{-n} = conj(c_n) by " +
                                std::to_string(v));
  }
}

}  // namespace

ModeOperator quantize_position(const FieldCoefficients& f, double reality_tol) {
  require_real(f, reality_tol, "quantize_position");
  const UnitPhase& q = f.phase();
  const int n_pts = q.cycle_or_throw();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n_pts, n_pts);
  for (int i = 0; i < n_pts; ++i) {
    const int n = q.mode_rep(i);
    const cplx fn = f.coeff(n);
    if (fn == cplx(0.0)) continue;
    for (int col = 0; col < n_pts; ++col) {
      mat((col + ((n % n_pts) + n_pts)) % n_pts, col) += fn;
    }
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator quantize_momentum(const FieldCoefficients& X,
                               const KinematicsParams& params, double reality_tol) {
  require_real(X, reality_tol, "quantize_momentum");
  const UnitPhase& q = params.q;
  const int n_pts = q.cycle_or_throw();
  const double inv_k = 1.0 / q.q_number(params.k);
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n_pts, n_pts);
  for (int i = 0; i < n_pts; ++i) {
    const int n = q.mode_rep(i);
    const cplx xn = X.coeff(n);
    if (xn == cplx(0.0)) continue;
    const cplx d_term = cplx(0.0, params.D * q.q_number(n));
    for (int col = 0; col < n_pts; ++col) {
      const double m = q.mode_rep(col);
      const double entry = q.q_number(params.k * (m + 0.5 * n + params.alpha)) * inv_k;
      mat((col + ((n % n_pts) + n_pts)) % n_pts, col) += xn * (entry + d_term);
    }
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator quantize_undeformed_position(const FieldCoefficients& f) {
  return quantize_position(f);
}

ModeOperator quantize_undeformed_momentum(const FieldCoefficients& X,
                                          double alpha, double D) {
  const UnitPhase& q = X.phase();
  const int n_pts = q.cycle_or_throw();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n_pts, n_pts);
  for (int i = 0; i < n_pts; ++i) {
    const int n = q.mode_rep(i);
    const cplx xn = X.coeff(n);
    if (xn == cplx(0.0)) continue;
    const cplx d_term = cplx(0.0, D * n);
    for (int col = 0; col < n_pts; ++col) {
      const double m = q.mode_rep(col);
      mat((col + ((n % n_pts) + n_pts)) % n_pts, col) +=
          xn * (m + 0.5 * n + alpha + d_term);
    }
  }
  return ModeOperator(q, std::move(mat));
}

FieldCoefficients gradient_field(const FieldCoefficients& f) {
  FieldCoefficients out(f.phase(), FieldCoefficients::Kind::vector_field);
  const UnitPhase& q = f.phase();
  const int n_pts = q.cycle_or_throw();
  for (int i = 0; i < n_pts; ++i) {
    const int n = q.mode_rep(i);
    out.set_coeff(n, cplx(0.0, q.q_number(n)) * f.coeff(n));
  }
  return out;
}

FieldCoefficients derivation_action(const FieldCoefficients& X,
                                    const FieldCoefficients& f) {
  FieldCoefficients out(f.phase(), FieldCoefficients::Kind::function);
  const UnitPhase& q = f.phase();
  const int n_pts = q.cycle_or_throw();
  for (int i = 0; i < n_pts; ++i) {
    const int a = q.mode_rep(i);
    for (int j = 0; j < n_pts; ++j) {
      const int b = q.mode_rep(j);
      const int total = a + b;
      const int idx = ((total % n_pts) + n_pts) % n_pts;
      if (q.mode_rep(idx) != total) continue;  // stay inside the window
      out.set_coeff(total, out.coeff(total) +
                               X.coeff(a) * cplx(0.0, static_cast<double>(b)) *
                                   f.coeff(b));
    }
  }
  return out;
}

FieldCoefficients convolve(const FieldCoefficients& f, const FieldCoefficients& g) {
  FieldCoefficients out(f.phase(), f.kind());
  const UnitPhase& q = f.phase();
  const int n_pts = q.cycle_or_throw();
  for (int i = 0; i < n_pts; ++i) {
    const int a = q.mode_rep(i);
    for (int j = 0; j < n_pts; ++j) {
      const int b = q.mode_rep(j);
      const int idx = (((a + b) % n_pts) + n_pts) % n_pts;
      const int total = q.mode_rep(idx);
      out.set_coeff(total, out.coeff(total) + f.coeff(a) * g.coeff(b));
    }
  }
  return out;
}

}  // namespace qwitt::kinematics
