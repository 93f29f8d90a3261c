#include "qwitt/witt.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace qwitt::witt {

namespace {

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[256];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

// Column i is wrap-free for a set of raised indices when every rep(i) + s
// stays inside the canonical window.
bool wrap_free(const UnitPhase& q, int i, std::initializer_list<int> shifts) {
  for (int s : shifts) {
    if (q.mode_rep(i) + s != q.mode_rep(i + s)) return false;
  }
  return true;
}

double column_restricted_residual(const ModeOperator& diff, const UnitPhase& q,
                                  std::initializer_list<int> shifts) {
  double worst = 0.0;
  for (int i = 0; i < diff.size(); ++i) {
    if (!wrap_free(q, i, shifts)) continue;
    worst = std::max(worst, diff.matrix().col(i).cwiseAbs().maxCoeff());
  }
  return worst;
}

void require_nondegenerate(const UnitPhase& q, int k, const char* who) {
  if (q.q_number_is_zero(k)) {
    std::string msg = std::string(who) + ": [k]_q = 0 for k = " + std::to_string(k);
    if (q.cycle()) {
      const int n = *q.cycle();
      msg += " (k mod N = " + std::to_string(((k % n) + n) % n) + ", N = " +
             std::to_string(n) + ")";
    }
    throw qcalc::degenerate_parameter(msg);
  }
}

}  // namespace

ModeOperator make_T(int n, const UnitPhase& q) {
  const int size = q.cycle_or_throw();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    mat((((i + n) % size) + size) % size, i) = 1.0;
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator make_L_undeformed(int n, double alpha, const UnitPhase& q) {
  const int size = q.cycle_or_throw();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    mat((((i + n) % size) + size) % size, i) = q.mode_rep(i) + 0.5 * n + alpha;
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator make_L_deformed(int n, int k, double alpha, const UnitPhase& q) {
  require_nondegenerate(q, k, "make_L_deformed");
  const int size = q.cycle_or_throw();
  const double inv = 1.0 / q.q_number(k);
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double arg = k * (q.mode_rep(i) + 0.5 * n + alpha);
    mat((((i + n) % size) + size) % size, i) = q.q_number(arg) * inv;
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator make_K(double k, const UnitPhase& q) {
  const int size = q.cycle_or_throw();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    mat(i, i) = q.q_pow(k * q.mode_rep(i));
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator make_T_tilde(int n, int delta, const UnitPhase& q) {
  return make_T(n, q) * make_K(delta, q);
}

ModeOperator make_A_general(int n, const GeneralParams& p, double alpha,
                            const UnitPhase& q) {
  const int size = q.cycle_or_throw();
  for (int t = 0; t < (alpha != 0.0 ? 3 : 2); ++t) {
    if (q.q_number_is_zero(p.alpha_i[static_cast<size_t>(t)])) {
      throw qcalc::degenerate_parameter(
          fmt("make_A_general: [alpha_%d]_q = 0 (alpha_%d = %g)", t + 1, t + 1,
              p.alpha_i[static_cast<size_t>(t)]));
    }
  }
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  const double b2 = q.q_number(p.alpha_i[1] * 0.5 * n) / q.q_number(p.alpha_i[1]);
  const double b3 =
      alpha != 0.0 ? q.q_number(p.alpha_i[2] * alpha) / q.q_number(p.alpha_i[2]) : 0.0;
  for (int i = 0; i < size; ++i) {
    const double m = q.mode_rep(i);
    cplx v = q.q_pow(p.lambda[0]) *
             (q.q_number(p.alpha_i[0] * m) / q.q_number(p.alpha_i[0])) *
             q.q_pow(p.beta[0] * m);
    v += q.q_pow(p.lambda[1]) * b2 * q.q_pow(p.beta[1] * m);
    if (alpha != 0.0) v += q.q_pow(p.lambda[2]) * b3 * q.q_pow(p.beta[2] * m);
    mat((((i + n) % size) + size) % size, i) = v;
  }
  return ModeOperator(q, std::move(mat));
}

ModeOperator make_A_scaling(int n, double a_param, double b_param,
                            const UnitPhase& q) {
  if (q.q_number_is_zero(b_param)) {
    throw qcalc::degenerate_parameter("make_A_scaling: [b]_q = 0");
  }
  const int size = q.cycle_or_throw();
  const cplx scale =
      q.q_pow(n * (a_param + 1.0) * b_param) * (q.q_pow(1.0) - q.q_pow(-1.0));
  const double inv = 1.0 / q.q_number(b_param);
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double m = q.mode_rep(i);
    mat((((i + n) % size) + size) % size, i) =
        scale * q.q_number(b_param * m) * inv * q.q_pow(b_param * m);
  }
  return ModeOperator(q, std::move(mat));
}

GeneralParams deformed_specialization(int n, int k, double alpha) {
  GeneralParams p;
  p.lambda = {k * (0.5 * n + alpha), k * alpha, -k * 0.5 * n};
  p.alpha_i = {static_cast<double>(k), static_cast<double>(k), static_cast<double>(k)};
  p.beta = {0.0, static_cast<double>(-k), static_cast<double>(-k)};
  return p;
}

bool in_coupling_set(int k, int p, int k0) {
  if (p <= 0 || k0 == 0) return false;
  const int unit = p * k0;
  if (unit == 0 || k % unit != 0) return false;
  return k / unit >= 1;
}

ModeOperator GeneratorLabel::build(const UnitPhase& q) const {
  switch (kind) {
    case Kind::T:
      return make_T(n, q);
    case Kind::L_undeformed:
      return make_L_undeformed(n, alpha, q);
    case Kind::L_deformed:
      return make_L_deformed(n, k, alpha, q);
    case Kind::K:
      return make_K(k, q);
    case Kind::T_tilde:
      return make_T_tilde(n, delta, q);
    case Kind::A_general:
      return make_A_general(n, I, alpha, q);
  }
  throw std::logic_error("GeneratorLabel: unknown kind");
}

// ---------------------------------------------------------------------------
// Relation checks

CheckReport check_deformed_relations(int m, int n, int j1, int j2, double alpha,
                                     const UnitPhase& q, double tol, double fault) {
  CheckReport rep;
  rep.relation = "deformed-commutator";
  rep.tol = tol;
  rep.params = fmt("N=%d m=%d n=%d j1=%d j2=%d alpha=%g", q.cycle_or_throw(), m,
                   n, j1, j2, alpha);

  if (q.q_number_is_zero(j1) || q.q_number_is_zero(j2)) {
    rep.applicable = false;
    rep.note = "operand generator has [j]_q = 0";
    return rep;
  }
  const ModeOperator lhs =
      commutator(make_L_deformed(m, j1, alpha, q), make_L_deformed(n, j2, alpha, q));

  if (j1 == j2) {
    if (m == n) {
      rep.residual = lhs.max_abs();
      return rep;
    }
    if (q.q_number_is_zero(2 * j1)) {
      rep.applicable = false;
      rep.note = "structure-constant generator has [2j]_q = 0";
      return rep;
    }
    const double c = (q.q_number(0.5 * j1 * (n - m)) * q.q_number(2 * j1) + fault) /
                     (q.q_number(j1) * q.q_number(j1));
    rep.residual = (lhs - cplx(c) * make_L_deformed(m + n, 2 * j1, alpha, q)).max_abs();
    return rep;
  }

  if (q.q_number_is_zero(j1 + j2)) {
    rep.applicable = false;
    rep.note = "structure-constant generator has [j1+j2]_q = 0";
    return rep;
  }
  if (q.q_number_is_zero(j2 - j1)) {
    rep.applicable = false;
    rep.note = "structure-constant generator has [j2-j1]_q = 0";
    return rep;
  }
  const double denom = q.q_number(j1) * q.q_number(j2);
  const double c1 =
      (q.q_number(0.5 * (j1 * n - j2 * m)) * q.q_number(j1 + j2) + fault) / denom;
  const double c2 = q.q_number(0.5 * (j1 * n + j2 * m)) * q.q_number(j2 - j1) / denom;
  const ModeOperator rhs = cplx(c1) * make_L_deformed(m + n, j1 + j2, alpha, q) +
                           cplx(c2) * make_L_deformed(m + n, j2 - j1, alpha, q);
  rep.residual = (lhs - rhs).max_abs();
  return rep;
}

CheckReport check_undeformed_relations(int m, int n, double alpha,
                                       const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "undeformed-witt";
  rep.tol = tol;
  rep.params = fmt("N=%d m=%d n=%d alpha=%g", q.cycle_or_throw(), m, n, alpha);

  const ModeOperator Tm = make_T(m, q);
  const ModeOperator Tn = make_T(n, q);
  const ModeOperator Lm = make_L_undeformed(m, alpha, q);
  const ModeOperator Ln = make_L_undeformed(n, alpha, q);

  double worst = commutator(Tm, Tn).max_abs();  // exact on the full cycle

  const ModeOperator lt = commutator(Ln, Tm) - cplx(m) * make_T(m + n, q);
  worst = std::max(worst, column_restricted_residual(lt, q, {m, n, m + n}));

  const ModeOperator ll =
      commutator(Lm, Ln) - cplx(n - m) * make_L_undeformed(m + n, alpha, q);
  worst = std::max(worst, column_restricted_residual(ll, q, {m, n, m + n}));

  rep.residual = worst;
  return rep;
}

CheckReport check_coupling(int m, int n, int k, double alpha, const UnitPhase& q,
                           double tol) {
  CheckReport rep;
  rep.relation = "quadratic-coupling";
  rep.tol = tol;
  rep.params = fmt("N=%d m=%d n=%d k=%d alpha=%g", q.cycle_or_throw(), m, n, k, alpha);
  if (q.q_number_is_zero(k)) {
    rep.applicable = false;
    rep.note = "[k]_q = 0";
    return rep;
  }
  const ModeOperator lhs = make_L_deformed(m, k, alpha, q) * make_T(n, q);
  const ModeOperator rhs = make_T(-n, q) * make_L_deformed(m + 2 * n, k, alpha, q);
  rep.residual = (lhs - rhs).max_abs();
  return rep;
}

CheckReport check_K_relations(int k, int n, int l, double alpha,
                              const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "shift-algebra";
  rep.tol = tol;
  rep.params = fmt("N=%d k=%d n=%d l=%d alpha=%g", q.cycle_or_throw(), k, n, l, alpha);

  const ModeOperator Kk = make_K(k, q);
  const ModeOperator Tn = make_T(n, q);
  const cplx phase = q.q_pow(static_cast<double>(k) * n);

  double worst = (Kk * Tn - phase * (Tn * Kk)).max_abs();
  worst = std::max(worst, commutator(Kk, make_K(k + 1, q)).max_abs());

  if (q.q_number_is_zero(l)) {
    rep.applicable = false;
    rep.note = "[l]_q = 0; shift/raising parts checked, deformed part skipped";
    rep.residual = worst;
    return rep;
  }
  const ModeOperator Lnl = make_L_deformed(n, l, alpha, q);
  worst = std::max(worst, (Kk * Lnl - phase * (Lnl * Kk)).max_abs());
  rep.residual = worst;
  return rep;
}

CheckReport check_hopf_homomorphism(int m, int n, int j1, int j2, double alpha,
                                    const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "hopf-coproduct";
  rep.tol = tol;
  rep.params = fmt("N=%d m=%d n=%d j1=%d j2=%d alpha=%g", q.cycle_or_throw(), m,
                   n, j1, j2, alpha);

  if (q.q_number_is_zero(j1) || q.q_number_is_zero(j2)) {
    rep.applicable = false;
    rep.note = "operand generator has [j]_q = 0";
    return rep;
  }

  const auto coproduct = [&q](const ModeOperator& L, int mode) -> Eigen::MatrixXcd {
    const ModeOperator K = make_K(mode, q);
    return tensor(L, K) + tensor(K, L);
  };

  const ModeOperator L1 = make_L_deformed(m, j1, alpha, q);
  const ModeOperator L2 = make_L_deformed(n, j2, alpha, q);
  const Eigen::MatrixXcd d1 = coproduct(L1, m);
  const Eigen::MatrixXcd d2 = coproduct(L2, n);
  Eigen::MatrixXcd lhs = d1 * d2 - d2 * d1;

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(lhs.rows(), lhs.cols());
  if (j1 == j2) {
    if (m != n) {
      if (q.q_number_is_zero(2 * j1)) {
        rep.applicable = false;
        rep.note = "structure-constant generator has [2j]_q = 0";
        return rep;
      }
      const double c = q.q_number(0.5 * j1 * (n - m)) * q.q_number(2 * j1) /
                       (q.q_number(j1) * q.q_number(j1));
      rhs = c * coproduct(make_L_deformed(m + n, 2 * j1, alpha, q), m + n);
    }
  } else {
    if (q.q_number_is_zero(j1 + j2) || q.q_number_is_zero(j2 - j1)) {
      rep.applicable = false;
      rep.note = "structure-constant generator degenerate";
      return rep;
    }
    const double denom = q.q_number(j1) * q.q_number(j2);
    const double c1 = q.q_number(0.5 * (j1 * n - j2 * m)) * q.q_number(j1 + j2) / denom;
    const double c2 = q.q_number(0.5 * (j1 * n + j2 * m)) * q.q_number(j2 - j1) / denom;
    rhs = c1 * coproduct(make_L_deformed(m + n, j1 + j2, alpha, q), m + n) +
          c2 * coproduct(make_L_deformed(m + n, j2 - j1, alpha, q), m + n);
  }
  double worst = (lhs - rhs).cwiseAbs().maxCoeff();

  // Antipode axioms: gamma(K_l) K_l = 1 and, for the generators,
  // gamma(L) K_m + K_m^{-1} L = epsilon(L) = 0 with
  // gamma(L) = -K_m^{-1} L K_m^{-1}.
  const ModeOperator Km = make_K(m, q);
  const ModeOperator Km_inv = make_K(-m, q);
  worst = std::max(worst,
                   (Km_inv * Km - ModeOperator::identity(q)).max_abs());
  const ModeOperator gammaL = cplx(-1.0) * (Km_inv * L1 * Km_inv);
  worst = std::max(worst, (gammaL * Km + Km_inv * L1).max_abs());

  rep.residual = worst;
  return rep;
}

CheckReport check_T_tilde_relations(int m, int n, int delta, int j, double alpha,
                                    const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "deformed-position";
  rep.tol = tol;
  rep.params = fmt("N=%d m=%d n=%d delta=%d j=%d alpha=%g", q.cycle_or_throw(),
                   m, n, delta, j, alpha);

  const ModeOperator Tm = make_T_tilde(m, delta, q);
  const ModeOperator Tn = make_T_tilde(n, delta, q);
  const cplx phase = q.q_pow(static_cast<double>(delta) * (n - m));
  double worst = (Tm * Tn - phase * (Tn * Tm)).max_abs();

  if (q.q_number_is_zero(j)) {
    rep.applicable = false;
    rep.note = "[j]_q = 0; exchange relation checked, coupling skipped";
    rep.residual = worst;
    return rep;
  }
  // q^{-delta n} Ttilde_m L_{n,j}^{alpha+m} = L_{n,j}^alpha Ttilde_m
  const ModeOperator lhs = q.q_pow(static_cast<double>(-delta) * n) *
                           (Tm * make_L_deformed(n, j, alpha + m, q));
  const ModeOperator rhs = make_L_deformed(n, j, alpha, q) * Tm;
  worst = std::max(worst, (lhs - rhs).max_abs());
  rep.residual = worst;
  return rep;
}

CheckReport check_qbracket_closure(int n, int m, double a_param, double b_param,
                                   const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "qbracket-closure";
  rep.tol = tol;
  rep.params = fmt("N=%d n=%d m=%d a=%g b=%g", q.cycle_or_throw(), n, m, a_param,
                   b_param);

  if (std::abs(b_param - std::round(b_param)) > 1e-9) {
    rep.applicable = false;
    rep.note = "closure is exact on the cycle only for integer b";
    return rep;
  }
  if (q.q_number_is_zero(b_param)) {
    rep.applicable = false;
    rep.note = "[b]_q = 0";
    return rep;
  }

  const ModeOperator An = make_A_scaling(n, a_param, b_param, q);
  const ModeOperator Am = make_A_scaling(m, a_param, b_param, q);
  const ModeOperator Anm = make_A_scaling(n + m, a_param, b_param, q);
  const ModeOperator lhs = q_commutator(An, Am, -2.0 * m * b_param, -2.0 * n * b_param);
  const cplx coeff = (q.q_pow(-2.0 * b_param * n) - q.q_pow(-2.0 * b_param * m)) /
                     q.q_number(b_param);
  double worst = (lhs - coeff * Anm).max_abs();

  // The generalised three-term generators reduce to the deformed Witt
  // generators under the standard parameter table.
  for (int k : {1, 2}) {
    if (q.q_number_is_zero(k)) continue;
    worst = std::max(worst, a_general_specialization_residual(n, k, 0.0, q));
    worst = std::max(worst, a_general_specialization_residual(n, k, 0.3, q));
  }
  rep.residual = worst;
  return rep;
}

CheckReport check_implicit_additive(int n, int k, double alpha,
                                    const UnitPhase& q, double tol) {
  CheckReport rep;
  rep.relation = "implicit-additive";
  rep.tol = tol;
  rep.params = fmt("N=%d n=%d k=%d alpha=%g", q.cycle_or_throw(), n, k, alpha);
  if (q.q_number_is_zero(k)) {
    rep.applicable = false;
    rep.note = "[k]_q = 0 (equivalently [k]_a = 0 at a = i phi0)";
    return rep;
  }

  // Additive-unit route, a = i phi0: entries [k A]_a / [k]_a evaluated through
  // complex exponentials, then compared with the multiplicative construction.
  const int size = q.cycle_or_throw();
  const cplx a_unit(0.0, q.phi0());
  const auto a_num = [&a_unit](double x) {
    return (std::exp(a_unit * x) - std::exp(-a_unit * x)) / (2.0 * a_unit);
  };
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  const cplx inv = 1.0 / a_num(k);
  for (int i = 0; i < size; ++i) {
    const double arg = k * (q.mode_rep(i) + 0.5 * n + alpha);
    mat((((i + n) % size) + size) % size, i) = a_num(arg) * inv;
  }
  const ModeOperator M(q, std::move(mat));
  rep.residual = (M - make_L_deformed(n, k, alpha, q)).max_abs();
  return rep;
}

double a_general_specialization_residual(int n, int k, double alpha,
                                         const UnitPhase& q) {
  const ModeOperator A = make_A_general(n, deformed_specialization(n, k, alpha), alpha, q);
  return (A - make_L_deformed(n, k, alpha, q)).max_abs();
}

double continuum_gap(int n, int k, double alpha, int mode, const UnitPhase& q) {
  require_nondegenerate(q, k, "continuum_gap");
  const int size = q.cycle_or_throw();
  const int col = ((mode % size) + size) % size;
  if (q.mode_rep(col) != mode || !wrap_free(q, col, {n})) {
    throw std::invalid_argument("continuum_gap: mode " + std::to_string(mode) +
                                " is not wrap-free for this N");
  }
  const double deformed = q.q_number(k * (mode + 0.5 * n + alpha)) / q.q_number(k);
  return std::abs(deformed - (mode + 0.5 * n + alpha));
}

}  // namespace qwitt::witt
