#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qwitt/witt.hpp"

using namespace qwitt;
using witt::ModeOperator;
using qcalc::UnitPhase;
using qcalc::cplx;

TEST_CASE("mode raising operators") {
  const UnitPhase q4 = UnitPhase::for_cycle(4);
  CHECK((witt::make_T(0, q4) - ModeOperator::identity(q4)).max_abs() == 0.0);
  CHECK((witt::make_T(4, q4) - ModeOperator::identity(q4)).max_abs() == 0.0);

  // N = 4, n = 1: cyclic mode-raising permutation
  const auto t1 = witt::make_T(1, q4);
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      CHECK(t1.matrix()(row, col) == (row == (col + 1) % 4 ? cplx(1.0) : cplx(0.0)));
    }
  }
  // unitary
  CHECK((t1.adjoint() * t1 - ModeOperator::identity(q4)).max_abs() < 1e-15);
}

TEST_CASE("undeformed generators") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  const auto l0 = witt::make_L_undeformed(0, 0.0, q8);
  for (int i = 0; i < 8; ++i) {
    CHECK(l0.matrix()(i, i) == cplx(q8.mode_rep(i)));
  }
  // entry (m + n, m) = m + n/2 + alpha
  const auto l2 = witt::make_L_undeformed(2, 0.0, q8);
  CHECK(l2.matrix()(3, 1).real() == doctest::Approx(2.0));
  const auto l1 = witt::make_L_undeformed(1, 0.5, q8);
  CHECK(l1.matrix()(1, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("deformed generators") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  const auto number_op = witt::make_L_deformed(0, 1, 0.0, q8);
  for (int i = 0; i < 8; ++i) {
    CHECK(number_op.matrix()(i, i).real() ==
          doctest::Approx(q8.q_number(q8.mode_rep(i))).epsilon(1e-14));
    CHECK(number_op.matrix()(i, i).imag() == 0.0);
  }
  // N=8, n=2, k=2, alpha=0, mode 1: [4]_q/[2]_q = 0
  const auto l22 = witt::make_L_deformed(2, 2, 0.0, q8);
  CHECK(std::abs(l22.matrix()(3, 1)) < 1e-15);

  // entries are real and adjoint flips the raising index
  const auto l = witt::make_L_deformed(3, 2, 0.7, q8);
  CHECK(l.matrix().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK((l.adjoint() - witt::make_L_deformed(-3, 2, 0.7, q8)).max_abs() < 1e-14);

  // q -> 1: entry(m=3, n=1, k=5, alpha=0.3) -> 3.8 at rate phi0^2
  double prev = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int n_pts = 64 << i;
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    const auto op = witt::make_L_deformed(1, 5, 0.3, q);
    const double err = std::abs(op.matrix()(4, 3).real() - 3.8);
    if (i > 0) {
      CHECK(prev / err > 3.5);
      CHECK(prev / err < 4.5);
    }
    prev = err;
  }
}

TEST_CASE("deformed generators reject degenerate k") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  CHECK_THROWS_AS(witt::make_L_deformed(1, 0, 0.0, q8), qcalc::degenerate_parameter);
  CHECK_THROWS_AS(witt::make_L_deformed(1, 4, 0.0, q8), qcalc::degenerate_parameter);
  CHECK_THROWS_AS(witt::make_L_deformed(1, 8, 0.0, q8), qcalc::degenerate_parameter);
  CHECK_THROWS_WITH_AS(witt::make_L_deformed(1, 12, 0.0, q8),
                       doctest::Contains("k mod N = 4"), qcalc::degenerate_parameter);
  // odd N has no N/2 exclusion
  const UnitPhase q7 = UnitPhase::for_cycle(7);
  CHECK_NOTHROW(witt::make_L_deformed(1, 3, 0.0, q7));
}

TEST_CASE("shift operators") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  CHECK((witt::make_K(0, q8) - ModeOperator::identity(q8)).max_abs() == 0.0);
  CHECK((witt::make_K(2, q8) * witt::make_K(3, q8) - witt::make_K(5, q8)).max_abs() <
        1e-14);
  CHECK((witt::make_K(3, q8).adjoint() - witt::make_K(-3, q8)).max_abs() < 1e-15);
}

TEST_CASE("commutators") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  const auto a = witt::make_L_deformed(1, 2, 0.3, q8);
  CHECK(witt::commutator(a, a).max_abs() == 0.0);
  CHECK(witt::commutator(witt::make_T(2, q8), witt::make_T(-3, q8)).max_abs() == 0.0);

  // [L_1, T_2] = 2 T_3 on wrap-free columns
  const auto lhs = witt::commutator(witt::make_L_undeformed(1, 0.0, q8),
                                    witt::make_T(2, q8));
  const auto rhs = cplx(2.0) * witt::make_T(3, q8);
  const auto diff = lhs - rhs;
  for (int i = 0; i < 8; ++i) {
    const int m = q8.mode_rep(i);
    if (m + 3 >= 4 || m + 2 >= 4 || m + 1 >= 4) continue;  // wrapped columns excluded
    CHECK(diff.matrix().col(i).cwiseAbs().maxCoeff() < 1e-14);
  }

  // q-commutator reduces to the plain commutator at r = s = 0
  const auto b = witt::make_T(1, q8);
  CHECK((witt::q_commutator(a, b, 0.0, 0.0) - witt::commutator(a, b)).max_abs() <
        1e-14);
  CHECK(witt::q_commutator(a, a, 0.7, 0.7).max_abs() < 1e-14);

  CHECK_THROWS_AS(
      witt::commutator(a, witt::make_T(1, UnitPhase::for_cycle(6))),
      std::invalid_argument);
}

TEST_CASE("deformed Witt relations") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);

  // equal lower index: [L_{0,j}, L_{1,j}] = ([j(n-m)/2][2j]/[j]^2) L_{1,2j}
  const auto rep = witt::check_deformed_relations(0, 1, 1, 1, 0.0, q8, 1e-11);
  CHECK(rep.applicable);
  CHECK(rep.residual < 1e-13);
  // the coefficient for this tuple is [1/2]_q [2]_q
  const auto lhs = witt::commutator(witt::make_L_deformed(0, 1, 0.0, q8),
                                    witt::make_L_deformed(1, 1, 0.0, q8));
  const double c = q8.q_number(0.5) * q8.q_number(2.0);
  CHECK((lhs - cplx(c) * witt::make_L_deformed(1, 2, 0.0, q8)).max_abs() < 1e-13);

  // m = n, equal j: commutator vanishes
  const auto same = witt::check_deformed_relations(2, 2, 1, 1, 0.4, q8, 1e-11);
  CHECK(same.residual < 1e-14);

  // full sweep
  for (const int n_pts : {8, 12}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    for (int m = -3; m <= 3; ++m) {
      for (int n = -3; n <= 3; ++n) {
        for (int j1 = 1; j1 <= 3; ++j1) {
          for (int j2 = 1; j2 <= 3; ++j2) {
            for (const double alpha : {0.0, 0.7}) {
              const auto r = witt::check_deformed_relations(m, n, j1, j2, alpha, q, 1e-11);
              if (r.applicable) CHECK(r.residual <= 1e-11);
            }
          }
        }
      }
    }
  }

  // inapplicable: [j1+j2]_q = 0 at N = 8 for j1 + j2 = 4
  const auto na = witt::check_deformed_relations(1, 0, 1, 3, 0.0, q8, 1e-11);
  CHECK_FALSE(na.applicable);
  CHECK(na.note.find("j1+j2") != std::string::npos);
}

TEST_CASE("structure constants are antisymmetric under operand swap") {
  const UnitPhase q = UnitPhase::for_cycle(12);
  const auto rhs_of = [&q](int m, int n, int j1, int j2) {
    const double denom = q.q_number(j1) * q.q_number(j2);
    const double c1 = q.q_number(0.5 * (j1 * n - j2 * m)) * q.q_number(j1 + j2) / denom;
    const double c2 = q.q_number(0.5 * (j1 * n + j2 * m)) * q.q_number(j2 - j1) / denom;
    return cplx(c1) * witt::make_L_deformed(m + n, j1 + j2, 0.3, q) +
           cplx(c2) * witt::make_L_deformed(m + n, j2 - j1, 0.3, q);
  };
  CHECK((rhs_of(1, 2, 1, 2) + rhs_of(2, 1, 2, 1)).max_abs() < 1e-13);
  CHECK((rhs_of(-2, 3, 2, 3) + rhs_of(3, -2, 3, 2)).max_abs() < 1e-13);
}

TEST_CASE("quadratic coupling") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  // n = 0: both sides are L_{m,k}
  CHECK(witt::check_coupling(2, 0, 2, 0.5, q8, 1e-12).residual < 1e-15);
  CHECK(witt::check_coupling(1, 1, 2, 0.0, q8, 1e-12).residual <= 1e-12);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::check_coupling(-2, 3, 4, 0.3, q12, 1e-12).residual <= 1e-12);
}

TEST_CASE("shift algebra relations") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  CHECK(witt::check_K_relations(0, 2, 1, 0.0, q8, 1e-14).residual == 0.0);
  // N=8, k=1, n=2: exchange phase q^2 = i
  CHECK(q8.q_pow(2.0).imag() == doctest::Approx(1.0));
  CHECK(witt::check_K_relations(1, 2, 1, 0.0, q8, 1e-14).residual <= 1e-14);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::check_K_relations(3, -1, 2, 0.5, q12, 1e-12).residual <= 1e-12);
}

TEST_CASE("coproduct and antipode") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  // Delta(K_0) = 1 (x) 1
  const auto dk0 = witt::tensor(witt::make_K(0, q8), witt::make_K(0, q8));
  CHECK((dk0 - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() == 0.0);
  // gamma(K_2) K_2 = 1
  CHECK((witt::make_K(-2, q8) * witt::make_K(2, q8) - ModeOperator::identity(q8))
            .max_abs() < 1e-15);

  const UnitPhase q6 = UnitPhase::for_cycle(6);
  CHECK(witt::check_hopf_homomorphism(1, 0, 1, 1, 0.0, q6, 1e-11).residual <= 1e-11);
  CHECK(witt::check_hopf_homomorphism(1, -1, 1, 2, 0.3, q6, 1e-11).residual <= 1e-11);
  CHECK(witt::check_hopf_homomorphism(2, 1, 2, 1, 0.7, q8, 1e-11).residual <= 1e-11);
}

TEST_CASE("deformed position operators") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  // delta = 0 reduces to the plain raising operators
  CHECK((witt::make_T_tilde(3, 0, q8) - witt::make_T(3, q8)).max_abs() == 0.0);
  CHECK(witt::check_T_tilde_relations(1, 2, 0, 1, 0.0, q8, 1e-13).residual < 1e-13);
  // exchange phase q^{delta(n-m)} = q at N=8, delta=1, m=1, n=2
  CHECK(witt::check_T_tilde_relations(1, 2, 1, 1, 0.0, q8, 1e-13).residual <= 1e-13);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::check_T_tilde_relations(1, -1, 2, 2, 0.4, q12, 1e-12).residual <= 1e-12);
}

TEST_CASE("q-bracket closure of the scaling family") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  // n = m: both sides vanish
  const auto An = witt::make_A_scaling(2, 0.37, 1.0, q8);
  CHECK(witt::q_commutator(An, An, -2.0 * 2 * 1.0, -2.0 * 2 * 1.0).max_abs() < 1e-14);

  CHECK(witt::check_qbracket_closure(1, 2, 1.0, 1.0, q8, 1e-11).residual <= 1e-11);
  CHECK(witt::check_qbracket_closure(3, -2, 0.8, 2.0, q8, 1e-11).residual <= 1e-11);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::check_qbracket_closure(-1, 3, -2.3, 3.0, q12, 1e-11).residual <= 1e-11);

  // non-integer b: reported as inapplicable (cyclic exactness requires it)
  CHECK_FALSE(witt::check_qbracket_closure(1, 2, 0.5, 1.5, q8, 1e-11).applicable);
}

TEST_CASE("generalised generators specialize to the deformed family") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  CHECK(witt::a_general_specialization_residual(1, 2, 0.3, q8) <= 1e-12);
  CHECK(witt::a_general_specialization_residual(-2, 1, 0.0, q8) <= 1e-13);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::a_general_specialization_residual(3, 2, 0.9, q12) <= 1e-12);

  witt::GeneralParams bad;
  bad.alpha_i = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(witt::make_A_general(1, bad, 0.0, q8), qcalc::degenerate_parameter);
}

TEST_CASE("implicit additive deformation is the multiplicative one") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  CHECK(witt::check_implicit_additive(0, 1, 0.0, q8, 1e-13).residual <= 1e-13);
  const UnitPhase q12 = UnitPhase::for_cycle(12);
  CHECK(witt::check_implicit_additive(2, 2, 0.7, q12, 1e-13).residual <= 1e-13);
  for (int n = -3; n <= 3; ++n) {
    CHECK(witt::check_implicit_additive(n, 1, 0.4, q12, 1e-13).residual <= 1e-13);
  }
}

TEST_CASE("undeformed Witt relations hold wrap-free") {
  for (const int n_pts : {8, 12}) {
    const UnitPhase q = UnitPhase::for_cycle(n_pts);
    for (int m = -2; m <= 2; ++m) {
      for (int n = -2; n <= 2; ++n) {
        CHECK(witt::check_undeformed_relations(m, n, 0.3, q, 1e-12).residual <= 1e-12);
      }
    }
  }
}

TEST_CASE("continuum gap shrinks as phi0^2") {
  double prev = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int n_pts = 16 << i;
    const double gap =
        witt::continuum_gap(1, 2, 0.3, 2, UnitPhase::for_cycle(n_pts));
    if (i > 0) {
      CHECK(prev / gap > 3.4);
      CHECK(prev / gap < 4.6);
    }
    prev = gap;
  }
  CHECK_THROWS_AS(witt::continuum_gap(1, 2, 0.3, 2, UnitPhase::for_cycle(4)),
                  qcalc::degenerate_parameter);
}

TEST_CASE("generator labels dispatch") {
  const UnitPhase q8 = UnitPhase::for_cycle(8);
  witt::GeneratorLabel label;
  label.kind = witt::GeneratorLabel::Kind::L_deformed;
  label.n = 1;
  label.k = 2;
  label.alpha = 0.3;
  CHECK((label.build(q8) - witt::make_L_deformed(1, 2, 0.3, q8)).max_abs() == 0.0);
  label.kind = witt::GeneratorLabel::Kind::T_tilde;
  label.delta = 1;
  CHECK((label.build(q8) - witt::make_T_tilde(1, 1, q8)).max_abs() == 0.0);

  CHECK(witt::in_coupling_set(6, 2, 1));
  CHECK_FALSE(witt::in_coupling_set(3, 2, 1));
  CHECK_FALSE(witt::in_coupling_set(0, 2, 1));
}
