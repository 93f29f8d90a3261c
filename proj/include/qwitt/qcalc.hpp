// Scalar and lattice-level q-calculus on the circle and its N-point
// discretisations.
//
// Conventions used throughout the library:
//
//   q = exp(i*phi0) is always a unit phase; on the N-point circle
//   phi0 = 2*pi/N so that q^N = 1.
//
//   q-number   [A]_q = (q^A - q^-A)/(q - q^-1); for real A and unit-phase q
//              this is the real value sin(A*phi0)/sin(phi0).
//   a-number   [A]_a = (exp(aA) - exp(-aA))/(2a) = sinh(aA)/a.
//
//   Shift operator  (K_k f)(x) = f(q^k x); on the circle lattice this is the
//   cyclic index shift l -> l + k (mod N).
//
// The real closed form sin(A*phi0)/sin(phi0) is used for unit-phase
// q-numbers; the complex quotient is kept as a cross-check (q_number_complex).

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qwitt::qcalc {

using cplx = std::complex<double>;

// Thrown when a construction divides by a vanishing q-/a-number, e.g.
// [k]_q = 0 (k = 0 or k = N/2 mod N on the N-cycle), q = 1, or a = 0.
class degenerate_parameter : public std::domain_error {
 public:
  explicit degenerate_parameter(const std::string& what)
      : std::domain_error(what) {}
};

// The deformation parameter q = exp(i*phi0), optionally tied to an N-point
// circle lattice (phi0 = 2*pi/N, q^N = 1).  sin(phi0) = 0 is rejected at
// construction; every formula downstream divides by q - q^-1.
class UnitPhase {
 public:
  static UnitPhase for_cycle(int n_points);
  static UnitPhase from_angle(double phi0);

  double phi0() const { return phi0_; }
  cplx q() const { return q_pow(1.0); }
  std::optional<int> cycle() const { return cycle_; }
  int cycle_or_throw() const;

  double sin_phi0() const { return sin_phi0_; }

  // q^x = exp(i*x*phi0); half-integer x is evaluated directly (branch-free).
  cplx q_pow(double x) const;

  // [x]_q = sin(x*phi0)/sin(phi0), real for real x.
  double q_number(double x) const { return std::sin(x * phi0_) / sin_phi0_; }

  // True when [x]_q vanishes; exact integer test on a cycle lattice.
  bool q_number_is_zero(double x) const;

  // Canonical mode representative of storage index i in
  // [-floor(N/2), ceil(N/2)).
  int mode_rep(int index) const;

 private:
  UnitPhase(double phi0, std::optional<int> cycle);
  double phi0_;
  double sin_phi0_;
  std::optional<int> cycle_;
};

// Complex-definition q-number (q^A - q^-A)/(q - q^-1); test oracle for the
// real closed form, also valid for complex A.
cplx q_number_complex(cplx a, const UnitPhase& q);

// [A]_a = sinh(a*A)/a, a != 0.
double a_number(double a_value, double a_unit);

// [A+B] - ([A] q^(eps*B) + [B] q^(-eps*A)); identically zero.
cplx decomposition_residual(cplx a, cplx b, const UnitPhase& q, int eps);
// Additive version: [A+B]_a - ([A]_a exp(eps*a*B) + [B]_a exp(-eps*a*A)).
double decomposition_residual(double a, double b, double a_unit, int eps);

// ---------------------------------------------------------------------------
// Lattices

struct AdditiveLattice {
  double x0 = 0.0;
  double step = 1.0;  // != 0
  int j_min = 0;
  int j_max = 0;  // inclusive index range

  AdditiveLattice(double x0, double step, int j_min, int j_max);
  int size() const { return j_max - j_min + 1; }
  double point(int j) const;
};

struct MultiplicativeLattice {
  double x0 = 1.0;  // != 0
  double ratio = 2.0;  // real q != 1
  int j_min = 0;
  int j_max = 0;

  MultiplicativeLattice(double x0, double ratio, int j_min, int j_max);
  int size() const { return j_max - j_min + 1; }
  double point(int j) const;  // x0 * ratio^j, never zero
};

struct CircleLattice {
  UnitPhase phase;  // must carry a cycle

  explicit CircleLattice(UnitPhase p);
  int size() const { return *phase.cycle(); }
  double angle(int l) const;  // 2*pi*l/N
  cplx point(int l) const;    // exp(i*angle)
};

// Complex samples over one of the three lattice types.  Circle-lattice index
// arithmetic is mod N; the other two are bounds-checked.
class LatticeFunction {
 public:
  using Lattice = std::variant<AdditiveLattice, MultiplicativeLattice, CircleLattice>;

  LatticeFunction(Lattice lattice, std::vector<cplx> samples);

  const Lattice& lattice() const { return lattice_; }
  int size() const { return static_cast<int>(samples_.size()); }
  bool on_circle() const;

  // Sample by lattice index; mod N on the circle, out_of_range otherwise.
  cplx at(int j) const;
  const std::vector<cplx>& samples() const { return samples_; }

 private:
  Lattice lattice_;
  std::vector<cplx> samples_;
};

// Symmetric additive quotient (f(x+a) - f(x-a))/(2a).
cplx additive_quotient(const std::function<cplx(double)>& f, double a, double x);
// Index form on an additive lattice; j +- 1 must exist.
cplx additive_quotient(const LatticeFunction& f, int j);

// Multiplicative quotient (f(q^k x) - f(q^-k x))/(x (q - q^-1)), x != 0.
cplx multiplicative_quotient(const std::function<cplx(double)>& f, double q_real,
                             int k, double x);
cplx multiplicative_quotient(const std::function<cplx(cplx)>& f,
                             const UnitPhase& q, int k, cplx z);
// Index form on a multiplicative or circle lattice.
cplx multiplicative_quotient(const LatticeFunction& f, int k, int j);

// (K_k f)(x) = f(q^k x): cyclic index shift on the circle, index shift on a
// multiplicative lattice (error when the shifted range leaves the lattice).
LatticeFunction shift_multiplicative(const LatticeFunction& f, int k);

}  // namespace qwitt::qcalc
