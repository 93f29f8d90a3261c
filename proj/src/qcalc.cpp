#include "qwitt/qcalc.hpp"

#include <cmath>
#include <cstdlib>

namespace qwitt::qcalc {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateTol = 1e-12;
}  // namespace

UnitPhase::UnitPhase(double phi0, std::optional<int> cycle)
    : phi0_(phi0), sin_phi0_(std::sin(phi0)), cycle_(cycle) {
  if (std::abs(sin_phi0_) < kDegenerateTol) {
    throw degenerate_parameter(
        "UnitPhase: sin(phi0) = 0 (q = +-1 is degenerate; on the circle this "
        "means N <= 2)");
  }
}

UnitPhase UnitPhase::for_cycle(int n_points) {
  if (n_points <= 2) {
    throw degenerate_parameter("UnitPhase::for_cycle: need N >= 3, got N = " +
                               std::to_string(n_points));
  }
  return UnitPhase(2.0 * kPi / n_points, n_points);
}

UnitPhase UnitPhase::from_angle(double phi0) {
  return UnitPhase(phi0, std::nullopt);
}

int UnitPhase::cycle_or_throw() const {
  if (!cycle_) {
    throw std::invalid_argument("UnitPhase: operation requires a cycle lattice");
  }
  return *cycle_;
}

cplx UnitPhase::q_pow(double x) const {
  return std::polar(1.0, x * phi0_);
}

bool UnitPhase::q_number_is_zero(double x) const {
  if (cycle_) {
    // sin(2*pi*x/N) = 0  <=>  2x is an integer multiple of N.
    const double two_x = 2.0 * x;
    const double nearest = std::round(two_x);
    if (std::abs(two_x - nearest) < 1e-9) {
      const long long m = static_cast<long long>(nearest);
      return m % *cycle_ == 0;
    }
  }
  return std::abs(std::sin(x * phi0_)) < kDegenerateTol;
}

int UnitPhase::mode_rep(int index) const {
  const int n = cycle_or_throw();
  const int i = ((index % n) + n) % n;
  return (i < (n + 1) / 2) ? i : i - n;
}

cplx q_number_complex(cplx a, const UnitPhase& q) {
  const cplx iphi(0.0, q.phi0());
  return (std::exp(iphi * a) - std::exp(-iphi * a)) /
         (q.q_pow(1.0) - q.q_pow(-1.0));
}

double a_number(double a_value, double a_unit) {
  if (a_unit == 0.0) {
    throw degenerate_parameter("a_number: a = 0");
  }
  return std::sinh(a_unit * a_value) / a_unit;
}

cplx decomposition_residual(cplx a, cplx b, const UnitPhase& q, int eps) {
  const double e = eps >= 0 ? 1.0 : -1.0;
  const cplx iphi(0.0, q.phi0());
  const auto qp = [&](cplx x) { return std::exp(iphi * x); };
  return q_number_complex(a + b, q) -
         (q_number_complex(a, q) * qp(e * b) + q_number_complex(b, q) * qp(-e * a));
}

double decomposition_residual(double a, double b, double a_unit, int eps) {
  const double e = eps >= 0 ? 1.0 : -1.0;
  return a_number(a + b, a_unit) - (a_number(a, a_unit) * std::exp(e * a_unit * b) +
                                    a_number(b, a_unit) * std::exp(-e * a_unit * a));
}

// ---------------------------------------------------------------------------

AdditiveLattice::AdditiveLattice(double x0_in, double step_in, int j_min_in, int j_max_in)
    : x0(x0_in), step(step_in), j_min(j_min_in), j_max(j_max_in) {
  if (step == 0.0) throw degenerate_parameter("AdditiveLattice: step a = 0");
  if (j_max < j_min) throw std::invalid_argument("AdditiveLattice: empty index range");
}

double AdditiveLattice::point(int j) const {
  if (j < j_min || j > j_max) {
    throw std::out_of_range("AdditiveLattice: index " + std::to_string(j) +
                            " outside [" + std::to_string(j_min) + ", " +
                            std::to_string(j_max) + "]");
  }
  return x0 + j * step;
}

MultiplicativeLattice::MultiplicativeLattice(double x0_in, double ratio_in,
                                             int j_min_in, int j_max_in)
    : x0(x0_in), ratio(ratio_in), j_min(j_min_in), j_max(j_max_in) {
  if (x0 == 0.0) throw degenerate_parameter("MultiplicativeLattice: x0 = 0");
  if (ratio == 1.0 || ratio == 0.0) {
    throw degenerate_parameter("MultiplicativeLattice: ratio q must be != 0, 1");
  }
  if (j_max < j_min) throw std::invalid_argument("MultiplicativeLattice: empty index range");
}

double MultiplicativeLattice::point(int j) const {
  if (j < j_min || j > j_max) {
    throw std::out_of_range("MultiplicativeLattice: index out of range");
  }
  return x0 * std::pow(ratio, j);
}

CircleLattice::CircleLattice(UnitPhase p) : phase(std::move(p)) {
  phase.cycle_or_throw();
}

double CircleLattice::angle(int l) const {
  const int n = size();
  const int i = ((l % n) + n) % n;
  return phase.phi0() * i;
}

cplx CircleLattice::point(int l) const { return std::polar(1.0, angle(l)); }

LatticeFunction::LatticeFunction(Lattice lattice, std::vector<cplx> samples)
    : lattice_(std::move(lattice)), samples_(std::move(samples)) {
  const int expected = std::visit([](const auto& lat) { return lat.size(); }, lattice_);
  if (expected != static_cast<int>(samples_.size())) {
    throw std::invalid_argument("LatticeFunction: sample count " +
                                std::to_string(samples_.size()) +
                                " does not match lattice size " +
                                std::to_string(expected));
  }
}

bool LatticeFunction::on_circle() const {
  return std::holds_alternative<CircleLattice>(lattice_);
}

cplx LatticeFunction::at(int j) const {
  const int n = size();
  if (on_circle()) {
    return samples_[static_cast<size_t>(((j % n) + n) % n)];
  }
  const int j_min = std::visit(
      [](const auto& lat) {
        if constexpr (std::is_same_v<std::decay_t<decltype(lat)>, CircleLattice>) {
          return 0;
        } else {
          return lat.j_min;
        }
      },
      lattice_);
  const int idx = j - j_min;
  if (idx < 0 || idx >= n) {
    throw std::out_of_range("LatticeFunction: index " + std::to_string(j) +
                            " off the lattice");
  }
  return samples_[static_cast<size_t>(idx)];
}

cplx additive_quotient(const std::function<cplx(double)>& f, double a, double x) {
  if (a == 0.0) throw degenerate_parameter("additive_quotient: a = 0");
  return (f(x + a) - f(x - a)) / (2.0 * a);
}

cplx additive_quotient(const LatticeFunction& f, int j) {
  const auto* lat = std::get_if<AdditiveLattice>(&f.lattice());
  if (lat == nullptr) {
    throw std::invalid_argument("additive_quotient: function is not on an additive lattice");
  }
  return (f.at(j + 1) - f.at(j - 1)) / (2.0 * lat->step);
}

cplx multiplicative_quotient(const std::function<cplx(double)>& f, double q_real,
                             int k, double x) {
  if (q_real == 1.0 || q_real == 0.0) {
    throw degenerate_parameter("multiplicative_quotient: q must be != 0, 1");
  }
  if (x == 0.0) throw degenerate_parameter("multiplicative_quotient: x = 0 is singular");
  const double qk = std::pow(q_real, k);
  return (f(qk * x) - f(x / qk)) / (x * (q_real - 1.0 / q_real));
}

cplx multiplicative_quotient(const std::function<cplx(cplx)>& f,
                             const UnitPhase& q, int k, cplx z) {
  if (std::abs(z) == 0.0) {
    throw degenerate_parameter("multiplicative_quotient: x = 0 is singular");
  }
  const cplx qk = q.q_pow(k);
  return (f(qk * z) - f(z / qk)) / (z * (q.q_pow(1.0) - q.q_pow(-1.0)));
}

cplx multiplicative_quotient(const LatticeFunction& f, int k, int j) {
  if (const auto* lat = std::get_if<MultiplicativeLattice>(&f.lattice())) {
    const double x = lat->point(j);
    return (f.at(j + k) - f.at(j - k)) / (x * (lat->ratio - 1.0 / lat->ratio));
  }
  if (const auto* lat = std::get_if<CircleLattice>(&f.lattice())) {
    const cplx z = lat->point(j);
    const cplx denom = lat->phase.q_pow(1.0) - lat->phase.q_pow(-1.0);
    return (f.at(j + k) - f.at(j - k)) / (z * denom);
  }
  throw std::invalid_argument("multiplicative_quotient: lattice is not multiplicative");
}

LatticeFunction shift_multiplicative(const LatticeFunction& f, int k) {
  const int n = f.size();
  std::vector<cplx> out(static_cast<size_t>(n));
  if (f.on_circle()) {
    for (int l = 0; l < n; ++l) out[static_cast<size_t>(l)] = f.at(l + k);
    return LatticeFunction(f.lattice(), std::move(out));
  }
  if (const auto* lat = std::get_if<MultiplicativeLattice>(&f.lattice())) {
    // f(q^k x_j) = f(x_{j+k}); a finite window is closed only under k = 0.
    if (k != 0) {
      throw std::out_of_range(
          "shift_multiplicative: finite multiplicative lattice is not closed "
          "under this shift");
    }
    for (int j = lat->j_min; j <= lat->j_max; ++j) {
      out[static_cast<size_t>(j - lat->j_min)] = f.at(j);
    }
    return LatticeFunction(f.lattice(), std::move(out));
  }
  throw std::invalid_argument("shift_multiplicative: lattice is not multiplicative");
}

}  // namespace qwitt::qcalc
