// Configuration-driven entry points: algebra verification sweeps, kinematics
// checks, evolution runs, continuum-limit studies.  Config is a single JSON
// document; unknown keys are rejected; CLI key=value overrides patch
// individual entries.  All randomized sweeps are seeded and the seed is
// echoed in every report.

#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace qwitt::cli {

struct Tolerances {
  double identity = 1e-12;
  double algebra = 1e-11;
  double hermiticity = 1e-12;
  double fp_ehrenfest = 1e-10;
  double split = 1e-9;
  double backend = 1e-10;
  double conservation = 1e-12;
  double drift = 1e-8;
  double limit_slope = 0.1;
};

struct ShiftConfig {
  double a1_re = 1.0, a1_im = 0.0;
  int k1 = 0;
  double a2_re = 0.0, a2_im = 0.0;
  int k2 = 0;
};

struct ParamSpec {
  double alpha = 0.0;
  double D = 0.0;
  int k = 2;
  int delta = 1;
  double b = 1.0;
  ShiftConfig R;
};

struct FieldSpec {
  std::string preset = "gaussian-bump";  // constant | cos | sin | gaussian-bump | plane-wave
  double width = 2.0;
  int mode = 1;
  double value = 1.0;
  std::vector<std::tuple<int, double, double>> coefficients;  // overrides preset
};

struct IntegratorSpec {
  double dt = 1e-3;
  double t_end = 1.0;
  double guard_eps = 1e-8;
  std::string backend = "stencil";
  int record_stride = 1;
  bool check_every_step = false;
};

struct SweepSpec {
  std::vector<int> lattice_sizes{8, 12, 16};
  std::vector<double> alphas{0.0, 0.7};
  int mn_max = 3;
  int j_max = 3;
  int random_draws = 8;
  std::vector<int> hopf_sizes{6, 8};
};

struct LimitSpec {
  std::vector<int> trajectory_ladder{32, 64, 128, 256};
  std::vector<int> operator_ladder{16, 32, 64, 128, 256};
  int mode = 2;
  double t_end = 0.2;
  int reference_grid = 128;
};

struct RunConfig {
  int lattice_n = 16;
  ParamSpec params;
  FieldSpec field;
  IntegratorSpec integrator;
  SweepSpec sweep;
  LimitSpec limit;
  Tolerances tol;
  std::string output_dir;  // empty: no files written
  std::uint64_t seed = 12345;
  double fault_perturbation = 0.0;

  static RunConfig from_json(const nlohmann::json& doc);
  nlohmann::json echo() const;
};

// Apply a dotted-path override ("integrator.dt=1e-4") onto a JSON document.
void apply_override(nlohmann::json& doc, const std::string& assignment);

struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
};

CommandResult run_algebra_check(const RunConfig& cfg);
CommandResult run_kinematics_check(const RunConfig& cfg);
CommandResult run_evolve(const RunConfig& cfg);
CommandResult run_limit_study(const RunConfig& cfg);

// Writes <dir>/<name>.json (no-op when output_dir is empty).
void write_report(const CommandResult& result, const RunConfig& cfg,
                  const std::string& name);

}  // namespace qwitt::cli
