#include "qwitt/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qwitt::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& context) {
  if (!j.is_object()) {
    throw std::invalid_argument("config: '" + context + "' must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("config: unknown key '" + context + "." + key + "'");
    }
  }
}

template <typename T>
void load(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig cfg;
  reject_unknown(doc, {"lattice", "params", "field", "integrator", "sweep",
                       "limit", "tolerances", "output", "seed", "fault"},
                 "config");

  if (doc.contains("lattice")) {
    const auto& j = doc.at("lattice");
    reject_unknown(j, {"N"}, "lattice");
    load(j, "N", cfg.lattice_n);
  }
  if (doc.contains("params")) {
    const auto& j = doc.at("params");
    reject_unknown(j, {"alpha", "D", "k", "delta", "b", "R"}, "params");
    load(j, "alpha", cfg.params.alpha);
    load(j, "D", cfg.params.D);
    load(j, "k", cfg.params.k);
    load(j, "delta", cfg.params.delta);
    load(j, "b", cfg.params.b);
    if (j.contains("R")) {
      const auto& r = j.at("R");
      reject_unknown(r, {"a1", "k1", "a2", "k2"}, "params.R");
      if (r.contains("a1")) {
        cfg.params.R.a1_re = r.at("a1").at(0).get<double>();
        cfg.params.R.a1_im = r.at("a1").at(1).get<double>();
      }
      load(r, "k1", cfg.params.R.k1);
      if (r.contains("a2")) {
        cfg.params.R.a2_re = r.at("a2").at(0).get<double>();
        cfg.params.R.a2_im = r.at("a2").at(1).get<double>();
      }
      load(r, "k2", cfg.params.R.k2);
    }
  }
  if (doc.contains("field")) {
    const auto& j = doc.at("field");
    reject_unknown(j, {"preset", "width", "mode", "value", "coefficients"}, "field");
    load(j, "preset", cfg.field.preset);
    load(j, "width", cfg.field.width);
    load(j, "mode", cfg.field.mode);
    load(j, "value", cfg.field.value);
    if (j.contains("coefficients")) {
      for (const auto& triple : j.at("coefficients")) {
        cfg.field.coefficients.emplace_back(triple.at(0).get<int>(),
                                            triple.at(1).get<double>(),
                                            triple.at(2).get<double>());
      }
    }
    static const std::set<std::string> presets{"constant", "cos", "sin",
                                               "gaussian-bump", "plane-wave"};
    if (!presets.contains(cfg.field.preset)) {
      throw std::invalid_argument("config: unknown field.preset '" +
                                  cfg.field.preset + "'");
    }
  }
  if (doc.contains("integrator")) {
    const auto& j = doc.at("integrator");
    reject_unknown(j, {"dt", "t_end", "guard_eps", "backend", "record_stride",
                       "check_every_step"},
                   "integrator");
    load(j, "dt", cfg.integrator.dt);
    load(j, "t_end", cfg.integrator.t_end);
    load(j, "guard_eps", cfg.integrator.guard_eps);
    load(j, "backend", cfg.integrator.backend);
    load(j, "record_stride", cfg.integrator.record_stride);
    load(j, "check_every_step", cfg.integrator.check_every_step);
    if (cfg.integrator.backend != "stencil" && cfg.integrator.backend != "spectral") {
      throw std::invalid_argument("config: integrator.backend must be 'stencil' or 'spectral'");
    }
    if (cfg.integrator.record_stride < 1) {
      throw std::invalid_argument("config: integrator.record_stride must be >= 1");
    }
  }
  if (doc.contains("sweep")) {
    const auto& j = doc.at("sweep");
    reject_unknown(j, {"N", "alpha", "mn_max", "j_max", "random_draws", "hopf_N"},
                   "sweep");
    load(j, "N", cfg.sweep.lattice_sizes);
    load(j, "alpha", cfg.sweep.alphas);
    load(j, "mn_max", cfg.sweep.mn_max);
    load(j, "j_max", cfg.sweep.j_max);
    load(j, "random_draws", cfg.sweep.random_draws);
    load(j, "hopf_N", cfg.sweep.hopf_sizes);
  }
  if (doc.contains("limit")) {
    const auto& j = doc.at("limit");
    reject_unknown(j, {"trajectory_N", "operator_N", "mode", "t_end",
                       "reference_grid"},
                   "limit");
    load(j, "trajectory_N", cfg.limit.trajectory_ladder);
    load(j, "operator_N", cfg.limit.operator_ladder);
    load(j, "mode", cfg.limit.mode);
    load(j, "t_end", cfg.limit.t_end);
    load(j, "reference_grid", cfg.limit.reference_grid);
  }
  if (doc.contains("tolerances")) {
    const auto& j = doc.at("tolerances");
    reject_unknown(j, {"identity", "algebra", "hermiticity", "fp_ehrenfest",
                       "split", "backend", "conservation", "drift", "limit_slope"},
                   "tolerances");
    load(j, "identity", cfg.tol.identity);
    load(j, "algebra", cfg.tol.algebra);
    load(j, "hermiticity", cfg.tol.hermiticity);
    load(j, "fp_ehrenfest", cfg.tol.fp_ehrenfest);
    load(j, "split", cfg.tol.split);
    load(j, "backend", cfg.tol.backend);
    load(j, "conservation", cfg.tol.conservation);
    load(j, "drift", cfg.tol.drift);
    load(j, "limit_slope", cfg.tol.limit_slope);
  }
  if (doc.contains("output")) {
    const auto& j = doc.at("output");
    reject_unknown(j, {"dir"}, "output");
    load(j, "dir", cfg.output_dir);
  }
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("fault")) {
    const auto& j = doc.at("fault");
    reject_unknown(j, {"structure_constant_perturbation"}, "fault");
    load(j, "structure_constant_perturbation", cfg.fault_perturbation);
  }
  return cfg;
}

nlohmann::json RunConfig::echo() const {
  json j;
  j["lattice"]["N"] = lattice_n;
  j["params"] = {{"alpha", params.alpha}, {"D", params.D},      {"k", params.k},
                 {"delta", params.delta}, {"b", params.b},
                 {"R",
                  {{"a1", {params.R.a1_re, params.R.a1_im}},
                   {"k1", params.R.k1},
                   {"a2", {params.R.a2_re, params.R.a2_im}},
                   {"k2", params.R.k2}}}};
  j["field"] = {{"preset", field.preset},
                {"width", field.width},
                {"mode", field.mode},
                {"value", field.value}};
  j["integrator"] = {{"dt", integrator.dt},
                     {"t_end", integrator.t_end},
                     {"guard_eps", integrator.guard_eps},
                     {"backend", integrator.backend},
                     {"record_stride", integrator.record_stride},
                     {"check_every_step", integrator.check_every_step}};
  j["seed"] = seed;
  return j;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override '" + assignment + "' is not key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  nlohmann::json* node = &doc;
  size_t start = 0;
  while (true) {
    const size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) {
      throw std::invalid_argument("override '" + assignment + "' has an empty key");
    }
    if (dot == std::string::npos) {
      nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void write_report(const CommandResult& result, const RunConfig& cfg,
                  const std::string& name) {
  if (cfg.output_dir.empty()) return;
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(std::filesystem::path(cfg.output_dir) / (name + ".json"));
  out << result.report.dump(2) << "\n";
}

}  // namespace qwitt::cli
