#include "rkhs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "rkhs/coeffmodel.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/rng.hpp"

namespace rkhs {

namespace {

using io::json;

struct Tolerances {
  double psd = 1e-9;
  double rank = kDefaultRankTol;
  double verify = 1e-7;
};

Tolerances tolerances_from(const json& config, const RunOptions& options) {
  Tolerances t;
  if (config.contains("tolerances")) {
    const auto& j = config["tolerances"];
    if (j.contains("psd")) t.psd = j["psd"].get<double>();
    if (j.contains("rank")) t.rank = j["rank"].get<double>();
    if (j.contains("verify")) t.verify = j["verify"].get<double>();
  }
  if (options.tol_psd) t.psd = *options.tol_psd;
  if (options.tol_rank) t.rank = *options.tol_rank;
  return t;
}

SampleSet sample_from_json(const json& j, const RunOptions& options) {
  std::vector<Point> points;
  if (j.contains("prepend"))
    for (const auto& p : j["prepend"]) {
      if (p.is_array() && !p.empty() && p[0].is_array()) {
        std::vector<Complex> coords;
        for (const auto& c : p) coords.push_back(io::complex_from_json(c));
        points.emplace_back(std::move(coords));
      } else {
        points.emplace_back(io::complex_from_json(p));
      }
    }
  const std::string type = j.at("type").get<std::string>();
  if (type == "explicit") {
    for (const auto& p : j.at("points")) {
      if (p.is_array() && !p.empty() && p[0].is_array()) {
        std::vector<Complex> coords;
        for (const auto& c : p) coords.push_back(io::complex_from_json(c));
        points.emplace_back(std::move(coords));
      } else {
        points.emplace_back(io::complex_from_json(p));
      }
    }
  } else if (type == "random_disc" || type == "random_ball") {
    if (!j.contains("seed") && !options.seed)
      throw ConfigError("sample: a seed is required for random sampling");
    const std::uint64_t seed =
        options.seed ? *options.seed : j["seed"].get<std::uint64_t>();
    const int count = j.at("count").get<int>();
    const double radius = j.value("radius", 1.0);
    SplitMix64 rng(seed);
    if (type == "random_disc") {
      for (int i = 0; i < count; ++i)
        points.emplace_back(random_disc_point(rng, radius));
    } else {
      const int d = j.at("d").get<int>();
      for (int i = 0; i < count; ++i)
        points.emplace_back(random_ball_point(rng, d, radius));
    }
  } else if (type == "radial_grid") {
    const double theta = j.value("theta", 0.0);
    for (const auto& r : j.at("radii"))
      points.emplace_back(std::polar(r.get<double>(), theta));
  } else {
    throw ConfigError("sample: unknown generator type \"" + type + "\"");
  }
  std::optional<int> base;
  if (j.contains("base_index")) base = j["base_index"].get<int>();
  return SampleSet(std::move(points), base);
}

Subspace subspace_from_json(const json& j, const Ambient& space, double tol_rank) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "constraints") {
    PointwiseConstraintSpec spec;
    const int p = space.kernel().block_dim;
    for (const auto& c : j.at("constraints")) {
      PointwiseConstraintSpec::Constraint constraint;
      constraint.point = c.at("point").get<int>();
      const auto& dirs = c.at("directions");
      constraint.directions = Matrix(p, dirs.size());
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        Vector dir(p);
        for (int a = 0; a < p; ++a) dir(a) = io::complex_from_json(dirs[k][a]);
        constraint.directions.col(static_cast<int>(k)) = dir;
      }
      spec.constraints.push_back(std::move(constraint));
    }
    return subspace_from_constraints(space, spec, tol_rank);
  }
  if (type == "spanning") {
    std::vector<RkhsElement> elements;
    for (const auto& v : j.at("vectors")) {
      Vector values(space.total_dim());
      if (static_cast<int>(v.size()) != space.total_dim())
        throw ConfigError("subspace: spanning vector has wrong length");
      for (int i = 0; i < space.total_dim(); ++i)
        values(i) = io::complex_from_json(v[i]);
      elements.push_back(element_from_values(space, values));
    }
    return subspace_from_spanning(space, elements, tol_rank);
  }
  if (type == "whole") return whole_space(space);
  throw ConfigError("subspace: unknown type \"" + type + "\"");
}

MultiplierSymbol symbol_from_config(const json& j, const SampleSet& sample) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "explicit") return io::symbol_from_json(j);
  if (type == "blaschke") {
    MultiplierSymbol symbol =
        MultiplierSymbol::constant(sample.size(), Matrix::Identity(1, 1));
    for (const auto& zj : j.at("zeros"))
      symbol = symbol * MultiplierSymbol::blaschke(sample, io::complex_from_json(zj));
    return symbol;
  }
  if (type == "constant") {
    const auto& v = j.at("value");
    if (v.is_array() && !v.empty() && v[0].is_array()) {
      const int p = static_cast<int>(v.size());
      const int q = static_cast<int>(v[0].size());
      return MultiplierSymbol::constant(sample.size(),
                                        io::matrix_from_json(v, p, q));
    }
    Matrix m(1, 1);
    m(0, 0) = io::complex_from_json(v);
    return MultiplierSymbol::constant(sample.size(), m);
  }
  throw ConfigError("symbol: unknown type \"" + type + "\"");
}

json run_kernel_check(const json& config, const Tolerances& tols,
                      const RunOptions& options, bool& passed) {
  const KernelSpec spec = io::kernel_spec_from_json(config.at("kernel"));
  const SampleSet sample = sample_from_json(config.at("sample"), options);
  const KernelMatrix k = evaluate(spec, sample);
  json report;
  report["kernel"] = io::kernel_spec_to_json(spec);
  report["n_points"] = sample.size();
  passed = true;
  for (const auto& check : config.at("checks")) {
    const std::string name = check.get<std::string>();
    if (name == "psd") {
      const PsdReport r = is_psd(k, tols.psd);
      report["psd"] = {{"verdict", r.verdict},
                       {"min_eigenvalue", r.min_eigenvalue},
                       {"max_eigenvalue", r.max_eigenvalue}};
      if (config.value("expect_psd", true) != r.verdict) passed = false;
    } else if (name == "cnp") {
      std::optional<int> base;
      if (config.contains("base_index") && !config["base_index"].is_null())
        base = config["base_index"].get<int>();
      const CnpReport r = is_cnp(k, base, tols.psd);
      report["cnp"] = {{"verdict", r.verdict}, {"certificate", r.certificate}};
      if (config.contains("expect_cnp") &&
          config["expect_cnp"].get<bool>() != r.verdict)
        passed = false;
    } else if (name == "normalized") {
      const int base = config.at("base_index").get<int>();
      report["normalized"] = is_normalized(k, base);
    } else {
      throw ConfigError("kernel-check: unknown check \"" + name + "\"");
    }
  }
  return report;
}

json run_synthesize(const json& config, const Tolerances& tols,
                    const RunOptions& options, bool& passed) {
  const KernelSpec spec_k = io::kernel_spec_from_json(config.at("kernel_k"));
  const KernelSpec spec_s = io::kernel_spec_from_json(config.at("kernel_s"));
  const SampleSet sample = sample_from_json(config.at("sample"), options);
  const KernelMatrix k = evaluate(spec_k, sample);
  const KernelMatrix s = evaluate(spec_s, sample);
  const int fiber = config.value("fiber_dim", 1);
  const KernelMatrix ambient_kernel = fiber > 1 ? tensor_identity(k, fiber) : k;
  const Ambient ambient(ambient_kernel, tols.rank);
  const Subspace m = subspace_from_json(config.at("subspace_m"), ambient, tols.rank);

  const FactorizationResult result =
      synthesize(subspace_kernel(m), s, tols.psd, tols.rank);
  const RepresentationDiagnostics diag =
      verify_representation(result, s, ambient_kernel, m, tols.verify);

  json report = io::factorization_to_json(result);
  report["dim_m"] = m.dim();
  report["verification"] = {{"range_angle_residual", diag.range_angle_residual},
                            {"projection_residual", diag.projection_residual},
                            {"defect_residual", diag.defect_residual},
                            {"ok", diag.ok}};
  report["minimal"] = is_minimal(result.phi, tols.rank);
  passed = diag.ok && result.partial_isometry_ok;
  if (config.contains("expect_rank_f") &&
      config["expect_rank_f"].get<int>() != result.rank_f)
    passed = false;
  return report;
}

json run_leech(const json& config, const Tolerances& tols,
               const RunOptions& options, bool& passed) {
  const KernelSpec spec_s = io::kernel_spec_from_json(config.at("kernel_s"));
  const SampleSet sample = sample_from_json(config.at("sample"), options);
  const KernelMatrix s = evaluate(spec_s, sample);
  const MultiplierSymbol phi = symbol_from_config(config.at("phi"), sample);
  const MultiplierSymbol psi = symbol_from_config(config.at("psi"), sample);
  LeechTolerances ltols;
  ltols.psd = tols.psd;
  ltols.rank = tols.rank;
  const LeechResult result = solve(s, phi, psi, ltols);
  json report = io::leech_result_to_json(result);
  passed = result.factor_residual <= tols.verify &&
           result.contractivity_min_eig >= -tols.psd * 10;
  return report;
}

json run_pipeline(const json& config, const Tolerances& tols,
                  const RunOptions& options, bool& passed) {
  if (config.contains("kernel_l") && config["kernel_l"] != config.at("kernel_k"))
    throw ConfigError(
        "pipeline: three-kernel requests (l != k) are rejected; the inclusion "
        "of H^2 into the Bergman space is not closed (see the counterexample "
        "task)");
  const KernelSpec spec_k = io::kernel_spec_from_json(config.at("kernel_k"));
  const KernelSpec spec_s = io::kernel_spec_from_json(config.at("kernel_s"));
  const SampleSet sample = sample_from_json(config.at("sample"), options);
  const KernelMatrix k = evaluate(spec_k, sample);
  const KernelMatrix s = evaluate(spec_s, sample);
  const int fiber = config.value("fiber_dim", 1);
  const KernelMatrix ambient_kernel = fiber > 1 ? tensor_identity(k, fiber) : k;
  const Ambient ambient(ambient_kernel, tols.rank);
  const Subspace m = subspace_from_json(config.at("subspace_m"), ambient, tols.rank);
  const Subspace n = subspace_from_json(config.at("subspace_n"), ambient, tols.rank);
  LeechTolerances ltols;
  ltols.psd = tols.psd;
  ltols.rank = tols.rank;
  const PipelineResult result = arias_pipeline(ambient_kernel, s, m, n, ltols);

  // Composite must be partially isometric with range N.
  const MultOpMatrix op = multiplication_operator(
      ambient_kernel, tensor_identity(s, result.composite.in_dim()),
      result.composite);
  double sv_residual = 0.0;
  for (int i = 0; i < op.singular_values.size(); ++i) {
    const double sv = op.singular_values(i);
    sv_residual = std::max(sv_residual, std::min(std::abs(sv), std::abs(sv - 1.0)));
  }
  json report = io::pipeline_result_to_json(result);
  report["composite_singular_residual"] = sv_residual;
  passed = result.projection_residual <= tols.verify && sv_residual <= tols.verify;
  return report;
}

CoeffSeriesSpace coeff_space_from(const json& j, int degree) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "hardy") return CoeffSeriesSpace::hardy(degree);
    if (name == "bergman") return CoeffSeriesSpace::bergman(degree);
    throw ConfigError("rootfn: unknown weight family \"" + name + "\"");
  }
  return CoeffSeriesSpace(j.get<std::vector<double>>());
}

json run_rootfn(const json& config, const Tolerances&, const RunOptions& options,
                bool& passed) {
  const int degree = config.value("degree", 400);
  const CoeffSeriesSpace space = coeff_space_from(config.at("weights"), degree);
  std::vector<Vector> generators;
  for (const auto& g : config.at("generators")) {
    Vector coeffs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      coeffs(static_cast<int>(i)) = io::complex_from_json(g[i]);
    generators.push_back(std::move(coeffs));
  }
  const Matrix basis = generate_invariant_subspace(space, generators);
  const std::vector<double> radii =
      config.value("radii", std::vector<double>{0.5, 0.9, 0.99, 0.999});
  const std::vector<double> thetas =
      config.value("thetas", std::vector<double>{0.0});

  json sweeps = json::array();
  std::ostringstream csv;
  csv << "r,theta,G_value,D,generator_spec\n";
  const std::string generator_spec = config.at("generators").dump();
  double stability_flag_max = 0.0;
  const bool stability = config.value("stability_check", false);
  std::optional<CoeffSeriesSpace> fine;
  Matrix fine_basis;
  if (stability) {
    // Doubled-degree model, built once and reused across the theta sweep.
    fine = coeff_space_from(config.at("weights"), 2 * degree);
    fine_basis = generate_invariant_subspace(*fine, generators);
  }
  for (double theta : thetas) {
    const RootFunctionReport report = root_function(space, basis, radii, theta);
    json sweep;
    sweep["theta"] = theta;
    sweep["radii"] = report.radii;
    sweep["values"] = report.values;
    if (stability) {
      const RootFunctionReport fine_report =
          root_function(*fine, fine_basis, radii, theta);
      double shift = 0.0;
      for (std::size_t i = 0; i < radii.size(); ++i)
        shift = std::max(shift, std::abs(report.values[i] - fine_report.values[i]));
      sweep["truncation_shift"] = shift;
      stability_flag_max = std::max(stability_flag_max, shift);
    }
    sweeps.push_back(sweep);
    for (std::size_t i = 0; i < radii.size(); ++i)
      csv << radii[i] << "," << theta << "," << report.values[i] << "," << degree
          << ",\"" << generator_spec << "\"\n";
  }
  json report;
  report["degree"] = degree;
  report["dim_basis"] = basis.cols();
  report["weights"] = config.at("weights");
  report["sweeps"] = sweeps;
  if (config.value("stability_check", false)) {
    report["truncation_stable"] = stability_flag_max <= 1e-3;
    if (stability_flag_max > 1e-3)
      warn("rootfn: truncation shift " + std::to_string(stability_flag_max) +
           " exceeds 1e-3 at these radii");
  }
  report["csv"] = csv.str();
  passed = true;
  if (config.value("stability_check", false) && stability_flag_max > 1e-3)
    passed = false;
  (void)options;
  return report;
}

json run_counterexample(const json& config, const Tolerances&, const RunOptions&,
                        bool& passed) {
  const std::vector<int> degrees =
      config.value("degrees", std::vector<int>{0, 99, 399});
  const int max_degree = *std::max_element(degrees.begin(), degrees.end());
  std::vector<double> hardy(max_degree + 1, 1.0);
  std::vector<double> bergman(max_degree + 1);
  for (int m = 0; m <= max_degree; ++m) bergman[m] = m + 1.0;
  json table = json::array();
  passed = true;
  for (int d : degrees) {
    const double sigma = inclusion_sigma_min(d, hardy, bergman);
    const double expected = 1.0 / std::sqrt(d + 1.0);
    table.push_back({{"D", d}, {"sigma_min", sigma}, {"closed_form", expected}});
    if (std::abs(sigma - expected) > 1e-14) passed = false;
  }
  json report;
  report["table"] = table;
  report["note"] =
      "sigma_min -> 0: the inclusion of the Hardy space into the Bergman space "
      "is not bounded below, so its range is not closed";
  return report;
}

}  // namespace

Scenario Scenario::from_json(const json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.task = j.at("task").get<std::string>();
  s.config = j;
  return s;
}

Scenario Scenario::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open scenario file " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in " + file.string() + ": " + e.what());
  }
  return from_json(j);
}

RunOutcome run(const Scenario& scenario, const RunOptions& options) {
  const Tolerances tols = tolerances_from(scenario.config, options);
  bool passed = false;
  json body;
  if (scenario.task == "kernel-check")
    body = run_kernel_check(scenario.config, tols, options, passed);
  else if (scenario.task == "synthesize")
    body = run_synthesize(scenario.config, tols, options, passed);
  else if (scenario.task == "leech")
    body = run_leech(scenario.config, tols, options, passed);
  else if (scenario.task == "pipeline")
    body = run_pipeline(scenario.config, tols, options, passed);
  else if (scenario.task == "rootfn")
    body = run_rootfn(scenario.config, tols, options, passed);
  else if (scenario.task == "counterexample")
    body = run_counterexample(scenario.config, tols, options, passed);
  else
    throw ConfigError("unknown task \"" + scenario.task + "\"");

  json report;
  report["schema_version"] = 1;
  report["name"] = scenario.name;
  report["task"] = scenario.task;
  report["passed"] = passed;
  report["tolerances"] = {{"psd", tols.psd}, {"rank", tols.rank},
                          {"verify", tols.verify}};
  report["result"] = std::move(body);

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    std::ofstream out(*options.out_dir / (scenario.name + ".report.json"));
    out << report.dump(2) << "\n";
    if (options.format == "csv" && report["result"].contains("csv")) {
      std::ofstream csv(*options.out_dir / (scenario.name + ".csv"));
      csv << report["result"]["csv"].get<std::string>();
    }
  }
  return RunOutcome{std::move(report), passed};
}

SuiteSummary run_suite(const std::filesystem::path& dir, const RunOptions& options) {
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("suite: " + dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  SuiteSummary summary;
  summary.table = io::json::array();
  for (const auto& file : files) {
    io::json row;
    row["file"] = file.filename().string();
    ++summary.total;
    try {
      const Scenario scenario = Scenario::load(file);
      const RunOutcome outcome = run(scenario, options);
      row["name"] = scenario.name;
      row["passed"] = outcome.passed;
      if (outcome.passed) ++summary.passed;
    } catch (const std::exception& e) {
      row["passed"] = false;
      row["error"] = e.what();
    }
    summary.table.push_back(std::move(row));
  }
  return summary;
}

}  // namespace rkhs
