#include "rkhs/io.hpp"

#include "rkhs/errors.hpp"

namespace rkhs::io {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("expected a complex value as [re, im] or a real number");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols) {
  Matrix m(rows, cols);
  if (static_cast<int>(j.size()) != rows)
    throw ConfigError("matrix row count mismatch");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw ConfigError("matrix column count mismatch");
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

json kernel_spec_to_json(const KernelSpec& spec) {
  json j;
  switch (spec.variant()) {
    case KernelVariant::PowerAlpha:
      if (spec.alpha() == 1.0) {
        j["variant"] = "szego";
      } else if (spec.alpha() == 2.0) {
        j["variant"] = "bergman";
      } else {
        j["variant"] = "power_alpha";
        j["alpha"] = spec.alpha();
      }
      break;
    case KernelVariant::DruryArveson:
      j["variant"] = "drury_arveson";
      j["d"] = spec.ball_dim();
      break;
    case KernelVariant::Constant:
      j["variant"] = "constant";
      break;
    case KernelVariant::CoefficientSeries:
      j["variant"] = "coefficient_series";
      j["weights"] = spec.weights();
      break;
    case KernelVariant::CustomMatrix:
      j["variant"] = "custom_matrix";
      j["matrix"] = matrix_to_json(spec.matrix());
      break;
    default:
      throw ConfigError("unknown kernel variant");
  }
  return j;
}

KernelSpec kernel_spec_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "szego") return KernelSpec::szego();
  if (variant == "bergman") return KernelSpec::bergman();
  if (variant == "power_alpha")
    return KernelSpec::power_alpha(j.at("alpha").get<double>());
  if (variant == "drury_arveson")
    return KernelSpec::drury_arveson(j.at("d").get<int>());
  if (variant == "constant") return KernelSpec::constant();
  if (variant == "coefficient_series")
    return KernelSpec::coefficient_series(j.at("weights").get<std::vector<double>>());
  if (variant == "custom_matrix") {
    const auto& rows = j.at("matrix");
    const int n = static_cast<int>(rows.size());
    return KernelSpec::custom(matrix_from_json(rows, n, n));
  }
  throw ConfigError("unknown kernel variant \"" + variant + "\"");
}

json symbol_to_json(const MultiplierSymbol& symbol) {
  symbol.check_uniform();
  json j;
  j["shape"] = json::array({symbol.out_dim(), symbol.in_dim()});
  json blocks = json::array();
  for (const Matrix& b : symbol.blocks) blocks.push_back(matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  return j;
}

MultiplierSymbol symbol_from_json(const json& j) {
  const int p = j.at("shape")[0].get<int>();
  const int q = j.at("shape")[1].get<int>();
  MultiplierSymbol symbol;
  for (const auto& b : j.at("blocks"))
    symbol.blocks.push_back(matrix_from_json(b, p, q));
  symbol.check_uniform();
  return symbol;
}

json factorization_to_json(const FactorizationResult& result) {
  json j;
  j["rank_f"] = result.rank_f;
  j["quotient_min_eig"] = result.quotient_min_eig;
  j["coisometry_residual"] = result.coisometry_residual;
  j["partial_isometry_ok"] = result.partial_isometry_ok;
  j["phi"] = symbol_to_json(result.phi);
  return j;
}

json leech_result_to_json(const LeechResult& result) {
  json j;
  j["gamma"] = symbol_to_json(result.gamma);
  j["rank_g"] = result.gamma.in_dim();
  j["contractivity_min_eig"] = result.contractivity_min_eig;
  j["factor_residual"] = result.factor_residual;
  j["gram_identity_residual"] = result.gram_identity_residual;
  return j;
}

json pipeline_result_to_json(const PipelineResult& result) {
  json j;
  j["psi"] = symbol_to_json(result.psi);
  j["gamma0"] = symbol_to_json(result.gamma0);
  j["gamma"] = symbol_to_json(result.gamma);
  j["composite"] = symbol_to_json(result.composite);
  j["rank_gamma"] = result.gamma.in_dim();
  j["dim_l"] = result.l_subspace.dim();
  j["projection_residual"] = result.projection_residual;
  j["chain_min_eig"] = result.chain_min_eig;
  return j;
}

}  // namespace rkhs::io
