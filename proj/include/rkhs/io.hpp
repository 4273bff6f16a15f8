#pragma once

#include <json.hpp>

#include "rkhs/beurling.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/leech.hpp"
#include "rkhs/multcheck.hpp"

namespace rkhs::io {

using json = nlohmann::json;

// Complex scalars travel as [re, im] pairs; matrices row-major.
json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, int rows, int cols);

json kernel_spec_to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const json& j);

json symbol_to_json(const MultiplierSymbol& symbol);
MultiplierSymbol symbol_from_json(const json& j);

json factorization_to_json(const FactorizationResult& result);
json leech_result_to_json(const LeechResult& result);
json pipeline_result_to_json(const PipelineResult& result);

}  // namespace rkhs::io
