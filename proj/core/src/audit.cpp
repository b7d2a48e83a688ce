#include "sgrass/audit.hpp"

#include <string>

#include "sgrass/error.hpp"

namespace sgrass {

std::uint64_t measured_mult_count(const MultTrace& trace) {
  if (!trace.enabled) fail(ErrorCode::InstrumentationDisabled, "trace was not enabled");
  return trace.multiplies;
}

std::uint64_t gram_mult_count(std::uint64_t T, std::uint64_t M, std::uint64_t N, bool sparse) {
  return (sparse ? N * T : N * T * M) + N * M * M;
}

std::uint64_t precode_mult_count(std::uint64_t T, std::uint64_t M, bool sparse) {
  return sparse ? T : M * T;
}

std::uint64_t storage_count(std::uint64_t T, std::uint64_t M, std::uint64_t size, bool sparse) {
  return sparse ? size * T : size * T * M;
}

VariableMethod parse_variable_method(std::string_view name) {
  if (name == "manopt") return VariableMethod::Manopt;
  if (name == "proposed2m" || name == "proposed") return VariableMethod::Proposed2M;
  fail(ErrorCode::InvalidForMethod, "unknown method '" + std::string(name) + "'");
}

std::uint64_t real_variable_count(VariableMethod method, std::uint64_t T, std::uint64_t M,
                                  std::uint64_t size) {
  if (M == 0 || M >= T) fail(ErrorCode::InvalidForMethod, "need 1 <= M < T");
  switch (method) {
    case VariableMethod::Manopt:
      return 2 * size * M * (T - M);
    case VariableMethod::Proposed2M: {
      if (T != 2 * M) fail(ErrorCode::InvalidForMethod, "Proposed2M requires T = 2M");
      const std::uint64_t patterns = 2 * M - 1;
      return (size + patterns - 1) / patterns * M;
    }
  }
  return 0;
}

ComplexityReport complexity_report(std::uint64_t T, std::uint64_t M, std::uint64_t N,
                                   std::uint64_t size) {
  ComplexityReport r{T, M, N, size};
  r.gram_dense = gram_mult_count(T, M, N, false);
  r.gram_sparse = gram_mult_count(T, M, N, true);
  r.precode_dense = precode_mult_count(T, M, false);
  r.precode_sparse = precode_mult_count(T, M, true);
  r.storage_dense = storage_count(T, M, size, false);
  r.storage_sparse = storage_count(T, M, size, true);
  r.variables_manopt = real_variable_count(VariableMethod::Manopt, T, M, size);
  r.variables_proposed =
      T == 2 * M ? real_variable_count(VariableMethod::Proposed2M, T, M, size) : 0;
  return r;
}

nlohmann::ordered_json to_json(const ComplexityReport& r) {
  nlohmann::ordered_json j;
  j["T"] = r.T;
  j["M"] = r.M;
  j["N"] = r.N;
  j["size"] = r.size;
  j["index_selection"] = {{"dense", r.gram_dense}, {"sparse", r.gram_sparse}};
  j["precoder_multiplication"] = {{"dense", r.precode_dense}, {"sparse", r.precode_sparse}};
  j["storage"] = {{"dense", r.storage_dense}, {"sparse", r.storage_sparse}};
  j["real_variables"] = {{"manopt", r.variables_manopt},
                         {"proposed2m", r.T == 2 * r.M ? nlohmann::ordered_json(r.variables_proposed)
                                                       : nlohmann::ordered_json(nullptr)}};
  return j;
}

}  // namespace sgrass
