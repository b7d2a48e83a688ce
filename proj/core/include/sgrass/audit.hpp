#pragma once

// Closed-form operation and storage counts for dense versus one-nonzero-per-row
// (ELLPACK) precoders. One complex multiply is one unit.

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

namespace sgrass {

/// Multiply counter threaded explicitly through instrumented kernels.
struct MultTrace {
  bool enabled = false;
  std::uint64_t multiplies = 0;

  void add(std::uint64_t n) {
    if (enabled) multiplies += n;
  }
};

/// Throws InstrumentationDisabled when the trace was never enabled.
std::uint64_t measured_mult_count(const MultTrace& trace);

/// Gram matrix (HW)^H (HW): dense N*T*M + N*M^2, sparse N*T + N*M^2.
std::uint64_t gram_mult_count(std::uint64_t T, std::uint64_t M, std::uint64_t N, bool sparse);

/// W s: dense M*T, sparse T.
std::uint64_t precode_mult_count(std::uint64_t T, std::uint64_t M, bool sparse);

/// Stored scalars: dense size*T*M complex values, sparse size*T (value, column) records.
std::uint64_t storage_count(std::uint64_t T, std::uint64_t M, std::uint64_t size, bool sparse);

enum class VariableMethod { Manopt, Proposed2M };

/// Throws InvalidForMethod for an unknown name.
VariableMethod parse_variable_method(std::string_view name);

/// Manopt: 2*size*M*(T-M). Proposed2M: ceil(size/(2M-1))*M, requires T = 2M
/// (InvalidForMethod otherwise).
std::uint64_t real_variable_count(VariableMethod method, std::uint64_t T, std::uint64_t M,
                                  std::uint64_t size);

struct ComplexityReport {
  std::uint64_t T = 0;
  std::uint64_t M = 0;
  std::uint64_t N = 0;
  std::uint64_t size = 0;
  std::uint64_t gram_dense = 0;
  std::uint64_t gram_sparse = 0;
  std::uint64_t precode_dense = 0;
  std::uint64_t precode_sparse = 0;
  std::uint64_t storage_dense = 0;
  std::uint64_t storage_sparse = 0;
  std::uint64_t variables_manopt = 0;
  std::uint64_t variables_proposed = 0;  // 0 when T != 2M
};

ComplexityReport complexity_report(std::uint64_t T, std::uint64_t M, std::uint64_t N,
                                   std::uint64_t size);

nlohmann::ordered_json to_json(const ComplexityReport& report);

}  // namespace sgrass
