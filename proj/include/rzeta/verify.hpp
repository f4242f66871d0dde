// Named identity checks and the suites that group them.
#pragma once

#include "rzeta/bigreal.hpp"
#include "rzeta/report.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rzeta {

// Unknown identity or suite name, or a parameter outside an identity's range.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct VerifyParams {
  std::optional<long> k;
  std::size_t order = 0;                // q-series coefficient count; 0 picks the identity default
  std::optional<double> tolerance;      // overrides the identity default
  int quad_max_level = 0;               // 0 keeps the quadrature defaults
};

// Ids: lemma21, ramanujan1728, tau_structure, l12_extra1, l12_extra2,
// poly_P8, poly_Q8, poly_P10, poly_Q10, critical_k, theorem11, corollary_k,
// theorem31_k, functional_eq_k, f_cross_check, roundtrip. Ids ending in _k
// need params.k; the suffixed spelling ("critical_6") is accepted too.
VerificationReport verify(const std::string& identity_id, const VerifyParams& params, const PrecCtx& ctx);

std::vector<std::string> identity_ids();

// Default tolerance of an identity at the given precision (0 for exact checks).
double default_tolerance(const std::string& identity_id, const PrecCtx& ctx);

struct SuiteEntry {
  std::string id;
  VerifyParams params;
};

// Suites: exact, analytic1d, analytic2d, all.
std::vector<SuiteEntry> suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace rzeta
