// Verification reports and their serializations (JSON / CSV / text).
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rzeta {

enum class Status { pass, fail, unconverged };

// How `status` was decided from the error fields.
enum class Policy { exact, relative, absolute, abs_or_rel };

std::string_view to_string(Status s);
std::string_view to_string(Policy p);

struct VerificationReport {
  std::string identity;
  std::optional<long> k;
  // Numbers travel as decimal strings so that working precision survives
  // serialization. Exact checks carry rationals ("p/q") here.
  std::string lhs;
  std::string rhs;
  std::string abs_err = "0";
  std::string rel_err = "0";
  std::string tolerance = "0";
  long precision_bits = 0;  // 0 for exact checks
  long nodes = 0;           // integrand evaluations
  long terms = 0;           // series terms / coefficients compared
  double elapsed_ms = 0.0;
  Status status = Status::fail;
  Policy policy = Policy::exact;
  std::string detail;

  bool passed() const { return status == Status::pass; }
};

struct SerializeOptions {
  // Zeroes elapsed_ms so that identical configurations give byte-identical
  // output.
  bool include_timing = true;
};

std::string to_json(const std::vector<VerificationReport>& reports, const SerializeOptions& opts = {});
std::string to_csv(const std::vector<VerificationReport>& reports, const SerializeOptions& opts = {});
std::string to_text(const std::vector<VerificationReport>& reports, const SerializeOptions& opts = {});

}  // namespace rzeta
