#include "rzeta/report.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <sstream>

namespace rzeta {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unconverged: return "unconverged";
  }
  return "fail";
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::exact: return "exact";
    case Policy::relative: return "relative";
    case Policy::absolute: return "absolute";
    case Policy::abs_or_rel: return "abs_or_rel";
  }
  return "exact";
}

namespace {

std::string elapsed(const VerificationReport& r, const SerializeOptions& opts) {
  std::array<char, 32> buf{};
  const double ms = opts.include_timing ? r.elapsed_ms : 0.0;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), ms, std::chars_format::fixed, 3);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const std::vector<VerificationReport>& reports, const SerializeOptions& opts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["k"] = r.k ? nlohmann::ordered_json(*r.k) : nlohmann::ordered_json(nullptr);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["precision_bits"] = r.precision_bits;
    j["nodes"] = r.nodes;
    j["terms"] = r.terms;
    j["elapsed_ms"] = nlohmann::ordered_json::parse(elapsed(r, opts));
    j["status"] = std::string(to_string(r.status));
    j["policy"] = std::string(to_string(r.policy));
    j["detail"] = r.detail;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<VerificationReport>& reports, const SerializeOptions& opts) {
  std::ostringstream out;
  out << "identity,k,lhs,rhs,abs_err,rel_err,tolerance,precision_bits,nodes,terms,elapsed_ms,status,policy,detail\n";
  for (const auto& r : reports) {
    out << csv_field(r.identity) << ',' << (r.k ? std::to_string(*r.k) : "") << ',' << csv_field(r.lhs) << ','
        << csv_field(r.rhs) << ',' << r.abs_err << ',' << r.rel_err << ',' << r.tolerance << ','
        << r.precision_bits << ',' << r.nodes << ',' << r.terms << ',' << elapsed(r, opts) << ','
        << to_string(r.status) << ',' << to_string(r.policy) << ',' << csv_field(r.detail) << '\n';
  }
  return out.str();
}

std::string to_text(const std::vector<VerificationReport>& reports, const SerializeOptions& opts) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << '[' << to_string(r.status) << "] " << r.identity;
    if (r.k) out << " k=" << *r.k;
    out << '\n'
        << "  lhs       " << r.lhs << '\n'
        << "  rhs       " << r.rhs << '\n'
        << "  abs_err   " << r.abs_err << "  rel_err " << r.rel_err << "  tolerance " << r.tolerance << " ("
        << to_string(r.policy) << ")\n"
        << "  precision " << r.precision_bits << " bits, nodes " << r.nodes << ", terms " << r.terms << ", "
        << elapsed(r, opts) << " ms\n";
    if (!r.detail.empty()) out << "  " << r.detail << '\n';
  }
  return out.str();
}

}  // namespace rzeta
