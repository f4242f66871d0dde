#include "cli.hpp"

#include "rzeta/identities.hpp"
#include "rzeta/qseries.hpp"
#include "rzeta/report.hpp"
#include "rzeta/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace rzeta::cli {

namespace {

struct RunConfig {
  long precision_bits = 128;
  std::optional<double> tolerance;
  std::size_t qseries_order = 0;
  int quad_max_level = 0;
  std::string format = "json";
  std::string output;
  int threads = 0;
  bool no_timing = false;
  bool quiet = false;
};

std::string format_ms(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << ms;
  return s.str();
}

// Writes to --output or the given stream.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.output);
  f << text;
}

int cmd_tau(std::size_t limit, const RunConfig& cfg, std::ostream& out) {
  const auto table = qseries::TauTable::compute(limit);
  std::ostringstream s;
  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t n = 1; n <= limit; ++n) arr.push_back({{"n", n}, {"tau", table[n].get_str()}});
    s << arr.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    s << "n,tau\n";
    for (std::size_t n = 1; n <= limit; ++n) s << n << ',' << table[n].get_str() << '\n';
  } else {
    for (std::size_t n = 1; n <= limit; ++n) s << n << ' ' << table[n].get_str() << '\n';
  }
  emit(cfg, s.str(), out);
  return kOk;
}

struct MethodRange {
  long lo;
  long hi;
  const char* range;
};

const std::map<std::string, MethodRange>& methods() {
  static const std::map<std::string, MethodRange> m = {
      {"dirichlet", {12, 1000000, "k >= 12"}},   {"mellin", {1, 1000000, "k >= 1"}},
      {"critical", {1, 11, "1 <= k <= 11"}},     {"theorem11", {12, 12, "k = 12"}},
      {"corollary", {13, 15, "k in {13, 14, 15}"}}, {"theorem31", {12, 20, "12 <= k <= 20"}},
  };
  return m;
}

int cmd_lvalue(long k, const std::string& method, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MethodRange& range = methods().at(method);
  const long hi = method == "theorem31" ? identities::max_theorem_k() : range.hi;
  if (k < range.lo || k > hi) {
    err << "error: method " << method << " needs " << range.range << " (got k = " << k << ")\n";
    return kUsage;
  }
  const PrecCtx ctx(cfg.precision_bits);
  quad::QuadOptions opts1;
  quad::QuadOptions opts2 = identities::default_2d_options();
  if (cfg.quad_max_level > 0) opts1.max_level = opts2.max_level = cfg.quad_max_level;
  if (!cfg.quiet && (method == "corollary" || method == "theorem31"))
    err << "computing L(Delta, " << k << ") by " << method << " (2-D quadrature)...\n";

  const auto t0 = std::chrono::steady_clock::now();
  identities::LValue v = [&] {
    if (method == "dirichlet") {
      identities::DirichletOptions d;
      if (cfg.qseries_order > 0) d.max_terms = cfg.qseries_order;
      return identities::l_dirichlet(k, ctx, d);
    }
    if (method == "mellin") return identities::l_mellin(k, ctx, opts1);
    if (method == "critical") return identities::critical_l_integral(k, ctx, opts1);
    if (method == "theorem11") return identities::l12_log_integral(ctx, opts1);
    if (method == "corollary") return identities::corollary_l(k, ctx, opts2);
    return identities::theorem_double(k, ctx, opts2);
  }();
  const double ms =
      cfg.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream s;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["method"] = method;
    j["value"] = v.value.to_string();
    j["err_est"] = v.err_est.to_string(6);
    j["precision_bits"] = static_cast<long>(ctx.working_bits());
    j["nodes"] = v.nodes;
    j["terms"] = v.terms;
    j["elapsed_ms"] = nlohmann::ordered_json::parse(format_ms(ms));
    j["converged"] = v.converged;
    j["message"] = v.message;
    s << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    s << "k,method,value,err_est,precision_bits,nodes,terms,elapsed_ms,converged\n"
      << k << ',' << method << ',' << v.value.to_string() << ',' << v.err_est.to_string(6) << ','
      << ctx.working_bits() << ',' << v.nodes << ',' << v.terms << ',' << format_ms(ms) << ','
      << (v.converged ? "true" : "false") << '\n';
  } else {
    s << "L(Delta, " << k << ") = " << v.value.to_string() << '\n'
      << "  method    " << method << '\n'
      << "  err_est   " << v.err_est.to_string(6) << '\n'
      << "  precision " << ctx.working_bits() << " bits\n"
      << "  elapsed   " << format_ms(ms) << " ms\n";
    if (!v.message.empty()) s << "  " << v.message << '\n';
  }
  emit(cfg, s.str(), out);
  if (!v.converged) {
    err << "warning: not converged: " << v.message << '\n';
    return kUnconverged;
  }
  return kOk;
}

int cmd_verify(const std::string& suite_name, const std::string& id, std::optional<long> k, const RunConfig& cfg,
               std::ostream& out, std::ostream& err) {
  std::vector<SuiteEntry> entries;
  if (!id.empty()) {
    VerifyParams p;
    p.k = k;
    entries.push_back({id, p});
  } else {
    entries = suite(suite_name);
  }
  const PrecCtx ctx(cfg.precision_bits);
  std::vector<VerificationReport> reports;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    VerifyParams p = entries[i].params;
    p.tolerance = cfg.tolerance;
    p.quad_max_level = cfg.quad_max_level;
    if (cfg.qseries_order > 0) p.order = cfg.qseries_order;
    if (!cfg.quiet) {
      err << '[' << (i + 1) << '/' << entries.size() << "] " << entries[i].id;
      if (p.k) err << " k=" << *p.k;
      err << " ..." << std::flush;
    }
    reports.push_back(verify(entries[i].id, p, ctx));
    if (!cfg.quiet) err << ' ' << to_string(reports.back().status) << '\n';
  }
  SerializeOptions so;
  so.include_timing = !cfg.no_timing;
  const std::string text =
      cfg.format == "json" ? to_json(reports, so) : (cfg.format == "csv" ? to_csv(reports, so) : to_text(reports, so));
  emit(cfg, text, out);
  const auto failures = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed(); });
  if (failures == 0) return kOk;
  const bool only_unconverged = std::all_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.status != Status::fail;
  });
  if (only_unconverged && entries.size() == 1) return kUnconverged;
  return kFailureBase + static_cast<int>(std::min<long>(failures, 53));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision values of L(Delta, k) for the Ramanujan tau function, and checks of the identities "
               "behind them.\n\nEnvironment: RZETA_PRECISION (bits, default 128) and RZETA_THREADS (OpenMP threads) "
               "apply when the corresponding option is absent.",
               "rzeta"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--precision", cfg.precision_bits, "Target precision in bits (>= 64)")
      ->envname("RZETA_PRECISION")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--tolerance", cfg.tolerance, "Override the per-identity tolerance")->check(CLI::PositiveNumber);
  app.add_option("--qseries-order", cfg.qseries_order,
                 "Coefficient count for exact checks; term cap for the Dirichlet series");
  app.add_option("--quad-max-level", cfg.quad_max_level, "Deepest tanh-sinh refinement level")
      ->check(CLI::Range(1, 20));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", cfg.output, "Write the report to this file instead of standard output");
  app.add_option("--threads", cfg.threads, "OpenMP thread count (0: runtime default)")
      ->envname("RZETA_THREADS")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", cfg.no_timing, "Report elapsed_ms as 0 so repeated runs are byte-identical");
  app.add_flag("--quiet,-q", cfg.quiet, "No progress messages on standard error");

  std::size_t limit = 0;
  auto* tau = app.add_subcommand("tau", "Print tau(n) for n <= limit");
  tau->add_option("--limit", limit, "Largest n")->required()->check(CLI::PositiveNumber);

  long lk = 0;
  std::string method = "dirichlet";
  auto* lvalue = app.add_subcommand("lvalue", "Compute L(Delta, k) by one method");
  lvalue->add_option("--k", lk, "Integer argument")->required();
  std::vector<std::string> method_names;
  for (const auto& [name, r] : methods()) method_names.push_back(name);
  lvalue->add_option("--method", method, "Evaluation method")->check(CLI::IsMember(method_names));

  std::string suite_name;
  std::string id;
  std::optional<long> vk;
  auto* verify_cmd = app.add_subcommand("verify", "Run identity checks");
  auto* suite_opt = verify_cmd->add_option("--suite", suite_name, "exact, analytic1d, analytic2d or all");
  auto* id_opt = verify_cmd->add_option("--id", id, "Single identity id (see the README)");
  verify_cmd->add_option("--k", vk, "Argument for identities ending in _k");
  suite_opt->excludes(id_opt);
  verify_cmd->callback([&] {
    if (suite_name.empty() && id.empty()) throw CLI::ValidationError("verify", "give --suite or --id");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  try {
    if (tau->parsed()) return cmd_tau(limit, cfg, out);
    if (lvalue->parsed()) return cmd_lvalue(lk, method, cfg, out, err);
    return cmd_verify(suite_name, id, vk, cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResource;
  }
}

}  // namespace rzeta::cli
