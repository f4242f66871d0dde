#include "rzeta/verify.hpp"

#include "rzeta/identities.hpp"
#include "rzeta/qseries.hpp"
#include "rzeta/quadrature.hpp"
#include "rzeta/special.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>

namespace rzeta {

namespace {

using identities::LValue;

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

// Fills the error fields and decides the status.
void settle(VerificationReport& r, const BigReal& lhs, const BigReal& rhs, double tol, Policy policy,
            bool converged) {
  const BigReal abs_err = abs(lhs - rhs);
  BigReal rel_err = abs_err;
  if (!rhs.is_zero()) rel_err /= abs(rhs);
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  r.abs_err = abs_err.to_string(6);
  r.rel_err = rel_err.to_string(6);
  r.tolerance = format_double(tol);
  r.precision_bits = lhs.prec();
  r.policy = policy;
  const BigReal t(lhs.prec(), mpq_class(tol));
  bool ok = false;
  switch (policy) {
    case Policy::exact: ok = abs_err.is_zero(); break;
    case Policy::relative: ok = rel_err <= t; break;
    case Policy::absolute: ok = abs_err <= t; break;
    case Policy::abs_or_rel: ok = abs_err <= t || rel_err <= t; break;
  }
  r.status = !converged ? Status::unconverged : (ok ? Status::pass : Status::fail);
}

struct Parsed {
  std::string id;
  std::optional<long> k;
};

const std::vector<std::string>& base_ids() {
  static const std::vector<std::string> ids = {
      "lemma21",   "ramanujan1728", "tau_structure", "l12_extra1",   "l12_extra2",      "poly_P8",
      "poly_Q8",   "poly_P10",      "poly_Q10",      "critical_k",   "theorem11",       "corollary_k",
      "theorem31_k", "functional_eq_k", "f_cross_check", "roundtrip"};
  return ids;
}

Parsed parse_id(const std::string& raw, std::optional<long> k) {
  for (const auto& id : base_ids()) {
    if (raw == id) return {id, k};
  }
  // critical_6 -> (critical_k, 6)
  const auto pos = raw.rfind('_');
  if (pos != std::string::npos && pos + 1 < raw.size()) {
    const std::string stem = raw.substr(0, pos) + "_k";
    long value = 0;
    const char* first = raw.data() + pos + 1;
    const char* last = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last) {
      for (const auto& id : base_ids())
        if (id == stem) return {id, value};
    }
  }
  throw UsageError("unknown identity '" + raw + "'");
}

long require_k(const Parsed& p, long lo, long hi) {
  if (!p.k) throw UsageError(p.id + " needs k");
  if (*p.k < lo || *p.k > hi)
    throw UsageError(p.id + ": k must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                     std::to_string(*p.k));
  return *p.k;
}

quad::QuadOptions options_1d(const VerifyParams& params) {
  quad::QuadOptions o;
  if (params.quad_max_level > 0) o.max_level = params.quad_max_level;
  return o;
}

quad::QuadOptions options_2d(const VerifyParams& params) {
  quad::QuadOptions o = identities::default_2d_options();
  if (params.quad_max_level > 0) o.max_level = params.quad_max_level;
  return o;
}

// 10-point grid in u for the theta-quotient and Lambert identities.
std::vector<BigReal> u_grid(const PrecCtx& ctx) {
  std::vector<BigReal> out;
  for (long m = 1; m <= 10; ++m) out.emplace_back(ctx.working_bits(), mpq_class(3 * m, 10));
  return out;
}

// Runs `pair` over the grid and keeps the point with the worst relative error.
template <class Pair>
VerificationReport grid_check(const std::string& id, const std::vector<BigReal>& grid, const std::string& var,
                              double tol, const Pair& pair) {
  VerificationReport r;
  r.identity = id;
  std::optional<std::pair<BigReal, BigReal>> worst;
  std::size_t worst_i = 0;
  BigReal worst_rel(grid.front().prec());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto [lhs, rhs] = pair(grid[i]);
    BigReal rel = abs(lhs - rhs) / abs(rhs);
    if (!worst || rel > worst_rel) {
      worst_rel = rel;
      worst.emplace(std::move(lhs), std::move(rhs));
      worst_i = i;
    }
  }
  settle(r, worst->first, worst->second, tol, Policy::relative, true);
  r.terms = static_cast<long>(grid.size());
  r.detail = "worst of " + std::to_string(grid.size()) + " points at " + var + " = " + grid[worst_i].to_string(6);
  return r;
}

struct PolyCase {
  special::CombinationSpec spec;
  std::vector<mpq_class> expected;
};

PolyCase poly_case(const std::string& id) {
  using special::CombinationSpec;
  if (id == "poly_P8") return {CombinationSpec::P(8), {255, -480, 0, 480, -255}};
  if (id == "poly_Q8") return {CombinationSpec::Q(8), {0, 30, 195, 30}};
  if (id == "poly_P10") return {CombinationSpec::P(10), {1023, -2574, 2640, -2640, 2574, -1023}};
  return {CombinationSpec::Q(10), {0, mpq_class(-33, 2), -495, -495, mpq_class(-33, 2)}};
}

VerificationReport run(const Parsed& p, const VerifyParams& params, const PrecCtx& ctx) {
  const double tol = params.tolerance.value_or(default_tolerance(p.id, ctx));
  const mpfr_prec_t prec = ctx.working_bits();

  if (p.id == "lemma21") return qseries::verify_decomposition(params.order ? params.order : 1000);
  if (p.id == "ramanujan1728") return qseries::verify_ramanujan_1728(params.order ? params.order : 500);
  if (p.id == "tau_structure") {
    const std::size_t limit = params.order ? params.order : 1000;
    return qseries::tau_structure_check(*qseries::shared_tau_table(std::max<std::size_t>(limit, 2)), limit);
  }

  VerificationReport r;
  r.identity = p.id;
  r.k = p.k;
  r.precision_bits = prec;

  if (p.id == "l12_extra1") {
    // prod_{m odd} (1 + p^m)/(1 - p^m) = alpha^(-1/8)
    return grid_check(p.id, u_grid(ctx), "u", tol, [&](const BigReal& u) {
      const BigReal alpha = special::alpha_from_u(u, ctx);
      return std::pair{special::theta_quotient_product(u, ctx), 1L / root(alpha, 8)};
    });
  }
  if (p.id == "l12_extra2") {
    const special::AlphaPolynomial poly({0, 2, 251, 876, 251, 2});
    return grid_check(p.id, u_grid(ctx), "u", tol, [&](const BigReal& u) {
      const special::AlphaPair a = special::alpha_pair_from_u(u, ctx);
      BigReal rhs = poly.evaluate(a.alpha, a.alpha_comp) * pow(special::f_hyper(a.alpha, a.alpha_comp, ctx), 12);
      rhs /= 32L;
      return std::pair{special::lambert_weight11(u, ctx), std::move(rhs)};
    });
  }
  if (p.id.rfind("poly_", 0) == 0) {
    const PolyCase c = poly_case(p.id);
    const special::PolynomialSearch s = special::find_alpha_polynomial(c.spec, c.spec.weight, ctx);
    const special::AlphaPolynomial expected(c.expected);
    r.policy = Policy::exact;
    r.rhs = expected.to_string();
    r.terms = s.fit_points + s.holdout_points;
    if (!s.polynomial) {
      r.lhs = "none";
      r.status = Status::fail;
      r.detail = s.message;
      return r;
    }
    r.lhs = s.polynomial->to_string();
    r.status = *s.polynomial == expected ? Status::pass : Status::fail;
    r.detail = "degree bound " + std::to_string(c.spec.weight) + ", held-out relative residual " +
               s.max_holdout_residual.to_string(6);
    return r;
  }
  if (p.id == "critical_k") {
    const long k = require_k(p, 1, 11);
    const LValue lhs = identities::critical_l_integral(k, ctx, options_1d(params));
    const LValue rhs = identities::l_mellin(k, ctx, options_1d(params));
    settle(r, lhs.value, rhs.value, tol, Policy::relative, lhs.converged && rhs.converged);
    r.nodes = lhs.nodes + rhs.nodes;
    r.detail = "alpha integral vs Mellin integral; estimates " + lhs.err_est.to_string(3) + ", " +
               rhs.err_est.to_string(3);
    if (!lhs.message.empty() || !rhs.message.empty()) r.detail += "; " + lhs.message + rhs.message;
    return r;
  }
  if (p.id == "theorem11") {
    const LValue lhs = identities::l12_log_integral(ctx, options_1d(params));
    const LValue rhs = identities::l_dirichlet(12, ctx);
    settle(r, lhs.value, rhs.value, tol, Policy::relative, lhs.converged);
    r.k = 12;
    r.nodes = lhs.nodes;
    r.terms = rhs.terms;
    r.detail = "log integral vs Dirichlet series; quadrature estimate " + lhs.err_est.to_string(3) + ", " +
               rhs.message;
    if (!lhs.message.empty()) r.detail += "; " + lhs.message;
    return r;
  }
  if (p.id == "corollary_k" || p.id == "theorem31_k") {
    const bool corollary = p.id == "corollary_k";
    const long k = corollary ? require_k(p, 13, 15) : require_k(p, 12, identities::max_theorem_k());
    const LValue lhs = corollary ? identities::corollary_l(k, ctx, options_2d(params))
                                 : identities::theorem_double(k, ctx, options_2d(params));
    const LValue rhs = identities::l_dirichlet(k, ctx);
    settle(r, lhs.value, rhs.value, tol, Policy::relative, lhs.converged);
    r.nodes = lhs.nodes;
    r.terms = rhs.terms;
    r.detail = std::string(corollary ? "closed 2-D form" : "triangle integral") + " vs Dirichlet series; " +
               "quadrature estimate " + lhs.err_est.to_string(3) + ", " + rhs.message;
    if (!lhs.message.empty()) r.detail += "; " + lhs.message;
    return r;
  }
  if (p.id == "functional_eq_k") {
    const long k = require_k(p, 1, 11);
    const LValue a = identities::l_mellin(12 - k, ctx, options_1d(params));
    const LValue b = identities::l_mellin(k, ctx, options_1d(params));
    const BigReal two_pi = ctx.pi() * 2L;
    // (2pi)^(k-12) Gamma(12-k) L(12-k) and (2pi)^(-k) Gamma(k) L(k)
    const BigReal lhs = a.value * factorial(prec, 11 - k) / pow(two_pi, 12 - k);
    const BigReal rhs = b.value * factorial(prec, k - 1) / pow(two_pi, k);
    settle(r, lhs, rhs, tol, Policy::relative, a.converged && b.converged);
    r.nodes = a.nodes + b.nodes;
    r.detail = "Mellin integrals at " + std::to_string(12 - k) + " and " + std::to_string(k);
    return r;
  }
  if (p.id == "f_cross_check") {
    std::vector<BigReal> grid;
    for (long num : {1L, 5L, 9L}) grid.emplace_back(prec, mpq_class(num, 10));
    long nodes = 0;
    bool converged = true;
    VerificationReport g = grid_check(p.id, grid, "alpha", tol, [&](const BigReal& alpha) {
      quad::QuadResult q = special::f_elliptic_quad(alpha, ctx);
      nodes += q.nodes;
      converged = converged && q.converged;
      return std::pair{std::move(q.value), special::f_hyper(alpha, ctx)};
    });
    g.nodes = nodes;
    if (!converged) g.status = Status::unconverged;
    return g;
  }
  // roundtrip
  BigReal worst(prec);
  BigReal worst_alpha(prec), worst_back(prec);
  for (long m = 0; m < 50; ++m) {
    const BigReal alpha(prec, mpq_class(2 * m + 1, 100));
    const BigReal back = special::alpha_from_u(special::u_from_alpha(alpha, ctx), ctx);
    const BigReal err = abs(back - alpha);
    if (m == 0 || err > worst) {
      worst = err;
      worst_alpha = alpha;
      worst_back = back;
    }
  }
  settle(r, worst_back, worst_alpha, tol, Policy::absolute, true);
  r.terms = 50;
  r.detail = "worst of 50 points at alpha = " + worst_alpha.to_string(6);
  return r;
}

}  // namespace

VerificationReport verify(const std::string& identity_id, const VerifyParams& params, const PrecCtx& ctx) {
  const Parsed p = parse_id(identity_id, params.k);
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  try {
    r = run(p, params, ctx);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (r.elapsed_ms == 0.0)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!r.k) r.k = p.k;
  return r;
}

std::vector<std::string> identity_ids() { return base_ids(); }

double default_tolerance(const std::string& identity_id, const PrecCtx& ctx) {
  const std::string id = parse_id(identity_id, std::nullopt).id;
  if (id == "lemma21" || id == "ramanujan1728" || id == "tau_structure" || id.rfind("poly_", 0) == 0) return 0.0;
  if (id == "theorem11") return 1e-15;
  if (id == "corollary_k" || id == "theorem31_k") return 1e-8;
  if (id == "l12_extra1" || id == "l12_extra2") return 1e-25;
  if (id == "roundtrip") return std::ldexp(1.0, -static_cast<int>(ctx.target_bits) + 12);
  return 1e-20;
}

std::vector<SuiteEntry> suite(const std::string& name) {
  std::vector<SuiteEntry> out;
  const auto add = [&out](std::string id, std::optional<long> k = std::nullopt) {
    VerifyParams p;
    p.k = k;
    out.push_back({std::move(id), p});
  };
  const bool all = name == "all";
  if (!all && name != "exact" && name != "analytic1d" && name != "analytic2d")
    throw UsageError("unknown suite '" + name + "' (expected exact, analytic1d, analytic2d or all)");
  if (all || name == "exact") {
    add("lemma21");
    add("ramanujan1728");
    add("tau_structure");
  }
  if (all || name == "analytic1d") {
    add("f_cross_check");
    add("roundtrip");
    add("l12_extra1");
    add("l12_extra2");
    for (const char* id : {"poly_P8", "poly_Q8", "poly_P10", "poly_Q10"}) add(id);
    for (long k = 1; k <= 11; ++k) add("critical_k", k);
    for (long k = 1; k <= 5; ++k) add("functional_eq_k", k);
    add("theorem11");
  }
  if (all || name == "analytic2d") {
    for (long k = 13; k <= 15; ++k) add("corollary_k", k);
    for (long k = 12; k <= 15; ++k) add("theorem31_k", k);
  }
  return out;
}

std::vector<std::string> suite_names() { return {"exact", "analytic1d", "analytic2d", "all"}; }

}  // namespace rzeta
