// Acceptance gate: one PASS/FAIL line per criterion, tolerances and runtime
// budgets pinned below. Exit status is the number of failed criteria.
#include "rzeta/identities.hpp"
#include "rzeta/quadrature.hpp"
#include "rzeta/special.hpp"
#include "rzeta/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace rzeta;

namespace {

constexpr long kBits = 128;

const PrecCtx& ctx() {
  static const PrecCtx c(kBits);
  return c;
}
mpfr_prec_t W() { return ctx().working_bits(); }

BigReal R(long num, long den = 1) { return BigReal(W(), mpq_class(num, den)); }

double rel(const BigReal& a, const BigReal& b) { return (abs(a - b) / abs(b)).to_double(); }

std::string sci(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) o.require(false, "runtime " + sci(s) + " s over budget " + sci(budget_s) + " s");
  if (!o.ok) ++failures;
  std::printf("%s  %2d  %-44s %8.2f s  %s\n", o.ok ? "PASS" : "FAIL", n, name.c_str(), s, o.detail.c_str());
  std::fflush(stdout);
}

Outcome exact_report(const std::string& id, std::size_t order) {
  VerifyParams p;
  p.order = order;
  const VerificationReport r = verify(id, p, ctx());
  Outcome o;
  o.require(r.passed(), id + ": " + r.detail);
  o.require(r.terms >= static_cast<long>(order), id + ": compared " + std::to_string(r.terms) + " terms");
  o.detail = o.ok ? std::to_string(r.terms) + " coefficients, abs_err " + r.abs_err : o.detail;
  return o;
}

Outcome against_dirichlet(long k, const identities::LValue& v, double tol) {
  const identities::LValue d = identities::l_dirichlet(k, ctx());
  const double e = rel(v.value, d.value);
  Outcome o;
  o.require(v.converged, "unconverged: " + v.message);
  o.require(e < tol, "rel_err " + sci(e));
  if (o.ok) o.detail = "k=" + std::to_string(k) + " rel_err " + sci(e) + ", " + std::to_string(v.nodes) + " nodes";
  return o;
}

Outcome quadrature_suite() {
  using namespace quad;
  Outcome o;
  const PrecCtx& c = ctx();
  // Gauss-Legendre: n points integrate degree 2n-1 exactly, not degree 2n.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int n = 1; n <= 12; ++n) {
    std::vector<long> cs(static_cast<std::size_t>(2 * n));
    for (auto& x : cs) x = coeff(rng);
    cs.back() = 1;
    const PlainIntegrand p = [&cs](const BigReal& x) {
      BigReal acc(x.prec());
      for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
    mpq_class exact = 0;  // over (-1, 1)
    for (std::size_t j = 0; j < cs.size(); j += 2) {
      mpq_class term(2 * cs[j], j + 1);
      term.canonicalize();
      exact += term;
    }
    const QuadResult r = gauss_legendre(p, R(-1), R(1), n, c);
    o.require(abs(r.value - BigReal(W(), exact)) <= c.tolerance(4) * max(R(1), abs(r.value)),
              "Gauss-Legendre n=" + std::to_string(n) + " not exact");
    const PlainIntegrand mono = [n](const BigReal& x) { return pow(x, 2 * n); };
    const QuadResult m = gauss_legendre(mono, R(-1), R(1), n, c);
    o.require(rel(m.value, R(2, 2 * n + 1)) > 1e-30, "Gauss-Legendre n=" + std::to_string(n) + " exact beyond degree");
  }
  struct Case {
    std::string name;
    Integrand f;
    BigReal a, b, exact;
  };
  const std::vector<Case> cases = {
      {"log x", [](const Abscissa& x) { return log(x.from_a); }, R(0), R(1), R(-1)},
      {"1/sqrt(1-x^2)", [](const Abscissa& x) { return 1L / sqrt(x.from_a * x.to_b); }, R(-1), R(1), c.pi()},
      {"sqrt x", [](const Abscissa& x) { return sqrt(x.x); }, R(0), R(1), R(2, 3)},
      {"x log x", [](const Abscissa& x) { return x.x * log(x.from_a); }, R(0), R(1), R(-1, 4)},
      {"exp", [](const Abscissa& x) { return exp(x.x); }, R(0), R(1), exp(R(1)) - 1L},
      {"1/(1+x^2)", [](const Abscissa& x) { return 1L / (1L + x.x * x.x); }, R(0), R(1), c.pi() / 4L},
      {"log(1-x)/x", [](const Abscissa& x) { return log(x.to_b) / x.x; }, R(0), R(1), -(c.pi() * c.pi()) / 6L},
  };
  double worst = 0;
  for (const auto& cs : cases) {
    for (int level : {3, 4, 6, 10}) {
      QuadOptions opts;
      opts.min_level = 3;
      opts.max_level = level;
      const QuadResult r = tanh_sinh(cs.f, cs.a, cs.b, c, opts);
      const BigReal actual = abs(r.value - cs.exact);
      const BigReal floor = c.tolerance(0) * max(R(1), abs(cs.exact));
      if (actual > floor) {
        const double ratio = (actual / r.err_est).to_double();
        worst = std::max(worst, ratio);
        o.require(ratio <= 4.0, cs.name + " level " + std::to_string(level) + " honesty " + sci(ratio));
      }
      if (level == 10) {
        o.require(r.converged, cs.name + " unconverged");
        o.require(actual <= c.tolerance(8) * max(R(1), abs(cs.exact)), cs.name + " error " + actual.to_string(3));
      }
    }
  }
  const QuadResult tri = integrate_triangle([](const TrianglePoint& p) { return log(p.gap); }, c);
  o.require(abs(tri.value + R(3, 4)) <= c.tolerance(8), "triangle log gap");
  if (o.ok) o.detail = "GL n=1..12, " + std::to_string(cases.size()) + " tanh-sinh cases, worst actual/estimate " + sci(worst);
  return o;
}

}  // namespace

int main() {
  std::printf("acceptance at %ld-bit target precision\n", kBits);

  criterion(1, "decomposition, 1000 coefficients exact", 10, [] { return exact_report("lemma21", 1000); });
  criterion(2, "1728 Delta = E4^3 - E6^2, 500 coefficients", 5, [] { return exact_report("ramanujan1728", 500); });
  criterion(3, "tau multiplicativity and Hecke, n <= 1000", 60, [] { return exact_report("tau_structure", 1000); });

  criterion(4, "log integral for L(12) vs Dirichlet, < 1e-15", 60,
            [] { return against_dirichlet(12, identities::l12_log_integral(ctx()), 1e-15); });

  for (long k : {13L, 14L, 15L})
    criterion(5, "closed 2-D form k=" + std::to_string(k) + " vs Dirichlet, < 1e-8", 15 * 60,
              [k] { return against_dirichlet(k, identities::corollary_l(k, ctx()), 1e-8); });

  for (long k : {12L, 13L, 14L, 15L})
    criterion(6, "general 2-D form k=" + std::to_string(k) + " vs Dirichlet, < 1e-8", 20 * 60,
              [k] { return against_dirichlet(k, identities::theorem_double(k, ctx()), 1e-8); });

  criterion(7, "critical values k=1..11 vs Mellin, < 1e-20", 60, [] {
    Outcome o;
    double worst = 0;
    for (long k = 1; k <= 11; ++k) {
      const identities::LValue c = identities::critical_l_integral(k, ctx());
      const identities::LValue m = identities::l_mellin(k, ctx());
      const double e = rel(c.value, m.value);
      worst = std::max(worst, e);
      o.require(c.converged && m.converged, "k=" + std::to_string(k) + " unconverged");
      o.require(e < 1e-20, "k=" + std::to_string(k) + " rel_err " + sci(e));
    }
    if (o.ok) o.detail = "worst rel_err " + sci(worst);
    return o;
  });

  criterion(8, "functional equation k=1..5, < 1e-20", 120, [] {
    Outcome o;
    double worst = 0;
    const auto lambda = [](long k) {
      return identities::l_mellin(k, ctx()).value * factorial(W(), static_cast<unsigned long>(k - 1)) /
             pow(ctx().pi() * 2L, k);
    };
    for (long k = 1; k <= 5; ++k) {
      const double e = rel(lambda(k), lambda(12 - k));
      worst = std::max(worst, e);
      o.require(e < 1e-20, "k=" + std::to_string(k) + " residual " + sci(e));
    }
    if (o.ok) o.detail = "worst residual " + sci(worst);
    return o;
  });

  criterion(9, "alpha polynomials and u-grid identities", 300, [] {
    using namespace special;
    Outcome o;
    struct Case {
      CombinationSpec spec;
      std::vector<mpq_class> expected;
    };
    const std::vector<Case> cases = {
        {CombinationSpec::P(8), {255, -480, 0, 480, -255}},
        {CombinationSpec::Q(8), {0, 30, 195, 30}},
        {CombinationSpec::P(10), {1023, -2574, 2640, -2640, 2574, -1023}},
        {CombinationSpec::Q(10), {0, mpq_class(-33, 2), -495, -495, mpq_class(-33, 2)}},
    };
    for (const auto& c : cases) {
      const PolynomialSearch s = find_alpha_polynomial(c.spec, c.spec.weight, ctx());
      o.require(s.polynomial && *s.polynomial == AlphaPolynomial(c.expected),
                c.spec.name + ": " + (s.polynomial ? s.polynomial->to_string() : s.message));
    }
    const AlphaPolynomial lam({0, 2, 251, 876, 251, 2});
    double worst = 0;
    for (long m = 1; m <= 10; ++m) {
      const BigReal u = R(3 * m, 10);
      const AlphaPair a = alpha_pair_from_u(u, ctx());
      const double e1 = rel(theta_quotient_product(u, ctx()), 1L / root(a.alpha, 8));
      const BigReal f = f_hyper(a.alpha, a.alpha_comp, ctx());
      const double e2 = rel(lambert_weight11(u, ctx()), lam.evaluate(a.alpha, a.alpha_comp) * pow(f, 12) / 32L);
      worst = std::max({worst, e1, e2});
      o.require(e1 < 1e-25, "theta quotient at u=" + u.to_string(3) + ": " + sci(e1));
      o.require(e2 < 1e-25, "weight-11 Lambert series at u=" + u.to_string(3) + ": " + sci(e2));
    }
    if (o.ok) o.detail = "4 polynomials exact; grid worst rel_err " + sci(worst);
    return o;
  });

  criterion(10, "quadrature property suite", 300, quadrature_suite);

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
