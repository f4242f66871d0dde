#include "quadrature_internal.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace rzeta::quad {

long tanh_sinh_cutoff_bits(mpfr_prec_t prec) { return 3 * static_cast<long>(prec); }

namespace {

// Largest t with 1 - tanh(pi/2 sinh t) >= 2^-cutoff.
double t_max_for(mpfr_prec_t prec) {
  const double cutoff = static_cast<double>(tanh_sinh_cutoff_bits(prec));
  return std::asinh((cutoff + 1.0) * std::log(2.0) / M_PI);
}

TanhSinhLevel build_level(mpfr_prec_t prec, int level) {
  TanhSinhLevel out;
  const double t_max = t_max_for(prec);
  const BigReal half_pi = BigReal::pi(prec) / 2L;
  const BigReal h = BigReal::pow2(prec, -level);
  // level 0: k = 0, 1, 2, ...; level l: k = 1, 3, 5, ...
  const long start = level == 0 ? 0 : 1;
  const long step = level == 0 ? 1 : 2;
  for (long k = start;; k += step) {
    const double t_d = std::ldexp(static_cast<double>(k), -level);
    if (t_d > t_max) break;
    const BigReal t = h * k;
    const BigReal y = half_pi * sinh(t) * 2L;  // pi sinh t
    BigReal c = 2L / (exp(y) + 1L);
    BigReal w = half_pi * cosh(t) * c * (2L - c);
    if (k == 0) out.has_center = true;
    out.comp.push_back(std::move(c));
    out.weight.push_back(std::move(w));
  }
  return out;
}

BigReal relative_floor(const BigReal& l1) { return l1 * BigReal::pow2(l1.prec(), -static_cast<long>(l1.prec()) + 4); }

}  // namespace

const TanhSinhLevel& tanh_sinh_level(mpfr_prec_t prec, int level) {
  static std::mutex mu;
  static std::map<std::pair<mpfr_prec_t, int>, std::unique_ptr<TanhSinhLevel>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({prec, level});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<TanhSinhLevel>(build_level(prec, level));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(prec, level), std::move(built));
  return *it->second;
}

namespace detail {

QuadResult tanh_sinh_core(const NodeFunction& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                          const QuadOptions& opts) {
  const mpfr_prec_t prec = ctx.working_bits();
  if (a.prec() != prec || b.prec() != prec) throw PrecisionMismatch("tanh_sinh: endpoint precision differs from context");
  if (!(a < b)) throw std::invalid_argument("tanh_sinh: need a < b");
  const BigReal tol = opts.rel_tol > 0 ? BigReal(prec, mpq_class(opts.rel_tol)) : ctx.tolerance(8);
  const BigReal half = (b - a) / 2L;

  BigReal raw_sum(prec);   // sum of w (f+ + f-) over all levels so far
  BigReal raw_l1(prec);    // same with |f|
  BigReal raw_inner(prec); // same with inner error estimates
  std::optional<BigReal> previous;
  QuadResult result{BigReal(prec), BigReal(prec), 0, 0, false, {}};
  long warnings = 0;
  std::string first_warning;

  for (int level = 0; level <= opts.max_level; ++level) {
    const TanhSinhLevel& tbl = tanh_sinh_level(prec, level);
    std::vector<Abscissa> nodes;
    std::vector<const BigReal*> weights;
    nodes.reserve(2 * tbl.comp.size());
    for (std::size_t i = 0; i < tbl.comp.size(); ++i) {
      const bool center = tbl.has_center && i == 0;
      const BigReal& c = tbl.comp[i];
      if (center) {
        nodes.push_back(Abscissa{a + half, half, half});
        weights.push_back(&tbl.weight[i]);
        continue;
      }
      BigReal near = half * c;
      BigReal far = half * (2L - c);
      // right of center: close to b
      nodes.push_back(Abscissa{b - near, far, near});
      weights.push_back(&tbl.weight[i]);
      // left of center: close to a
      nodes.push_back(Abscissa{a + near, std::move(near), std::move(far)});
      weights.push_back(&tbl.weight[i]);
    }
    const auto values = opts.parallel ? evaluate_omp(f, nodes) : evaluate_serial(f, nodes);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const BigReal& w = *weights[i];
      raw_sum += w * values[i].value;
      raw_l1 += w * abs(values[i].value);
      if (values[i].err) raw_inner += w * *values[i].err;
      result.nodes += values[i].nodes;
      if (!values[i].warning.empty()) {
        if (warnings == 0) first_warning = values[i].warning;
        ++warnings;
      }
    }
    const BigReal scale = half * BigReal::pow2(prec, -level);
    BigReal estimate = raw_sum * scale;
    const BigReal inner = raw_inner * scale;
    const BigReal floor = relative_floor(raw_l1 * scale) + inner;
    result.level = level;
    if (previous) {
      const BigReal diff = abs(estimate - *previous);
      result.err_est = diff + floor;
      const BigReal bound = tol * max(BigReal(prec, 1L), abs(estimate));
      // Nested rules that did not converge still count, through their
      // weighted error estimates, against the same bound.
      if (level >= opts.min_level && diff <= bound && inner <= bound) {
        result.value = std::move(estimate);
        result.converged = true;
        if (warnings > 0)
          result.message = std::to_string(warnings) + " inner integral(s) unconverged, weighted error " +
                           inner.to_string(3) + " included; first: " + first_warning;
        return result;
      }
    }
    previous = estimate;
    result.value = std::move(estimate);
  }
  result.converged = false;
  result.message = "tanh-sinh did not converge by level " + std::to_string(opts.max_level) +
                   "; last difference " + result.err_est.to_string(6);
  if (warnings > 0) result.message += "; " + std::to_string(warnings) + " inner integral(s) unconverged, first: " + first_warning;
  return result;
}

}  // namespace detail

QuadResult tanh_sinh(const Integrand& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                     const QuadOptions& opts) {
  return detail::tanh_sinh_core([&f](const Abscissa& x) { return detail::NodeValue{f(x), std::nullopt, 1, {}}; },
                                a, b, ctx, opts);
}

QuadResult tanh_sinh(const PlainIntegrand& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                     const QuadOptions& opts) {
  return tanh_sinh(Integrand([&f](const Abscissa& x) { return f(x.x); }), a, b, ctx, opts);
}

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<BigReal, BigReal> legendre(const BigReal& x, int n) {
  BigReal p0(x.prec(), 1L), p1 = x;
  for (int j = 1; j < n; ++j) {
    BigReal p2 = (x * p1 * (2L * j + 1) - p0 * static_cast<long>(j)) / static_cast<long>(j + 1);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return {std::move(p1), std::move(p0)};
}

BigReal legendre_derivative(const BigReal& x, int n) {
  auto [pn, pn1] = legendre(x, n);
  return (x * pn - pn1) * static_cast<long>(n) / (x * x - 1L);
}

}  // namespace

GaussRule gauss_legendre_rule(int n, mpfr_prec_t prec) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, mpfr_prec_t>, GaussRule> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, prec});
    if (it != cache.end()) return it->second;
  }
  GaussRule rule;
  rule.nodes.assign(static_cast<std::size_t>(n), BigReal(prec));
  rule.weights.assign(static_cast<std::size_t>(n), BigReal(prec));
  const BigReal eps = BigReal::pow2(prec, -static_cast<long>(prec) + 3);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    BigReal x(prec);
    mpfr_set_d(x.raw(), std::cos(M_PI * (i + 0.75) / (n + 0.5)), MPFR_RNDN);
    BigReal dp(prec);
    for (int iter = 0; iter < 200; ++iter) {
      dp = legendre_derivative(x, n);
      const BigReal dx = legendre(x, n).first / dp;
      x -= dx;
      if (iter > 0 && abs(dx) <= eps) break;
    }
    dp = legendre_derivative(x, n);
    const BigReal w = 2L / ((1L - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = BigReal(prec);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(n, prec), rule);
  return rule;
}

namespace {
BigReal apply_rule(const GaussRule& rule, const PlainIntegrand& f, const BigReal& a, const BigReal& b, BigReal& l1) {
  const BigReal half = (b - a) / 2L, mid = (a + b) / 2L;
  BigReal sum(a.prec());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const BigReal fx = f(mid + half * rule.nodes[i]);
    if (!fx.is_finite()) throw EvaluationError("integrand not finite in gauss_legendre");
    sum += rule.weights[i] * fx;
    l1 += rule.weights[i] * abs(fx);
  }
  l1 *= abs(half);
  return sum * half;
}
}  // namespace

QuadResult gauss_legendre(const PlainIntegrand& f, const BigReal& a, const BigReal& b, int n, const PrecCtx& ctx) {
  const mpfr_prec_t prec = ctx.working_bits();
  BigReal l1(prec), l1_fine(prec);
  BigReal coarse = apply_rule(gauss_legendre_rule(n, prec), f, a, b, l1);
  const BigReal fine = apply_rule(gauss_legendre_rule(2 * n, prec), f, a, b, l1_fine);
  BigReal err = abs(fine - coarse) + relative_floor(l1);
  QuadResult r{std::move(coarse), std::move(err), 3L * n, 0, false, {}};
  r.converged = r.err_est <= ctx.tolerance(8) * max(BigReal(prec, 1L), abs(r.value));
  if (!r.converged) r.message = "2n-point rule differs by " + r.err_est.to_string(6);
  return r;
}

QuadResult integrate_1_inf(const PlainIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts) {
  const mpfr_prec_t prec = ctx.working_bits();
  // u = 1/(1-s); du = ds/(1-s)^2
  const Integrand g = [&f](const Abscissa& s) {
    const BigReal u = 1L / s.to_b;
    return f(u) * u * u;
  };
  return tanh_sinh(g, BigReal(prec), BigReal(prec, 1L), ctx, opts);
}

QuadResult integrate_0_inf(const PlainIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts) {
  const mpfr_prec_t prec = ctx.working_bits();
  QuadResult head = tanh_sinh(f, BigReal(prec), BigReal(prec, 1L), ctx, opts);
  QuadResult tail = integrate_1_inf(f, ctx, opts);
  QuadResult r{head.value + tail.value, head.err_est + tail.err_est, head.nodes + tail.nodes,
               std::max(head.level, tail.level), head.converged && tail.converged, {}};
  if (!head.converged) r.message = "(0,1]: " + head.message;
  if (!tail.converged) r.message += (r.message.empty() ? "" : "; ") + std::string("[1,inf): ") + tail.message;
  return r;
}

QuadResult integrate_triangle(const TriangleIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts) {
  const mpfr_prec_t prec = ctx.working_bits();
  QuadOptions inner = opts;
  inner.parallel = false;
  if (opts.inner_rel_tol > 0) inner.rel_tol = opts.inner_rel_tol;
  if (opts.inner_max_level > 0) inner.max_level = opts.inner_max_level;

  const detail::NodeFunction outer = [&](const Abscissa& alpha_node) {
    const BigReal& alpha = alpha_node.from_a;
    const BigReal& alpha_comp = alpha_node.to_b;
    const Integrand g = [&](const Abscissa& beta_node) {
      return f(TrianglePoint{alpha, alpha_comp, beta_node.from_a, alpha_comp + beta_node.to_b, beta_node.to_b});
    };
    QuadResult r = tanh_sinh(g, BigReal(prec), alpha, ctx, inner);
    detail::NodeValue v{std::move(r.value), std::move(r.err_est), r.nodes, {}};
    if (!r.converged) v.warning = "inner integral unconverged at alpha = " + alpha.to_string(20) + " (1 - alpha = " +
                                   alpha_comp.to_string(6) + "): " + r.message;
    return v;
  };
  return detail::tanh_sinh_core(outer, BigReal(prec), BigReal(prec, 1L), ctx, opts);
}

}  // namespace rzeta::quad
