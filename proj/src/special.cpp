#include "rzeta/special.hpp"

#include "rzeta/qseries.hpp"

#include <cmath>

namespace rzeta::special {

namespace {

void require_prec(const BigReal& x, const PrecCtx& ctx, const char* what) {
  if (x.prec() != ctx.working_bits())
    throw PrecisionMismatch(std::string(what) + ": argument precision " + std::to_string(x.prec()) +
                            " does not match context " + std::to_string(ctx.working_bits()));
}

void require_unit_interval(const BigReal& alpha, const BigReal& comp, const char* what) {
  if (!(alpha > 0L) || !(comp > 0L)) throw DomainError(std::string(what) + ": alpha must lie in (0, 1)");
}

void require_positive(const BigReal& u, const char* what) {
  if (!(u > 0L)) throw DomainError(std::string(what) + ": u must be positive");
}

// log2|x| for finite nonzero x, safe far outside the double range.
double log2_abs(const BigReal& x) {
  if (x.is_zero()) return -HUGE_VAL;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// log2 of sum_{m > n} m^a x^m / denom, via the geometric majorant with ratio
// ((n+2)/(n+1))^a x. Returns +inf when the majorant does not yet apply.
double power_tail_log2(double a, long n, double log2_x, double log2_denom) {
  const double m = static_cast<double>(n + 1);
  const double log2_ratio = a * std::log2((m + 1.0) / m) + log2_x;
  if (log2_ratio >= -1e-12) return HUGE_VAL;
  const double ratio = std::exp2(log2_ratio);
  return a * std::log2(m) + m * log2_x - log2_denom - std::log2(1.0 - ratio);
}

BigReal nome(const BigReal& u, long scale_num, long scale_den) {
  // exp(-2 pi u * scale_num / scale_den)
  BigReal arg = BigReal::pi(u.prec()) * u;
  arg *= -2L * scale_num;
  arg /= scale_den;
  return exp(std::move(arg));
}

}  // namespace

BigReal agm(BigReal a, BigReal b) {
  const mpfr_prec_t prec = a.prec();
  const BigReal eps = BigReal::pow2(prec, -static_cast<long>(prec) + 2);
  for (int i = 0; i < 10000; ++i) {
    if (abs(a - b) <= eps * a) break;
    BigReal next_a = (a + b) / 2L;
    b = sqrt(a * b);
    a = std::move(next_a);
  }
  return (a + b) / 2L;
}

BigReal f_hyper_series(const BigReal& alpha, const PrecCtx& ctx) {
  require_prec(alpha, ctx, "f_hyper_series");
  if (!(alpha >= 0L) || !(alpha < 1L)) throw DomainError("f_hyper_series: alpha must lie in [0, 1)");
  const mpfr_prec_t prec = ctx.working_bits();
  const BigReal eps = BigReal::pow2(prec, ctx.tail_log2());
  const BigReal tail_factor = alpha / (1L - alpha);  // term ratio < alpha
  BigReal sum(prec, 1L), term(prec, 1L);
  for (long n = 0;; ++n) {
    term *= alpha;
    term *= (2 * n + 1) * (2 * n + 1);
    term /= 4 * (n + 1) * (n + 1);
    sum += term;
    if (term * tail_factor <= eps * sum) break;
  }
  return sum;
}

BigReal f_hyper_agm(const BigReal& alpha_comp, const PrecCtx& ctx) {
  require_prec(alpha_comp, ctx, "f_hyper_agm");
  if (!(alpha_comp > 0L)) throw DomainError("f_hyper_agm: 1 - alpha must be positive");
  return 1L / agm(ctx.one(), sqrt(alpha_comp));
}

BigReal f_hyper(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx) {
  require_prec(alpha, ctx, "f_hyper");
  require_unit_interval(alpha, alpha_comp, "f_hyper");
  const BigReal half(ctx.working_bits(), mpq_class(1, 2));
  return alpha <= half ? f_hyper_series(alpha, ctx) : f_hyper_agm(alpha_comp, ctx);
}

BigReal f_hyper(const BigReal& alpha, const PrecCtx& ctx) { return f_hyper(alpha, 1L - alpha, ctx); }

quad::QuadResult f_elliptic_quad(const BigReal& alpha, const PrecCtx& ctx) {
  require_prec(alpha, ctx, "f_elliptic_quad");
  require_unit_interval(alpha, 1L - alpha, "f_elliptic_quad");
  const quad::Integrand g = [&alpha](const quad::Abscissa& x) {
    // (1 - x^2) = (1 - x)(1 + x) with 1 - x taken from the abscissa.
    return 1L / sqrt(x.to_b * (x.x + 1L) * (1L - alpha * x.x * x.x));
  };
  quad::QuadResult r = quad::tanh_sinh(g, ctx.zero(), ctx.one(), ctx);
  const BigReal two_over_pi = 2L / ctx.pi();
  r.value *= two_over_pi;
  r.err_est *= two_over_pi;
  return r;
}

AlphaPoint alpha_point(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx) {
  require_prec(alpha, ctx, "alpha_point");
  require_prec(alpha_comp, ctx, "alpha_point");
  require_unit_interval(alpha, alpha_comp, "alpha_point");
  BigReal fa = f_hyper(alpha, alpha_comp, ctx);
  BigReal fc = f_hyper(alpha_comp, alpha, ctx);
  BigReal u = fc / (fa * 2L);
  BigReal du = -1L / (ctx.pi() * 2L * alpha * alpha_comp * fa * fa);
  return AlphaPoint{alpha, alpha_comp, std::move(fa), std::move(fc), std::move(u), std::move(du)};
}

AlphaPoint alpha_point(const BigReal& alpha, const PrecCtx& ctx) { return alpha_point(alpha, 1L - alpha, ctx); }

BigReal u_from_alpha(const BigReal& alpha, const PrecCtx& ctx) { return alpha_point(alpha, ctx).u; }

ThetaTriple theta_triple(const BigReal& u, const PrecCtx& ctx) {
  require_prec(u, ctx, "theta_triple");
  require_positive(u, "theta_triple");
  const mpfr_prec_t prec = ctx.working_bits();
  const BigReal q = nome(u, 1, 1);
  const BigReal eps = BigReal::pow2(prec, ctx.tail_log2());
  const BigReal tail_den = 1L - q;
  // theta3, theta4: q^{n^2}; theta2 = 2 q^{1/4} sum_{n>=0} q^{n(n+1)}.
  BigReal s3(prec), s4(prec);
  {
    BigReal term = q;             // q^{n^2}
    BigReal step = q * q * q;     // q^{2n+1} for the next n
    const BigReal q2 = q * q;
    for (long n = 1;; ++n) {
      s3 += term;
      if (n % 2 == 1) s4 -= term;
      else s4 += term;
      if (term <= eps * tail_den) break;
      term *= step;
      step *= q2;
    }
  }
  BigReal s2(prec, 1L);
  {
    const BigReal q2 = q * q;
    BigReal term = q2;       // q^{n(n+1)} at n = 1
    BigReal step = q2 * q2;  // q^{2(n+1)}
    for (;;) {
      s2 += term;
      if (term <= eps * tail_den) break;
      term *= step;
      step *= q2;
    }
  }
  BigReal quarter = root(q, 4);
  return ThetaTriple{s2 * quarter * 2L, s3 * 2L + 1L, s4 * 2L + 1L};
}

AlphaPair alpha_pair_from_u(const BigReal& u, const PrecCtx& ctx) {
  require_prec(u, ctx, "alpha_from_u");
  require_positive(u, "alpha_from_u");
  const BigReal half(ctx.working_bits(), mpq_class(1, 2));
  if (u >= half) {
    const ThetaTriple t = theta_triple(u, ctx);
    return AlphaPair{pow(t.theta2 / t.theta3, 4), pow(t.theta4 / t.theta3, 4)};
  }
  // alpha(u) = 1 - alpha(1/(4u))
  const ThetaTriple t = theta_triple(1L / (u * 4L), ctx);
  return AlphaPair{pow(t.theta4 / t.theta3, 4), pow(t.theta2 / t.theta3, 4)};
}

BigReal alpha_from_u(const BigReal& u, const PrecCtx& ctx) { return alpha_pair_from_u(u, ctx).alpha; }

BigReal delta_at(const BigReal& u, const PrecCtx& ctx) {
  require_prec(u, ctx, "delta_at");
  require_positive(u, "delta_at");
  const BigReal half(ctx.working_bits(), mpq_class(1, 2));
  if (u < half) {
    // Delta(i/u) = u^12 Delta(iu)
    return delta_at(1L / u, ctx) / pow(u, 12);
  }
  const mpfr_prec_t prec = ctx.working_bits();
  const BigReal q = nome(u, 1, 1);
  if (q.is_zero()) return q;
  const double log2_q = log2_abs(q);
  // |tau(n)| <= d(n) n^{11/2} <= 2 n^6; the series is dominated by its first
  // term q, so the tail is measured against q.
  const double target = static_cast<double>(ctx.tail_log2()) + log2_q;
  long needed = 1;
  while (power_tail_log2(6.0, needed, log2_q, -1.0) > target) ++needed;
  const auto table = qseries::shared_tau_table(static_cast<std::size_t>(needed));
  BigReal sum(prec), qn(prec, 1L);
  for (long n = 1; n <= needed; ++n) {
    qn *= q;
    sum += BigReal(prec, (*table)[static_cast<std::size_t>(n)]) * qn;
  }
  return sum;
}

BigReal delta_from_alpha(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx) {
  const BigReal f = f_hyper(alpha, alpha_comp, ctx);
  return alpha * pow(alpha_comp, 4) * pow(f, 12) / 16L;
}

BigReal delta_from_alpha(const BigReal& alpha, const PrecCtx& ctx) { return delta_from_alpha(alpha, 1L - alpha, ctx); }

namespace {

// 1 + c sum_{n>=1} n^{k-1} x^n / (1 - x^n)
BigReal lambert_eisenstein(long k, const BigReal& x, const PrecCtx& ctx) {
  const mpfr_prec_t prec = ctx.working_bits();
  const mpq_class c = qseries::eisenstein_constant(k);
  const double log2_x = log2_abs(x);
  const BigReal one_minus_x = 1L - x;
  const double log2_den = log2_abs(one_minus_x);
  const double log2_c = std::log2(std::fabs(c.get_d()));
  BigReal sum(prec), xn(prec, 1L), power(prec);
  for (long n = 1;; ++n) {
    xn *= x;
    mpfr_set_si(power.raw(), n, MPFR_RNDN);
    mpfr_pow_ui(power.raw(), power.raw(), static_cast<unsigned long>(k - 1), MPFR_RNDN);
    sum += power * xn / (1L - xn);
    const double tail = power_tail_log2(static_cast<double>(k - 1), n, log2_x, log2_den) + log2_c;
    const double scale = std::max(0.0, log2_abs(sum) + log2_c);
    if (tail < static_cast<double>(ctx.tail_log2()) + scale) break;
  }
  sum *= c;
  return sum + 1L;
}

}  // namespace

BigReal eisenstein_at(long k, int j, const BigReal& u, const PrecCtx& ctx, bool allow_alpha_route) {
  require_prec(u, ctx, "eisenstein_at");
  require_positive(u, "eisenstein_at");
  if (k < 2 || k % 2 != 0) throw DomainError("eisenstein_at: weight must be even");
  if (j != 1 && j != 2 && j != 4) throw DomainError("eisenstein_at: scale must be 1, 2 or 4");
  const BigReal arg = u * static_cast<long>(j);
  if (arg.to_double() < kEisensteinMinArgument) {
    if (!allow_alpha_route)
      throw DomainError("eisenstein_at: j*u below " + std::to_string(kEisensteinMinArgument) +
                        "; use the alpha-polynomial route");
    if (k == 2) throw DomainError("eisenstein_at: E_2 has no alpha-polynomial form");
    const AlphaPolynomial poly = alpha_polynomial_for(CombinationSpec::eisenstein(k, j), ctx);
    const AlphaPair a = alpha_pair_from_u(u, ctx);
    return poly.evaluate(a.alpha, a.alpha_comp) * pow(f_hyper(a.alpha, a.alpha_comp, ctx), k);
  }
  return lambert_eisenstein(k, nome(u, j, 1), ctx);
}

BigReal lambert_weight11(const BigReal& u, const PrecCtx& ctx) {
  require_prec(u, ctx, "lambert_weight11");
  require_positive(u, "lambert_weight11");
  const mpfr_prec_t prec = ctx.working_bits();
  const BigReal x = nome(u, 1, 1);
  if (x.is_zero()) return x;
  const BigReal x2 = x * x;
  const double log2_x = log2_abs(x);
  const double log2_den = log2_abs(1L - x2);
  BigReal sum(prec), xn(prec, 1L), x2n(prec, 1L), power(prec);
  for (long n = 1;; ++n) {
    xn *= x;
    x2n *= x2;
    mpfr_set_si(power.raw(), n, MPFR_RNDN);
    mpfr_pow_ui(power.raw(), power.raw(), 11, MPFR_RNDN);
    sum += power * xn / (1L - x2n);
    if (power_tail_log2(11.0, n, log2_x, log2_den) < static_cast<double>(ctx.tail_log2()) + log2_abs(sum)) break;
  }
  return sum;
}

BigReal theta_quotient_product(const BigReal& u, const PrecCtx& ctx) {
  require_prec(u, ctx, "theta_quotient_product");
  require_positive(u, "theta_quotient_product");
  const mpfr_prec_t prec = ctx.working_bits();
  const BigReal p = nome(1L / u, 1, 4);  // exp(-2 pi / (4u))
  const BigReal p2 = p * p;
  const double log2_p = log2_abs(p);
  const double log2_den = log2_abs(1L - p2);
  BigReal prod(prec, 1L), pm = p;
  for (long m = 1;; m += 2) {
    prod *= (1L + pm) / (1L - pm);
    pm *= p2;
    // log of the remaining factors <= 2 p^{m+2} / ((1 - p^{m+2})(1 - p^2))
    const double log2_pm = static_cast<double>(m + 2) * log2_p;
    const double tail = 1.0 + log2_pm - log2_den - std::log2(1.0 - std::exp2(log2_pm));
    if (tail < static_cast<double>(ctx.tail_log2())) break;
  }
  return prod;
}

CombinationSpec CombinationSpec::eisenstein(long k, int scale) {
  return CombinationSpec{"E" + std::to_string(k) + "(" + std::to_string(scale) + "iu)", k, {{scale, 1}}};
}

CombinationSpec CombinationSpec::P(long k) {
  const mpz_class two_k = mpz_class(1) << static_cast<mp_bitcnt_t>(k);
  return CombinationSpec{"P" + std::to_string(k), k, {{1, 1}, {2, mpq_class(-(2 + two_k))}, {4, mpq_class(2 * two_k)}}};
}

CombinationSpec CombinationSpec::Q(long k) { return CombinationSpec{"Q" + std::to_string(k), k, {{1, 1}, {2, -1}}}; }

CombinationSpec CombinationSpec::R(long k) {
  const mpz_class two_k = mpz_class(1) << static_cast<mp_bitcnt_t>(k);
  return CombinationSpec{"R" + std::to_string(k), k, {{2, 1}, {4, mpq_class(-two_k)}}};
}

CombinationSpec CombinationSpec::S(long k) {
  const mpz_class two_k1 = mpz_class(1) << static_cast<mp_bitcnt_t>(k - 1);
  return CombinationSpec{"S" + std::to_string(k), k, {{1, 1}, {2, mpq_class(-(1 + two_k1))}, {4, mpq_class(two_k1)}}};
}

BigReal combination_at(const CombinationSpec& spec, const BigReal& u, const PrecCtx& ctx) {
  BigReal sum = ctx.zero();
  for (const auto& term : spec.terms) {
    BigReal e = eisenstein_at(spec.weight, term.scale, u, ctx);
    e *= term.coeff;
    sum += e;
  }
  return sum;
}

}  // namespace rzeta::special
