#include "rzeta/identities.hpp"

#include "rzeta/special.hpp"

#include <cmath>
#include <memory>
#include <optional>

namespace rzeta::identities {

using quad::QuadOptions;
using quad::QuadResult;
using quad::TrianglePoint;
using special::AlphaPolynomial;
using special::f_hyper;

namespace {

mpq_class pow2q(long e) {
  mpq_class r = 1;
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

mpq_class factorial_q(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return mpq_class(r);
}

BigReal to_real(const mpq_class& q, const PrecCtx& ctx) { return BigReal(ctx.working_bits(), q); }

LValue from_quad(QuadResult r, BigReal scale) {
  LValue out{r.value * scale, r.err_est * abs(scale), r.nodes, 0, r.converged, std::move(r.message)};
  return out;
}

BigReal two_pi_pow(long k, const PrecCtx& ctx) {
  const BigReal two_pi = ctx.pi() * 2L;
  return k >= 0 ? pow(two_pi, k) : 1L / pow(two_pi, -k);
}

}  // namespace

mpq_class odd_part_factor(long k) { return 1 + 24 * pow2q(-k) + pow2q(11 - 2 * k); }

mpq_class CorollaryConstants::q(long k) {
  switch (k) {
    case 13: return q13();
    case 14: return q14();
    case 15: return q15();
    default: throw DomainError("corollary constants exist for k = 13, 14, 15 only");
  }
}

LValue l_dirichlet(long k, const PrecCtx& ctx, const DirichletOptions& opts) {
  if (k < 12) throw DomainError("l_dirichlet: needs k >= 12 (got " + std::to_string(k) + "); use l_mellin");
  const mpfr_prec_t prec = ctx.working_bits();
  // |tau(n)| <= d(n) n^(11/2) <= 2 n^6, so sum_{n>N} |tau(n)| n^-k <= 2 N^(7-k) / (k-7).
  const double log2_target = -static_cast<double>(ctx.target_bits);
  const auto tail_log2 = [k](double n) { return 1.0 + static_cast<double>(7 - k) * std::log2(n) - std::log2(k - 7.0); };
  std::size_t n_max = opts.max_terms;
  if (opts.table) n_max = std::min(n_max, opts.table->limit());
  {
    std::size_t lo = 1, hi = n_max;
    if (tail_log2(static_cast<double>(hi)) <= log2_target) {
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (tail_log2(static_cast<double>(mid)) <= log2_target) hi = mid;
        else lo = mid + 1;
      }
      n_max = hi;
    }
  }
  std::shared_ptr<const qseries::TauTable> shared;
  const qseries::TauTable* table = opts.table;
  if (!table) {
    shared = qseries::shared_tau_table(std::max<std::size_t>(n_max, 2));
    table = shared.get();
  }
  // Sum from the smallest terms up.
  BigReal sum(prec);
  for (std::size_t n = n_max; n >= 1; --n) {
    if (opts.odd_only && n % 2 == 0) continue;
    const mpz_class& t = (*table)[n];
    if (t == 0) continue;
    BigReal term(prec, t);
    BigReal nk(prec, static_cast<long>(n));
    mpfr_pow_ui(nk.raw(), nk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    sum += term / nk;
  }
  LValue out{sum, BigReal(prec), 0, static_cast<long>(n_max), true, {}};
  mpfr_set_d(out.err_est.raw(), std::exp2(tail_log2(static_cast<double>(n_max))), MPFR_RNDU);
  out.message = "tail bound " + out.err_est.to_string(6) + " after " + std::to_string(n_max) + " terms";
  return out;
}

LValue l_mellin(long k, const PrecCtx& ctx, const QuadOptions& opts) {
  if (k < 1) throw DomainError("l_mellin: needs k >= 1");
  const quad::PlainIntegrand f = [k, &ctx](const BigReal& u) {
    const BigReal d = special::delta_at(u, ctx);
    if (d.is_zero()) return d;
    BigReal powers = pow(u, k - 1);
    powers += 11 - k >= 0 ? pow(u, 11 - k) : 1L / pow(u, k - 11);
    return powers * d;
  };
  QuadResult r = quad::integrate_1_inf(f, ctx, opts);
  return from_quad(std::move(r), two_pi_pow(k, ctx) / to_real(factorial_q(k - 1), ctx));
}

LValue critical_l_integral(long k, const PrecCtx& ctx, const QuadOptions& opts) {
  if (k < 1 || k > 11) throw DomainError("critical_l_integral: needs 1 <= k <= 11");
  const quad::Integrand f = [k, &ctx](const quad::Abscissa& x) {
    const BigReal& alpha = x.from_a;
    const BigReal& comp = x.to_b;
    BigReal v = pow(comp, 3);
    if (k < 11) v *= pow(f_hyper(alpha, comp, ctx), 11 - k);
    if (k > 1) v *= pow(f_hyper(comp, alpha, ctx), k - 1);
    return v;
  };
  QuadResult r = quad::tanh_sinh(f, ctx.zero(), ctx.one(), ctx, opts);
  BigReal scale = pow(ctx.pi(), k - 1) / to_real(16 * factorial_q(k - 1), ctx);
  return from_quad(std::move(r), std::move(scale));
}

LValue l12_log_integral(const PrecCtx& ctx, const QuadOptions& opts) {
  const AlphaPolynomial poly({2, 251, 876, 251, 2});
  const quad::Integrand f = [&ctx, &poly](const quad::Abscissa& x) {
    const BigReal& alpha = x.from_a;
    const BigReal& comp = x.to_b;
    // log(alpha) / (1 - alpha), with log(alpha) = log1p(-comp) near 1
    BigReal log_alpha(alpha.prec());
    const BigReal half(alpha.prec(), mpq_class(1, 2));
    if (alpha > half) mpfr_log1p(log_alpha.raw(), (-comp).raw(), MPFR_RNDN);
    else log_alpha = log(alpha);
    const BigReal ff = f_hyper(alpha, comp, ctx) * f_hyper(comp, alpha, ctx);
    return pow(ff, 5) * poly.evaluate(alpha, comp) * log_alpha / comp;
  };
  QuadResult r = quad::tanh_sinh(f, ctx.zero(), ctx.one(), ctx, opts);
  BigReal scale = pow(ctx.pi(), 11) * to_real(mpq_class(-128) / (8241 * factorial_q(11)), ctx);
  return from_quad(std::move(r), std::move(scale));
}

QuadOptions default_2d_options() {
  QuadOptions o;
  o.rel_tol = 1e-11;
  o.inner_rel_tol = 1e-12;
  o.max_level = 8;
  o.min_level = 3;
  return o;
}

namespace {

// Values that depend on alpha only, computed once per outer node. The cache
// is per thread: inner integrals run serially inside one outer node.
struct OuterValues {
  BigReal alpha;
  BigReal f_alpha;
  BigReal f_comp;
  BigReal factor;  // alpha-only part of the integrand
};

template <class Make>
const OuterValues& outer_values(const void* owner, const TrianglePoint& p, const Make& make) {
  thread_local const void* cached_owner = nullptr;
  thread_local std::optional<OuterValues> cached;
  if (cached_owner != owner || !cached || cached->alpha.prec() != p.alpha.prec() || !(cached->alpha == p.alpha)) {
    cached.emplace(make(p));
    cached_owner = owner;
  }
  return *cached;
}

struct BetaValues {
  BigReal f_beta;
  BigReal f_comp;
};

BetaValues beta_values(const TrianglePoint& p, const PrecCtx& ctx) {
  return BetaValues{f_hyper(p.beta, p.beta_comp, ctx), f_hyper(p.beta_comp, p.beta, ctx)};
}

// F(alpha) F(1-beta) - F(beta) F(1-alpha), positive for beta < alpha.
BigReal bracket(const OuterValues& a, const BetaValues& b) { return a.f_alpha * b.f_comp - b.f_beta * a.f_comp; }

struct Shared {
  long k;
  PrecCtx ctx;
  AlphaPolynomial pa;
  AlphaPolynomial pb;
};

}  // namespace

quad::TriangleIntegrand corollary_integrand(long k, const PrecCtx& ctx) {
  std::vector<mpq_class> a, b;
  switch (k) {
    // (1+a)(17-32a+17a^2) and 2+13b+2b^2
    case 13: a = {17, -15, -15, 17}; b = {2, 13, 2}; break;
    // (2-a)(5461-10922a+5973a^2-512a^3+a^4) and 2-b
    case 14: a = {10922, -27305, 22868, -6997, 514, -1}; b = {2, -1}; break;
    // 31-47a+33a^2-47a^3+31a^4 and (1+b)(1+29b+b^2)
    case 15: a = {31, -47, 33, -47, 31}; b = {1, 30, 30, 1}; break;
    default: throw DomainError("corollary_l: needs k in {13, 14, 15}");
  }
  auto shared = std::make_shared<const Shared>(Shared{k, ctx, AlphaPolynomial(a), AlphaPolynomial(b)});
  return [shared](const TrianglePoint& p) {
    const Shared& s = *shared;
    const OuterValues& o = outer_values(shared.get(), p, [&s](const TrianglePoint& q) {
      BigReal fa = f_hyper(q.alpha, q.alpha_comp, s.ctx);
      BigReal fc = f_hyper(q.alpha_comp, q.alpha, s.ctx);
      BigReal factor = s.pa.evaluate(q.alpha, q.alpha_comp) / q.alpha;
      factor *= s.k == 14 ? pow(fa * fc, 5) : pow(fa, 5);
      return OuterValues{q.alpha, std::move(fa), std::move(fc), std::move(factor)};
    });
    const BetaValues bv = beta_values(p, s.ctx);
    BigReal v = o.factor * pow(bracket(o, bv), s.k - 12);
    v *= s.pb.evaluate(p.beta, p.beta_comp) / p.beta_comp;
    if (s.k != 14) v *= pow(bv.f_beta, 5);
    return v;
  };
}

LValue corollary_l(long k, const PrecCtx& ctx, const QuadOptions& opts) {
  const quad::TriangleIntegrand f = corollary_integrand(k, ctx);
  QuadResult r = quad::integrate_triangle(f, ctx, opts);
  BigReal scale = pow(ctx.pi(), 2 * k - 13) / to_real(CorollaryConstants::q(k), ctx);
  return from_quad(std::move(r), std::move(scale));
}

namespace {
long g_max_theorem_k = 20;
}

long max_theorem_k() { return g_max_theorem_k; }
void set_max_theorem_k(long k) {
  if (k < 12) throw std::invalid_argument("max_theorem_k must be >= 12");
  g_max_theorem_k = k;
}

namespace {
void check_theorem_k(long k) {
  if (k < 12 || k > max_theorem_k())
    throw DomainError("theorem_double: needs 12 <= k <= " + std::to_string(max_theorem_k()));
}
}  // namespace

mpq_class theorem_prefactor(long k) {
  check_theorem_k(k);
  const mpq_class denom = factorial_q(k - 1) * factorial_q(k - 12) * 8 * odd_part_factor(k) * 4 * pow2q(k - 12);
  if (k % 2 != 0) {
    const mpq_class z = qseries::zeta_nonpositive(6 - k);
    const long sign = ((k - 1) / 2) % 2 == 0 ? 1 : -1;
    return sign * pow2q(k - 7) * z * z / denom;
  }
  const long sign = (k / 2) % 2 == 0 ? -1 : 1;  // -(-1)^(k/2)
  return sign * pow2q(k - 1) * qseries::zeta_nonpositive(1 - k) * qseries::zeta_nonpositive(11 - k) / (32 * denom);
}

quad::TriangleIntegrand theorem_integrand(long k, const PrecCtx& ctx) {
  check_theorem_k(k);
  using special::CombinationSpec;
  const bool odd = k % 2 != 0;
  AlphaPolynomial pa = special::alpha_polynomial_for(odd ? CombinationSpec::P(k - 5) : CombinationSpec::R(k), ctx);
  AlphaPolynomial pb = special::alpha_polynomial_for(odd ? CombinationSpec::Q(k - 5) : CombinationSpec::S(k - 10), ctx);
  auto shared = std::make_shared<const Shared>(Shared{k, ctx, std::move(pa), std::move(pb)});
  // odd:  bracket^(k-12) p(a) q(b) F(a)^5 F(b)^5 / (a(1-a) b(1-b))
  // even: bracket^(k-12) r(a) s(b) F(a)^5 F(1-a)^5 / (a(1-a) b(1-b))
  return [shared, odd](const TrianglePoint& p) {
    const Shared& s = *shared;
    const OuterValues& o = outer_values(shared.get(), p, [&s, odd](const TrianglePoint& q) {
      BigReal fa = f_hyper(q.alpha, q.alpha_comp, s.ctx);
      BigReal fc = f_hyper(q.alpha_comp, q.alpha, s.ctx);
      BigReal factor = s.pa.evaluate(q.alpha, q.alpha_comp) / (q.alpha * q.alpha_comp);
      factor *= odd ? pow(fa, 5) : pow(fa * fc, 5);
      return OuterValues{q.alpha, std::move(fa), std::move(fc), std::move(factor)};
    });
    const BetaValues bv = beta_values(p, s.ctx);
    BigReal v = o.factor * s.pb.evaluate(p.beta, p.beta_comp) / (p.beta * p.beta_comp);
    if (s.k > 12) v *= pow(bracket(o, bv), s.k - 12);
    if (odd) v *= pow(bv.f_beta, 5);
    return v;
  };
}

LValue theorem_double(long k, const PrecCtx& ctx, const QuadOptions& opts) {
  const quad::TriangleIntegrand f = theorem_integrand(k, ctx);
  QuadResult r = quad::integrate_triangle(f, ctx, opts);
  BigReal scale = pow(ctx.pi(), 2 * k - 13) * to_real(theorem_prefactor(k), ctx);
  LValue out = from_quad(std::move(r), std::move(scale));
  // L(Delta, k) > 0 for k >= 12 (the Euler product converges there).
  if (out.converged && !(out.value > 0L)) {
    out.converged = false;
    out.message = "sign check failed: value " + out.value.to_string(20) + " is not positive";
  }
  return out;
}

}  // namespace rzeta::identities
