// L(Delta, k) by five independent routes.
//
//   l_dirichlet          sum tau(n) n^-k with a Deligne-bound tail, k >= 12
//   l_mellin             (2pi)^k/(k-1)! int_1^inf (u^{k-1} + u^{11-k}) Delta(iu) du
//   critical_l_integral  1-D alpha integral, 1 <= k <= 11
//   l12_log_integral     1-D alpha integral with a log factor, k = 12
//   corollary_l          closed 2-D forms for k = 13, 14, 15
//   theorem_double       general 2-D form over the (alpha, beta) triangle, k >= 12
#pragma once

#include "rzeta/bigreal.hpp"
#include "rzeta/qseries.hpp"
#include "rzeta/quadrature.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace rzeta::identities {

struct LValue {
  BigReal value;
  BigReal err_est;  // quadrature estimate, or the tail bound for series
  long nodes = 0;
  long terms = 0;
  bool converged = true;
  std::string message;
};

struct DirichletOptions {
  // Stop at the first N whose tail bound 2 N^(7-k) / (k-7) is below
  // 2^-target_bits, but never beyond max_terms.
  std::size_t max_terms = 4000;
  // Use this table instead of the shared one; its limit caps the sum.
  const qseries::TauTable* table = nullptr;
  bool odd_only = false;
};

LValue l_dirichlet(long k, const PrecCtx& ctx, const DirichletOptions& opts = {});
LValue l_mellin(long k, const PrecCtx& ctx, const quad::QuadOptions& opts = {});

// 1 + 24 * 2^-k + 2^(11-2k): the Euler factor at 2 removed by the odd part.
mpq_class odd_part_factor(long k);

LValue critical_l_integral(long k, const PrecCtx& ctx, const quad::QuadOptions& opts = {});
LValue l12_log_integral(const PrecCtx& ctx, const quad::QuadOptions& opts = {});

struct CorollaryConstants {
  static mpq_class q13() { return mpq_class(mpz_class("122987403000")); }
  static mpq_class q14() { return mpq_class(mpz_class("798232309875")); }
  static mpq_class q15() { return mpq_class(mpz_class("67002093132975"), 4); }
  static mpq_class q(long k);
};

// Settings for the triangle integrals: relative tolerance 1e-11 outer,
// 1e-12 inner.
quad::QuadOptions default_2d_options();

// Integrand of corollary_l(k), without the pi^(2k-13)/q_k prefactor.
quad::TriangleIntegrand corollary_integrand(long k, const PrecCtx& ctx);
LValue corollary_l(long k, const PrecCtx& ctx, const quad::QuadOptions& opts = default_2d_options());

// theorem_double accepts 12 <= k <= max_theorem_k().
long max_theorem_k();
void set_max_theorem_k(long k);

// Integrand of theorem_double(k) over the triangle and its exact rational
// prefactor; the full value is prefactor * pi^(2k-13) * integral.
quad::TriangleIntegrand theorem_integrand(long k, const PrecCtx& ctx);
mpq_class theorem_prefactor(long k);
LValue theorem_double(long k, const PrecCtx& ctx, const quad::QuadOptions& opts = default_2d_options());

}  // namespace rzeta::identities
