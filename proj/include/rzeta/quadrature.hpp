// Arbitrary-precision quadrature.
//
// tanh-sinh is the workhorse: it tolerates algebraic and logarithmic
// endpoint singularities, which every L-value integrand here has. Each
// abscissa is handed to the integrand together with its distances to both
// endpoints, computed without cancellation, so integrands can form 1 - x
// accurately even when x is within 2^-400 of 1.
#pragma once

#include "rzeta/bigreal.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rzeta::quad {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Abscissa {
  BigReal x;
  BigReal from_a;  // x - a
  BigReal to_b;    // b - x
};

using Integrand = std::function<BigReal(const Abscissa&)>;
using PlainIntegrand = std::function<BigReal(const BigReal&)>;

// Point of the open triangle 0 < beta < alpha < 1, with every difference
// that integrands need carried separately.
struct TrianglePoint {
  BigReal alpha;
  BigReal alpha_comp;  // 1 - alpha
  BigReal beta;
  BigReal beta_comp;  // 1 - beta
  BigReal gap;        // alpha - beta
};

using TriangleIntegrand = std::function<BigReal(const TrianglePoint&)>;

struct QuadOptions {
  int min_level = 3;
  int max_level = 10;
  // Relative tolerance on the level-to-level difference; 0 selects
  // 2^(-target_bits+8).
  double rel_tol = 0.0;
  // Inner integrals of integrate_triangle; 0 selects rel_tol.
  double inner_rel_tol = 0.0;
  int inner_max_level = 0;  // 0 selects max_level
  bool parallel = true;
};

struct QuadResult {
  BigReal value;
  BigReal err_est;
  long nodes = 0;
  int level = 0;
  bool converged = false;
  std::string message;
};

// Integrand evaluation kernels over a batch of abscissas. Results land in
// node order, so the subsequent accumulation is identical for both.
namespace kernels {
std::vector<BigReal> evaluate_serial(const Integrand& f, std::span<const Abscissa> nodes);
std::vector<BigReal> evaluate_omp(const Integrand& f, std::span<const Abscissa> nodes);
}  // namespace kernels

// Abscissa/weight table for tanh-sinh on (-1, 1) at one refinement level:
// level 0 holds t = 0, +-1, +-2, ...; level l > 0 holds the odd multiples of
// 2^-l. `comp` is 1 - tanh(pi/2 sinh t) for t >= 0.
struct TanhSinhLevel {
  std::vector<BigReal> comp;
  std::vector<BigReal> weight;
  bool has_center = false;
};
const TanhSinhLevel& tanh_sinh_level(mpfr_prec_t prec, int level);
// Abscissas stop once 1 - |x| < 2^-cutoff_bits(prec).
long tanh_sinh_cutoff_bits(mpfr_prec_t prec);

QuadResult tanh_sinh(const Integrand& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                     const QuadOptions& opts = {});
QuadResult tanh_sinh(const PlainIntegrand& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                     const QuadOptions& opts = {});

// n-point Gauss-Legendre; err_est compares against the 2n-point rule.
QuadResult gauss_legendre(const PlainIntegrand& f, const BigReal& a, const BigReal& b, int n, const PrecCtx& ctx);
// Nodes and weights on (-1, 1).
struct GaussRule {
  std::vector<BigReal> nodes;
  std::vector<BigReal> weights;
};
GaussRule gauss_legendre_rule(int n, mpfr_prec_t prec);

// Integral over [1, inf) via u = 1/(1-s), s in (0,1).
QuadResult integrate_1_inf(const PlainIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts = {});
// Integral over (0, inf): (0,1] directly, [1,inf) as above.
QuadResult integrate_0_inf(const PlainIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts = {});

// Integral over 0 < beta < alpha < 1 (inner variable beta). The outer
// error estimate absorbs the inner estimates weighted by the outer rule.
QuadResult integrate_triangle(const TriangleIntegrand& f, const PrecCtx& ctx, const QuadOptions& opts = {});

}  // namespace rzeta::quad
