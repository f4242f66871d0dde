// Special values along the imaginary axis and the alpha-parametrization.
//
// With F(a) = 2F1(1/2, 1/2; 1; a) and u = F(1-a) / (2 F(a)), the nome
// q = exp(-2 pi u) runs over (0, 1) as a runs over (0, 1), and modular
// forms at z = iu become polynomials in a times powers of F(a). This header
// evaluates both sides of those correspondences independently: q-series in u
// on one side, closed forms in a on the other.
#pragma once

#include "rzeta/bigreal.hpp"
#include "rzeta/quadrature.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace rzeta::special {

// Arithmetic-geometric mean of two positive reals.
BigReal agm(BigReal a, BigReal b);

// F(alpha). `alpha_comp` must be 1 - alpha; passing it separately keeps
// F accurate when alpha is within rounding distance of 1.
BigReal f_hyper(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx);
BigReal f_hyper(const BigReal& alpha, const PrecCtx& ctx);
// The two evaluation routes f_hyper switches between at alpha = 1/2.
BigReal f_hyper_series(const BigReal& alpha, const PrecCtx& ctx);
BigReal f_hyper_agm(const BigReal& alpha_comp, const PrecCtx& ctx);

// (2/pi) int_0^1 dx / sqrt((1-x^2)(1-alpha x^2)) by tanh-sinh.
quad::QuadResult f_elliptic_quad(const BigReal& alpha, const PrecCtx& ctx);

struct AlphaPoint {
  BigReal alpha;
  BigReal alpha_comp;  // 1 - alpha
  BigReal f_alpha;     // F(alpha)
  BigReal f_comp;      // F(1 - alpha)
  BigReal u;           // F(1 - alpha) / (2 F(alpha))
  BigReal du_dalpha;   // -1 / (2 pi alpha (1 - alpha) F(alpha)^2)
};

AlphaPoint alpha_point(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx);
AlphaPoint alpha_point(const BigReal& alpha, const PrecCtx& ctx);
BigReal u_from_alpha(const BigReal& alpha, const PrecCtx& ctx);

struct ThetaTriple {
  BigReal theta2;
  BigReal theta3;
  BigReal theta4;
};

// Jacobi theta constants at nome q = exp(-2 pi u).
ThetaTriple theta_triple(const BigReal& u, const PrecCtx& ctx);

struct AlphaPair {
  BigReal alpha;
  BigReal alpha_comp;
};

// alpha = theta2^4 / theta3^4 at nome exp(-2 pi u). For u < 1/2 the
// complementary modulus is evaluated at 1/(4u) instead, which keeps both
// alpha and 1 - alpha free of cancellation.
AlphaPair alpha_pair_from_u(const BigReal& u, const PrecCtx& ctx);
BigReal alpha_from_u(const BigReal& u, const PrecCtx& ctx);

// Delta(iu) = sum tau(n) exp(-2 pi n u); for u < 1/2 through
// Delta(iu) = u^-12 Delta(i/u).
BigReal delta_at(const BigReal& u, const PrecCtx& ctx);
BigReal delta_from_alpha(const BigReal& alpha, const BigReal& alpha_comp, const PrecCtx& ctx);
BigReal delta_from_alpha(const BigReal& alpha, const PrecCtx& ctx);

// Smallest j*u accepted by direct Lambert-series summation of E_k(j i u).
inline constexpr double kEisensteinMinArgument = 0.05;

// E_k(j i u), j in {1, 2, 4}, by the Lambert series. Weight 2 is accepted
// for use inside modular combinations such as S_2.
BigReal eisenstein_at(long k, int j, const BigReal& u, const PrecCtx& ctx, bool allow_alpha_route = false);

// sum n^11 exp(-2 pi n u) / (1 - exp(-4 pi n u)).
BigReal lambert_weight11(const BigReal& u, const PrecCtx& ctx);

// prod over odd m of (1 + p^m) / (1 - p^m), p = exp(-2 pi m / (4u)).
BigReal theta_quotient_product(const BigReal& u, const PrecCtx& ctx);

// sum_j c_j E_weight(j i u) over scales j in {1, 2, 4}.
struct CombinationSpec {
  struct Term {
    int scale;
    mpq_class coeff;
  };
  std::string name;
  long weight = 0;
  std::vector<Term> terms;

  static CombinationSpec eisenstein(long k, int scale = 1);
  // E_k(iu) - (2 + 2^k) E_k(2iu) + 2^(k+1) E_k(4iu)
  static CombinationSpec P(long k);
  // E_k(iz) - E_k(2iz)
  static CombinationSpec Q(long k);
  // E_k(2iu) - 2^k E_k(4iu)
  static CombinationSpec R(long k);
  // E_k(iz) - (1 + 2^(k-1)) E_k(2iz) + 2^(k-1) E_k(4iz)
  static CombinationSpec S(long k);
};

BigReal combination_at(const CombinationSpec& spec, const BigReal& u, const PrecCtx& ctx);

// Exact polynomial in alpha with rational coefficients.
class AlphaPolynomial {
 public:
  AlphaPolynomial() = default;
  explicit AlphaPolynomial(std::vector<mpq_class> coeffs);

  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  // Multiplicity of the roots alpha = 0 and alpha = 1.
  int zero_multiplicity() const { return zero_mult_; }
  int one_multiplicity() const { return one_mult_; }

  // Evaluates alpha^m0 (1 - alpha)^m1 r(alpha), with the factors split off
  // exactly, so values near either root keep full relative accuracy.
  BigReal evaluate(const BigReal& alpha, const BigReal& alpha_comp) const;
  BigReal evaluate(const BigReal& alpha) const;

  friend AlphaPolynomial operator*(const AlphaPolynomial& a, const AlphaPolynomial& b);
  friend AlphaPolynomial operator*(const mpq_class& c, const AlphaPolynomial& a);
  friend bool operator==(const AlphaPolynomial& a, const AlphaPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "a") const;

 private:
  void factor();

  std::vector<mpq_class> coeffs_;
  std::vector<mpq_class> reduced_;
  int zero_mult_ = 0;
  int one_mult_ = 0;
};

// Continued-fraction reconstruction: the convergent p/q with q <= max_den
// closest to x, accepted when |x - p/q| <= tol.
std::optional<mpq_class> reconstruct_rational(const BigReal& x, const mpz_class& max_den, const BigReal& tol);

struct PolynomialSearch {
  std::optional<AlphaPolynomial> polynomial;  // empty: no relation found
  BigReal max_holdout_residual;               // relative
  int fit_points = 0;
  int holdout_points = 0;
  std::string message;
};

// Finds c_j with combination(u) = (sum_j c_j alpha^j) F(alpha)^weight,
// 0 <= j <= degree_bound, from a numeric fit at degree_bound + 1 points,
// rational reconstruction, and verification at held-out points.
PolynomialSearch find_alpha_polynomial(const CombinationSpec& spec, long degree_bound, const PrecCtx& ctx);

// Memoized find_alpha_polynomial at degree_bound = max(weight, 2); throws
// std::runtime_error when no relation is found.
AlphaPolynomial alpha_polynomial_for(const CombinationSpec& spec, const PrecCtx& ctx);

}  // namespace rzeta::special
