#include "rzeta/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rzeta::special {

namespace {

BigReal horner(const std::vector<mpq_class>& c, const BigReal& x) {
  BigReal acc(x.prec());
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += BigReal(x.prec(), *it);
  }
  return acc;
}

void trim(std::vector<mpq_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

AlphaPolynomial::AlphaPolynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
  factor();
}

void AlphaPolynomial::factor() {
  zero_mult_ = 0;
  one_mult_ = 0;
  reduced_.clear();
  if (coeffs_.empty()) return;
  std::size_t lead = 0;
  while (coeffs_[lead] == 0) ++lead;
  zero_mult_ = static_cast<int>(lead);
  reduced_.assign(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead), coeffs_.end());
  // Divide by (1 - alpha) = -(alpha - 1) while 1 is a root.
  for (;;) {
    mpq_class at_one = 0;
    for (const auto& c : reduced_) at_one += c;
    if (at_one != 0 || reduced_.size() < 2) break;
    std::vector<mpq_class> quotient(reduced_.size() - 1);
    mpq_class carry = 0;
    for (std::size_t i = reduced_.size() - 1; i >= 1; --i) {
      carry += reduced_[i];
      quotient[i - 1] = carry;
    }
    for (auto& c : quotient) c = -c;
    reduced_ = std::move(quotient);
    ++one_mult_;
  }
}

BigReal AlphaPolynomial::evaluate(const BigReal& alpha, const BigReal& alpha_comp) const {
  if (coeffs_.empty()) return BigReal(alpha.prec());
  BigReal v = horner(reduced_, alpha);
  if (zero_mult_ > 0) v *= pow(alpha, zero_mult_);
  if (one_mult_ > 0) v *= pow(alpha_comp, one_mult_);
  return v;
}

BigReal AlphaPolynomial::evaluate(const BigReal& alpha) const { return evaluate(alpha, 1L - alpha); }

AlphaPolynomial operator*(const AlphaPolynomial& a, const AlphaPolynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return AlphaPolynomial();
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return AlphaPolynomial(std::move(c));
}

AlphaPolynomial operator*(const mpq_class& s, const AlphaPolynomial& a) {
  std::vector<mpq_class> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return AlphaPolynomial(std::move(c));
}

std::string AlphaPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpq_class& c = coeffs_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const mpq_class mag = abs(c);
    if (first) out << (neg ? "-" : "");
    else out << (neg ? " - " : " + ");
    first = false;
    const bool unit = mag == 1;
    if (i == 0 || !unit) out << mag.get_str();
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

std::optional<mpq_class> reconstruct_rational(const BigReal& x, const mpz_class& max_den, const BigReal& tol) {
  if (!x.is_finite()) return std::nullopt;
  mpq_class exact;
  mpfr_get_q(exact.get_mpq_t(), x.raw());
  // Convergents p1/q1 of the continued fraction of `exact`.
  mpz_class p0 = 0, p1 = 1, q0 = 1, q1 = 0;
  mpz_class num = exact.get_num(), den = exact.get_den();
  while (den != 0) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = std::move(p1);
    p1 = std::move(p2);
    q0 = std::move(q1);
    q1 = std::move(q2);
    if (q1 > max_den) break;
    const mpq_class candidate(p1, q1);
    if (abs(x - BigReal(x.prec(), candidate)) <= tol) return candidate;
    num = std::move(den);
    den = std::move(r);
  }
  return std::nullopt;
}

PolynomialSearch find_alpha_polynomial(const CombinationSpec& spec, long degree_bound, const PrecCtx& ctx) {
  const mpfr_prec_t prec = ctx.working_bits();
  const int n = static_cast<int>(degree_bound) + 1;
  PolynomialSearch out{std::nullopt, BigReal(prec), n, 10, ""};

  // Value of the combination divided by F^weight at a given alpha.
  const auto sample = [&](const BigReal& alpha) {
    const AlphaPoint p = alpha_point(alpha, ctx);
    return combination_at(spec, p.u, ctx) / pow(p.f_alpha, spec.weight);
  };

  // Chebyshev points on [0.05, 0.9].
  std::vector<BigReal> xs;
  std::vector<std::vector<BigReal>> rows;
  std::vector<BigReal> rhs;
  const BigReal pi = ctx.pi();
  for (int i = 0; i < n; ++i) {
    BigReal angle = pi * static_cast<long>(2 * i + 1) / static_cast<long>(2 * n);
    BigReal c(prec);
    mpfr_cos(c.raw(), angle.raw(), MPFR_RNDN);
    c *= mpq_class(17, 40);
    BigReal alpha = c + BigReal(prec, mpq_class(19, 40));
    std::vector<BigReal> row;
    BigReal power(prec, 1L);
    for (int j = 0; j < n; ++j) {
      row.push_back(power);
      power *= alpha;
    }
    rows.push_back(std::move(row));
    rhs.push_back(sample(alpha));
  }

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (abs(rows[r][col]) > abs(rows[pivot][col])) pivot = r;
    if (rows[pivot][col].is_zero()) {
      out.message = "singular fit matrix";
      return out;
    }
    std::swap(rows[pivot], rows[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      const BigReal m = rows[r][col] / rows[col][col];
      for (int c = col; c < n; ++c) rows[r][c] -= m * rows[col][c];
      rhs[r] -= m * rhs[col];
    }
  }
  std::vector<BigReal> sol(static_cast<std::size_t>(n), BigReal(prec));
  for (int r = n - 1; r >= 0; --r) {
    BigReal acc = rhs[r];
    for (int c = r + 1; c < n; ++c) acc -= rows[r][c] * sol[c];
    sol[r] = acc / rows[r][r];
  }

  const mpz_class max_den = mpz_class(1) << static_cast<mp_bitcnt_t>(ctx.target_bits / 3);
  std::vector<mpq_class> coeffs;
  for (int j = 0; j < n; ++j) {
    const BigReal scale = max(abs(sol[j]), ctx.one());
    const BigReal tol = BigReal::pow2(prec, -ctx.target_bits / 2) * scale;
    auto r = reconstruct_rational(sol[j], max_den, tol);
    if (!r) {
      out.message = "coefficient of a^" + std::to_string(j) + " (" + sol[j].to_string(20) +
                    ") is not a small-height rational";
      return out;
    }
    coeffs.push_back(*r);
  }
  AlphaPolynomial poly(std::move(coeffs));

  BigReal worst(prec);
  for (int m = 0; m < out.holdout_points; ++m) {
    const BigReal alpha(prec, mpq_class(7 + 8 * m, 100));
    const BigReal expect = sample(alpha);
    const BigReal got = poly.evaluate(alpha);
    BigReal rel = abs(expect - got) / max(abs(expect), ctx.one());
    worst = max(worst, rel);
  }
  out.max_holdout_residual = worst;
  if (worst > ctx.tolerance(16)) {
    out.message = "held-out residual " + worst.to_string(6) + " exceeds tolerance";
    return out;
  }
  out.polynomial = std::move(poly);
  out.message = "ok";
  return out;
}

AlphaPolynomial alpha_polynomial_for(const CombinationSpec& spec, const PrecCtx& ctx) {
  static std::mutex mutex;
  static std::map<std::string, AlphaPolynomial> memo;
  std::ostringstream key;
  key << spec.weight << '|' << ctx.working_bits() << '|' << ctx.target_bits;
  for (const auto& t : spec.terms) key << '|' << t.scale << ':' << t.coeff.get_str();
  {
    std::lock_guard lock(mutex);
    auto it = memo.find(key.str());
    if (it != memo.end()) return it->second;
  }
  PolynomialSearch s = find_alpha_polynomial(spec, std::max<long>(spec.weight, 2), ctx);
  if (!s.polynomial) throw std::runtime_error("no alpha-polynomial for " + spec.name + ": " + s.message);
  std::lock_guard lock(mutex);
  return memo.emplace(key.str(), std::move(*s.polynomial)).first->second;
}

}  // namespace rzeta::special
