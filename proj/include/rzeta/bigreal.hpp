// Arbitrary-precision reals on top of MPFR.
//
// A BigReal carries the working precision of the PrecCtx that produced it.
// Arithmetic between values of different precision is a programming error
// and throws PrecisionMismatch instead of silently rounding.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace rzeta {

class PrecisionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BigReal;

struct PrecCtx {
  long target_bits = 128;
  long guard_bits = 32;
  // q-series and hypergeometric sums stop once the rigorous tail majorant
  // drops below 2^tail_eps_log2 relative to the partial sum. Zero means
  // "use -working_bits()".
  long tail_eps_log2 = 0;

  PrecCtx() = default;
  explicit PrecCtx(long target, long guard = 32) : target_bits(target), guard_bits(guard) {
    validate();
  }

  void validate() const {
    if (target_bits < 2) throw std::invalid_argument("target_bits must be >= 2");
    if (guard_bits < 32) throw std::invalid_argument("guard_bits must be >= 32");
  }

  mpfr_prec_t working_bits() const { return static_cast<mpfr_prec_t>(target_bits + guard_bits); }
  long tail_log2() const { return tail_eps_log2 != 0 ? tail_eps_log2 : -working_bits(); }

  // 2^(target_bits - shift), e.g. tolerance(8) == 2^(-target_bits+8).
  BigReal tolerance(long shift) const;
  BigReal zero() const;
  BigReal one() const;
  BigReal pi() const;
};

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigReal(mpfr_prec_t prec, long x) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigReal(const PrecCtx& ctx, long x) : BigReal(ctx.working_bits(), x) {}
  BigReal(mpfr_prec_t prec, const mpq_class& q) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigReal(mpfr_prec_t prec, const mpz_class& z) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigReal(mpfr_prec_t prec, const std::string& decimal);

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, mpfr_get_prec(o.v_));
      else mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    if (this != &o) std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~BigReal() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  static BigReal pi(mpfr_prec_t prec);
  static BigReal pow2(mpfr_prec_t prec, long e);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // floor(log2|x|) + 1 for nonzero finite x.
  long exponent() const { return mpfr_get_exp(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits; digits
  // <= 0 picks enough digits to round-trip the precision.
  std::string to_string(int digits = 0) const;

  BigReal& operator+=(const BigReal& o) { check(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator-=(const BigReal& o) { check(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator*=(const BigReal& o) { check(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator/=(const BigReal& o) { check(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator*=(const mpq_class& q) { mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN); return *this; }
  BigReal& mul_2exp(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); return *this; }

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    BigReal r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  void check(const BigReal& o) const {
    if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) throw_mismatch(o);
  }
  [[noreturn]] void throw_mismatch(const BigReal& o) const;

  mpfr_t v_;
};

BigReal abs(BigReal x);
BigReal sqrt(BigReal x);
BigReal log(BigReal x);
BigReal exp(BigReal x);
BigReal sinh(BigReal x);
BigReal cosh(BigReal x);
BigReal pow(BigReal x, long n);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal root(BigReal x, unsigned long n);
BigReal max(const BigReal& a, const BigReal& b);
BigReal factorial(mpfr_prec_t prec, unsigned long n);
BigReal gamma(BigReal x);

}  // namespace rzeta
