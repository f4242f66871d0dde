#include "rzeta/bigreal.hpp"

#include <cmath>
#include <memory>

namespace rzeta {

BigReal PrecCtx::tolerance(long shift) const { return BigReal::pow2(working_bits(), -target_bits + shift); }
BigReal PrecCtx::zero() const { return BigReal(working_bits()); }
BigReal PrecCtx::one() const { return BigReal(working_bits(), 1L); }
BigReal PrecCtx::pi() const { return BigReal::pi(working_bits()); }

BigReal::BigReal(mpfr_prec_t prec, const std::string& decimal) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    v_[0]._mpfr_d = nullptr;
    throw std::invalid_argument("not a decimal number: " + decimal);
  }
}

BigReal BigReal::pi(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow2(mpfr_prec_t prec, long e) {
  BigReal r(prec, 1L);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

std::string BigReal::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30102999566398120)) + 2;
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", digits - 1, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, decltype(&mpfr_free_str)> owned(buf, &mpfr_free_str);
  return std::string(buf);
}

void BigReal::throw_mismatch(const BigReal& o) const {
  throw PrecisionMismatch("BigReal precision mismatch: " + std::to_string(prec()) + " vs " +
                          std::to_string(o.prec()) + " bits");
}

BigReal abs(BigReal x) {
  mpfr_abs(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal sqrt(BigReal x) {
  mpfr_sqrt(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal log(BigReal x) {
  mpfr_log(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal exp(BigReal x) {
  mpfr_exp(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal sinh(BigReal x) {
  mpfr_sinh(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal cosh(BigReal x) {
  mpfr_cosh(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
BigReal pow(BigReal x, long n) {
  mpfr_pow_si(x.raw(), x.raw(), n, MPFR_RNDN);
  return x;
}
BigReal pow(const BigReal& x, const BigReal& y) {
  if (x.prec() != y.prec()) throw PrecisionMismatch("pow: precision mismatch");
  BigReal r(x.prec());
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
BigReal root(BigReal x, unsigned long n) {
#if MPFR_VERSION >= MPFR_VERSION_NUM(4, 0, 0)
  mpfr_rootn_ui(x.raw(), x.raw(), n, MPFR_RNDN);
#else
  mpfr_root(x.raw(), x.raw(), n, MPFR_RNDN);
#endif
  return x;
}
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal factorial(mpfr_prec_t prec, unsigned long n) {
  BigReal r(prec);
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

BigReal gamma(BigReal x) {
  mpfr_gamma(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

}  // namespace rzeta
