// Exact q-series arithmetic: the discriminant Delta, Eisenstein series,
// Ramanujan's tau and the coefficient-level identity checks.
//
// Everything in this header is exact (GMP integers and rationals). A QSeries
// knows its truncation order N: coefficients of q^n for n >= N are unknown,
// and every operation reports only what it can prove.
#pragma once

#include "rzeta/bigreal.hpp"
#include "rzeta/report.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace rzeta::qseries {

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(std::vector<mpq_class> coeffs);
  // numerators[n] / denominator.
  QSeries(std::vector<mpz_class> numerators, mpz_class denominator);

  static QSeries zero(std::size_t order);
  static QSeries one(std::size_t order);
  // q^e truncated at `order`.
  static QSeries monomial(std::size_t e, std::size_t order, const mpq_class& c = 1);

  std::size_t order() const { return num_.size(); }
  mpq_class coeff(std::size_t n) const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  bool is_integral() const { return den_ == 1; }

  QSeries truncated(std::size_t order) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const mpq_class& c);
  QSeries& operator*=(const QSeries& o);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const mpq_class& c) { return a *= c; }
  friend QSeries operator*(const mpq_class& c, QSeries a) { return a *= c; }
  friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  void normalize();

  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

// Truncated product kernels on integer coefficient arrays. The OpenMP kernel
// parallelizes over output coefficients and is bit-identical to the serial
// reference (exact arithmetic, each output coefficient owned by one thread).
namespace kernels {
std::vector<mpz_class> multiply_serial(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t order);
std::vector<mpz_class> multiply_omp(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                    std::size_t order);
std::vector<mpz_class> square_serial(std::span<const mpz_class> a, std::size_t order);
std::vector<mpz_class> square_omp(std::span<const mpz_class> a, std::size_t order);
}  // namespace kernels

// z -> m z, i.e. q -> q^m. Order is preserved.
QSeries dilate(const QSeries& s, std::size_t m);

// Largest truncation order eta24_expand accepts before raising ResourceError.
std::size_t max_series_order();
void set_max_series_order(std::size_t n);

// (q;q)_inf truncated at `order`, from the pentagonal number theorem.
QSeries euler_product(std::size_t order);

// Delta = q prod (1 - q^n)^24 truncated at N (N >= 2).
QSeries eta24_expand(std::size_t N);

class TauTable {
 public:
  explicit TauTable(std::vector<mpz_class> values);  // values[0] unused
  static TauTable from_delta(const QSeries& delta);
  static TauTable compute(std::size_t limit);

  std::size_t limit() const { return values_.empty() ? 0 : values_.size() - 1; }
  const mpz_class& operator[](std::size_t n) const { return values_.at(n); }
  std::span<const mpz_class> values() const { return values_; }

 private:
  std::vector<mpz_class> values_;
};

// Process-wide table covering at least `limit`; grows on demand and is safe
// to call from multiple threads.
std::shared_ptr<const TauTable> shared_tau_table(std::size_t limit);

// Bernoulli number B_n (B_1 = +1/2 convention; only even n matter here).
mpq_class bernoulli(unsigned n);

// zeta(m) for integers m <= 0: zeta(-n) = -B_{n+1}/(n+1).
mpq_class zeta_nonpositive(long m);

// 2 / zeta(1-k): the normalizing constant of E_k.
mpq_class eisenstein_constant(long k);

// 1 + (2/zeta(1-k)) sum sigma_{k-1}(n) q^n truncated at N; k even, k >= 4.
QSeries eisenstein_qseries(long k, std::size_t N);

// sigma_{e}(n) for 0 < n < N (index 0 is 0).
std::vector<mpz_class> divisor_sums(unsigned e, std::size_t N);

// Delta(z) + 24 Delta(2z) + 2^11 Delta(4z) as a q-series.
QSeries delta_odd_part(std::size_t N);

VerificationReport verify_decomposition(std::size_t N);
VerificationReport verify_ramanujan_1728(std::size_t N);
VerificationReport tau_structure_check(const TauTable& table, std::size_t limit);

// Compares two series coefficient by coefficient; shared by the exact
// verifications.
VerificationReport compare_series(std::string identity, const QSeries& lhs, const QSeries& rhs);

}  // namespace rzeta::qseries
