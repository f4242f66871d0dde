#include "rzeta/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rzeta::qseries {

namespace {

std::atomic<std::size_t> g_max_order{2'000'000};

mpz_class lcm_of(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

QSeries::QSeries(std::vector<mpq_class> coeffs) {
  den_ = 1;
  for (const auto& c : coeffs) den_ = lcm_of(den_, c.get_den());
  num_.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    num_[i] = coeffs[i].get_num() * (den_ / coeffs[i].get_den());
  normalize();
}

QSeries::QSeries(std::vector<mpz_class> numerators, mpz_class denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::invalid_argument("QSeries: zero denominator");
  normalize();
}

QSeries QSeries::zero(std::size_t order) { return QSeries(std::vector<mpz_class>(order), 1); }

QSeries QSeries::one(std::size_t order) { return monomial(0, order); }

QSeries QSeries::monomial(std::size_t e, std::size_t order, const mpq_class& c) {
  std::vector<mpz_class> num(order);
  if (e < order) num[e] = c.get_num();
  return QSeries(std::move(num), c.get_den());
}

void QSeries::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) return;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g == 1) return;
  den_ /= g;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

mpq_class QSeries::coeff(std::size_t n) const {
  mpq_class q(num_.at(n), den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> QSeries::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

QSeries QSeries::truncated(std::size_t order) const {
  std::vector<mpz_class> num(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(std::min(order, num_.size())));
  return QSeries(std::move(num), den_);
}

QSeries& QSeries::operator+=(const QSeries& o) {
  const std::size_t n = std::min(order(), o.order());
  num_.resize(n);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < n; ++i) num_[i] += o.num_[i];
  } else {
    const mpz_class l = lcm_of(den_, o.den_);
    const mpz_class fa = l / den_, fb = l / o.den_;
    for (std::size_t i = 0; i < n; ++i) num_[i] = num_[i] * fa + o.num_[i] * fb;
    den_ = l;
  }
  normalize();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  QSeries neg = o;
  for (auto& c : neg.num_) c = -c;
  return *this += neg;
}

QSeries& QSeries::operator*=(const mpq_class& c) {
  for (auto& x : num_) x *= c.get_num();
  den_ *= c.get_den();
  normalize();
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) {
  const std::size_t n = std::min(order(), o.order());
  if (this == &o) {
    num_ = kernels::square_omp(num_, n);
    den_ = den_ * den_;
  } else {
    // The sparser factor drives the inner loop.
    const auto nnz = [](const std::vector<mpz_class>& v) {
      return std::count_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    };
    num_ = nnz(num_) <= nnz(o.num_) ? kernels::multiply_omp(num_, o.num_, n)
                                    : kernels::multiply_omp(o.num_, num_, n);
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

QSeries dilate(const QSeries& s, std::size_t m) {
  if (m == 0) throw std::invalid_argument("dilate: m must be >= 1");
  std::vector<mpz_class> num(s.order());
  for (std::size_t j = 0; j * m < s.order(); ++j) num[j * m] = s.numerators()[j];
  return QSeries(std::move(num), s.denominator());
}

std::size_t max_series_order() { return g_max_order.load(); }
void set_max_series_order(std::size_t n) { g_max_order.store(n); }

QSeries euler_product(std::size_t order) {
  std::vector<mpz_class> num(order);
  // prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers.
  if (order > 0) num[0] = 1;
  for (std::size_t k = 1;; ++k) {
    const std::size_t e1 = k * (3 * k - 1) / 2;
    const std::size_t e2 = k * (3 * k + 1) / 2;
    if (e1 >= order) break;
    const int s = (k % 2 == 0) ? 1 : -1;
    num[e1] += s;
    if (e2 < order) num[e2] += s;
  }
  return QSeries(std::move(num), 1);
}

QSeries eta24_expand(std::size_t N) {
  if (N < 2) throw DomainError("eta24_expand: N must be >= 2");
  if (N > max_series_order())
    throw ResourceError("eta24_expand: order " + std::to_string(N) + " exceeds the configured limit " +
                        std::to_string(max_series_order()));
  const std::size_t m = N - 1;
  const QSeries p1 = euler_product(m);
  QSeries p2 = p1;
  p2 *= p2;
  QSeries p4 = p2;
  p4 *= p4;
  QSeries p8 = p4;
  p8 *= p8;
  QSeries p16 = p8;
  p16 *= p16;
  const QSeries p24 = p16 * p8;
  std::vector<mpz_class> num(N);
  for (std::size_t i = 0; i < m; ++i) num[i + 1] = p24.numerators()[i];
  return QSeries(std::move(num), 1);
}

TauTable::TauTable(std::vector<mpz_class> values) : values_(std::move(values)) {
  if (values_.empty()) values_.push_back(0);
}

TauTable TauTable::from_delta(const QSeries& delta) {
  if (!delta.is_integral()) throw std::invalid_argument("TauTable: Delta must have integer coefficients");
  std::vector<mpz_class> v(delta.numerators().begin(), delta.numerators().end());
  return TauTable(std::move(v));
}

TauTable TauTable::compute(std::size_t limit) { return from_delta(eta24_expand(std::max<std::size_t>(limit + 1, 2))); }

std::shared_ptr<const TauTable> shared_tau_table(std::size_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const TauTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    // Grow geometrically so that repeated small increases stay cheap.
    std::size_t target = std::max<std::size_t>(limit, 64);
    if (table) target = std::max(target, 2 * table->limit());
    table = std::make_shared<const TauTable>(TauTable::compute(target));
  }
  return table;
}

mpq_class bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<mpq_class> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (n < cache.size()) return cache[n];
  // Akiyama-Tanigawa: B_m is the first entry after m sweeps of
  // a[j-1] = j (a[j-1] - a[j]) starting from a[j] = 1/(j+1).
  const unsigned top = std::max<unsigned>(n, 2 * static_cast<unsigned>(cache.size()));
  cache.clear();
  std::vector<mpq_class> a(top + 1);
  for (unsigned m = 0; m <= top; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    cache.push_back(a[0]);
  }
  return cache[n];
}

mpq_class zeta_nonpositive(long m) {
  if (m > 0) throw DomainError("zeta_nonpositive: zeta(" + std::to_string(m) + ") is not a rational value");
  const unsigned n = static_cast<unsigned>(-m);
  mpq_class r = -bernoulli(n + 1) / mpq_class(n + 1);
  r.canonicalize();
  return r;
}

mpq_class eisenstein_constant(long k) {
  if (k < 2 || k % 2 != 0) throw DomainError("Eisenstein weight must be even and >= 2");
  mpq_class r = mpq_class(2) / zeta_nonpositive(1 - k);
  r.canonicalize();
  return r;
}

std::vector<mpz_class> divisor_sums(unsigned e, std::size_t N) {
  std::vector<mpz_class> sigma(N);
  for (std::size_t d = 1; d < N; ++d) {
    mpz_class de;
    mpz_ui_pow_ui(de.get_mpz_t(), d, e);
    for (std::size_t m = d; m < N; m += d) sigma[m] += de;
  }
  return sigma;
}

QSeries eisenstein_qseries(long k, std::size_t N) {
  if (k < 4 || k % 2 != 0) throw DomainError("eisenstein_qseries: k must be even and >= 4");
  if (N > max_series_order()) throw ResourceError("eisenstein_qseries: order exceeds the configured limit");
  const mpq_class c = eisenstein_constant(k);
  auto sigma = divisor_sums(static_cast<unsigned>(k - 1), N);
  std::vector<mpz_class> num(N);
  for (std::size_t n = 1; n < N; ++n) num[n] = sigma[n] * c.get_num();
  if (N > 0) num[0] = c.get_den();
  return QSeries(std::move(num), c.get_den());
}

QSeries delta_odd_part(std::size_t N) {
  const QSeries delta = eta24_expand(std::max<std::size_t>(N, 2)).truncated(N);
  return delta + dilate(delta, 2) * mpq_class(24) + dilate(delta, 4) * mpq_class(2048);
}

VerificationReport compare_series(std::string identity, const QSeries& lhs, const QSeries& rhs) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.policy = Policy::exact;
  const std::size_t n = std::min(lhs.order(), rhs.order());
  r.terms = static_cast<long>(n);
  std::optional<std::size_t> mismatch;
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs.coeff(i) != rhs.coeff(i)) {
      mismatch = i;
      break;
    }
  }
  const std::size_t shown = mismatch.value_or(n == 0 ? 0 : n - 1);
  if (n > 0) {
    r.lhs = rational_string(lhs.coeff(shown));
    r.rhs = rational_string(rhs.coeff(shown));
  }
  if (mismatch) {
    mpq_class d = lhs.coeff(shown) - rhs.coeff(shown);
    r.abs_err = rational_string(abs(d));
    r.rel_err = r.abs_err;
    r.status = Status::fail;
    r.detail = "first mismatch at q^" + std::to_string(*mismatch);
  } else {
    r.status = Status::pass;
    r.detail = "all " + std::to_string(n) + " coefficients equal; shown: q^" + std::to_string(shown);
  }
  return r;
}

namespace {
template <class F>
VerificationReport timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}
}  // namespace

VerificationReport verify_decomposition(std::size_t N) {
  return timed([N] {
    const std::size_t M = std::max<std::size_t>(N, 2);
    const QSeries e6 = eisenstein_qseries(6, M);
    const QSeries e6_2 = dilate(e6, 2), e6_4 = dilate(e6, 4);
    const QSeries first = e6_2 - e6_4 * mpq_class(64);
    const QSeries second = e6 - e6_2 * mpq_class(33) + e6_4 * mpq_class(32);
    const QSeries rhs = first * second * mpq_class(8, 504 * 504);
    const QSeries lhs = delta_odd_part(M);
    return compare_series("lemma21", lhs.truncated(N), rhs.truncated(N));
  });
}

VerificationReport verify_ramanujan_1728(std::size_t N) {
  return timed([N] {
    const std::size_t M = std::max<std::size_t>(N, 2);
    const QSeries e4 = eisenstein_qseries(4, M);
    const QSeries e6 = eisenstein_qseries(6, M);
    const QSeries rhs = e4 * e4 * e4 - e6 * e6;
    const QSeries lhs = eta24_expand(M) * mpq_class(1728);
    return compare_series("ramanujan1728", lhs.truncated(N), rhs.truncated(N));
  });
}

namespace {
bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

VerificationReport tau_structure_check(const TauTable& table, std::size_t limit) {
  return timed([&] {
    VerificationReport r;
    r.identity = "tau_structure";
    r.policy = Policy::exact;
    if (limit > table.limit())
      throw std::invalid_argument("tau_structure_check: table covers only n <= " + std::to_string(table.limit()));
    long checks = 0;
    std::string failure;
    if (limit >= 1 && table[1] != 1) {
      failure = "tau(1) != 1";
      r.lhs = table[1].get_str();
      r.rhs = "1";
    }
    // Multiplicativity over coprime pairs 1 < m < n with m n <= limit.
    for (std::size_t m = 2; failure.empty() && m * m <= limit; ++m) {
      for (std::size_t n = m + 1; m * n <= limit; ++n) {
        if (std::gcd(m, n) != 1) continue;
        ++checks;
        if (table[m * n] != table[m] * table[n]) {
          failure = "tau(" + std::to_string(m * n) + ") != tau(" + std::to_string(m) + ") tau(" +
                    std::to_string(n) + ")";
          r.lhs = table[m * n].get_str();
          r.rhs = mpz_class(table[m] * table[n]).get_str();
          break;
        }
      }
    }
    // Hecke recursion at prime powers p^{r+1} <= limit, r >= 1.
    for (std::size_t p = 2; failure.empty() && p * p <= limit; ++p) {
      if (!is_prime(p)) continue;
      mpz_class p11;
      mpz_ui_pow_ui(p11.get_mpz_t(), p, 11);
      for (std::size_t prev = 1, cur = p; cur * p <= limit; prev = cur, cur *= p) {
        ++checks;
        const mpz_class expected = table[p] * table[cur] - p11 * table[prev];
        if (table[cur * p] != expected) {
          failure = "Hecke recursion fails at " + std::to_string(cur * p);
          r.lhs = table[cur * p].get_str();
          r.rhs = expected.get_str();
          break;
        }
      }
    }
    r.terms = checks;
    if (failure.empty()) {
      r.status = Status::pass;
      r.lhs = r.rhs = std::to_string(checks);
      r.detail = "multiplicativity and Hecke recursion hold for n <= " + std::to_string(limit);
    } else {
      r.status = Status::fail;
      r.detail = failure;
      r.abs_err = r.rel_err = mpz_class(abs(mpz_class(r.lhs) - mpz_class(r.rhs))).get_str();
    }
    return r;
  });
}

}  // namespace rzeta::qseries
