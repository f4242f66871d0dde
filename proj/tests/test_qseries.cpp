#include "rzeta/qseries.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rzeta;
using namespace rzeta::qseries;

namespace {

// q prod_{n<N} (1 - q^n)^24 by multiplying in one factor (1 - q^n) at a time.
std::vector<mpz_class> delta_oracle(std::size_t N) {
  std::vector<mpz_class> p(N, 0);
  p[0] = 1;
  for (std::size_t n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = N - 1; i >= n; --i) p[i] -= p[i - n];
  std::vector<mpz_class> out(N, 0);
  for (std::size_t i = 1; i < N; ++i) out[i] = p[i - 1];
  return out;
}

std::vector<mpz_class> naive_product(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST(Eta24, LeadingCoefficient) {
  const QSeries d = eta24_expand(2);
  EXPECT_EQ(d.order(), 2u);
  EXPECT_EQ(d.coeff(0), 0);
  EXPECT_EQ(d.coeff(1), 1);
}

TEST(Eta24, FirstTauValues) {
  const auto oracle = delta_oracle(7);
  const QSeries d = eta24_expand(7);
  for (std::size_t n = 0; n < 7; ++n) EXPECT_EQ(d.coeff(n), oracle[n]) << n;
  // frozen from the oracle above
  const long expected[] = {0, 1, -24, 252, -1472, 4830, -6048};
  for (std::size_t n = 0; n < 7; ++n) EXPECT_EQ(d.coeff(n), expected[n]);
  EXPECT_EQ(d.coeff(6), d.coeff(2) * d.coeff(3));
}

TEST(Eta24, AgreesWithDirectProductOracle) {
  const std::size_t N = 200;
  const auto oracle = delta_oracle(N);
  const QSeries d = eta24_expand(N);
  ASSERT_TRUE(d.is_integral());
  for (std::size_t n = 0; n < N; ++n) ASSERT_EQ(d.numerators()[n], oracle[n]) << "q^" << n;
}

TEST(Eta24, RejectsBadOrders) {
  EXPECT_THROW(eta24_expand(1), DomainError);
  const std::size_t saved = max_series_order();
  set_max_series_order(100);
  EXPECT_THROW(eta24_expand(101), ResourceError);
  set_max_series_order(saved);
}

TEST(TauTable, MatchesExpansion) {
  const TauTable t = TauTable::compute(30);
  const auto oracle = delta_oracle(31);
  EXPECT_EQ(t.limit(), 30u);
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(t[n], oracle[n]);
}

TEST(TauTable, SharedTableGrows) {
  const auto small = shared_tau_table(10);
  const auto big = shared_tau_table(500);
  EXPECT_GE(big->limit(), 500u);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ((*small)[n], (*big)[n]);
}

TEST(Eisenstein, FirstCoefficients) {
  const QSeries e6 = eisenstein_qseries(6, 2);
  EXPECT_EQ(e6.coeff(0), 1);
  EXPECT_EQ(e6.coeff(1), -504);
  const QSeries e4 = eisenstein_qseries(4, 2);
  EXPECT_EQ(e4.coeff(1), 240);
  for (long k : {4L, 8L, 12L}) {
    const QSeries one = eisenstein_qseries(k, 1);
    EXPECT_EQ(one.order(), 1u);
    EXPECT_EQ(one.coeff(0), 1);
  }
}

TEST(Eisenstein, IntegralForSmallWeights) {
  for (long k : {4L, 6L, 8L, 10L, 14L}) EXPECT_TRUE(eisenstein_qseries(k, 20).is_integral()) << k;
  EXPECT_FALSE(eisenstein_qseries(12, 20).is_integral());
}

TEST(Eisenstein, RejectsOddOrSmallWeight) {
  EXPECT_THROW(eisenstein_qseries(5, 10), DomainError);
  EXPECT_THROW(eisenstein_qseries(2, 10), DomainError);
}

TEST(Zeta, NegativeIntegers) {
  EXPECT_EQ(zeta_nonpositive(-5), mpq_class(-1, 252));
  EXPECT_EQ(zeta_nonpositive(-7), mpq_class(1, 240));
  EXPECT_EQ(zeta_nonpositive(-11), mpq_class(691, 32760));
  EXPECT_EQ(zeta_nonpositive(0), mpq_class(-1, 2));
  EXPECT_THROW(zeta_nonpositive(2), DomainError);
}

TEST(Zeta, BernoulliAgainstKnownValues) {
  EXPECT_EQ(bernoulli(6), mpq_class(1, 42));
  EXPECT_EQ(bernoulli(8), mpq_class(-1, 30));
  EXPECT_EQ(bernoulli(12), mpq_class(-691, 2730));
  EXPECT_EQ(bernoulli(3), 0);
}

TEST(Dilate, Examples) {
  const QSeries q = QSeries::monomial(1, 5);
  EXPECT_EQ(dilate(q, 2), QSeries::monomial(2, 5));
  const QSeries s = QSeries({1, -504, 0, 0, 0, 0, 0});
  EXPECT_EQ(dilate(s, 4), QSeries({1, 0, 0, 0, -504, 0, 0}));
  const QSeries d = eta24_expand(20);
  EXPECT_EQ(dilate(d, 1), d);
  EXPECT_EQ(dilate(d, 3).order(), d.order());
}

TEST(QSeriesArithmetic, ProductOrderIsMinimum) {
  const QSeries a = eisenstein_qseries(4, 10), b = eisenstein_qseries(6, 7);
  EXPECT_EQ((a * b).order(), 7u);
  EXPECT_EQ((a + b).order(), 7u);
  EXPECT_EQ((a - b).order(), 7u);
}

TEST(QSeriesArithmetic, TruncatedProductMatchesExactProduct) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coeff(-50, 50), den(1, 9);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t na = 1 + rng() % 15, nb = 1 + rng() % 15;
    std::vector<mpq_class> a(na), b(nb);
    for (auto& c : a) {
      c = mpq_class(coeff(rng), den(rng));
      c.canonicalize();
    }
    for (auto& c : b) {
      c = mpq_class(coeff(rng), den(rng));
      c.canonicalize();
    }
    const QSeries pa(a), pb(b);
    const QSeries prod = pa * pb;
    const std::size_t n = std::min(na, nb);
    ASSERT_EQ(prod.order(), n);
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class exact = 0;
      for (std::size_t j = 0; j <= i; ++j) exact += a[j] * b[i - j];
      ASSERT_EQ(prod.coeff(i), exact) << trial << ' ' << i;
    }
  }
}

TEST(QSeriesArithmetic, SquareEqualsSelfProduct) {
  const QSeries e4 = eisenstein_qseries(4, 50);
  QSeries sq = e4;
  sq *= sq;
  const QSeries copy = e4;
  EXPECT_EQ(sq, e4 * copy);
}

TEST(Kernels, OpenMpBitIdenticalToSerial) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 17u, 300u}) {
    std::vector<mpz_class> a(n), b(n);
    for (auto& x : a) x = static_cast<long>(rng() % 2000001) - 1000000;
    for (auto& x : b) x = static_cast<long>(rng() % 2000001) - 1000000;
    EXPECT_EQ(kernels::multiply_serial(a, b, n), kernels::multiply_omp(a, b, n));
    EXPECT_EQ(kernels::square_serial(a, n), kernels::square_omp(a, n));
    const auto full = naive_product(a, b);
    const auto trunc = kernels::multiply_serial(a, b, n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(trunc[i], full[i]);
  }
}

TEST(OddPart, EvenCoefficientsVanishOddOnesAreTau) {
  const std::size_t N = 400;
  const QSeries odd = delta_odd_part(N);
  const QSeries d = eta24_expand(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (n % 2 == 0) ASSERT_EQ(odd.coeff(n), 0) << n;
    else ASSERT_EQ(odd.coeff(n), d.coeff(n)) << n;
  }
}

TEST(Decomposition, SmallOrders) {
  const VerificationReport r1 = verify_decomposition(1);
  EXPECT_TRUE(r1.passed());
  EXPECT_EQ(r1.lhs, "0");
  EXPECT_EQ(r1.rhs, "0");
  const VerificationReport r2 = verify_decomposition(2);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.lhs, "1");
}

TEST(Decomposition, ThousandCoefficients) {
  const VerificationReport r = verify_decomposition(1000);
  EXPECT_TRUE(r.passed()) << r.detail;
  EXPECT_EQ(r.terms, 1000);
  EXPECT_EQ(r.abs_err, "0");
  EXPECT_EQ(r.policy, Policy::exact);
}

TEST(Decomposition, DetectsMismatch) {
  QSeries a = eta24_expand(10);
  QSeries b = a;
  b += QSeries::monomial(7, 10);
  const VerificationReport r = compare_series("x", a, b);
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_EQ(r.detail, "first mismatch at q^7");
}

TEST(Ramanujan1728, Orders) {
  EXPECT_TRUE(verify_ramanujan_1728(1).passed());
  const VerificationReport r2 = verify_ramanujan_1728(2);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.lhs, "1728");
  EXPECT_EQ(3 * 240 - (-2 * 504), 1728);
  EXPECT_TRUE(verify_ramanujan_1728(500).passed());
}

TEST(TauStructure, Examples) {
  const auto t = shared_tau_table(1000);
  EXPECT_TRUE(tau_structure_check(*t, 1).passed());
  EXPECT_TRUE(tau_structure_check(*t, 6).passed());
  const mpz_class t2 = (*t)[2];
  EXPECT_EQ((*t)[4], t2 * t2 - 2048 * (*t)[1]);
  const VerificationReport r = tau_structure_check(*t, 1000);
  EXPECT_TRUE(r.passed()) << r.detail;
}

TEST(TauStructure, DetectsCorruptedTable) {
  const TauTable good = TauTable::compute(50);
  std::vector<mpz_class> v(good.values().begin(), good.values().end());
  v[35] += 1;
  const VerificationReport r = tau_structure_check(TauTable(v), 50);
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_EQ(r.abs_err, "1");
}
