#include "rzeta/bigreal.hpp"

#include <gtest/gtest.h>

using rzeta::BigReal;
using rzeta::PrecCtx;

TEST(PrecCtx, WorkingBitsAddGuard) {
  const PrecCtx ctx(128);
  EXPECT_EQ(ctx.working_bits(), 160);
  EXPECT_EQ(ctx.tail_log2(), -160);
  EXPECT_THROW(PrecCtx(128, 16), std::invalid_argument);
}

TEST(PrecCtx, ToleranceIsPowerOfTwo) {
  const PrecCtx ctx(100);
  EXPECT_EQ(ctx.tolerance(8), BigReal::pow2(ctx.working_bits(), -92));
}

TEST(BigReal, MixedPrecisionIsRejected) {
  BigReal a(100, 1L), b(200, 1L);
  EXPECT_THROW(a += b, rzeta::PrecisionMismatch);
  EXPECT_THROW((void)(a * b), rzeta::PrecisionMismatch);
}

TEST(BigReal, ArithmeticMatchesRationals) {
  const BigReal third(160, mpq_class(1, 3));
  const BigReal x = third * 3L - 1L;
  EXPECT_LE(abs(x), BigReal::pow2(160, -158));
  EXPECT_EQ(2L - BigReal(160, 5L), -3L);
  EXPECT_EQ(12L / BigReal(160, 4L), 3L);
}

TEST(BigReal, RoundTripsThroughDecimalString) {
  const BigReal pi = BigReal::pi(160);
  const BigReal back(160, pi.to_string());
  EXPECT_EQ(back, pi);
}

TEST(BigReal, MovedFromCanBeReassigned) {
  BigReal a(64, 5L);
  BigReal b = std::move(a);
  a = BigReal(64, 7L);
  EXPECT_EQ(a, 7L);
  EXPECT_EQ(b, 5L);
}

TEST(BigReal, FactorialAndGamma) {
  EXPECT_EQ(rzeta::factorial(128, 10), 3628800L);
  const BigReal g = rzeta::gamma(BigReal(128, 6L));
  EXPECT_EQ(g, 120L);
}
