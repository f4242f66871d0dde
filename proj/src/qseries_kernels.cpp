#include "rzeta/qseries.hpp"

#include <algorithm>

namespace rzeta::qseries::kernels {

namespace {

std::vector<std::size_t> nonzero_indices(std::span<const mpz_class> a, std::size_t order) {
  std::vector<std::size_t> idx;
  const std::size_t n = std::min(a.size(), order);
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) != 0) idx.push_back(i);
  return idx;
}

// c[n] = sum_{i in nz(a)} a[i] b[n-i]
inline void product_coefficient(mpz_class& out, std::size_t n, std::span<const std::size_t> nz,
                                std::span<const mpz_class> a, std::span<const mpz_class> b) {
  for (std::size_t i : nz) {
    if (i > n) break;
    const std::size_t j = n - i;
    if (j < b.size()) mpz_addmul(out.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
}

// c[n] = 2 sum_{i < n-i} a[i] a[n-i] + a[n/2]^2
inline void square_coefficient(mpz_class& out, std::size_t n, std::span<const std::size_t> nz,
                               std::span<const mpz_class> a) {
  for (std::size_t i : nz) {
    if (2 * i >= n) break;
    const std::size_t j = n - i;
    if (j < a.size()) mpz_addmul(out.get_mpz_t(), a[i].get_mpz_t(), a[j].get_mpz_t());
  }
  out *= 2;
  if (n % 2 == 0 && n / 2 < a.size()) mpz_addmul(out.get_mpz_t(), a[n / 2].get_mpz_t(), a[n / 2].get_mpz_t());
}

}  // namespace

std::vector<mpz_class> multiply_serial(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t order) {
  std::vector<mpz_class> c(order);
  const auto nz = nonzero_indices(a, order);
  for (std::size_t n = 0; n < order; ++n) product_coefficient(c[n], n, nz, a, b);
  return c;
}

std::vector<mpz_class> multiply_omp(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                    std::size_t order) {
  std::vector<mpz_class> c(order);
  const auto nz = nonzero_indices(a, order);
  const auto count = static_cast<std::ptrdiff_t>(order);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t n = 0; n < count; ++n)
    product_coefficient(c[static_cast<std::size_t>(n)], static_cast<std::size_t>(n), nz, a, b);
  return c;
}

std::vector<mpz_class> square_serial(std::span<const mpz_class> a, std::size_t order) {
  std::vector<mpz_class> c(order);
  const auto nz = nonzero_indices(a, order);
  for (std::size_t n = 0; n < order; ++n) square_coefficient(c[n], n, nz, a);
  return c;
}

std::vector<mpz_class> square_omp(std::span<const mpz_class> a, std::size_t order) {
  std::vector<mpz_class> c(order);
  const auto nz = nonzero_indices(a, order);
  const auto count = static_cast<std::ptrdiff_t>(order);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t n = 0; n < count; ++n)
    square_coefficient(c[static_cast<std::size_t>(n)], static_cast<std::size_t>(n), nz, a);
  return c;
}

}  // namespace rzeta::qseries::kernels
