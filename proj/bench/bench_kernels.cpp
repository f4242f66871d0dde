// Serial reference kernels against their OpenMP counterparts.
//
//   rzeta_bench [series_order] [precision_bits]
#include "rzeta/qseries.hpp"
#include "rzeta/quadrature.hpp"
#include "rzeta/special.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace {

double time_ms(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %12.2f %12.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t order = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
  const long bits = argc > 2 ? std::strtol(argv[2], nullptr, 10) : 128;
  std::printf("threads %d, series order %zu, precision %ld bits\n", omp_get_max_threads(), order, bits);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  using namespace rzeta;
  const qseries::QSeries p = qseries::euler_product(order);
  const qseries::QSeries e4 = qseries::eisenstein_qseries(4, order);
  {
    std::vector<mpz_class> a, b;
    const double s = time_ms([&] { a = qseries::kernels::square_serial(p.numerators(), order); }, 3);
    const double o = time_ms([&] { b = qseries::kernels::square_omp(p.numerators(), order); }, 3);
    row("series square", s, o, a == b);
  }
  {
    std::vector<mpz_class> a, b;
    const double s = time_ms([&] { a = qseries::kernels::multiply_serial(e4.numerators(), p.numerators(), order); }, 3);
    const double o = time_ms([&] { b = qseries::kernels::multiply_omp(e4.numerators(), p.numerators(), order); }, 3);
    row("series multiply", s, o, a == b);
  }
  {
    const PrecCtx ctx(bits);
    std::vector<quad::Abscissa> nodes;
    for (long i = 1; i <= 256; ++i) {
      BigReal x(ctx.working_bits(), mpq_class(i, 257));
      nodes.push_back(quad::Abscissa{x, x, 1L - x});
    }
    const quad::Integrand f = [&ctx](const quad::Abscissa& x) {
      return special::f_hyper(x.from_a, x.to_b, ctx) * special::f_hyper(x.to_b, x.from_a, ctx);
    };
    std::vector<BigReal> a, b;
    const double s = time_ms([&] { a = quad::kernels::evaluate_serial(f, nodes); }, 3);
    const double o = time_ms([&] { b = quad::kernels::evaluate_omp(f, nodes); }, 3);
    row("quadrature node evaluation", s, o, a == b);
  }
  return 0;
}
