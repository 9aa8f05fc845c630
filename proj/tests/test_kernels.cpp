#include <doctest.h>

#include "chowcalc/kernels.hpp"
#include "chowcalc/sample.hpp"

using namespace chowcalc;

TEST_CASE("parallel multiply matches the serial reference") {
  sample::Rng rng(31);
  const auto ctx = sample::bundle_context(8);
  const std::vector<std::string> vars{"a", "b", "c", "d", "z", "n"};
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample::random_poly(rng, ctx, vars, 0, 8, 120);
    const auto b = sample::random_poly(rng, ctx, vars, 0, 8, 120);
    CHECK(kernels::omp::multiply(a.terms(), b.terms(), 8) ==
          kernels::serial::multiply(a.terms(), b.terms(), 8));
  }
}

TEST_CASE("parallel multiply handles empty and constant operands") {
  const auto ctx = sample::bundle_context(4);
  const auto one = ring::GradedClass::one(ctx);
  const ring::Terms empty;
  CHECK(kernels::omp::multiply(empty, one.terms(), 4).empty());
  CHECK(kernels::omp::multiply(one.terms(), one.terms(), 4) == one.terms());
}

TEST_CASE("parallel eta series matches the serial reference") {
  for (std::int64_t e : {0, 1, 2, 24, 137}) {
    for (std::size_t n : {0u, 1u, 7u, 60u}) {
      CAPTURE(e);
      CAPTURE(n);
      CHECK(kernels::omp::eta_power_series(e, n) == kernels::serial::eta_power_series(e, n));
    }
  }
}
