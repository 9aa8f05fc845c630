#include <doctest.h>

#include "chowcalc/error.hpp"
#include "chowcalc/nodal.hpp"
#include "oracles.hpp"

using namespace chowcalc;
using namespace chowcalc::nodal;

TEST_CASE("K3 series") {
  const auto s = yau_zaslow_series(24, 5);
  CHECK(s.delta_max == 5);
  REQUIRE(s.coeffs.size() == 6);
  const std::vector<BigInt> expected{1, 24, 324, 3200, 25650, 176256};
  CHECK(s.coeffs == expected);
  CHECK(s.to_text() == "0 1\n1 24\n2 324\n3 3200\n4 25650\n5 176256\n");
  CHECK(s.coeffs == oracle::eta_product_bruteforce(24, 5));
}

TEST_CASE("c2 = 1 gives partition numbers") {
  const auto s = yau_zaslow_series(1, 5);
  CHECK(s.coeffs == std::vector<BigInt>{1, 1, 2, 3, 5, 7});
  CHECK(yau_zaslow_series(1, 200).coeffs == oracle::partitions_pentagonal(200));
  CHECK(yau_zaslow_series(1, 200).coeffs.back() == BigInt("3972999029388"));
}

TEST_CASE("edge parameters") {
  CHECK(yau_zaslow_series(24, 0).coeffs == std::vector<BigInt>{1});
  CHECK(yau_zaslow_series(0, 4).coeffs == std::vector<BigInt>{1, 0, 0, 0, 0});
  CHECK_THROWS_AS((void)yau_zaslow_series(-1, 3), Error);
}

TEST_CASE("series is multiplicative in c2 and n1 = c2") {
  for (std::int64_t a : {0, 1, 3, 7, 24}) {
    for (std::int64_t b : {1, 2, 5, 13}) {
      const auto sa = yau_zaslow_series(a, 12), sb = yau_zaslow_series(b, 12), sab = yau_zaslow_series(a + b, 12);
      std::vector<BigInt> prod(13, 0);
      for (std::size_t i = 0; i <= 12; ++i)
        for (std::size_t j = 0; i + j <= 12; ++j) prod[i + j] += sa.coeffs[i] * sb.coeffs[j];
      CHECK(prod == sab.coeffs);
    }
  }
  for (std::int64_t c2 = 0; c2 < 60; ++c2) CHECK(yau_zaslow_series(c2, 1).coeffs[1] == c2);
}

TEST_CASE("K3 vanishing checker") {
  CHECK(k3_type2_vanishing(1, true, 1));
  CHECK_FALSE(k3_type2_vanishing(0, true, 1));
  CHECK_FALSE(k3_type2_vanishing(1, false, 1));
  for (std::int64_t pg = 0; pg < 4; ++pg)
    for (bool r2 : {false, true})
      if (k3_type2_vanishing(pg, r2, 1))
        for (std::int64_t p = 1; p < 10; ++p) CHECK(k3_type2_vanishing(pg, r2, p));
  CHECK_THROWS_AS((void)k3_type2_vanishing(1, true, 0), Error);
}

TEST_CASE("virtual count report") {
  auto r = virtual_count_report(-2, 24);
  CHECK(r.delta == 0);
  CHECK(r.n_delta == 1);
  r = virtual_count_report(0, 24);
  CHECK(r.delta == 1);
  CHECK(r.n_delta == 24);
  r = virtual_count_report(4, 24);
  CHECK(r.delta == 3);
  CHECK(r.n_delta == 3200);
  CHECK_THROWS_AS((void)virtual_count_report(3, 24), Error);
}
