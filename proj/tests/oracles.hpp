#pragma once

// Reference computations written independently of the library code paths
// they check.

#include <vector>

#include "chowcalc/bundle.hpp"
#include "chowcalc/rational.hpp"
#include "chowcalc/ring.hpp"

namespace oracle {

using chowcalc::BigInt;
using chowcalc::ring::GradedClass;
using chowcalc::ring::HonestPiece;
using chowcalc::ring::VirtualBundle;

/// 1/c as sum_k (1 - c)^k, stopping once the powers vanish.
inline GradedClass inverse_by_series(const GradedClass& c) {
  const GradedClass one = GradedClass::one(c.context());
  const GradedClass x = one - c;
  GradedClass out = one, power = one;
  for (int k = 1; k <= c.truncation() + 1; ++k) {
    power = power * x;
    out += power;
  }
  return out;
}

/// Total Chern class of a decomposed bundle as the quotient of its positive
/// pieces by its negative ones.
inline GradedClass chern_quotient(const VirtualBundle& v) {
  GradedClass num = GradedClass::one(v.context()), den = GradedClass::one(v.context());
  for (const HonestPiece& p : v.pieces()) (p.sign > 0 ? num : den) = (p.sign > 0 ? num : den) * p.ctotal;
  return num * inverse_by_series(den);
}

/// tau: degree-rank part of the quotient, n -> 0, z -> 1.
inline GradedClass tau_by_quotient(const VirtualBundle& omega) {
  return chern_quotient(omega).degree_part(omega.vrank()).substitute("n", 0).substitute("z", 1);
}

/// prod_{i>=1} (1 - q^i)^{-c2} by multiplying out each factor's binomial
/// series term by term.
inline std::vector<BigInt> eta_product_bruteforce(long c2, std::size_t n) {
  std::vector<BigInt> series(n + 1, 0);
  series[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    // (1 - q^i)^{-1}, applied c2 times
    for (long rep = 0; rep < c2; ++rep) {
      std::vector<BigInt> next(n + 1, 0);
      for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = a; b <= n; b += i) next[b] += series[a];
      series = std::move(next);
    }
  }
  return series;
}

/// Partition numbers from Euler's pentagonal recurrence.
inline std::vector<BigInt> partitions_pentagonal(std::size_t n) {
  std::vector<BigInt> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      p[m] += sign * p[m - g1];
      if (g2 <= static_cast<long>(m)) p[m] += sign * p[m - g2];
    }
  }
  return p;
}

}  // namespace oracle
