#include "chowcalc/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chowcalc::kernels {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

void accumulate(ring::Terms& out, const ring::Monomial& m, const Rational& c) {
  auto [it, fresh] = out.try_emplace(m, c);
  if (!fresh) it->second += c;
}

void drop_zeros(ring::Terms& terms) {
  std::erase_if(terms, [](const auto& t) { return t.second == 0; });
}

// (1 - x)^(-exponent) = sum_j binom(exponent + j - 1, j) x^j
std::vector<BigInt> negative_binomial_coefficients(std::int64_t exponent, std::size_t count) {
  std::vector<BigInt> out(count + 1);
  out[0] = 1;
  for (std::size_t j = 1; j <= count; ++j)
    out[j] = out[j - 1] * (exponent + static_cast<std::int64_t>(j) - 1) / static_cast<std::int64_t>(j);
  return out;
}

// acc <- acc * (1 - q^i)^(-exponent), truncated at acc.size() - 1.
void apply_factor(std::vector<BigInt>& acc, std::size_t i, const std::vector<BigInt>& binom) {
  const std::size_t n = acc.size() - 1;
  std::vector<BigInt> next(acc.size());
  for (std::size_t k = 0; k <= n; ++k) {
    BigInt total = 0;
    for (std::size_t j = 0; j * i <= k; ++j) total += binom[j] * acc[k - j * i];
    next[k] = std::move(total);
  }
  acc = std::move(next);
}

}  // namespace

namespace serial {

ring::Terms multiply(const ring::Terms& a, const ring::Terms& b, int truncation) {
  ring::Terms out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma.degree + mb.degree > truncation) break;  // b is sorted by degree
      accumulate(out, ring::monomial_product(ma, mb), ca * cb);
    }
  }
  drop_zeros(out);
  return out;
}

std::vector<BigInt> eta_power_series(std::int64_t exponent, std::size_t delta_max) {
  std::vector<BigInt> a(delta_max + 1, 0);
  a[0] = 1;
  const std::int64_t reps = exponent < 0 ? -exponent : exponent;
  for (std::size_t i = 1; i <= delta_max; ++i) {
    for (std::int64_t r = 0; r < reps; ++r) {
      if (exponent > 0) {
        // divide by (1 - q^i)
        for (std::size_t k = i; k <= delta_max; ++k) a[k] += a[k - i];
      } else {
        // multiply by (1 - q^i)
        for (std::size_t k = delta_max; k >= i; --k) a[k] -= a[k - i];
      }
    }
  }
  return a;
}

}  // namespace serial

namespace omp {

ring::Terms multiply(const ring::Terms& a, const ring::Terms& b, int truncation) {
  const std::vector<std::pair<ring::Monomial, Rational>> left(a.begin(), a.end());
  const int threads = thread_count();
  std::vector<ring::Terms> partial(static_cast<std::size_t>(threads));
  const auto count = static_cast<std::int64_t>(left.size());

#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
#ifdef _OPENMP
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
    auto& local = partial[0];
#endif
    const auto& [ma, ca] = left[static_cast<std::size_t>(i)];
    for (const auto& [mb, cb] : b) {
      if (ma.degree + mb.degree > truncation) break;
      accumulate(local, ring::monomial_product(ma, mb), ca * cb);
    }
  }

  ring::Terms out;
  for (auto& local : partial)
    for (auto& [m, c] : local) accumulate(out, m, c);
  drop_zeros(out);
  return out;
}

std::vector<BigInt> eta_power_series(std::int64_t exponent, std::size_t delta_max) {
  const int threads = std::max(1, std::min<int>(thread_count(), static_cast<int>(delta_max)));
  const auto binom = negative_binomial_coefficients(exponent, delta_max);
  std::vector<std::vector<BigInt>> batch(static_cast<std::size_t>(threads));

  // Factor i costs ~delta_max^2 / i, so deal factors round-robin.
#pragma omp parallel for schedule(static, 1) num_threads(threads)
  for (int t = 0; t < threads; ++t) {
    auto& acc = batch[static_cast<std::size_t>(t)];
    acc.assign(delta_max + 1, 0);
    acc[0] = 1;
    for (std::size_t i = static_cast<std::size_t>(t) + 1; i <= delta_max;
         i += static_cast<std::size_t>(threads))
      apply_factor(acc, i, binom);
  }

  std::vector<BigInt> result = std::move(batch[0]);
  for (std::size_t b = 1; b < batch.size(); ++b) {
    std::vector<BigInt> next(delta_max + 1);
    const auto n = static_cast<std::int64_t>(delta_max);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t k = 0; k <= n; ++k) {
      BigInt total = 0;
      for (std::int64_t j = 0; j <= k; ++j)
        total += result[static_cast<std::size_t>(j)] * batch[b][static_cast<std::size_t>(k - j)];
      next[static_cast<std::size_t>(k)] = std::move(total);
    }
    result = std::move(next);
  }
  return result;
}

}  // namespace omp

}  // namespace chowcalc::kernels
