#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference with identical results; tests compare the two and the benchmark
// target times them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chowcalc/rational.hpp"
#include "chowcalc/ring.hpp"

namespace chowcalc::kernels {

/// Truncated product of two term maps.
namespace serial {
ring::Terms multiply(const ring::Terms& a, const ring::Terms& b, int truncation);
std::vector<BigInt> eta_power_series(std::int64_t exponent, std::size_t delta_max);
}  // namespace serial

namespace omp {
ring::Terms multiply(const ring::Terms& a, const ring::Terms& b, int truncation);
/// Coefficients of prod_{i>=1} (1 - q^i)^(-exponent) through q^delta_max,
/// factors batched across threads.
std::vector<BigInt> eta_power_series(std::int64_t exponent, std::size_t delta_max);
}  // namespace omp

/// Products smaller than this many term pairs stay serial.
inline constexpr std::size_t kParallelMultiplyThreshold = 4096;

int thread_count();

}  // namespace chowcalc::kernels
