#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chowcalc/rational.hpp"

namespace chowcalc::nodal {

/// 1 + sum n_delta q^delta through q^delta_max.
struct CoeffSeries {
  std::vector<BigInt> coeffs;
  std::size_t delta_max = 0;

  /// "delta n_delta" per line.
  std::string to_text() const;
};

/// prod_{i>=1} (1 - q^i)^(-c2), exact.
CoeffSeries yau_zaslow_series(std::int64_t c2, std::size_t delta_max);

/// Whether the c_{p_g}^p insertion forces every mixed invariant with a type II
/// class to vanish: p_g >= 1 and c_{p_g}(R^2 pi_* O) declared zero.
bool k3_type2_vanishing(std::int64_t pg, bool r2_c1_is_zero, std::int64_t p_typeII);

struct VirtualCount {
  std::int64_t delta = 0;
  BigInt n_delta;
};

VirtualCount virtual_count_report(std::int64_t l_sq, std::int64_t c2);

}  // namespace chowcalc::nodal
