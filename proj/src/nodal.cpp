#include "chowcalc/nodal.hpp"

#include "chowcalc/error.hpp"
#include "chowcalc/kernels.hpp"
#include "chowcalc/lattice.hpp"

namespace chowcalc::nodal {

std::string CoeffSeries::to_text() const {
  std::string out;
  for (std::size_t d = 0; d < coeffs.size(); ++d) out += std::to_string(d) + " " + coeffs[d].str() + "\n";
  return out;
}

CoeffSeries yau_zaslow_series(std::int64_t c2, std::size_t delta_max) {
  if (c2 < 0) fail(ErrorKind::Validation, "c2 must be nonnegative, got " + std::to_string(c2));
  return CoeffSeries{kernels::omp::eta_power_series(c2, delta_max), delta_max};
}

bool k3_type2_vanishing(std::int64_t pg, bool r2_c1_is_zero, std::int64_t p_typeII) {
  if (p_typeII < 1) fail(ErrorKind::Validation, "need at least one type II class");
  return pg >= 1 && r2_c1_is_zero;
}

VirtualCount virtual_count_report(std::int64_t l_sq, std::int64_t c2) {
  const std::int64_t delta = lattice::adjunction_delta(l_sq);
  const CoeffSeries s = yau_zaslow_series(c2, static_cast<std::size_t>(delta));
  return VirtualCount{delta, s.coeffs.back()};
}

}  // namespace chowcalc::nodal
