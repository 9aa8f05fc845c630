#pragma once

// Seeded generators of random instances for the property checks run by the
// CLI and the test suites. Draws use explicit modular reduction so that a
// seed yields the same instance on every platform.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chowcalc/bundle.hpp"
#include "chowcalc/family.hpp"
#include "chowcalc/lattice.hpp"
#include "chowcalc/ring.hpp"

namespace chowcalc::sample {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Rational small_rational(std::int64_t max_num = 3, std::int64_t max_den = 3);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random symmetric Gram matrix of rank <= max_rank with a characteristic
/// canonical class (e^2 - K.e always even) and c2 chosen so that
/// K^2 + c2 is divisible by 12.
lattice::SurfaceGeometry random_geometry(Rng& rng, std::size_t max_rank);

lattice::LatticeClass random_class(Rng& rng, std::size_t rank, std::int64_t bound = 2);

/// Context used by the bundle property checks: base classes a, b (degree 1),
/// c (degree 2), d (degree 3), the hyperplane z and the parameter n.
ring::Context bundle_context(int truncation);

/// Random class in the listed variables, with all terms of degree in
/// [min_degree, max_degree].
ring::GradedClass random_poly(Rng& rng, const ring::Context& ctx,
                              const std::vector<std::string>& vars, int min_degree, int max_degree,
                              int terms);

/// Honest rank-r bundle with random Chern classes c_1..c_r in the base
/// variables a, b, c, d.
ring::VirtualBundle random_honest(Rng& rng, const ring::Context& ctx, int rank);

/// Random model with rank V in [1, 4], rank W in [0, 3] and expected
/// dimension inside the truncation.
family::KuranishiModel random_kuranishi(Rng& rng, const ring::Context& ctx);

/// Random virtual bundle of the shape A - B with n entering the Chern data of
/// some summands linearly; vrank in [0, 3].
ring::VirtualBundle random_n_dependent_omega(Rng& rng, const ring::Context& ctx);

}  // namespace chowcalc::sample
