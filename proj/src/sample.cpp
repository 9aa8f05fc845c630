#include "chowcalc/sample.hpp"

#include <algorithm>

namespace chowcalc::sample {

using lattice::Int;
using ring::GradedClass;
using ring::VirtualBundle;

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational Rng::small_rational(std::int64_t max_num, std::int64_t max_den) {
  const std::int64_t num = uniform(-max_num, max_num);
  const std::int64_t den = uniform(1, max_den);
  return Rational(num, den);
}

lattice::SurfaceGeometry random_geometry(Rng& rng, std::size_t max_rank) {
  for (;;) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_rank)));
    std::vector<std::vector<Int>> gram(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      gram[i][i] = rng.uniform(-3, 1);
      for (std::size_t j = i + 1; j < n; ++j) gram[i][j] = gram[j][i] = rng.uniform(-1, 2);
    }
    // K is characteristic iff (gram K)_j = gram_jj mod 2 for every j.
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Int> k(n);
      for (auto& x : k) x = rng.uniform(-2, 2);
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        Int row = 0;
        for (std::size_t i = 0; i < n; ++i) row += gram[j][i] * k[i];
        ok = ((row - gram[j][j]) % 2) == 0;
      }
      if (!ok) continue;
      Int k_sq = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k_sq += k[i] * gram[i][j] * k[j];
      const Int c2 = 12 * rng.uniform(0, 3) - k_sq;
      return lattice::SurfaceGeometry(gram, k, rng.uniform(0, 2), rng.uniform(0, 2), c2,
                                      rng.uniform(0, 3));
    }
  }
}

lattice::LatticeClass random_class(Rng& rng, std::size_t rank, std::int64_t bound) {
  std::vector<Int> coords(rank);
  for (auto& x : coords) x = rng.uniform(-bound, bound);
  return lattice::LatticeClass(std::move(coords), rng.uniform(0, 3));
}

ring::Context bundle_context(int truncation) {
  return ring::RingContext::make({{"a", 1}, {"b", 1}, {"c", 2}, {"d", 3}, {"z", 1}, {"n", 0}},
                                 truncation);
}

GradedClass random_poly(Rng& rng, const ring::Context& ctx, const std::vector<std::string>& vars,
                        int min_degree, int max_degree, int terms) {
  GradedClass out(ctx);
  max_degree = std::min(max_degree, ctx->truncation());
  if (vars.empty() || max_degree < min_degree) return out;
  for (int t = 0; t < terms; ++t) {
    const int target = static_cast<int>(rng.uniform(min_degree, max_degree));
    // Random walk over variables until the degree budget is met or stuck.
    GradedClass mono = GradedClass::one(ctx);
    int deg = 0;
    for (int guard = 0; guard < 16 && deg < target; ++guard) {
      const auto& name = vars[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vars.size()) - 1))];
      const int vd = ctx->variables()[ctx->index(name)].degree;
      if (vd == 0 || deg + vd > target) continue;
      mono = mono * GradedClass::variable(ctx, name);
      deg += vd;
    }
    if (deg < min_degree) continue;
    out += mono * rng.small_rational();
  }
  return out;
}

VirtualBundle random_honest(Rng& rng, const ring::Context& ctx, int rank) {
  GradedClass c = GradedClass::one(ctx);
  for (int j = 1; j <= rank && j <= ctx->truncation(); ++j)
    c += random_poly(rng, ctx, {"a", "b", "c", "d"}, j, j, 2);
  return VirtualBundle::honest(rank, c);
}

family::KuranishiModel random_kuranishi(Rng& rng, const ring::Context& ctx) {
  const int trunc = ctx->truncation();
  for (;;) {
    const int v_rank = static_cast<int>(rng.uniform(1, 4));
    const int w_rank = static_cast<int>(rng.uniform(0, 3));
    const int base = static_cast<int>(rng.uniform(0, 4));
    const int ed = base + v_rank - 1 - w_rank;
    if (ed < 0 || ed > trunc) continue;
    GradedClass segre = GradedClass::one(ctx) +
                        random_poly(rng, ctx, {"a", "b", "c", "d", "z"}, 1, trunc, 5);
    return family::KuranishiModel(random_honest(rng, ctx, v_rank), random_honest(rng, ctx, w_rank),
                                  base, std::move(segre));
  }
}

VirtualBundle random_n_dependent_omega(Rng& rng, const ring::Context& ctx) {
  const GradedClass n = GradedClass::variable(ctx, "n");
  auto n_bundle = [&](int rank) {
    // Honest bundle whose c_1 carries an n-multiple of a base class.
    GradedClass c = random_honest(rng, ctx, rank).ctotal();
    if (rank >= 1) c += n * random_poly(rng, ctx, {"a", "b"}, 1, 1, 2);
    return VirtualBundle::honest(rank, c);
  };
  for (;;) {
    const int pos_rank = static_cast<int>(rng.uniform(1, 4));
    const int neg_rank = static_cast<int>(rng.uniform(0, 3));
    if (pos_rank - neg_rank < 0) continue;
    VirtualBundle pos = ring::twist_by_line(n_bundle(pos_rank), "z");
    VirtualBundle neg = ring::twist_by_line(n_bundle(neg_rank), "z");
    return ring::difference(pos, neg);
  }
}

}  // namespace chowcalc::sample
