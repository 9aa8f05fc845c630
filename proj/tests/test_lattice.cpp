#include <doctest.h>

#include "chowcalc/error.hpp"
#include "chowcalc/lattice.hpp"
#include "chowcalc/sample.hpp"

using namespace chowcalc;
using namespace chowcalc::lattice;

namespace {

SurfaceGeometry diag(std::vector<Int> d, std::vector<Int> k, Int pg = 0, Int q = 0, Int c2 = 0,
                     Int dim_base = 0) {
  std::vector<std::vector<Int>> gram(d.size(), std::vector<Int>(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) gram[i][i] = d[i];
  return SurfaceGeometry(gram, k, pg, q, c2, dim_base);
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalAssertion;
}

}  // namespace

TEST_CASE("pair") {
  CHECK(pair(LatticeClass({1}), LatticeClass({1}), diag({-1}, {0})) == -1);
  const SurfaceGeometry hyp({{0, 1}, {1, 0}}, {0, 0}, 0, 0, 0, 0);
  CHECK(pair(LatticeClass({1, 0}), LatticeClass({0, 1}), hyp) == 1);
  // (1,-1,0) diag(2,-1,-1) (1,0,-1)^T = 2
  CHECK(pair(LatticeClass({1, -1, 0}), LatticeClass({1, 0, -1}), diag({2, -1, -1}, {0, 0, 0})) == 2);
  CHECK(kind_of([] { (void)pair(LatticeClass({1, 0}), LatticeClass({1}), diag({-1}, {0})); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("geometry validation") {
  CHECK(kind_of([] { SurfaceGeometry({{0, 1}, {2, 0}}, {0, 0}, 0, 0, 0, 0); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([] { SurfaceGeometry({{0, 1}, {1, 0}}, {0}, 0, 0, 0, 0); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("is_exceptional") {
  const auto g = diag({-1}, {0});
  CHECK(is_exceptional(LatticeClass({1}, 1), g));
  CHECK_FALSE(is_exceptional(LatticeClass({1}, 0), g));
  CHECK_FALSE(is_exceptional(LatticeClass({1, 1}, 1), diag({1, -1}, {0, 0})));
}

TEST_CASE("expected_dimension") {
  // K3 fiber, dim B = 2, e^2 = -2
  CHECK(expected_dimension(LatticeClass({1}, 1), diag({-2}, {0}, 1, 0, 24, 2)) == 2);
  // (-1)-class with K.e = -1
  CHECK(expected_dimension(LatticeClass({1}, 1), diag({-1}, {1})) == 0);
  CHECK(expected_dimension(LatticeClass({1}, 1, Febd::Zero), diag({-1}, {1}, 5)) == 0);
  CHECK(expected_dimension(LatticeClass({1}, 1, Febd::Pg), diag({-1}, {1}, 5)) == 5);
  CHECK(kind_of([] { (void)expected_dimension(LatticeClass({1}), diag({-1}, {0})); }) ==
        ErrorKind::Parity);
}

TEST_CASE("typeI_codimension") {
  CHECK(kind_of([] { (void)typeI_codimension(LatticeClass({1}), diag({-1}, {-1})); }) ==
        ErrorKind::InconsistentInput);
  CHECK(typeI_codimension(LatticeClass({1}), diag({-1}, {1})) == 0);
  CHECK(typeI_codimension(LatticeClass({1}), diag({-2}, {0})) == 1);
}

TEST_CASE("adjunction_delta") {
  CHECK(adjunction_delta(-2) == 0);
  CHECK(adjunction_delta(2) == 2);
  CHECK(kind_of([] { (void)adjunction_delta(3); }) == ErrorKind::Parity);
  CHECK(kind_of([] { (void)adjunction_delta(-4); }) == ErrorKind::Parity);
  for (Int d = 0; d < 200; ++d) CHECK(adjunction_delta(2 * d - 2) == d);
}

TEST_CASE("febd and type tags round-trip through text") {
  for (Febd f : {Febd::Zero, Febd::Pg}) CHECK(parse_febd(to_string(f)) == f);
  for (TypeTag t : {TypeTag::TypeI, TypeTag::TypeII, TypeTag::Ordinary}) CHECK(parse_type_tag(to_string(t)) == t);
  CHECK_FALSE(parse_febd("one").has_value());
}

TEST_CASE("degree assumption predicate") {
  CHECK(satisfies_degree_assumption(LatticeClass({1}, 2), 1));
  CHECK_FALSE(satisfies_degree_assumption(LatticeClass({1}, 1), 1));
}

TEST_CASE("pair is bilinear and symmetric on random instances") {
  sample::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = sample::random_geometry(rng, 6);
    const auto a = sample::random_class(rng, g.rank(), 5);
    const auto b = sample::random_class(rng, g.rank(), 5);
    const auto c = sample::random_class(rng, g.rank(), 5);
    const Int k = rng.uniform(-4, 4);
    CHECK(pair(a + b, c, g) == pair(a, c, g) + pair(b, c, g));
    CHECK(pair(a.scaled(k), c, g) == k * pair(a, c, g));
    CHECK(pair(a, b, g) == pair(b, a, g));
  }
}

TEST_CASE("random geometries keep the lattice parity and the Noether divisibility") {
  sample::Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = sample::random_geometry(rng, 5);
    const auto e = sample::random_class(rng, g.rank(), 4);
    CHECK((pair(e, e, g) - g.form(g.canonical(), e.coords)) % 2 == 0);
    CHECK((g.canonical_square() + g.c2()) % 12 == 0);
  }
}

TEST_CASE("accepted type I classes satisfy both codimension formulas") {
  sample::Rng rng(13);
  int accepted = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = sample::random_geometry(rng, 4);
    const auto e = sample::random_class(rng, g.rank(), 2);
    const Int e2 = pair(e, e, g);
    try {
      const Int codim = typeI_codimension(e, g);
      ++accepted;
      CHECK(codim == -e2 - 1);
      CHECK(codim == -(e2 - g.form(g.canonical(), e.coords)) / 2);
    } catch (const Error& err) {
      CHECK((err.kind() == ErrorKind::InconsistentInput || err.kind() == ErrorKind::Parity));
    }
  }
  CHECK(accepted > 0);
}
