#include "chowcalc/lattice.hpp"

#include <string>

#include "chowcalc/error.hpp"

namespace chowcalc::lattice {

SurfaceGeometry::SurfaceGeometry(std::vector<std::vector<Int>> gram,
                                 std::vector<Int> canonical, Int p_g, Int q, Int c2,
                                 Int dim_base)
    : gram_(std::move(gram)),
      canonical_(std::move(canonical)),
      p_g_(p_g),
      q_(q),
      c2_(c2),
      dim_base_(dim_base) {
  const std::size_t n = gram_.size();
  if (n == 0) fail(ErrorKind::Validation, "lattice rank must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n)
      fail(ErrorKind::DimensionMismatch, "gram row " + std::to_string(i) + " has length " +
                                             std::to_string(gram_[i].size()) + ", expected " +
                                             std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram_[i][j] != gram_[j][i])
        fail(ErrorKind::Validation, "gram is not symmetric at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
  if (canonical_.size() != n)
    fail(ErrorKind::DimensionMismatch, "canonical class has length " +
                                           std::to_string(canonical_.size()) + ", expected " +
                                           std::to_string(n));
  if (p_g_ < 0 || q_ < 0 || dim_base_ < 0)
    fail(ErrorKind::Validation, "p_g, q and dim_base must be nonnegative");
}

Int SurfaceGeometry::form(const std::vector<Int>& a, const std::vector<Int>& b) const {
  const std::size_t n = rank();
  if (a.size() != n || b.size() != n)
    fail(ErrorKind::DimensionMismatch, "class of length " + std::to_string(a.size()) + "/" +
                                           std::to_string(b.size()) + " on a rank " +
                                           std::to_string(n) + " lattice");
  Int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < n; ++j) row += gram_[i][j] * b[j];
    total += a[i] * row;
  }
  return total;
}

std::string_view to_string(Febd f) { return f == Febd::Zero ? "zero" : "pg"; }

std::string_view to_string(TypeTag t) {
  switch (t) {
    case TypeTag::TypeI: return "typeI";
    case TypeTag::TypeII: return "typeII";
    case TypeTag::Ordinary: return "ordinary";
  }
  return "ordinary";
}

std::optional<Febd> parse_febd(std::string_view s) {
  if (s == "zero") return Febd::Zero;
  if (s == "pg") return Febd::Pg;
  return std::nullopt;
}

std::optional<TypeTag> parse_type_tag(std::string_view s) {
  if (s == "typeI") return TypeTag::TypeI;
  if (s == "typeII") return TypeTag::TypeII;
  if (s == "ordinary") return TypeTag::Ordinary;
  return std::nullopt;
}

LatticeClass LatticeClass::operator+(const LatticeClass& other) const {
  if (coords.size() != other.coords.size())
    fail(ErrorKind::DimensionMismatch, "adding classes of different lengths");
  LatticeClass out = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] += other.coords[i];
  out.degree_rel += other.degree_rel;
  return out;
}

LatticeClass LatticeClass::operator-(const LatticeClass& other) const {
  return *this + other.scaled(-1);
}

LatticeClass LatticeClass::scaled(Int k) const {
  LatticeClass out = *this;
  for (auto& c : out.coords) c *= k;
  out.degree_rel *= k;
  return out;
}

LatticeClass sum(const std::vector<LatticeClass>& classes, std::size_t rank) {
  LatticeClass out(std::vector<Int>(rank, 0));
  if (!classes.empty()) {
    out.febd = classes.front().febd;
    out.type_tag = classes.front().type_tag;
  }
  for (const auto& c : classes) {
    LatticeClass tmp = out + c;
    out.coords = std::move(tmp.coords);
    out.degree_rel = tmp.degree_rel;
  }
  return out;
}

Int pair(const LatticeClass& a, const LatticeClass& b, const SurfaceGeometry& g) {
  return g.form(a.coords, b.coords);
}

bool is_exceptional(const LatticeClass& e, const SurfaceGeometry& g) {
  return pair(e, e, g) < 0 && e.degree_rel > 0;
}

namespace {

// (e^2 - K.e), verified even.
Int adjunction_numerator(const LatticeClass& e, const SurfaceGeometry& g) {
  const Int num = pair(e, e, g) - g.form(e.coords, g.canonical());
  if (num % 2 != 0)
    fail(ErrorKind::Parity, "e^2 - K.e = " + std::to_string(num) + " is odd");
  return num;
}

}  // namespace

Int expected_dimension(const LatticeClass& e, const SurfaceGeometry& g) {
  const Int half = adjunction_numerator(e, g) / 2;
  const Int pg_term = e.febd == Febd::Pg ? g.p_g() : 0;
  return g.dim_base() + pg_term + half;
}

Int typeI_codimension(const LatticeClass& e, const SurfaceGeometry& g) {
  const Int codim = -(adjunction_numerator(e, g) / 2);
  const Int alt = -pair(e, e, g) - 1;
  if (codim != alt)
    fail(ErrorKind::InconsistentInput,
         "not a fan-like type I class: -(e^2 - K.e)/2 = " + std::to_string(codim) +
             " but -e^2 - 1 = " + std::to_string(alt));
  return codim;
}

Int adjunction_delta(Int l_sq) {
  if (l_sq < -2 || l_sq % 2 != 0)
    fail(ErrorKind::Parity, "L^2 = " + std::to_string(l_sq) + " is not of the form 2*delta - 2");
  return l_sq / 2 + 1;
}

bool satisfies_degree_assumption(const LatticeClass& e, Int canonical_degree_rel) {
  return canonical_degree_rel - e.degree_rel < 0;
}

}  // namespace chowcalc::lattice
