#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace chowcalc::lattice {

using Int = std::int64_t;

/// Numerical data of a surface fibration X -> B: the intersection form on the
/// fiber's divisor lattice, the relative canonical class and the scalar
/// invariants p_g, q, c2 and dim B.
class SurfaceGeometry {
 public:
  SurfaceGeometry(std::vector<std::vector<Int>> gram, std::vector<Int> canonical,
                  Int p_g, Int q, Int c2, Int dim_base);

  std::size_t rank() const noexcept { return canonical_.size(); }
  const std::vector<std::vector<Int>>& gram() const noexcept { return gram_; }
  const std::vector<Int>& canonical() const noexcept { return canonical_; }
  Int p_g() const noexcept { return p_g_; }
  Int q() const noexcept { return q_; }
  Int c2() const noexcept { return c2_; }
  Int dim_base() const noexcept { return dim_base_; }

  /// a^T * gram * b on raw coordinate vectors.
  Int form(const std::vector<Int>& a, const std::vector<Int>& b) const;
  /// K . K
  Int canonical_square() const { return form(canonical_, canonical_); }

 private:
  std::vector<std::vector<Int>> gram_;
  std::vector<Int> canonical_;
  Int p_g_;
  Int q_;
  Int c2_;
  Int dim_base_;
};

/// Formal excess base dimension mode: whether the p_g shift enters the
/// expected dimension.
enum class Febd { Zero, Pg };
enum class TypeTag { TypeI, TypeII, Ordinary };

std::string_view to_string(Febd f);
std::string_view to_string(TypeTag t);
std::optional<Febd> parse_febd(std::string_view s);
std::optional<TypeTag> parse_type_tag(std::string_view s);

struct LatticeClass {
  std::vector<Int> coords;
  Int degree_rel = 0;
  Febd febd = Febd::Pg;
  TypeTag type_tag = TypeTag::Ordinary;

  LatticeClass() = default;
  explicit LatticeClass(std::vector<Int> c, Int deg = 0, Febd f = Febd::Pg,
                        TypeTag t = TypeTag::Ordinary)
      : coords(std::move(c)), degree_rel(deg), febd(f), type_tag(t) {}

  LatticeClass operator+(const LatticeClass& other) const;
  LatticeClass operator-(const LatticeClass& other) const;
  LatticeClass scaled(Int k) const;
};

/// Sum of coordinate vectors; tags are those of the first element.
LatticeClass sum(const std::vector<LatticeClass>& classes, std::size_t rank);

Int pair(const LatticeClass& a, const LatticeClass& b, const SurfaceGeometry& g);

/// e^2 < 0 and deg_{X/B} e > 0.
bool is_exceptional(const LatticeClass& e, const SurfaceGeometry& g);

/// dim B + [p_g] + (e^2 - K.e)/2, the p_g term present only in febd = pg mode.
Int expected_dimension(const LatticeClass& e, const SurfaceGeometry& g);

/// -(e^2 - K.e)/2, checked against -e^2 - 1.
Int typeI_codimension(const LatticeClass& e, const SurfaceGeometry& g);

/// delta with L^2 = 2 delta - 2.
Int adjunction_delta(Int l_sq);

/// deg(K - e) < 0, given the relative degree of K. Opt-in check only.
bool satisfies_degree_assumption(const LatticeClass& e, Int canonical_degree_rel);

}  // namespace chowcalc::lattice
