#pragma once

#include <string_view>
#include <vector>

#include "chowcalc/ring.hpp"

namespace chowcalc::ring {

/// One honest summand of a formal difference, with its declared rank.
struct HonestPiece {
  int sign = 1;
  int rank = 0;
  GradedClass ctotal;
};

/// Formal difference of bundles: virtual rank and total Chern class (the
/// truncated quotient for differences). When built from honest pieces the
/// decomposition is kept so the bundle can be twisted by a line bundle.
class VirtualBundle {
 public:
  /// Rank-r bundle with total Chern class c; c must have constant term 1 and
  /// vanish above degree r.
  static VirtualBundle honest(int rank, GradedClass ctotal);
  static VirtualBundle trivial(Context ctx, int rank);
  static VirtualBundle line(GradedClass c1);
  /// Rank and Chern data only; cannot be twisted.
  static VirtualBundle formal(int vrank, GradedClass ctotal);
  static VirtualBundle zero(Context ctx) { return trivial(std::move(ctx), 0); }

  int vrank() const noexcept { return vrank_; }
  const GradedClass& ctotal() const noexcept { return ctotal_; }
  const Context& context() const noexcept { return ctotal_.context(); }
  bool decomposed() const noexcept { return decomposed_; }
  const std::vector<HonestPiece>& pieces() const noexcept { return pieces_; }
  /// Decomposed with only positive pieces.
  bool is_honest() const noexcept;

  VirtualBundle operator-() const;
  bool operator==(const VirtualBundle& other) const {
    return vrank_ == other.vrank_ && ctotal_ == other.ctotal_;
  }

  friend VirtualBundle whitney_sum(const VirtualBundle& e, const VirtualBundle& f);
  friend VirtualBundle twist_by_line(const VirtualBundle& e, std::string_view line);

 private:
  VirtualBundle(int vrank, GradedClass ctotal, bool decomposed, std::vector<HonestPiece> pieces);

  int vrank_;
  GradedClass ctotal_;
  bool decomposed_;
  std::vector<HonestPiece> pieces_;
};

VirtualBundle whitney_sum(const VirtualBundle& e, const VirtualBundle& f);
VirtualBundle difference(const VirtualBundle& e, const VirtualBundle& f);
/// E (x) L for a degree-1 variable l = c1(L): c(E (x) L) = sum_j c_j(E) (1 + l)^(r - j)
/// on each honest piece, extended multiplicatively to differences.
VirtualBundle twist_by_line(const VirtualBundle& e, std::string_view line);

/// s = c^{-1}, so s_1 = -c_1 for a bundle.
GradedClass segre_total(const VirtualBundle& e);
GradedClass chern_class(const VirtualBundle& e, int k);
/// c_{vrank}(e); errors if vrank is negative or above the truncation.
GradedClass top_chern(const VirtualBundle& e);

/// pi_* on P(V) -> base: z^{r-1+i} * alpha maps to s_i(V) * alpha, lower
/// powers of z map to 0. `a` is read as a polynomial in z with z-free
/// coefficients.
GradedClass projective_pushforward(const GradedClass& a, const VirtualBundle& v,
                                   std::string_view z);

}  // namespace chowcalc::ring
