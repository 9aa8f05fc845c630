#include "chowcalc/bundle.hpp"

#include <string>

#include "chowcalc/error.hpp"

namespace chowcalc::ring {

namespace {

void check_unit(const GradedClass& c, const char* what) {
  const GradedClass low = c.degree_part(0);
  if (!(low == GradedClass::one(c.context())))
    fail(ErrorKind::InconsistentInput,
         std::string(what) + ": total Chern class must have constant term exactly 1, got '" +
             low.to_string() + "'");
}

}  // namespace

VirtualBundle::VirtualBundle(int vrank, GradedClass ctotal, bool decomposed,
                             std::vector<HonestPiece> pieces)
    : vrank_(vrank), ctotal_(std::move(ctotal)), decomposed_(decomposed), pieces_(std::move(pieces)) {}

VirtualBundle VirtualBundle::honest(int rank, GradedClass ctotal) {
  if (rank < 0) fail(ErrorKind::InconsistentInput, "honest bundle with negative rank");
  check_unit(ctotal, "honest bundle");
  if (ctotal.top_degree() > rank)
    fail(ErrorKind::InconsistentInput, "rank " + std::to_string(rank) +
                                           " bundle has nonzero Chern class in degree " +
                                           std::to_string(ctotal.top_degree()));
  std::vector<HonestPiece> pieces;
  if (!(rank == 0 && ctotal == GradedClass::one(ctotal.context())))
    pieces.push_back(HonestPiece{1, rank, ctotal});
  return VirtualBundle(rank, ctotal, true, std::move(pieces));
}

VirtualBundle VirtualBundle::trivial(Context ctx, int rank) {
  return honest(rank, GradedClass::one(std::move(ctx)));
}

VirtualBundle VirtualBundle::line(GradedClass c1) {
  if (!c1.is_zero() && (c1.top_degree() != 1 || !(c1.degree_part(1) == c1)))
    fail(ErrorKind::InconsistentInput, "first Chern class of a line bundle must be homogeneous of degree 1");
  GradedClass c = GradedClass::one(c1.context()) + c1;
  return honest(1, std::move(c));
}

VirtualBundle VirtualBundle::formal(int vrank, GradedClass ctotal) {
  check_unit(ctotal, "virtual bundle");
  return VirtualBundle(vrank, std::move(ctotal), false, {});
}

bool VirtualBundle::is_honest() const noexcept {
  if (!decomposed_) return false;
  for (const auto& p : pieces_)
    if (p.sign < 0) return false;
  return true;
}

VirtualBundle VirtualBundle::operator-() const {
  std::vector<HonestPiece> pieces = pieces_;
  for (auto& p : pieces) p.sign = -p.sign;
  return VirtualBundle(-vrank_, ctotal_.inverse(), decomposed_, std::move(pieces));
}

VirtualBundle whitney_sum(const VirtualBundle& e, const VirtualBundle& f) {
  if (!same_context(e.context(), f.context()))
    fail(ErrorKind::ContextMismatch, "whitney sum of bundles in different contexts");
  const bool decomposed = e.decomposed_ && f.decomposed_;
  std::vector<HonestPiece> pieces;
  if (decomposed) {
    pieces = e.pieces_;
    pieces.insert(pieces.end(), f.pieces_.begin(), f.pieces_.end());
  }
  return VirtualBundle(e.vrank_ + f.vrank_, e.ctotal_ * f.ctotal_, decomposed, std::move(pieces));
}

VirtualBundle difference(const VirtualBundle& e, const VirtualBundle& f) { return whitney_sum(e, -f); }

VirtualBundle twist_by_line(const VirtualBundle& e, std::string_view line) {
  const Context& ctx = e.context();
  const std::size_t li = ctx->index(line);
  if (ctx->variables()[li].degree != 1)
    fail(ErrorKind::InconsistentInput, "twisting line '" + std::string(line) + "' must have degree 1");
  if (!e.decomposed_)
    fail(ErrorKind::UndeclaredRank, "twist requested on a virtual bundle without declared honest ranks");

  const GradedClass one = GradedClass::one(ctx);
  const GradedClass one_plus_l = one + GradedClass::variable(ctx, line);
  GradedClass numerator = one;
  GradedClass denominator = one;
  std::vector<HonestPiece> twisted;
  twisted.reserve(e.pieces_.size());
  for (const auto& piece : e.pieces_) {
    GradedClass c(ctx);
    for (int j = 0; j <= piece.rank; ++j) {
      if (j > ctx->truncation()) break;
      const GradedClass cj = piece.ctotal.degree_part(j);
      if (cj.is_zero()) continue;
      c += cj * one_plus_l.pow(static_cast<unsigned>(piece.rank - j));
    }
    (piece.sign > 0 ? numerator : denominator) = (piece.sign > 0 ? numerator : denominator) * c;
    twisted.push_back(HonestPiece{piece.sign, piece.rank, std::move(c)});
  }
  return VirtualBundle(e.vrank_, numerator * denominator.inverse(), true, std::move(twisted));
}

GradedClass segre_total(const VirtualBundle& e) { return e.ctotal().inverse(); }

GradedClass chern_class(const VirtualBundle& e, int k) { return e.ctotal().degree_part(k); }

GradedClass top_chern(const VirtualBundle& e) {
  if (e.vrank() < 0 || e.vrank() > e.ctotal().truncation())
    fail(ErrorKind::OutOfRange, "virtual rank " + std::to_string(e.vrank()) + " outside [0, " +
                                    std::to_string(e.ctotal().truncation()) + "]");
  return e.ctotal().degree_part(e.vrank());
}

GradedClass projective_pushforward(const GradedClass& a, const VirtualBundle& v, std::string_view z) {
  if (!v.is_honest() || v.vrank() < 1)
    fail(ErrorKind::InconsistentInput, "projective pushforward needs an honest bundle of rank >= 1");
  if (!same_context(a.context(), v.context()))
    fail(ErrorKind::ContextMismatch, "pushforward across ring contexts");
  const GradedClass s = segre_total(v);
  const int r = v.vrank();
  GradedClass out(a.context());
  for (const auto& [k, alpha] : a.coefficients_in(z)) {
    const int i = k - (r - 1);
    if (i < 0 || i > a.truncation()) continue;
    out += s.degree_part(i) * alpha;
  }
  return out;
}

}  // namespace chowcalc::ring
