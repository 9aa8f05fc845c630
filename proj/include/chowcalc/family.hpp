#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chowcalc/bundle.hpp"
#include "chowcalc/lattice.hpp"
#include "chowcalc/ring.hpp"

namespace chowcalc::family {

using lattice::Int;
using lattice::LatticeClass;
using lattice::SurfaceGeometry;
using ring::GradedClass;
using ring::VirtualBundle;

/// Two-term model V -> W of a curve class over the base, together with the
/// Segre class of the moduli space inside P(V). The Segre class is an input:
/// it is never derived from V and W.
struct KuranishiModel {
  VirtualBundle v;
  VirtualBundle w;
  int base_dim = 0;
  GradedClass moduli_segre;

  KuranishiModel(VirtualBundle v, VirtualBundle w, int base_dim, GradedClass moduli_segre);

  /// dim T_B(X) + rank V - 1 - rank W
  int expected_dimension() const { return base_dim + v.vrank() - 1 - w.vrank(); }
};

/// { c(W (x) H) . s(M, P(V)) }_{ed}, with z = c1(H).
GradedClass localized_class(const KuranishiModel& k, std::string_view z);

/// (V, W) -> (V + G, W + G); the Segre input picks up s(G (x) H).
KuranishiModel stabilize(const KuranishiModel& k, const VirtualBundle& g, std::string_view z);

/// Diagonal pullback of a product of classes, realized as a . b . insertion.
GradedClass fiber_product_vclass(const GradedClass& a, const GradedClass& b,
                                 const GradedClass& normal_insertion);

/// chi(O) = (K^2 + c2) / 12; errors when the numerator is not divisible.
Rational chi_structure_sheaf(const SurfaceGeometry& g);
/// chi(O(c)) = chi(O) + (c^2 - K.c)/2.
Rational chi_line(const LatticeClass& c, const SurfaceGeometry& g);

/// Both evaluations of rank(omega). The Riemann-Roch route is a polynomial in
/// the multiplicity n of the auxiliary ample divisor D.
struct RankOmegaRoutes {
  Int lattice = 0;
  std::vector<Rational> riemann_roch;  // coefficients of n^0, n^1, n^2
};

RankOmegaRoutes rank_omega_routes(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                  const SurfaceGeometry& g, const LatticeClass& d);

/// -q p + sum e_i^2 - C.sum e_i + sum_{i<j} e_i.e_j, cross-checked against the
/// Riemann-Roch route (which must be constant in n). D defaults to the
/// all-ones vector.
Int rank_omega(const LatticeClass& c, const std::vector<LatticeClass>& es,
               const SurfaceGeometry& g, std::optional<LatticeClass> d = std::nullopt);

struct DimensionTriple {
  Int a1 = 0;
  Int a2 = 0;
  Int a3 = 0;
  /// 2 dim B - q + p_g + (C^2 - K.C)/2, equal to a1 + a2 - a3.
  Int total = 0;
};

DimensionTriple dimension_triple(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                 const SurfaceGeometry& g);

/// Ranks of the two restrictions to (sum e) . nD: one twisted by sum e, one
/// by C. Both are lengths of the same zero-cycle and must agree.
struct RestrictedRanks {
  Rational twisted_by_e;
  Rational twisted_by_c;
};

RestrictedRanks restricted_bundle_ranks(const LatticeClass& e_sum, const LatticeClass& c,
                                        const LatticeClass& d, Int n, const SurfaceGeometry& g);

struct TauClass {
  GradedClass tau;                       // z = 1, n = 0
  GradedClass n_free_top;                // c_{rank}(omega) at n = 0, as a polynomial in z
  std::map<int, GradedClass> by_power;   // r -> tau_r
};

TauClass tau_class(const VirtualBundle& omega, std::string_view z, std::string_view n);

/// Bundle and Segre data feeding the dominating-term expansion. Defaults are
/// the trivial choices: zero bundles and unit Segre classes.
struct ExpansionInputs {
  ExpansionInputs(ring::Context ctx, std::size_t p);

  std::string z = "z";
  std::string n = "n";
  std::vector<std::string> h;       // c1(H_{II;i}), one per type II class

  VirtualBundle w_residual;         // obstruction bundle of C - sum e
  GradedClass residual_segre;       // s(M_{C - sum e}, P(V_{C - sum e}))
  VirtualBundle w_prime;            // W'
  VirtualBundle v_prime;            // V'
  VirtualBundle u;                  // U_{e_1..e_p}
  VirtualBundle r0_nd;              // R^0 pi_* O_{nD}(nD)
  VirtualBundle r1;                 // rank-q stand-in for R^1 pi_* O
  GradedClass typeII_segre;         // s(M_{e_1..e_p}, B')
  GradedClass typeII_virtual;       // stand-in for [M_{e_1..e_p}]_vir
  std::optional<GradedClass> pg_class;  // c_{p_g}(R^2 pi_* O)
  bool r2_trivial = false;          // declares c_{p_g}(R^2 pi_* O) = 0
  bool special_assumption = true;
};

struct ExpansionReport {
  DimensionTriple dims;
  Int rank_omega = 0;
  /// Coefficient of [M_{C - sum e}]_vir x [M_{e_1..e_p}]_vir.
  GradedClass dominating;
  /// Symbol-free remainder terms, labelled.
  std::vector<std::pair<std::string, GradedClass>> corrections;
  std::map<int, GradedClass> tau_by_power;
  GradedClass tau;
  GradedClass insertion;            // c_{p_g}^m, 1 when absent
  GradedClass full;                 // A1 . A2 . A3 before separation
  bool reassembles = false;
  bool h_free = false;
  bool conditional = false;         // special assumption not granted
};

ExpansionReport main_theorem_expansion(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                       const SurfaceGeometry& g, const ExpansionInputs& in);

}  // namespace chowcalc::family
