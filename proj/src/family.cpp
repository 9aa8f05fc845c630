#include "chowcalc/family.hpp"

#include <string>

#include "chowcalc/error.hpp"

namespace chowcalc::family {

using ring::twist_by_line;
using ring::whitney_sum;

KuranishiModel::KuranishiModel(VirtualBundle v_, VirtualBundle w_, int base_dim_,
                               GradedClass moduli_segre_)
    : v(std::move(v_)), w(std::move(w_)), base_dim(base_dim_), moduli_segre(std::move(moduli_segre_)) {
  if (!v.is_honest() || v.vrank() < 1)
    fail(ErrorKind::InconsistentInput, "Kuranishi model needs an honest V of rank >= 1");
  if (!w.is_honest() || w.vrank() < 0)
    fail(ErrorKind::InconsistentInput, "Kuranishi model needs an honest W");
  if (base_dim < 0) fail(ErrorKind::InconsistentInput, "negative base dimension");
  if (!ring::same_context(v.context(), w.context()) ||
      !ring::same_context(v.context(), moduli_segre.context()))
    fail(ErrorKind::ContextMismatch, "Kuranishi model data in different ring contexts");
}

GradedClass localized_class(const KuranishiModel& k, std::string_view z) {
  const int ed = k.expected_dimension();
  if (ed < 0 || ed > k.moduli_segre.truncation())
    fail(ErrorKind::OutOfRange, "expected dimension " + std::to_string(ed) + " outside [0, " +
                                    std::to_string(k.moduli_segre.truncation()) + "]");
  return (twist_by_line(k.w, z).ctotal() * k.moduli_segre).degree_part(ed);
}

KuranishiModel stabilize(const KuranishiModel& k, const VirtualBundle& g, std::string_view z) {
  if (!g.is_honest()) fail(ErrorKind::InconsistentInput, "stabilizing bundle must be honest");
  return KuranishiModel(whitney_sum(k.v, g), whitney_sum(k.w, g), k.base_dim,
                        k.moduli_segre * ring::segre_total(twist_by_line(g, z)));
}

GradedClass fiber_product_vclass(const GradedClass& a, const GradedClass& b,
                                 const GradedClass& normal_insertion) {
  return a * b * normal_insertion;
}

Rational chi_structure_sheaf(const SurfaceGeometry& g) {
  const Int num = g.canonical_square() + g.c2();
  if (num % 12 != 0)
    fail(ErrorKind::InconsistentInput,
         "K^2 + c2 = " + std::to_string(num) + " is not divisible by 12");
  return Rational(num / 12);
}

Rational chi_line(const LatticeClass& c, const SurfaceGeometry& g) {
  const Int num = lattice::pair(c, c, g) - g.form(c.coords, g.canonical());
  if (num % 2 != 0) fail(ErrorKind::Parity, "c^2 - K.c = " + std::to_string(num) + " is odd");
  return chi_structure_sheaf(g) + Rational(num / 2);
}

namespace {

// Polynomials in n, lowest degree first.
using NPoly = std::vector<Rational>;

NPoly& add_into(NPoly& a, const NPoly& b, const Rational& scale = 1) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

// chi(O(A + nB)) as a polynomial in n, via Riemann-Roch on the surface.
NPoly chi_line_in_n(const LatticeClass& a, const LatticeClass& b, const SurfaceGeometry& g) {
  const auto& k = g.canonical();
  const Rational aa = g.form(a.coords, a.coords);
  const Rational ab = g.form(a.coords, b.coords);
  const Rational bb = g.form(b.coords, b.coords);
  const Rational ka = g.form(k, a.coords);
  const Rational kb = g.form(k, b.coords);
  return {chi_structure_sheaf(g) + (aa - ka) / 2, (2 * ab - kb) / 2, bb / 2};
}

// chi(O_E(A + nB)) = chi(O(A + nB)) - chi(O(A - E + nB))
NPoly chi_on_curve_in_n(const LatticeClass& e, const LatticeClass& a, const LatticeClass& b,
                        const SurfaceGeometry& g) {
  NPoly out = chi_line_in_n(a, b, g);
  return add_into(out, chi_line_in_n(a - e, b, g), -1);
}

void require_rank(const LatticeClass& c, const SurfaceGeometry& g, const char* what) {
  if (c.coords.size() != g.rank())
    fail(ErrorKind::DimensionMismatch, std::string(what) + " has length " +
                                           std::to_string(c.coords.size()) + ", lattice rank is " +
                                           std::to_string(g.rank()));
}

Int half_even(Int num, const std::string& what) {
  if (num % 2 != 0) fail(ErrorKind::Parity, what + " = " + std::to_string(num) + " is odd");
  return num / 2;
}

}  // namespace

RankOmegaRoutes rank_omega_routes(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                  const SurfaceGeometry& g, const LatticeClass& d) {
  if (es.empty()) fail(ErrorKind::InconsistentInput, "rank(omega) needs at least one class");
  require_rank(c, g, "C");
  require_rank(d, g, "D");
  for (const auto& e : es) require_rank(e, g, "e_i");

  const Int p = static_cast<Int>(es.size());
  Int lat = -g.q() * p;
  for (std::size_t i = 0; i < es.size(); ++i) {
    lat += lattice::pair(es[i], es[i], g) - lattice::pair(c, es[i], g);
    for (std::size_t j = i + 1; j < es.size(); ++j) lat += lattice::pair(es[i], es[j], g);
  }

  // sum chi(O(e_i + nD)) - chi(O_{sum e}(C + nD)) - p (chi(O(nD)) + q)
  const LatticeClass zero(std::vector<Int>(g.rank(), 0));
  const LatticeClass e_sum = lattice::sum(es, g.rank());
  NPoly rr;
  for (const auto& e : es) add_into(rr, chi_line_in_n(e, d, g));
  add_into(rr, chi_on_curve_in_n(e_sum, c, d, g), -1);
  NPoly per_copy = chi_line_in_n(zero, d, g);
  per_copy[0] += g.q();
  add_into(rr, per_copy, -Rational(p));
  return RankOmegaRoutes{lat, rr};
}

Int rank_omega(const LatticeClass& c, const std::vector<LatticeClass>& es, const SurfaceGeometry& g,
               std::optional<LatticeClass> d) {
  const LatticeClass dd = d ? *d : LatticeClass(std::vector<Int>(g.rank(), 1));
  const auto routes = rank_omega_routes(c, es, g, dd);
  bool ok = routes.riemann_roch[0] == Rational(routes.lattice);
  for (std::size_t i = 1; i < routes.riemann_roch.size(); ++i) ok = ok && routes.riemann_roch[i] == 0;
  if (!ok) {
    std::string poly;
    for (std::size_t i = 0; i < routes.riemann_roch.size(); ++i)
      poly += (i ? ", " : "") + format_rational(routes.riemann_roch[i]);
    fail(ErrorKind::InternalAssertion, "rank(omega) routes disagree: lattice " +
                                           std::to_string(routes.lattice) +
                                           ", Riemann-Roch coefficients [" + poly + "]");
  }
  return routes.lattice;
}

DimensionTriple dimension_triple(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                 const SurfaceGeometry& g) {
  require_rank(c, g, "C");
  for (const auto& e : es) require_rank(e, g, "e_i");
  const auto& k = g.canonical();
  const LatticeClass residual = c - lattice::sum(es, g.rank());

  DimensionTriple t;
  t.a1 = g.dim_base() - g.q() + g.p_g() +
         half_even(lattice::pair(residual, residual, g) - g.form(k, residual.coords),
                   "(C - sum e)^2 - K.(C - sum e)");
  t.a2 = g.dim_base();
  for (std::size_t i = 0; i < es.size(); ++i) {
    t.a2 += half_even(lattice::pair(es[i], es[i], g) - g.form(k, es[i].coords), "e_i^2 - K.e_i");
    t.a3 += lattice::pair(es[i], es[i], g) - lattice::pair(c, es[i], g);
    for (std::size_t j = i + 1; j < es.size(); ++j) t.a3 += lattice::pair(es[i], es[j], g);
  }
  t.total = 2 * g.dim_base() - g.q() + g.p_g() +
            half_even(lattice::pair(c, c, g) - g.form(k, c.coords), "C^2 - K.C");
  if (t.a1 + t.a2 - t.a3 != t.total)
    fail(ErrorKind::InternalAssertion, "a1 + a2 - a3 = " + std::to_string(t.a1 + t.a2 - t.a3) +
                                           " but 2 dim B - q + p_g + (C^2 - K.C)/2 = " +
                                           std::to_string(t.total));
  return t;
}

RestrictedRanks restricted_bundle_ranks(const LatticeClass& e_sum, const LatticeClass& c,
                                        const LatticeClass& d, Int n, const SurfaceGeometry& g) {
  require_rank(e_sum, g, "sum e");
  require_rank(c, g, "C");
  require_rank(d, g, "D");
  const LatticeClass nd = d.scaled(n);
  const LatticeClass zero(std::vector<Int>(g.rank(), 0));
  // chi(O_{E cap nD}(L)) = chi(O_E(L)) - chi(O_E(L - nD))
  auto zero_cycle_chi = [&](const LatticeClass& l) -> Rational {
    const NPoly full = chi_on_curve_in_n(e_sum, l, zero, g);
    const NPoly cut = chi_on_curve_in_n(e_sum, l - nd, zero, g);
    return full[0] - cut[0];
  };
  return RestrictedRanks{zero_cycle_chi(e_sum + nd), zero_cycle_chi(c + nd)};
}

TauClass tau_class(const VirtualBundle& omega, std::string_view z, std::string_view n) {
  if (omega.vrank() < 0)
    fail(ErrorKind::OutOfRange, "omega has negative virtual rank " + std::to_string(omega.vrank()));
  const GradedClass n_free = ring::top_chern(omega).substitute(n, 0);
  TauClass out{n_free.substitute(z, 1), n_free, n_free.coefficients_in(z)};
  return out;
}

ExpansionInputs::ExpansionInputs(ring::Context ctx, std::size_t p)
    : w_residual(VirtualBundle::zero(ctx)),
      residual_segre(GradedClass::one(ctx)),
      w_prime(VirtualBundle::zero(ctx)),
      v_prime(VirtualBundle::zero(ctx)),
      u(VirtualBundle::zero(ctx)),
      r0_nd(VirtualBundle::zero(ctx)),
      r1(VirtualBundle::zero(ctx)),
      typeII_segre(GradedClass::one(ctx)),
      typeII_virtual(GradedClass::one(ctx)) {
  for (std::size_t i = 0; i < p; ++i) h.push_back("h" + std::to_string(i + 1));
}

namespace {

void check_hypotheses(const LatticeClass& c, const std::vector<LatticeClass>& es,
                      const SurfaceGeometry& g) {
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Int ce = lattice::pair(c, es[i], g);
    if (ce >= 0)
      fail(ErrorKind::Hypothesis, "C.e_" + std::to_string(i + 1) + " < 0 fails (C.e_" +
                                      std::to_string(i + 1) + " = " + std::to_string(ce) + ")");
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Int ee = lattice::pair(es[i], es[j], g);
      if (ee < 0)
        fail(ErrorKind::Hypothesis, "e_" + std::to_string(i + 1) + ".e_" + std::to_string(j + 1) +
                                        " >= 0 fails (value " + std::to_string(ee) + ")");
    }
  }
}

GradedClass extract(const GradedClass& a, Int degree, const char* label) {
  if (degree < 0 || degree > a.truncation())
    fail(ErrorKind::OutOfRange, std::string(label) + " = " + std::to_string(degree) +
                                    " outside [0, " + std::to_string(a.truncation()) + "]");
  return a.degree_part(static_cast<int>(degree));
}

}  // namespace

ExpansionReport main_theorem_expansion(const LatticeClass& c, const std::vector<LatticeClass>& es,
                                       const SurfaceGeometry& g, const ExpansionInputs& in) {
  if (es.empty()) fail(ErrorKind::InconsistentInput, "expansion needs at least one type II class");
  if (in.h.size() != es.size())
    fail(ErrorKind::InconsistentInput, "need one H_{II;i} variable per class, got " +
                                           std::to_string(in.h.size()) + " for " +
                                           std::to_string(es.size()));
  check_hypotheses(c, es, g);

  const ring::Context& ctx = in.u.context();
  const Int p = static_cast<Int>(es.size());
  ExpansionReport rep{.dims = dimension_triple(c, es, g),
                      .rank_omega = 0,
                      .dominating = GradedClass(ctx),
                      .corrections = {},
                      .tau_by_power = {},
                      .tau = GradedClass(ctx),
                      .insertion = GradedClass::one(ctx),
                      .full = GradedClass(ctx)};
  if (rep.dims.a3 - p * g.q() < 0)
    fail(ErrorKind::Hypothesis, "a3 - p q >= 0 fails (a3 = " + std::to_string(rep.dims.a3) +
                                    ", p q = " + std::to_string(p * g.q()) + ")");
  rep.rank_omega = rank_omega(c, es, g);

  // omega = U - V' (x) H - sum_i (C + R^0 pi_* O_{nD}(nD)) (x) H_i
  const VirtualBundle trivial_line = VirtualBundle::trivial(ctx, 1);
  VirtualBundle omega = ring::difference(in.u, twist_by_line(in.v_prime, in.z));
  for (const auto& hi : in.h)
    omega = ring::difference(omega, twist_by_line(whitney_sum(trivial_line, in.r0_nd), hi));
  if (omega.vrank() != rep.rank_omega)
    fail(ErrorKind::InconsistentInput, "bundle data give rank(omega) = " +
                                           std::to_string(omega.vrank()) + ", lattice gives " +
                                           std::to_string(rep.rank_omega));

  // [B]_p: top Chern class of p copies of the rank-q bundle, then H_{II;i}
  // restricted to the zero section where it is trivial.
  VirtualBundle r1_sum = VirtualBundle::zero(ctx);
  for (Int i = 0; i < p; ++i) r1_sum = whitney_sum(r1_sum, in.r1);
  const GradedClass bp = ring::top_chern(r1_sum);
  auto cap_bp = [&](const GradedClass& x) {
    GradedClass out = x * bp;
    for (const auto& hi : in.h) out = out.substitute(hi, 0);
    return out;
  };

  const GradedClass a1_part =
      extract(twist_by_line(in.w_residual, in.z).ctotal() * in.residual_segre, rep.dims.a1, "a1");
  GradedClass a2_integrand = twist_by_line(in.w_prime, in.z).ctotal() * in.typeII_segre;
  for (const auto& hi : in.h)
    a2_integrand = a2_integrand * twist_by_line(in.r0_nd, hi).ctotal() * GradedClass::variable(ctx, hi);
  const GradedClass a2_part = extract(a2_integrand, rep.dims.a2, "a2");

  const TauClass tau = tau_class(omega, in.z, in.n);
  rep.tau = tau.tau;
  rep.tau_by_power = tau.by_power;
  const GradedClass a3_part = cap_bp(ring::top_chern(omega));
  const GradedClass a3_n_free = cap_bp(tau.n_free_top);

  Int pg_mode = 0;
  for (const auto& e : es)
    if (e.febd == lattice::Febd::Pg) ++pg_mode;
  if (g.p_g() > 0 && pg_mode > 0) {
    if (in.r2_trivial) {
      rep.insertion = GradedClass(ctx);
    } else {
      if (!in.pg_class)
        fail(ErrorKind::Validation, "p_g > 0 requires a c_{p_g}(R^2 pi_* O) class or r2_trivial");
      rep.insertion = in.pg_class->pow(static_cast<unsigned>(pg_mode));
    }
  }

  rep.dominating = rep.insertion * a3_n_free;
  rep.full = a1_part * a2_part * a3_part;
  const GradedClass symbols = a1_part * in.typeII_virtual;
  rep.corrections.emplace_back("eta_tilde",
                               a1_part * (a2_part - in.typeII_virtual * rep.insertion) * a3_part);
  rep.corrections.emplace_back("n_dependent",
                               symbols * rep.insertion * (a3_part - a3_n_free));
  GradedClass reassembled = symbols * rep.dominating;
  for (const auto& [label, term] : rep.corrections) reassembled += term;
  rep.reassembles = reassembled == rep.full;
  rep.h_free = true;
  for (const auto& hi : in.h) rep.h_free = rep.h_free && !rep.dominating.involves(hi);
  rep.conditional = !in.special_assumption;
  return rep;
}

}  // namespace chowcalc::family
