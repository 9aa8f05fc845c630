// Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
// exact; the only tolerances are the wall-clock limits below.
//
// usage: acceptance <chowcalc binary> <config dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "chowcalc/bundle.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/exceptional.hpp"
#include "chowcalc/family.hpp"
#include "chowcalc/nodal.hpp"
#include "chowcalc/sample.hpp"
#include "oracles.hpp"

using namespace chowcalc;
using lattice::Int;
using lattice::LatticeClass;
using ring::GradedClass;
using ring::VirtualBundle;

namespace {

constexpr double kStabilizationSeconds = 10.0;
constexpr double kSeriesSeconds = 1.0;
constexpr int kTruncation = 6;
constexpr std::uint64_t kSeed = 20261016;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

Verdict stabilization() {
  const auto t0 = std::chrono::steady_clock::now();
  sample::Rng rng(kSeed + 1);
  const auto ctx = sample::bundle_context(kTruncation);
  int equal = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const auto k = sample::random_kuranishi(rng, ctx);
    const auto g = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 3)));
    if (k.v.vrank() > 4 || k.w.vrank() > 3) return {false, "generator produced an oversized model"};
    if (family::localized_class(family::stabilize(k, g, "z"), "z") == family::localized_class(k, "z")) ++equal;
  }
  const double s = seconds_since(t0);
  return {equal == total && s < kStabilizationSeconds,
          std::to_string(equal) + "/" + std::to_string(total) + " equal, " + fmt_seconds(s) + " (limit 10 s)"};
}

Verdict whitney_segre() {
  sample::Rng rng(kSeed + 2);
  const auto ctx = sample::bundle_context(kTruncation);
  int equal = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const auto e = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 4)));
    const auto f = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 4)));
    // segre of the sum by the series oracle, product by the library
    const auto lhs = oracle::inverse_by_series(e.ctotal() * f.ctotal());
    const auto rhs = ring::segre_total(e) * ring::segre_total(f);
    if (lhs == rhs && ring::segre_total(ring::whitney_sum(e, f)) == rhs) ++equal;
  }
  return {equal == total, std::to_string(equal) + "/" + std::to_string(total) + " equal"};
}

struct Instance {
  lattice::SurfaceGeometry g;
  LatticeClass c;
  std::vector<LatticeClass> es;
};

// Random geometry and classes with C.e_i < 0 and e_i.e_j >= 0.
Instance admissible_instance(sample::Rng& rng) {
  for (;;) {
    auto g = sample::random_geometry(rng, 5);
    const auto c = sample::random_class(rng, g.rank());
    std::vector<LatticeClass> es;
    for (auto p = rng.uniform(1, 3); p > 0; --p) es.push_back(sample::random_class(rng, g.rank()));
    bool ok = true;
    for (std::size_t i = 0; i < es.size(); ++i) {
      ok = ok && lattice::pair(c, es[i], g) < 0;
      for (std::size_t j = i + 1; j < es.size(); ++j) ok = ok && lattice::pair(es[i], es[j], g) >= 0;
    }
    if (ok) return Instance{std::move(g), c, es};
  }
}

Verdict rank_omega_dual() {
  sample::Rng rng(kSeed + 3);
  int agree = 0;
  const int total = 100;
  for (int i = 0; i < total; ++i) {
    const auto inst = admissible_instance(rng);
    const auto d = sample::random_class(rng, inst.g.rank(), 3);
    const auto routes = family::rank_omega_routes(inst.c, inst.es, inst.g, d);
    // lattice side recomputed here
    Int lat = -inst.g.q() * static_cast<Int>(inst.es.size());
    for (std::size_t a = 0; a < inst.es.size(); ++a) {
      lat += lattice::pair(inst.es[a], inst.es[a], inst.g) - lattice::pair(inst.c, inst.es[a], inst.g);
      for (std::size_t b = a + 1; b < inst.es.size(); ++b) lat += lattice::pair(inst.es[a], inst.es[b], inst.g);
    }
    if (routes.lattice == lat && routes.riemann_roch.size() == 3 && routes.riemann_roch[0] == Rational(lat) &&
        routes.riemann_roch[1] == 0 && routes.riemann_roch[2] == 0)
      ++agree;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree with vanishing n-terms"};
}

Verdict dimension_identity() {
  sample::Rng rng(kSeed + 4);
  int holds = 0;
  const int total = 100;
  for (int i = 0; i < total; ++i) {
    const auto inst = admissible_instance(rng);
    const auto& g = inst.g;
    const auto t = family::dimension_triple(inst.c, inst.es, g);
    const Int cc = lattice::pair(inst.c, inst.c, g), kc = g.form(g.canonical(), inst.c.coords);
    const Int rhs = 2 * g.dim_base() - g.q() + g.p_g() + (cc - kc) / 2;
    if (t.a1 + t.a2 - t.a3 == rhs && t.total == rhs) ++holds;
  }
  return {holds == total, std::to_string(holds) + "/" + std::to_string(total) + " exact"};
}

Verdict yau_zaslow() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k3 = nodal::yau_zaslow_series(24, 10);
  const auto p = nodal::yau_zaslow_series(1, 50);
  const double s = seconds_since(t0);
  const bool k3_ok = k3.coeffs == oracle::eta_product_bruteforce(24, 10);
  const bool spots = k3.coeffs[1] == 24 && k3.coeffs[2] == 324 && k3.coeffs[3] == 3200;
  const bool part_ok = p.coeffs == oracle::partitions_pentagonal(50);
  return {k3_ok && spots && part_ok && s < kSeriesSeconds,
          std::string("c2=24 through q^10 ") + (k3_ok ? "match" : "MISMATCH") + ", n1,n2,n3 = " +
              k3.coeffs[1].str() + "," + k3.coeffs[2].str() + "," + k3.coeffs[3].str() +
              ", partitions through q^50 " + (part_ok ? "match" : "MISMATCH") + ", " + fmt_seconds(s) +
              " (limit 1 s)"};
}

Verdict k3_vanishing() {
  const auto ctx = ring::RingContext::make(
      {{"z", 1}, {"h1", 1}, {"h2", 1}, {"h3", 1}, {"n", 0}, {"a", 1}, {"b", 1}, {"c", 2}}, kTruncation);
  std::string detail;
  bool ok = true;
  for (Int p = 1; p <= 3; ++p) {
    std::vector<std::vector<Int>> gram(3, std::vector<Int>(3, 0));
    for (int i = 0; i < 3; ++i) gram[i][i] = -2;
    const lattice::SurfaceGeometry g(gram, {0, 0, 0}, 1, 0, 24, p);
    std::vector<LatticeClass> es;
    for (Int i = 0; i < p; ++i) {
      std::vector<Int> v(3, 0);
      v[static_cast<std::size_t>(i)] = 1;
      es.emplace_back(v, 1, lattice::Febd::Pg, lattice::TypeTag::TypeII);
    }
    const LatticeClass c({1, 1, 1});
    family::ExpansionInputs in(ctx, es.size());
    in.r2_trivial = true;
    in.w_prime = VirtualBundle::line(GradedClass::parse(ctx, "a"));
    in.typeII_segre = GradedClass::parse(ctx, "1 - b + 1/2*a*b");
    in.u = VirtualBundle::honest(static_cast<int>(family::rank_omega(c, es, g) + p), GradedClass::parse(ctx, "1 + a + b"));
    const auto rep = family::main_theorem_expansion(c, es, g, in);
    ok = ok && rep.dominating.is_zero() && rep.reassembles;
    detail += "p=" + std::to_string(p) + ": " + rep.dominating.to_string() + "; ";
  }
  // p_g = 0: no insertion, term survives. (-1)-class with C.e = -2, rank(omega) = 1.
  std::vector<std::vector<Int>> gram{{-1}};
  const lattice::SurfaceGeometry g0(gram, {1}, 0, 0, 13, 1);
  const std::vector<LatticeClass> es{LatticeClass({1}, 1, lattice::Febd::Pg, lattice::TypeTag::TypeII)};
  family::ExpansionInputs in(ctx, 1);
  in.u = VirtualBundle::honest(2, GradedClass::parse(ctx, "1 + a + b"));
  const auto rep0 = family::main_theorem_expansion(LatticeClass({2}), es, g0, in);
  const bool survives = !rep0.dominating.is_zero() && rep0.insertion == GradedClass::one(ctx);
  detail += "p_g=0: " + rep0.dominating.to_string();
  return {ok && survives, detail};
}

Verdict tau_independence() {
  sample::Rng rng(kSeed + 7);
  const auto ctx = sample::bundle_context(kTruncation);
  const auto nvar = GradedClass::variable(ctx, "n");
  int good = 0;
  const int total = 50;
  for (int i = 0; i < total; ++i) {
    const auto omega = sample::random_n_dependent_omega(rng, ctx);
    const int r = static_cast<int>(rng.uniform(1, 2));
    const auto base = sample::random_honest(rng, ctx, r).ctotal();
    const auto x = VirtualBundle::honest(r, base + nvar * sample::random_poly(rng, ctx, {"a", "c"}, 1, r, 2));
    const auto x2 = VirtualBundle::honest(r, base + nvar * sample::random_poly(rng, ctx, {"b", "c"}, 1, r, 2));
    const auto shifted =
        ring::whitney_sum(omega, ring::difference(ring::twist_by_line(x, "z"), ring::twist_by_line(x2, "z")));
    const auto tau = family::tau_class(omega, "z", "n").tau;
    const bool invariant = tau == family::tau_class(shifted, "z", "n").tau;
    const bool matches = tau == oracle::tau_by_quotient(omega) && !tau.involves("n");
    if (invariant && matches) ++good;
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " invariant and matching the quotient oracle"};
}

Verdict combinatorics() {
  sample::Rng rng(kSeed + 8);
  int instances = 0, matched = 0, nonempty = 0, orders = 0, orders_ok = 0, with_edges = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = sample::random_geometry(rng, 4);
    const auto c = sample::random_class(rng, g.rank());
    std::vector<LatticeClass> cands;
    const auto n = trial < 50 ? 8 : rng.uniform(1, 8);
    for (Int k = 0; k < n; ++k) cands.push_back(sample::random_class(rng, g.rank()));
    const auto cols = exceptional::enumerate_collections(c, cands, g, cands.size());
    std::vector<std::vector<std::size_t>> naive;
    for (std::uint32_t mask = 1; mask < (1u << cands.size()); ++mask) {
      std::vector<std::size_t> m;
      bool ok = true;
      for (std::size_t a = 0; a < cands.size(); ++a) {
        if (!(mask & (1u << a))) continue;
        ok = ok && lattice::pair(cands[a], cands[a], g) < 0 && cands[a].degree_rel > 0 &&
             lattice::pair(c, cands[a], g) < 0;
        for (std::size_t b : m) ok = ok && lattice::pair(cands[a], cands[b], g) >= 0;
        m.push_back(a);
      }
      if (ok) naive.push_back(m);
    }
    std::sort(naive.begin(), naive.end());
    std::vector<std::vector<std::size_t>> got;
    for (const auto& col : cols) got.push_back(col.members);
    ++instances;
    if (got == naive) ++matched;
    if (!cols.empty()) ++nonempty;
    if (cols.size() > 10) continue;
    ++orders;
    const auto po = exceptional::cone_partial_order(cols);
    const std::set<exceptional::Edge> edges(po.begin(), po.end());
    bool ok = true;
    for (const auto& [a, b] : po) {
      ok = ok && a != b && !edges.count({b, a});
      for (const auto& [b2, d] : po)
        if (b2 == b) ok = ok && edges.count({a, d});
    }
    if (ok) ++orders_ok;
    if (!po.empty()) ++with_edges;
  }
  return {matched == instances && orders_ok == orders,
          std::to_string(matched) + "/" + std::to_string(instances) + " enumerations match (" +
              std::to_string(nonempty) + " nonempty), " + std::to_string(orders_ok) + "/" +
              std::to_string(orders) + " orders antisymmetric and transitive (" + std::to_string(with_edges) +
              " with edges)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism(const std::string& bin, const std::string& config_dir) {
  const auto dir = std::filesystem::temp_directory_path() / "chowcalc_acceptance";
  std::filesystem::create_directories(dir);
  const auto a = dir / "run_a.json", b = dir / "run_b.json";
  const std::string base = bin + " run " + config_dir + "/full_suite.json --seed 314159 --output ";
  const int ra = std::system((base + a.string()).c_str());
  const int rb = std::system((base + b.string() + " --parallel").c_str());
  if (!WIFEXITED(ra) || !WIFEXITED(rb)) return {false, "CLI did not exit normally"};
  const std::string sa = slurp(a), sb = slurp(b);
  const bool same = !sa.empty() && sa == sb;
  return {same && WEXITSTATUS(ra) == 0 && WEXITSTATUS(rb) == 0,
          std::to_string(sa.size()) + " bytes, " + (same ? "identical" : "DIFFERENT") + ", exit codes " +
              std::to_string(WEXITSTATUS(ra)) + "/" + std::to_string(WEXITSTATUS(rb))};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <chowcalc binary> <config dir>\n";
    return 2;
  }
  const std::string bin = argv[1], config_dir = argv[2];
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 stabilization invariance", stabilization},
      {"2 Whitney/Segre product law", whitney_segre},
      {"3 rank(omega) dual computation", rank_omega_dual},
      {"4 dimension identity", dimension_identity},
      {"5 Yau-Zaslow coefficients", yau_zaslow},
      {"6 K3 type II vanishing", k3_vanishing},
      {"7 tau n-independence", tau_independence},
      {"8 combinatorics oracle equivalence", combinatorics},
      {"9 determinism", [&] { return determinism(bin, config_dir); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail << "\n";
  }
  std::cout << (failed == 0 ? "all criteria pass\n" : std::to_string(failed) + " criteria failed\n");
  return failed == 0 ? 0 : 1;
}
