#include "chowcalc/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "chowcalc/bundle.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/exceptional.hpp"
#include "chowcalc/family.hpp"
#include "chowcalc/lattice.hpp"
#include "chowcalc/nodal.hpp"
#include "chowcalc/ring.hpp"
#include "chowcalc/sample.hpp"

namespace chowcalc::cli {

namespace {

using Json = nlohmann::ordered_json;
using lattice::Int;
using lattice::LatticeClass;
using lattice::SurfaceGeometry;
using ring::GradedClass;
using ring::VirtualBundle;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::Validation, path + ": " + what);
}

struct Env {
  std::optional<SurfaceGeometry> geometry;
  std::map<std::string, LatticeClass> classes;
  ring::Context ctx;
  int truncation = 6;

  const SurfaceGeometry& geo(const std::string& path) const {
    if (!geometry) invalid(path, "task needs a geometry block");
    return *geometry;
  }
};

struct Outcome {
  Json results = Json::object();
  Json checks = Json::array();
  bool passed = true;

  void check(const std::string& name, bool pass, const Json& lhs = nullptr, const Json& rhs = nullptr) {
    Json c = {{"name", name}, {"pass", pass}};
    if (!pass) {
      c["lhs"] = lhs;
      c["rhs"] = rhs;
    }
    checks.push_back(std::move(c));
    passed = passed && pass;
  }
};

using Runner = std::function<Outcome(std::uint64_t seed)>;

// ---- field access ---------------------------------------------------------

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) invalid(path + "." + key, "missing field");
  return j.at(key);
}

Int int_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) invalid(path + "." + key, "expected an integer");
  return v.get<Int>();
}

Int int_field_or(const Json& j, const char* key, const std::string& path, Int fallback) {
  return j.contains(key) ? int_field(j, key, path) : fallback;
}

bool bool_field_or(const Json& j, const char* key, const std::string& path, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) invalid(path + "." + key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::string string_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) invalid(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<Int> int_vector(const Json& v, const std::string& path) {
  if (!v.is_array()) invalid(path, "expected an integer array");
  std::vector<Int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) invalid(path + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<Int>());
  }
  return out;
}

const LatticeClass& class_ref(const Env& env, const Json& j, const char* key, const std::string& path) {
  const std::string name = string_field(j, key, path);
  auto it = env.classes.find(name);
  if (it == env.classes.end()) invalid(path + "." + key, "undeclared class '" + name + "'");
  return it->second;
}

std::vector<LatticeClass> class_list(const Env& env, const Json& j, const char* key,
                                     const std::string& path, std::vector<std::string>* names = nullptr) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) invalid(path + "." + key, "expected an array of class names");
  std::vector<LatticeClass> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "." + key + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) invalid(p, "expected a class name");
    auto it = env.classes.find(v[i].get<std::string>());
    if (it == env.classes.end()) invalid(p, "undeclared class '" + v[i].get<std::string>() + "'");
    out.push_back(it->second);
    if (names) names->push_back(it->first);
  }
  return out;
}

GradedClass poly_value(const Env& env, const Json& v, const std::string& path) {
  try {
    if (v.is_string()) return GradedClass::parse(env.ctx, v.get<std::string>());
    if (v.is_number_integer()) return GradedClass::constant(env.ctx, v.get<Int>());
    if (v.is_array()) {
      std::vector<std::pair<std::string, std::string>> terms;
      for (const auto& t : v) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string())
          invalid(path, "expected [monomial, \"p/q\"] pairs");
        terms.emplace_back(t[0].get<std::string>(), t[1].get<std::string>());
      }
      return GradedClass::from_terms(env.ctx, terms);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation) throw;
    invalid(path, e.what());
  }
  invalid(path, "expected a class expression");
}

GradedClass poly_field(const Env& env, const Json& j, const char* key, const std::string& path) {
  return poly_value(env, field(j, key, path), path + "." + key);
}

GradedClass poly_field_or(const Env& env, const Json& j, const char* key, const std::string& path,
                          GradedClass fallback) {
  return j.contains(key) ? poly_field(env, j, key, path) : fallback;
}

std::string variable_field(const Env& env, const Json& j, const char* key, const std::string& path,
                           const std::string& fallback) {
  const std::string name = j.contains(key) ? string_field(j, key, path) : fallback;
  if (!env.ctx->find(name)) invalid(path + "." + key, "unknown ring variable '" + name + "'");
  return name;
}

VirtualBundle bundle_value(const Env& env, const Json& v, const std::string& path) {
  if (!v.is_object()) invalid(path, "expected a bundle object");
  try {
    if (v.contains("plus") || v.contains("minus")) {
      VirtualBundle out = VirtualBundle::zero(env.ctx);
      for (const char* key : {"plus", "minus"}) {
        if (!v.contains(key)) continue;
        const Json& list = v.at(key);
        if (!list.is_array()) invalid(path + "." + key, "expected an array of bundles");
        for (std::size_t i = 0; i < list.size(); ++i) {
          VirtualBundle b = bundle_value(env, list[i], path + "." + key + "[" + std::to_string(i) + "]");
          out = std::string(key) == "plus" ? ring::whitney_sum(out, b) : ring::difference(out, b);
        }
      }
      return out;
    }
    if (v.contains("twist")) {
      const std::string line = variable_field(env, v, "by", path, "z");
      return ring::twist_by_line(bundle_value(env, v.at("twist"), path + ".twist"), line);
    }
    const GradedClass c = poly_field_or(env, v, "c", path, GradedClass::one(env.ctx));
    if (v.contains("rank")) return VirtualBundle::honest(static_cast<int>(int_field(v, "rank", path)), c);
    if (v.contains("vrank")) return VirtualBundle::formal(static_cast<int>(int_field(v, "vrank", path)), c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation) throw;
    invalid(path, e.what());
  }
  invalid(path, "bundle needs 'rank', 'vrank', 'plus'/'minus' or 'twist'");
}

VirtualBundle bundle_field_or_zero(const Env& env, const Json& j, const char* key, const std::string& path) {
  return j.contains(key) ? bundle_value(env, j.at(key), path + "." + key) : VirtualBundle::zero(env.ctx);
}

// ---- output helpers -------------------------------------------------------

Json class_json(const GradedClass& c) {
  Json terms = Json::array();
  for (const auto& [m, q] : c.canonical_terms()) terms.push_back(Json::array({m, q}));
  return Json{{"text", c.to_string()}, {"terms", std::move(terms)}};
}

Json power_map_json(const std::map<int, GradedClass>& m) {
  Json out = Json::array();
  for (const auto& [r, c] : m) out.push_back(Json{{"power", r}, {"class", class_json(c)}});
  return out;
}

Json names_of(const exceptional::Collection& col, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t i : col.members) out.push_back(names[i]);
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t count_field(const Json& task, const std::string& path, Int fallback) {
  const Int n = int_field_or(task, "count", path, fallback);
  if (n < 0) invalid(path + ".count", "must be nonnegative");
  return static_cast<std::size_t>(n);
}

void require_degree(const Env& env, Int degree, const std::string& path, const std::string& what) {
  if (degree < 0 || degree > env.truncation)
    invalid(path, what + " = " + std::to_string(degree) + " outside [0, truncation " +
                      std::to_string(env.truncation) + "]");
}

// ---- tasks ----------------------------------------------------------------

Runner prepare_task(const Json& task, const Env& env, const std::string& path) {
  if (!task.is_object()) invalid(path, "task must be an object");
  const std::string kind = string_field(task, "kind", path);

  if (kind == "pair") {
    const auto& a = class_ref(env, task, "a", path);
    const auto& b = class_ref(env, task, "b", path);
    const auto& g = env.geo(path);
    return [g, a, b](std::uint64_t) {
      Outcome o;
      const Int ab = lattice::pair(a, b, g);
      o.results["value"] = ab;
      o.check("symmetric", ab == lattice::pair(b, a, g), ab, lattice::pair(b, a, g));
      return o;
    };
  }
  if (kind == "is_exceptional" || kind == "expected_dimension" || kind == "typeI_codimension" ||
      kind == "chi_line") {
    const auto& e = class_ref(env, task, "class", path);
    const auto& g = env.geo(path);
    return [g, e, kind](std::uint64_t) {
      Outcome o;
      if (kind == "is_exceptional") o.results["value"] = lattice::is_exceptional(e, g);
      if (kind == "expected_dimension") o.results["value"] = lattice::expected_dimension(e, g);
      if (kind == "typeI_codimension") o.results["value"] = lattice::typeI_codimension(e, g);
      if (kind == "chi_line") o.results["value"] = format_rational(family::chi_line(e, g));
      return o;
    };
  }
  if (kind == "adjunction_delta") {
    const Int l_sq = int_field(task, "l_sq", path);
    return [l_sq](std::uint64_t) {
      Outcome o;
      o.results["delta"] = lattice::adjunction_delta(l_sq);
      return o;
    };
  }
  if (kind == "rank_omega") {
    const auto& c = class_ref(env, task, "curve", path);
    const auto es = class_list(env, task, "classes", path);
    const auto& g = env.geo(path);
    std::optional<LatticeClass> d;
    if (task.contains("divisor")) d = class_ref(env, task, "divisor", path);
    if (es.empty()) invalid(path + ".classes", "must not be empty");
    return [g, c, es, d](std::uint64_t) {
      Outcome o;
      const LatticeClass dd = d ? *d : LatticeClass(std::vector<Int>(g.rank(), 1));
      const auto routes = family::rank_omega_routes(c, es, g, dd);
      Json rr = Json::array();
      for (const auto& x : routes.riemann_roch) rr.push_back(format_rational(x));
      o.results["lattice"] = routes.lattice;
      o.results["riemann_roch_in_n"] = rr;
      o.check("routes_agree", rr == Json::array({std::to_string(routes.lattice), "0", "0"}),
              routes.lattice, rr);
      return o;
    };
  }
  if (kind == "dimension_triple") {
    const auto& c = class_ref(env, task, "curve", path);
    const auto es = class_list(env, task, "classes", path);
    const auto& g = env.geo(path);
    return [g, c, es](std::uint64_t) {
      Outcome o;
      const auto t = family::dimension_triple(c, es, g);
      o.results = Json{{"a1", t.a1}, {"a2", t.a2}, {"a3", t.a3}, {"total", t.total}};
      o.check("a1+a2-a3", t.a1 + t.a2 - t.a3 == t.total, t.a1 + t.a2 - t.a3, t.total);
      return o;
    };
  }
  if (kind == "yau_zaslow") {
    const Int c2 = int_field(task, "c2", path);
    const Int delta_max = int_field(task, "delta_max", path);
    if (c2 < 0) invalid(path + ".c2", "must be nonnegative");
    if (delta_max < 0) invalid(path + ".delta_max", "must be nonnegative");
    return [c2, delta_max](std::uint64_t) {
      Outcome o;
      const auto s = nodal::yau_zaslow_series(c2, static_cast<std::size_t>(delta_max));
      Json coeffs = Json::array();
      for (const auto& x : s.coeffs) coeffs.push_back(x.str());
      o.results["coefficients"] = coeffs;
      o.results["text"] = s.to_text();
      o.check("constant_term", s.coeffs[0] == 1, s.coeffs[0].str(), "1");
      if (delta_max >= 1) o.check("n1_equals_c2", s.coeffs[1] == c2, s.coeffs[1].str(), c2);
      return o;
    };
  }
  if (kind == "virtual_count") {
    const Int l_sq = int_field(task, "l_sq", path);
    const Int c2 = int_field(task, "c2", path);
    return [l_sq, c2](std::uint64_t) {
      Outcome o;
      const auto r = nodal::virtual_count_report(l_sq, c2);
      o.results = Json{{"delta", r.delta}, {"n_delta", r.n_delta.str()}};
      return o;
    };
  }
  if (kind == "k3_vanishing") {
    const Int pg = int_field(task, "p_g", path);
    const bool r2 = bool_field_or(task, "r2_trivial", path, false);
    const Int p = int_field_or(task, "p", path, 1);
    if (p < 1) invalid(path + ".p", "must be at least 1");
    return [pg, r2, p](std::uint64_t) {
      Outcome o;
      o.results["vanishes"] = nodal::k3_type2_vanishing(pg, r2, p);
      return o;
    };
  }
  if (kind == "collections") {
    const auto& c = class_ref(env, task, "curve", path);
    std::vector<std::string> names;
    const auto cands = class_list(env, task, "candidates", path, &names);
    const Int max_size = int_field_or(task, "max_size", path, static_cast<Int>(cands.size()));
    if (max_size < 1) invalid(path + ".max_size", "must be at least 1");
    const auto& g = env.geo(path);
    return [g, c, cands, names, max_size](std::uint64_t) {
      Outcome o;
      const auto cols = exceptional::enumerate_collections(c, cands, g, static_cast<std::size_t>(max_size));
      const auto po = exceptional::cone_partial_order(cols);
      const auto sched = exceptional::linearize(cols, po);
      Json jc = Json::array(), jpo = Json::array(), js = Json::array(), jb = Json::array();
      for (const auto& col : cols) jc.push_back(names_of(col, names));
      for (const auto& [a, b] : po) jpo.push_back(Json::array({a, b}));
      for (const auto& col : sched.ordered) js.push_back(names_of(col, names));
      for (const auto& col : sched.blowup_order()) jb.push_back(names_of(col, names));
      o.results = Json{{"collections", jc}, {"partial_order", jpo}, {"schedule", js}, {"blowup_order", jb}};
      bool members_ok = true;
      for (const auto& col : cols)
        for (std::size_t i = 0; i < col.members.size(); ++i) {
          members_ok = members_ok && exceptional::admissible_member(c, cands[col.members[i]], g);
          for (std::size_t j = i + 1; j < col.members.size(); ++j)
            members_ok = members_ok && lattice::pair(cands[col.members[i]], cands[col.members[j]], g) >= 0;
        }
      o.check("collection_invariants", members_ok);
      bool respects = true;
      for (const auto& [a, b] : sched.order_relation) respects = respects && a < b;
      o.check("schedule_respects_order", respects);
      return o;
    };
  }
  if (kind == "segre") {
    const VirtualBundle e = bundle_value(env, field(task, "bundle", path), path + ".bundle");
    return [e](std::uint64_t) {
      Outcome o;
      const GradedClass s = ring::segre_total(e);
      o.results = Json{{"vrank", e.vrank()}, {"chern", class_json(e.ctotal())}, {"segre", class_json(s)}};
      const GradedClass prod = s * e.ctotal();
      o.check("segre_times_chern_is_one", prod == GradedClass::one(prod.context()), prod.to_string(), "1");
      return o;
    };
  }
  if (kind == "localized_class" || kind == "stabilization") {
    const std::string z = variable_field(env, task, "z", path, "z");
    const family::KuranishiModel k(bundle_value(env, field(task, "v", path), path + ".v"),
                                   bundle_value(env, field(task, "w", path), path + ".w"),
                                   static_cast<int>(int_field(task, "base_dim", path)),
                                   poly_field_or(env, task, "moduli_segre", path, GradedClass::one(env.ctx)));
    require_degree(env, k.expected_dimension(), path, "expected dimension");
    std::optional<VirtualBundle> g;
    if (kind == "stabilization") g = bundle_value(env, field(task, "g", path), path + ".g");
    return [k, g, z](std::uint64_t) {
      Outcome o;
      const GradedClass loc = family::localized_class(k, z);
      o.results = Json{{"expected_dimension", k.expected_dimension()}, {"class", class_json(loc)}};
      if (g) {
        const GradedClass after = family::localized_class(family::stabilize(k, *g, z), z);
        o.results["stabilized"] = class_json(after);
        o.check("stabilization_invariant", after == loc, after.to_string(), loc.to_string());
      }
      return o;
    };
  }
  if (kind == "tau_class") {
    const VirtualBundle omega = bundle_value(env, field(task, "omega", path), path + ".omega");
    const std::string z = variable_field(env, task, "z", path, "z");
    const std::string n = variable_field(env, task, "n", path, "n");
    require_degree(env, omega.vrank(), path + ".omega", "virtual rank");
    return [omega, z, n](std::uint64_t) {
      Outcome o;
      const auto t = family::tau_class(omega, z, n);
      o.results = Json{{"rank", omega.vrank()}, {"tau", class_json(t.tau)}, {"tau_by_power", power_map_json(t.by_power)}};
      return o;
    };
  }
  if (kind == "main_theorem") {
    const auto& c = class_ref(env, task, "curve", path);
    const auto es = class_list(env, task, "classes", path);
    if (es.empty()) invalid(path + ".classes", "must not be empty");
    const auto& g = env.geo(path);
    family::ExpansionInputs in(env.ctx, es.size());
    in.z = variable_field(env, task, "z", path, "z");
    in.n = variable_field(env, task, "n", path, "n");
    if (task.contains("h")) {
      const Json& hv = task.at("h");
      if (!hv.is_array() || hv.size() != es.size())
        invalid(path + ".h", "expected one variable per class");
      in.h.clear();
      for (std::size_t i = 0; i < hv.size(); ++i) {
        const std::string p = path + ".h[" + std::to_string(i) + "]";
        if (!hv[i].is_string() || !env.ctx->find(hv[i].get<std::string>())) invalid(p, "unknown ring variable");
        in.h.push_back(hv[i].get<std::string>());
      }
    } else {
      for (std::size_t i = 0; i < in.h.size(); ++i)
        if (!env.ctx->find(in.h[i])) invalid(path + ".h", "ring lacks default variable '" + in.h[i] + "'");
    }
    in.w_residual = bundle_field_or_zero(env, task, "w_residual", path);
    in.residual_segre = poly_field_or(env, task, "residual_segre", path, in.residual_segre);
    in.w_prime = bundle_field_or_zero(env, task, "w_prime", path);
    in.v_prime = bundle_field_or_zero(env, task, "v_prime", path);
    in.r0_nd = bundle_field_or_zero(env, task, "r0_nd", path);
    if (task.contains("u")) {
      in.u = bundle_value(env, task.at("u"), path + ".u");
    } else {
      // Trivial U of whatever rank balances rank(omega).
      Int rank_u = -1;
      try {
        rank_u = family::rank_omega(c, es, g) + in.v_prime.vrank() +
                 static_cast<Int>(es.size()) * (1 + in.r0_nd.vrank());
      } catch (const Error&) {
      }
      if (rank_u < 0) invalid(path + ".u", "no trivial U balances rank(omega); give 'u' explicitly");
      in.u = VirtualBundle::trivial(env.ctx, static_cast<int>(rank_u));
    }
    in.r1 = bundle_field_or_zero(env, task, "r1", path);
    in.typeII_segre = poly_field_or(env, task, "typeII_segre", path, in.typeII_segre);
    in.typeII_virtual = poly_field_or(env, task, "typeII_virtual", path, in.typeII_virtual);
    if (task.contains("pg_class")) in.pg_class = poly_field(env, task, "pg_class", path);
    in.r2_trivial = bool_field_or(task, "r2_trivial", path, false);
    in.special_assumption = bool_field_or(task, "special_assumption", path, true);
    try {
      const auto t = family::dimension_triple(c, es, g);
      require_degree(env, t.a1, path, "a1");
      require_degree(env, t.a2, path, "a2");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation) throw;
    }
    return [g, c, es, in](std::uint64_t) {
      Outcome o;
      const auto rep = family::main_theorem_expansion(c, es, g, in);
      Json corr = Json::array();
      for (const auto& [label, term] : rep.corrections) corr.push_back(Json{{"label", label}, {"class", class_json(term)}});
      o.results = Json{{"a1", rep.dims.a1},
                       {"a2", rep.dims.a2},
                       {"a3", rep.dims.a3},
                       {"rank_omega", rep.rank_omega},
                       {"insertion", class_json(rep.insertion)},
                       {"dominating", class_json(rep.dominating)},
                       {"tau", class_json(rep.tau)},
                       {"tau_by_power", power_map_json(rep.tau_by_power)},
                       {"corrections", corr},
                       {"conditional", rep.conditional}};
      o.check("reassembles_full_class", rep.reassembles);
      o.check("dominating_h_free", rep.h_free);
      return o;
    };
  }

  // ---- randomized property checks ----
  if (kind == "stabilization_check") {
    const std::size_t count = count_field(task, path, 200);
    const int trunc = env.truncation;
    return [count, trunc](std::uint64_t seed) {
      Outcome o;
      sample::Rng rng(seed);
      const auto ctx = sample::bundle_context(trunc);
      std::size_t failures = 0;
      Json first_failure = nullptr;
      for (std::size_t i = 0; i < count; ++i) {
        const auto k = sample::random_kuranishi(rng, ctx);
        const auto gb = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 3)));
        const GradedClass before = family::localized_class(k, "z");
        const GradedClass after = family::localized_class(family::stabilize(k, gb, "z"), "z");
        if (!(before == after)) {
          if (failures++ == 0) first_failure = Json{{"before", before.to_string()}, {"after", after.to_string()}};
        }
      }
      o.results = Json{{"instances", count}, {"failures", failures}};
      o.check("localized_class_invariant", failures == 0, first_failure, nullptr);
      return o;
    };
  }
  if (kind == "whitney_segre_check") {
    const std::size_t count = count_field(task, path, 200);
    const int trunc = env.truncation;
    return [count, trunc](std::uint64_t seed) {
      Outcome o;
      sample::Rng rng(seed);
      const auto ctx = sample::bundle_context(trunc);
      std::size_t failures = 0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto e = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 3)));
        const auto f = sample::random_honest(rng, ctx, static_cast<int>(rng.uniform(0, 3)));
        if (!(ring::segre_total(ring::whitney_sum(e, f)) == ring::segre_total(e) * ring::segre_total(f)))
          ++failures;
      }
      o.results = Json{{"instances", count}, {"failures", failures}};
      o.check("segre_multiplicative", failures == 0, failures, 0);
      return o;
    };
  }
  if (kind == "rank_omega_check" || kind == "dimension_identity_check") {
    const std::size_t count = count_field(task, path, 100);
    const Int max_rank = int_field_or(task, "max_rank", path, 5);
    if (max_rank < 1) invalid(path + ".max_rank", "must be at least 1");
    return [count, max_rank, kind](std::uint64_t seed) {
      Outcome o;
      sample::Rng rng(seed);
      std::size_t failures = 0;
      Json first_failure = nullptr;
      for (std::size_t i = 0; i < count; ++i) {
        const auto g = sample::random_geometry(rng, static_cast<std::size_t>(max_rank));
        const auto c = sample::random_class(rng, g.rank());
        std::vector<LatticeClass> es;
        const auto p = rng.uniform(1, 3);
        for (Int j = 0; j < p; ++j) es.push_back(sample::random_class(rng, g.rank()));
        try {
          if (kind == "rank_omega_check") {
            const auto d = sample::random_class(rng, g.rank(), 3);
            const auto routes = family::rank_omega_routes(c, es, g, d);
            const bool ok = routes.riemann_roch[0] == Rational(routes.lattice) &&
                            routes.riemann_roch[1] == 0 && routes.riemann_roch[2] == 0;
            if (!ok && failures++ == 0) first_failure = routes.lattice;
          } else {
            (void)family::dimension_triple(c, es, g);
          }
        } catch (const Error& e) {
          if (failures++ == 0) first_failure = e.what();
        }
      }
      o.results = Json{{"instances", count}, {"failures", failures}};
      o.check(kind == "rank_omega_check" ? "routes_agree_and_n_free" : "a1+a2-a3_identity",
              failures == 0, first_failure, nullptr);
      return o;
    };
  }
  if (kind == "tau_check") {
    const std::size_t count = count_field(task, path, 50);
    const int trunc = env.truncation;
    return [count, trunc](std::uint64_t seed) {
      Outcome o;
      sample::Rng rng(seed);
      const auto ctx = sample::bundle_context(trunc);
      std::size_t failures = 0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto omega = sample::random_n_dependent_omega(rng, ctx);
        // Shift: add X - X' where X and X' differ only in their n-terms.
        const int r = static_cast<int>(rng.uniform(1, 2));
        const GradedClass base = sample::random_honest(rng, ctx, r).ctotal();
        const GradedClass nvar = GradedClass::variable(ctx, "n");
        const auto x = VirtualBundle::honest(r, base + nvar * sample::random_poly(rng, ctx, {"a", "c"}, 1, r, 2));
        const auto x2 = VirtualBundle::honest(r, base + nvar * sample::random_poly(rng, ctx, {"b", "c"}, 1, r, 2));
        const auto shifted = ring::whitney_sum(omega, ring::difference(ring::twist_by_line(x, "z"),
                                                                       ring::twist_by_line(x2, "z")));
        if (!(family::tau_class(omega, "z", "n").tau == family::tau_class(shifted, "z", "n").tau)) ++failures;
      }
      o.results = Json{{"instances", count}, {"failures", failures}};
      o.check("tau_shift_invariant", failures == 0, failures, 0);
      return o;
    };
  }
  if (kind == "collections_check") {
    const std::size_t count = count_field(task, path, 20);
    return [count](std::uint64_t seed) {
      Outcome o;
      sample::Rng rng(seed);
      std::size_t failures = 0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto g = sample::random_geometry(rng, 4);
        const auto c = sample::random_class(rng, g.rank());
        std::vector<LatticeClass> cands;
        const auto n = rng.uniform(1, 8);
        for (Int j = 0; j < n; ++j) cands.push_back(sample::random_class(rng, g.rank()));
        const auto cols = exceptional::enumerate_collections(c, cands, g, cands.size());
        // Bitmask filter over all subsets.
        std::vector<std::vector<std::size_t>> naive;
        for (std::uint32_t mask = 1; mask < (1u << cands.size()); ++mask) {
          std::vector<std::size_t> members;
          bool ok = true;
          for (std::size_t a = 0; a < cands.size(); ++a) {
            if (!(mask & (1u << a))) continue;
            ok = ok && exceptional::admissible_member(c, cands[a], g);
            for (std::size_t b : members) ok = ok && lattice::pair(cands[a], cands[b], g) >= 0;
            members.push_back(a);
          }
          if (ok) naive.push_back(members);
        }
        std::sort(naive.begin(), naive.end());
        std::vector<std::vector<std::size_t>> got;
        for (const auto& col : cols) got.push_back(col.members);
        if (got != naive) ++failures;
      }
      o.results = Json{{"instances", count}, {"failures", failures}};
      o.check("matches_subset_filter", failures == 0, failures, 0);
      return o;
    };
  }
  invalid(path + ".kind", "unknown task kind '" + kind + "'");
}

// ---- config ---------------------------------------------------------------

std::vector<ring::Variable> default_variables() {
  return {{"z", 1}, {"h1", 1}, {"h2", 1}, {"h3", 1}, {"n", 0}, {"a", 1}, {"b", 1}, {"c", 2}};
}

void load_env(const Json& cfg, Env& env) {
  if (!cfg.is_object()) invalid("$", "config must be an object");
  env.truncation = static_cast<int>(int_field_or(cfg, "truncation", "$", 6));
  if (env.truncation < 0) invalid("$.truncation", "must be nonnegative");

  std::vector<ring::Variable> vars = default_variables();
  if (cfg.contains("ring")) {
    const Json& r = cfg.at("ring");
    const Json& vs = field(r, "variables", "$.ring");
    if (!vs.is_array()) invalid("$.ring.variables", "expected an array");
    vars.clear();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string p = "$.ring.variables[" + std::to_string(i) + "]";
      vars.push_back({string_field(vs[i], "name", p), static_cast<int>(int_field_or(vs[i], "degree", p, 1))});
    }
  }
  try {
    env.ctx = ring::RingContext::make(vars, env.truncation);
  } catch (const Error& e) {
    invalid("$.ring", e.what());
  }

  if (cfg.contains("geometry")) {
    const Json& g = cfg.at("geometry");
    const std::string p = "$.geometry";
    const Json& gram_json = field(g, "gram", p);
    if (!gram_json.is_array()) invalid(p + ".gram", "expected a matrix");
    std::vector<std::vector<Int>> gram;
    for (std::size_t i = 0; i < gram_json.size(); ++i)
      gram.push_back(int_vector(gram_json[i], p + ".gram[" + std::to_string(i) + "]"));
    try {
      env.geometry.emplace(std::move(gram), int_vector(field(g, "canonical", p), p + ".canonical"),
                           int_field_or(g, "p_g", p, 0), int_field_or(g, "q", p, 0),
                           int_field_or(g, "c2", p, 0), int_field_or(g, "dim_base", p, 0));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation) invalid(p, e.what());
      invalid(p, e.what());
    }
  }

  if (cfg.contains("classes")) {
    const Json& cs = cfg.at("classes");
    if (!cs.is_object()) invalid("$.classes", "expected an object of named classes");
    for (const auto& [name, spec] : cs.items()) {
      const std::string p = "$.classes." + name;
      LatticeClass c(int_vector(field(spec, "coords", p), p + ".coords"), int_field_or(spec, "degree_rel", p, 0));
      if (env.geometry && c.coords.size() != env.geometry->rank())
        invalid(p + ".coords", "length " + std::to_string(c.coords.size()) + " does not match lattice rank " +
                                   std::to_string(env.geometry->rank()));
      if (spec.contains("febd")) {
        auto f = lattice::parse_febd(string_field(spec, "febd", p));
        if (!f) invalid(p + ".febd", "expected 'zero' or 'pg'");
        c.febd = *f;
      }
      if (spec.contains("type")) {
        auto t = lattice::parse_type_tag(string_field(spec, "type", p));
        if (!t) invalid(p + ".type", "expected 'typeI', 'typeII' or 'ordinary'");
        c.type_tag = *t;
      }
      env.classes.emplace(name, std::move(c));
    }
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

RunResult run_text(const std::string& config_text, const RunOptions& options) {
  RunResult result;
  Json cfg;
  try {
    cfg = Json::parse(config_text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(config_text, e.byte == 0 ? 0 : e.byte - 1);
    result.exit_code = kExitParse;
    result.message = "parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what();
    return result;
  }

  Env env;
  std::vector<Runner> runners;
  Json tasks;
  try {
    load_env(cfg, env);
    tasks = field(cfg, "tasks", "$");
    if (!tasks.is_array()) invalid("$.tasks", "expected an array");
    for (std::size_t i = 0; i < tasks.size(); ++i)
      runners.push_back(prepare_task(tasks[i], env, "$.tasks[" + std::to_string(i) + "]"));
    if (cfg.contains("output")) result.output_path = string_field(cfg, "output", "$");
  } catch (const Error& e) {
    result.exit_code = kExitValidation;
    result.message = std::string("validation error: ") + e.what();
    return result;
  }
  if (options.output) result.output_path = options.output;

  Json report;
  report["report_version"] = kReportVersion;
  report["seed"] = std::to_string(options.seed);
  report["truncation"] = env.truncation;

  if (options.check_only) {
    report["check_only"] = true;
    report["task_count"] = runners.size();
    report["all_passed"] = true;
    result.report = report.dump(2) + "\n";
    return result;
  }

  std::vector<Json> entries(runners.size());
  std::vector<char> passed(runners.size(), 0);
  const auto n = static_cast<std::int64_t>(runners.size());
  auto execute = [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    Json entry;
    entry["index"] = idx;
    entry["kind"] = tasks[idx].at("kind");
    entry["inputs"] = tasks[idx];
    try {
      Outcome o = runners[idx](mix_seed(options.seed, idx));
      entry["results"] = std::move(o.results);
      entry["checks"] = std::move(o.checks);
      entry["status"] = o.passed ? "pass" : "fail";
      passed[idx] = o.passed ? 1 : 0;
    } catch (const Error& e) {
      entry["status"] = "error";
      entry["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    } catch (const std::exception& e) {
      entry["status"] = "error";
      entry["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    }
    entries[idx] = std::move(entry);
  };
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) execute(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) execute(i);
  }

  bool all = true;
  Json jt = Json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    all = all && passed[i];
    jt.push_back(std::move(entries[i]));
  }
  report["tasks"] = std::move(jt);
  report["all_passed"] = all;
  result.report = report.dump(2) + "\n";
  result.exit_code = all ? kExitOk : kExitAssertion;
  return result;
}

int run(const std::string& config_path, const RunOptions& options) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open config '" << config_path << "'\n";
    return kExitParse;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunResult r = run_text(buffer.str(), options);
  if (!r.message.empty()) std::cerr << r.message << "\n";
  if (r.report.empty()) return r.exit_code;
  if (r.output_path && !r.output_path->empty() && *r.output_path != "-") {
    std::ofstream out(*r.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to '" << *r.output_path << "'\n";
      return kExitValidation;
    }
    out << r.report;
  } else {
    std::cout << r.report;
  }
  return r.exit_code;
}

}  // namespace chowcalc::cli
