#include "chowcalc/exceptional.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "chowcalc/error.hpp"

namespace chowcalc::exceptional {

std::vector<Collection> Schedule::blowup_order() const {
  return std::vector<Collection>(ordered.rbegin(), ordered.rend());
}

bool admissible_member(const LatticeClass& c, const LatticeClass& e, const SurfaceGeometry& g) {
  return lattice::is_exceptional(e, g) && lattice::pair(c, e, g) < 0;
}

namespace {

struct EnumerationState {
  const std::vector<LatticeClass>& candidates;
  const std::vector<std::size_t>& admissible;  // admissible candidate indices
  const std::vector<std::vector<Int>>& gram;   // pairings among admissible
  std::size_t max_size;
};

// Depth-first extension of `prefix` (positions into admissible); emits in
// lexicographic order.
void extend(const EnumerationState& st, std::vector<std::size_t>& prefix,
            std::vector<Collection>& out) {
  Collection col;
  for (std::size_t pos : prefix) {
    col.members.push_back(st.admissible[pos]);
    col.generators.push_back(st.candidates[st.admissible[pos]].coords);
  }
  out.push_back(std::move(col));
  if (prefix.size() == st.max_size) return;
  for (std::size_t next = prefix.back() + 1; next < st.admissible.size(); ++next) {
    bool ok = true;
    for (std::size_t pos : prefix) ok = ok && st.gram[pos][next] >= 0;
    if (!ok) continue;
    prefix.push_back(next);
    extend(st, prefix, out);
    prefix.pop_back();
  }
}

struct Prepared {
  std::vector<std::size_t> admissible;
  std::vector<std::vector<Int>> gram;
};

Prepared prepare(const LatticeClass& c, const std::vector<LatticeClass>& candidates,
                 const SurfaceGeometry& g, std::size_t max_size) {
  if (max_size < 1) fail(ErrorKind::Validation, "max_size must be at least 1");
  Prepared p;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (admissible_member(c, candidates[i], g)) p.admissible.push_back(i);
  const std::size_t n = p.admissible.size();
  p.gram.assign(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p.gram[i][j] = lattice::pair(candidates[p.admissible[i]], candidates[p.admissible[j]], g);
  return p;
}

}  // namespace

namespace serial {

std::vector<Collection> enumerate_collections(const LatticeClass& c,
                                              const std::vector<LatticeClass>& candidates,
                                              const SurfaceGeometry& g, std::size_t max_size) {
  const Prepared p = prepare(c, candidates, g, max_size);
  const EnumerationState st{candidates, p.admissible, p.gram, max_size};
  std::vector<Collection> out;
  std::vector<std::size_t> prefix;
  for (std::size_t first = 0; first < p.admissible.size(); ++first) {
    prefix.assign(1, first);
    extend(st, prefix, out);
  }
  return out;
}

std::vector<Edge> cone_partial_order(const std::vector<Collection>& cs) {
  const std::size_t n = cs.size();
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && cone_contains(cs[b], cs[a]) && !cone_contains(cs[a], cs[b]))
        edges.emplace_back(a, b);
  return edges;
}

}  // namespace serial

std::vector<Collection> enumerate_collections(const LatticeClass& c,
                                              const std::vector<LatticeClass>& candidates,
                                              const SurfaceGeometry& g, std::size_t max_size) {
  const Prepared p = prepare(c, candidates, g, max_size);
  const EnumerationState st{candidates, p.admissible, p.gram, max_size};
  const auto n = static_cast<std::int64_t>(p.admissible.size());
  std::vector<std::vector<Collection>> blocks(p.admissible.size());

  // One block per leading index; concatenating blocks in order keeps the
  // lexicographic order.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t first = 0; first < n; ++first) {
    std::vector<std::size_t> prefix{static_cast<std::size_t>(first)};
    extend(st, prefix, blocks[static_cast<std::size_t>(first)]);
  }

  std::vector<Collection> out;
  for (auto& block : blocks)
    for (auto& col : block) out.push_back(std::move(col));
  return out;
}

Int membership_bound(const std::vector<Int>& target) {
  Int m = 0;
  for (Int x : target) m = std::max<Int>(m, std::llabs(x));
  return std::max<Int>(1, m * static_cast<Int>(target.size()));
}

namespace {

bool search(std::vector<Int>& residual, const std::vector<std::vector<Int>>& gens, std::size_t k,
            Int bound) {
  if (std::all_of(residual.begin(), residual.end(), [](Int x) { return x == 0; })) return true;
  if (k == gens.size()) return false;
  const auto& gen = gens[k];
  std::size_t applied = 0;
  bool found = false;
  for (Int lambda = 0; lambda <= bound; ++lambda) {
    if (search(residual, gens, k + 1, bound)) {
      found = true;
      break;
    }
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= gen[i];
    ++applied;
  }
  for (std::size_t step = 0; step < applied; ++step)
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] += gen[i];
  return found;
}

}  // namespace

bool in_cone(const std::vector<Int>& target, const std::vector<std::vector<Int>>& generators) {
  for (const auto& gen : generators)
    if (gen.size() != target.size())
      fail(ErrorKind::DimensionMismatch, "cone generator length differs from target");
  std::vector<Int> residual = target;
  return search(residual, generators, 0, membership_bound(target));
}

bool cone_contains(const Collection& outer, const Collection& inner) {
  return std::all_of(inner.generators.begin(), inner.generators.end(),
                     [&](const auto& gen) { return in_cone(gen, outer.generators); });
}

std::vector<Edge> cone_partial_order(const std::vector<Collection>& cs) {
  const std::size_t n = cs.size();
  // contains[a * n + b]: cone(b) contains cone(a)
  std::vector<char> contains(n * n, 0);
  const auto total = static_cast<std::int64_t>(n * n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto a = static_cast<std::size_t>(idx) / n;
    const auto b = static_cast<std::size_t>(idx) % n;
    if (a != b) contains[static_cast<std::size_t>(idx)] = cone_contains(cs[b], cs[a]) ? 1 : 0;
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && contains[a * n + b] && !contains[b * n + a]) edges.emplace_back(a, b);
  return edges;
}

Schedule linearize(const std::vector<Collection>& cs, const std::vector<Edge>& po) {
  const std::size_t n = cs.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [a, b] : po) {
    if (a >= n || b >= n) fail(ErrorKind::Validation, "partial order edge out of range");
    succ[a].push_back(b);
    ++indeg[b];
  }
  auto before = [&](std::size_t x, std::size_t y) {
    if (cs[x].members.size() != cs[y].members.size())
      return cs[x].members.size() > cs[y].members.size();
    if (cs[x].members != cs[y].members) return cs[x].members < cs[y].members;
    return x < y;
  };
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);

  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end(), before);
    const std::size_t next = *it;
    ready.erase(it);
    order.push_back(next);
    for (std::size_t s : succ[next])
      if (--indeg[s] == 0) ready.push_back(s);
  }
  if (order.size() != n)
    fail(ErrorKind::Cycle, "cone order has a cycle through " + std::to_string(n - order.size()) +
                               " collections");

  std::vector<std::size_t> position(n);
  Schedule sched;
  for (std::size_t i = 0; i < n; ++i) {
    position[order[i]] = i;
    sched.ordered.push_back(cs[order[i]]);
  }
  for (const auto& [a, b] : po) sched.order_relation.emplace_back(position[a], position[b]);
  return sched;
}

}  // namespace chowcalc::exceptional
