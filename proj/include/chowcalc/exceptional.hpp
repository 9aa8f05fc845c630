#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chowcalc/lattice.hpp"

namespace chowcalc::exceptional {

using lattice::Int;
using lattice::LatticeClass;
using lattice::SurfaceGeometry;

/// A collection of exceptional classes, stored as indices into the candidate
/// list plus the generators of its cone.
struct Collection {
  std::vector<std::size_t> members;            // ascending candidate indices
  std::vector<std::vector<Int>> generators;    // coords of the members

  bool operator==(const Collection&) const = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

struct Schedule {
  std::vector<Collection> ordered;
  std::vector<Edge> order_relation;  // indices into `ordered`

  /// Blowup order: the linear order reversed.
  std::vector<Collection> blowup_order() const;
};

/// Member test shared by enumeration and post-hoc validation: exceptional and
/// C.e < 0.
bool admissible_member(const LatticeClass& c, const LatticeClass& e, const SurfaceGeometry& g);

/// All nonempty subsets of at most max_size admissible candidates with
/// pairwise nonnegative intersections, in lexicographic order of index lists.
std::vector<Collection> enumerate_collections(const LatticeClass& c,
                                              const std::vector<LatticeClass>& candidates,
                                              const SurfaceGeometry& g, std::size_t max_size);

namespace serial {
std::vector<Collection> enumerate_collections(const LatticeClass& c,
                                              const std::vector<LatticeClass>& candidates,
                                              const SurfaceGeometry& g, std::size_t max_size);
std::vector<Edge> cone_partial_order(const std::vector<Collection>& cs);
}  // namespace serial

/// Search bound for cone membership: max |coordinate| of the target times the
/// lattice rank (at least 1).
Int membership_bound(const std::vector<Int>& target);

/// Whether target is a nonnegative integer combination of the generators with
/// every coefficient at most membership_bound(target).
bool in_cone(const std::vector<Int>& target, const std::vector<std::vector<Int>>& generators);

bool cone_contains(const Collection& outer, const Collection& inner);

/// Edge (a, b) iff cone(a) is strictly inside cone(b).
std::vector<Edge> cone_partial_order(const std::vector<Collection>& cs);

/// Deterministic topological sort; ties go to larger collections first, then
/// to the lexicographically smaller member list. Throws on a cycle.
Schedule linearize(const std::vector<Collection>& cs, const std::vector<Edge>& po);

}  // namespace chowcalc::exceptional
