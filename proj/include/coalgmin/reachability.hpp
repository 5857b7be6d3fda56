#pragma once

#include <deque>
#include <vector>

#include "coalgmin/coalgebra.hpp"

namespace coalgmin {

struct ReachableResult {
  PointedCoalgebra reachable;
  PointedMorphism embedding;
};

/// The pointed subcoalgebra on the given states (listed in the order the new
/// carrier should use). Throws SupportEscapesSubset if it is not closed.
inline ReachableResult restrict_to(const PointedCoalgebra& c, std::span<const StateIndex> subset) {
  const auto& base = c.base;
  Coalgebra sub{base.functor, {}, {}};
  std::optional<StateIndex> point;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    sub.states.push_back(base.states.at(subset[i]));
    sub.structure.push_back(restrict_structure(base.functor, base.at(subset[i]), subset));
    if (subset[i] == c.point) point = i;
  }
  if (!point) throw Error(ErrorKind::PointNotInCarrier, "subset does not contain the point");
  PointedCoalgebra r{std::move(sub), *point};
  return {r, {r, c, std::vector<StateIndex>(subset.begin(), subset.end())}};
}

/// Breadth-first closure of the point under successor supports. States are
/// discovered in carrier order within each structure, and the reachable
/// carrier lists them in discovery order, so a second call returns the same
/// coalgebra with the identity embedding.
inline ReachableResult reachable_part(const PointedCoalgebra& c) {
  require_valid(c);
  const auto& base = c.base;
  std::vector<bool> seen(base.size(), false);
  std::vector<StateIndex> order;
  std::deque<StateIndex> frontier{c.point};
  seen[c.point] = true;
  while (!frontier.empty()) {
    auto x = frontier.front();
    frontier.pop_front();
    order.push_back(x);
    for (auto y : support(base.functor, base.at(x))) {
      if (!seen[y]) {
        seen[y] = true;
        frontier.push_back(y);
      }
    }
  }
  return restrict_to(c, order);
}

inline bool is_reachable(const PointedCoalgebra& c) { return reachable_part(c).reachable.size() == c.size(); }

/// All state sets that contain the point and are closed under successors,
/// as sorted index lists in increasing bitmask order. Exponential; oracle use.
inline std::vector<std::vector<StateIndex>> enumerate_pointed_subcoalgebras(const PointedCoalgebra& c,
                                                                           std::size_t bound = 12) {
  require_valid(c);
  const auto n = c.size();
  if (n > bound) {
    throw Error(ErrorKind::OracleBoundExceeded,
                std::to_string(n) + " states exceed the subcoalgebra oracle bound " + std::to_string(bound));
  }
  std::vector<std::uint64_t> succ_mask(n, 0);
  for (StateIndex x = 0; x < n; ++x)
    for (auto y : support(c.base.functor, c.base.at(x))) succ_mask[x] |= std::uint64_t{1} << y;

  std::vector<std::vector<StateIndex>> out;
  const std::uint64_t point_bit = std::uint64_t{1} << c.point;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask & point_bit)) continue;
    bool closed = true;
    for (StateIndex x = 0; x < n && closed; ++x)
      if ((mask >> x & 1) && (succ_mask[x] & ~mask)) closed = false;
    if (!closed) continue;
    std::vector<StateIndex> subset;
    for (StateIndex x = 0; x < n; ++x)
      if (mask >> x & 1) subset.push_back(x);
    out.push_back(std::move(subset));
  }
  return out;
}

}  // namespace coalgmin
