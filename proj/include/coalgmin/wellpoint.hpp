#pragma once

// Combining both minimizations, isomorphism testing and tree unravelling.

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "coalgmin/coalgebra.hpp"
#include "coalgmin/observability.hpp"
#include "coalgmin/reachability.hpp"

namespace coalgmin {

/// Simple quotient first, reachable part second.
inline PointedCoalgebra well_pointed_modification(const PointedCoalgebra& c) {
  return reachable_part(simple_quotient(c).quotient).reachable;
}

inline bool is_well_pointed(const PointedCoalgebra& c) { return is_reachable(c) && is_simple(c); }

namespace detail {

/// Pointed reachable DFAs have at most one isomorphism, found by walking both
/// automata from their points in symbol order.
inline std::optional<std::vector<StateIndex>> dfa_walk_isomorphism(const PointedCoalgebra& a,
                                                                   const PointedCoalgebra& b) {
  const auto n = a.size();
  std::vector<StateIndex> phi(n, n);
  std::vector<bool> used(b.size(), false);
  std::deque<StateIndex> frontier{a.point};
  phi[a.point] = b.point;
  used[b.point] = true;
  while (!frontier.empty()) {
    auto x = frontier.front();
    frontier.pop_front();
    const auto& tx = std::get<DfaStruct>(a.base.at(x));
    const auto& ty = std::get<DfaStruct>(b.base.at(phi[x]));
    if (tx.accepting != ty.accepting) return std::nullopt;
    for (std::size_t s = 0; s < tx.next.size(); ++s) {
      auto x2 = tx.next[s];
      auto y2 = ty.next[s];
      if (phi[x2] == n) {
        if (used[y2]) return std::nullopt;
        phi[x2] = y2;
        used[y2] = true;
        frontier.push_back(x2);
      } else if (phi[x2] != y2) {
        return std::nullopt;
      }
    }
  }
  return phi;
}

}  // namespace detail

/// Up to `limit` isomorphisms A -> B (point-preserving for pointed inputs),
/// by backtracking over bijections. A state may only be sent to a
/// behaviourally equivalent state of B (computed on A + B), and the
/// homomorphism law is checked as soon as a state and its successors are
/// assigned.
template <CoalgebraLike C>
std::vector<std::vector<StateIndex>> find_isomorphisms(const C& a, const C& b, std::size_t limit = SIZE_MAX) {
  require_valid(a);
  require_valid(b);
  const auto& ca = underlying(a);
  const auto& cb = underlying(b);
  if (!(ca.functor == cb.functor)) throw Error(ErrorKind::SpecMismatch, "isomorphism between different functors");
  std::vector<std::vector<StateIndex>> out;
  const auto n = ca.size();
  if (n != cb.size() || limit == 0) return out;

  if constexpr (std::same_as<C, PointedCoalgebra>) {
    if (ca.functor.template is<DfaFunctor>() && is_reachable(a) && is_reachable(b)) {
      if (auto phi = detail::dfa_walk_isomorphism(a, b)) out.push_back(std::move(*phi));
      return out;
    }
  }

  auto classes = behavioural_classes(coproduct(ca, cb));
  std::vector<std::size_t> class_count(classes.block_count(), 0);
  for (StateIndex x = 0; x < n; ++x) ++class_count[classes.block_of(x)];
  for (StateIndex y = 0; y < n; ++y) {
    if (class_count[classes.block_of(n + y)]-- == 0) return out;
  }

  // Assignment order: BFS from the point (if any), then the rest.
  std::vector<StateIndex> order;
  std::vector<bool> placed(n, false);
  auto bfs = [&](StateIndex start) {
    std::deque<StateIndex> q{start};
    placed[start] = true;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      order.push_back(x);
      for (auto y : support(ca.functor, ca.at(x)))
        if (!placed[y]) {
          placed[y] = true;
          q.push_back(y);
        }
    }
  };
  auto pa = point_of(a);
  if (pa) bfs(*pa);
  for (StateIndex x = 0; x < n; ++x)
    if (!placed[x]) bfs(x);

  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<StateIndex>> ready_at(n);
  for (StateIndex x = 0; x < n; ++x) {
    std::size_t level = position[x];
    for (auto y : support(ca.functor, ca.at(x))) level = std::max(level, position[y]);
    ready_at[level].push_back(x);
  }

  std::vector<StateIndex> phi(n, 0);
  std::vector<bool> used(n, false);
  auto pb = point_of(b);
  auto search = [&](auto&& self, std::size_t level) -> void {
    if (out.size() >= limit) return;
    if (level == n) {
      out.push_back(phi);
      return;
    }
    auto x = order[level];
    for (StateIndex y = 0; y < n; ++y) {
      if (used[y] || classes.block_of(x) != classes.block_of(n + y)) continue;
      if (pa && x == *pa && y != *pb) continue;
      phi[x] = y;
      bool ok = true;
      for (auto z : ready_at[level]) {
        if (!(cb.at(phi[z]) == fmap(ca.functor, phi, ca.at(z)))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[y] = true;
      self(self, level + 1);
      used[y] = false;
      if (out.size() >= limit) return;
    }
  };
  search(search, 0);
  return out;
}

template <CoalgebraLike C>
std::optional<std::vector<StateIndex>> are_isomorphic(const C& a, const C& b) {
  auto found = find_isomorphisms(a, b, 1);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

struct CommutationReport {
  PointedCoalgebra simple_first;  ///< reach(simple(C))
  PointedCoalgebra reach_first;   ///< simple(reach(C)); may be unreachable
  bool agree = false;
  std::optional<std::vector<StateIndex>> iso;  ///< simple_first -> reach_first
};

inline CommutationReport commutation_check(const PointedCoalgebra& c) {
  CommutationReport r{well_pointed_modification(c), simple_quotient(reachable_part(c).reachable).quotient, false, {}};
  r.iso = are_isomorphic(r.simple_first, r.reach_first);
  r.agree = r.iso.has_value();
  return r;
}

struct Unravelling {
  PointedCoalgebra tree;
  PointedMorphism covering;  ///< tree -> reachable part of the input
};

namespace detail {

inline std::optional<std::vector<StateIndex>> find_cycle(const Coalgebra& c) {
  enum Color : unsigned char { White, Grey, Black };
  std::vector<Color> color(c.size(), White);
  std::vector<StateIndex> stack;
  std::optional<std::vector<StateIndex>> cycle;
  auto dfs = [&](auto&& self, StateIndex x) -> bool {
    color[x] = Grey;
    stack.push_back(x);
    for (auto y : support(c.functor, c.at(x))) {
      if (color[y] == Grey) {
        auto it = std::find(stack.begin(), stack.end(), y);
        cycle = std::vector<StateIndex>(it, stack.end());
        return true;
      }
      if (color[y] == White && self(self, y)) return true;
    }
    stack.pop_back();
    color[x] = Black;
    return false;
  };
  for (StateIndex x = 0; x < c.size(); ++x)
    if (color[x] == White && dfs(dfs, x)) break;
  return cycle;
}

}  // namespace detail

/// Unfolds the reachable part into the tree of its edge paths. Node ids are
/// "root/label/label/...": DFA edges are labelled by symbol, set edges by the
/// target's name, labelled edges by "label:target", and a bag edge of
/// multiplicity k by "target#1" ... "target#k" (one weight-1 child each).
/// Rational weights are kept on a single child per target.
inline Unravelling tree_unravel(const PointedCoalgebra& c, std::size_t max_states = std::size_t{1} << 16) {
  auto reach = reachable_part(c).reachable;
  const auto& r = reach.base;
  if (auto cycle = detail::find_cycle(r)) {
    std::string names;
    for (auto x : *cycle) names += (names.empty() ? "" : " -> ") + r.states[x];
    throw Error(ErrorKind::CyclicReachablePart, "reachable part has a cycle " + names + "; its unravelling is infinite",
                names);
  }
  const auto& f = r.functor;
  Coalgebra tree{f, {"root"}, {FStructure{}}};
  std::vector<StateIndex> cover{reach.point};
  std::deque<StateIndex> frontier{0};
  auto add_child = [&](StateIndex parent, const std::string& label, StateIndex target) {
    if (tree.size() >= max_states) {
      throw Error(ErrorKind::UnravelBoundExceeded, "tree exceeds " + std::to_string(max_states) + " states");
    }
    tree.states.push_back(tree.states[parent] + "/" + label);
    tree.structure.emplace_back();
    cover.push_back(target);
    frontier.push_back(tree.size() - 1);
    return tree.size() - 1;
  };
  while (!frontier.empty()) {
    auto node = frontier.front();
    frontier.pop_front();
    const auto& t = r.at(cover[node]);
    FStructure out;
    if (auto* d = std::get_if<DfaStruct>(&t)) {
      DfaStruct nd{d->accepting, {}};
      const auto& alphabet = f.get_if<DfaFunctor>()->alphabet;
      for (std::size_t s = 0; s < d->next.size(); ++s) nd.next.push_back(add_child(node, alphabet[s], d->next[s]));
      out = std::move(nd);
    } else if (auto* s = std::get_if<SetStruct>(&t)) {
      std::vector<StateIndex> kids;
      for (auto y : s->successors) kids.push_back(add_child(node, r.states[y], y));
      out = make_set(std::move(kids));
    } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
      const auto& labels = f.get_if<LabelledPowersetFunctor>()->labels;
      std::vector<std::pair<std::size_t, StateIndex>> kids;
      for (const auto& [lab, y] : l->successors) kids.emplace_back(lab, add_child(node, labels[lab] + ":" + r.states[y], y));
      out = make_labelled(std::move(kids));
    } else {
      std::vector<std::pair<StateIndex, Rational>> kids;
      bool bag = f.is_weighted_over(Monoid::Naturals);
      for (const auto& [y, w] : std::get<WeightedStruct>(t).weights) {
        if (bag) {
          for (std::int64_t k = 1; k <= w.num(); ++k)
            kids.emplace_back(add_child(node, r.states[y] + "#" + std::to_string(k), y), Rational(1));
        } else {
          kids.emplace_back(add_child(node, r.states[y], y), w);
        }
      }
      out = make_weighted(kids);
    }
    tree.structure[node] = std::move(out);
  }
  PointedCoalgebra t{std::move(tree), 0};
  require_valid(t);
  return {t, {t, reach, std::move(cover)}};
}

}  // namespace coalgmin
