#pragma once

// Simple quotients by functor-generic Moore-style partition refinement.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "coalgmin/coalgebra.hpp"
#include "coalgmin/factorization.hpp"
#include "coalgmin/partition.hpp"

namespace coalgmin {

/// P_0 = {C}, P_{k+1} splits each block of P_k by F(kappa_k)(c(x)) where
/// kappa_k sends every state to the representative of its block. Returns
/// P_0, P_1, ..., ending with the first repeated partition (the fixpoint).
/// For the empty carrier the sequence is just the empty partition.
inline std::vector<Partition> refinement_sequence(const Coalgebra& c) {
  require_valid(c);
  std::vector<Partition> seq{Partition::single_block(c.size())};
  while (true) {
    const auto& current = seq.back();
    auto reps = current.representatives();
    std::vector<std::pair<std::size_t, FStructure>> keys;
    keys.reserve(c.size());
    for (StateIndex x = 0; x < c.size(); ++x) {
      keys.emplace_back(current.block_of(x), fmap(c.functor, reps, c.at(x)));
    }
    auto next = Partition::from_keys<std::pair<std::size_t, FStructure>>(keys);
    bool stable = next.block_count() == current.block_count();
    seq.push_back(std::move(next));
    if (stable) break;
  }
  return seq;
}

template <CoalgebraLike C>
QuotientResult<C> simple_quotient(const C& c) {
  auto seq = refinement_sequence(underlying(c));
  return apply_partition_quotient(c, seq.back());
}

/// States are in one block iff they are behaviourally equivalent.
template <CoalgebraLike C>
Partition behavioural_classes(const C& c) {
  return refinement_sequence(underlying(c)).back();
}

template <CoalgebraLike C>
bool is_simple(const C& c) {
  return behavioural_classes(c).is_discrete();
}

/// Every partition that admits a quotient coalgebra, in restricted-growth
/// order (lexicographic on the block label of states 0, 1, ...).
template <CoalgebraLike C>
std::vector<Partition> enumerate_compatible_partitions(const C& c, std::size_t bound = 8) {
  require_valid(c);
  const auto n = c.size();
  if (n > bound) {
    throw Error(ErrorKind::OracleBoundExceeded,
                std::to_string(n) + " states exceed the partition oracle bound " + std::to_string(bound));
  }
  std::vector<Partition> out;
  std::vector<std::size_t> label(n, 0);
  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i)).
  auto recurse = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      auto p = Partition::from_keys<std::size_t>(label);
      if (is_compatible(c, p)) out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

using Word = std::vector<std::size_t>;

/// Words of length <= max_len accepted from each state, by induction on the
/// word length: L(x) = {e | x final} + {a w | w in L(next_a(x))}.
inline std::vector<std::set<Word>> dfa_language_oracle(const Coalgebra& c, std::size_t max_len) {
  require_valid(c);
  auto* dfa = c.functor.get_if<DfaFunctor>();
  if (dfa == nullptr) throw Error(ErrorKind::WrongFunctor, "language oracle needs a DFA coalgebra");
  std::vector<std::set<Word>> lang(c.size());
  for (StateIndex x = 0; x < c.size(); ++x)
    if (std::get<DfaStruct>(c.at(x)).accepting) lang[x].insert(Word{});
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::set<Word>> next(c.size());
    for (StateIndex x = 0; x < c.size(); ++x) {
      const auto& t = std::get<DfaStruct>(c.at(x));
      if (t.accepting) next[x].insert(Word{});
      for (std::size_t a = 0; a < t.next.size(); ++a) {
        for (const auto& w : lang[t.next[a]]) {
          Word aw{a};
          aw.insert(aw.end(), w.begin(), w.end());
          next[x].insert(std::move(aw));
        }
      }
    }
    lang = std::move(next);
  }
  return lang;
}

inline std::vector<std::set<Word>> dfa_language_oracle(const PointedCoalgebra& c, std::size_t max_len) {
  return dfa_language_oracle(c.base, max_len);
}

/// States grouped by equal bounded languages.
inline Partition language_kernel(const std::vector<std::set<Word>>& languages) {
  return Partition::from_keys<std::set<Word>>(languages);
}

}  // namespace coalgmin
