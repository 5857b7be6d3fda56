#pragma once

// Brute-force oracles. Homomorphism search and the subobject/quotient
// enumerations never call the production minimization algorithms; the
// property checks below compare the two sides.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coalgmin/coalgebra.hpp"
#include "coalgmin/factorization.hpp"
#include "coalgmin/observability.hpp"
#include "coalgmin/reachability.hpp"
#include "coalgmin/wellpoint.hpp"

namespace coalgmin::oracle {

struct HomSearchConfig {
  /// For pointed inputs: only report point-preserving maps.
  bool pointed = true;
  /// Abort after visiting this many partial assignments.
  std::size_t max_candidates = 20'000'000;
  std::size_t state_bound = 12;
};

/// Every total map A -> B satisfying the homomorphism law (and sending
/// points.first to points.second, if given), in lexicographic order of the
/// image vector.
inline std::vector<std::vector<StateIndex>> enumerate_homomorphism_maps(
    const Coalgebra& a, const Coalgebra& b, std::optional<std::pair<StateIndex, StateIndex>> points,
    const HomSearchConfig& cfg = {}) {
  if (!(a.functor == b.functor)) throw Error(ErrorKind::SpecMismatch, "homomorphism search between different functors");
  if (a.size() > cfg.state_bound || b.size() > cfg.state_bound) {
    throw Error(ErrorKind::SearchBoundExceeded, "coalgebra exceeds the search state bound " + std::to_string(cfg.state_bound));
  }
  require_valid(a);
  require_valid(b);
  const auto n = a.size();
  const auto& f = a.functor;

  // x may only go to y if both have the same image in F1.
  std::vector<FStructure> shape_b;
  for (StateIndex y = 0; y < b.size(); ++y) shape_b.push_back(terminal_image(f, b.at(y)));
  std::vector<std::vector<StateIndex>> candidates(n);
  for (StateIndex x = 0; x < n; ++x) {
    auto shape = terminal_image(f, a.at(x));
    for (StateIndex y = 0; y < b.size(); ++y) {
      if (points && x == points->first && y != points->second) continue;
      if (shape_b[y] == shape) candidates[x].push_back(y);
    }
  }

  // The law at x can be checked once x and its successors are assigned.
  std::vector<std::vector<StateIndex>> ready_at(n);
  for (StateIndex x = 0; x < n; ++x) {
    auto s = support(f, a.at(x));
    ready_at[s.empty() ? x : std::max(x, s.back())].push_back(x);
  }

  std::vector<std::vector<StateIndex>> out;
  std::vector<StateIndex> h(n, 0);
  std::size_t visited = 0;
  auto search = [&](auto&& self, StateIndex x) -> void {
    if (x == n) {
      out.push_back(h);
      return;
    }
    for (auto y : candidates[x]) {
      if (++visited > cfg.max_candidates) {
        throw Error(ErrorKind::SearchBoundExceeded,
                    "homomorphism search visited more than " + std::to_string(cfg.max_candidates) + " candidates");
      }
      h[x] = y;
      bool ok = true;
      for (auto z : ready_at[x]) {
        if (!(b.at(h[z]) == fmap(f, h, a.at(z)))) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, x + 1);
    }
  };
  search(search, 0);
  return out;
}

template <CoalgebraLike C>
std::vector<Morphism<C>> enumerate_homomorphisms(const C& a, const C& b, const HomSearchConfig& cfg = {}) {
  std::optional<std::pair<StateIndex, StateIndex>> points;
  if constexpr (std::same_as<C, PointedCoalgebra>) {
    if (cfg.pointed) points = std::pair{a.point, b.point};
  }
  std::vector<Morphism<C>> out;
  for (auto& map : enumerate_homomorphism_maps(underlying(a), underlying(b), points, cfg)) {
    out.push_back({a, b, std::move(map)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

struct Failure {
  std::string instance;  ///< digest of the offending instance
  std::string witness;
};

struct PropertyReport {
  std::string property;
  std::size_t instances = 0;
  std::vector<Failure> failures;
  /// Findings that are expected and do not count as failures, e.g. the
  /// non-reachable quotients of rational-weighted systems.
  std::vector<std::string> witnesses;

  bool passed() const noexcept { return failures.empty(); }

  void fail(const std::string& instance, std::string witness) { failures.push_back({instance, std::move(witness)}); }

  void merge(const PropertyReport& other) {
    instances += other.instances;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
  }

  std::string summary() const {
    std::ostringstream os;
    os << (passed() ? "PASS " : "FAIL ") << property << ": " << instances << " instances, " << failures.size()
       << " failures, " << witnesses.size() << " witnesses";
    return os.str();
  }
};

namespace detail {

inline std::string map_string(const Coalgebra& dom, const Coalgebra& cod, std::span<const StateIndex> map) {
  std::string s = "{";
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (x) s += ", ";
    s += dom.states[x] + "->" + cod.states[map[x]];
  }
  return s + "}";
}

inline std::vector<StateIndex> compose(std::span<const StateIndex> g, std::span<const StateIndex> h) {
  std::vector<StateIndex> out(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) out[x] = g[h[x]];
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lemma checks

/// A pointed coalgebra has no proper pointed subcoalgebra iff every pointed
/// homomorphism into it is surjective. Stated over `pool` plus C itself; for
/// a non-minimal C a non-surjective witness must be found (its reachable
/// part is added to the pool for that purpose).
inline PropertyReport check_minimal_iff_incoming_epi(const PointedCoalgebra& c,
                                                     const std::vector<PointedCoalgebra>& pool,
                                                     const HomSearchConfig& cfg = {}) {
  PropertyReport report{"minimal-iff-incoming-epi", 0, {}, {}};
  auto id = digest(c);
  bool minimal = enumerate_pointed_subcoalgebras(c, cfg.state_bound).size() == 1;
  if (minimal != is_reachable(c)) report.fail(id, "subcoalgebra oracle disagrees with reachability");
  std::vector<PointedCoalgebra> sources = pool;
  sources.push_back(c);
  if (!minimal) sources.push_back(reachable_part(c).reachable);
  bool found_non_surjective = false;
  for (const auto& d : sources) {
    if (!(d.base.functor == c.base.functor)) continue;
    ++report.instances;
    for (const auto& h : enumerate_homomorphisms(d, c, cfg)) {
      if (is_surjective(h.map, c.size())) continue;
      if (minimal) {
        report.fail(id, "non-surjective homomorphism " + detail::map_string(d.base, c.base, h.map));
      } else if (!found_non_surjective) {
        found_non_surjective = true;
        report.witnesses.push_back(id + ": non-surjective " + detail::map_string(d.base, c.base, h.map));
      }
    }
  }
  if (!minimal && !found_non_surjective) report.fail(id, "non-minimal coalgebra without a non-surjective witness");
  return report;
}

struct KernelPair {
  Coalgebra relation;  ///< states "(x,y)" for x, y in one block
  std::vector<StateIndex> first;
  std::vector<StateIndex> second;
};

/// The relation {(x, y) | x, y in one block of p} for a compatible p, with a
/// structure making both projections homomorphisms into c. Weighted
/// structures split each block's weight mass between the pairs: bags by the
/// north-west corner rule, signed weights through one column per block.
inline KernelPair kernel_pair(const Coalgebra& c, const Partition& p) {
  if (!is_compatible(c, p)) throw Error(ErrorKind::IncompatiblePartition, "kernel pair needs a compatible partition");
  const auto n = c.size();
  const auto& f = c.functor;
  KernelPair k{Coalgebra{f, {}, {}}, {}, {}};
  std::vector<std::vector<StateIndex>> pair(n, std::vector<StateIndex>(n, SIZE_MAX));
  for (const auto& block : p.blocks())
    for (auto x : block)
      for (auto y : block) {
        pair[x][y] = k.first.size();
        k.first.push_back(x);
        k.second.push_back(y);
        k.relation.states.push_back("(" + c.states[x] + "," + c.states[y] + ")");
      }
  auto same = [&](StateIndex x, StateIndex y) { return pair[x][y] != SIZE_MAX; };
  const bool bag = f.is_weighted_over(Monoid::Naturals);
  for (std::size_t i = 0; i < k.first.size(); ++i) {
    const auto x = k.first[i], y = k.second[i];
    const auto& tx = c.at(x);
    const auto& ty = c.at(y);
    if (auto* d = std::get_if<DfaStruct>(&tx)) {
      DfaStruct t{d->accepting, {}};
      for (std::size_t a = 0; a < d->next.size(); ++a) t.next.push_back(pair[d->next[a]][std::get<DfaStruct>(ty).next[a]]);
      k.relation.structure.push_back(std::move(t));
    } else if (auto* s = std::get_if<SetStruct>(&tx)) {
      std::vector<StateIndex> succ;
      for (auto x2 : s->successors)
        for (auto y2 : std::get<SetStruct>(ty).successors)
          if (same(x2, y2)) succ.push_back(pair[x2][y2]);
      k.relation.structure.push_back(make_set(std::move(succ)));
    } else if (auto* l = std::get_if<LabelledStruct>(&tx)) {
      std::vector<std::pair<std::size_t, StateIndex>> succ;
      for (const auto& [la, x2] : l->successors)
        for (const auto& [lb, y2] : std::get<LabelledStruct>(ty).successors)
          if (la == lb && same(x2, y2)) succ.emplace_back(la, pair[x2][y2]);
      k.relation.structure.push_back(make_labelled(std::move(succ)));
    } else {
      std::vector<std::pair<StateIndex, Rational>> w;
      for (const auto& block : p.blocks()) {
        std::vector<std::pair<StateIndex, Rational>> rows, cols;
        for (const auto& e : std::get<WeightedStruct>(tx).weights)
          if (p.block_of(e.first) == p.block_of(block.front())) rows.push_back(e);
        for (const auto& e : std::get<WeightedStruct>(ty).weights)
          if (p.block_of(e.first) == p.block_of(block.front())) cols.push_back(e);
        if (rows.empty() && cols.empty()) continue;
        if (bag) {
          std::size_t i = 0, j = 0;
          while (i < rows.size() && j < cols.size()) {
            auto take = std::min(rows[i].second, cols[j].second);
            w.emplace_back(pair[rows[i].first][cols[j].first], take);
            rows[i].second = rows[i].second - take;
            cols[j].second = cols[j].second - take;
            if (rows[i].second.is_zero()) ++i;
            if (cols[j].second.is_zero()) ++j;
          }
        } else {
          // Column j0 absorbs every row; the first row also carries the other columns.
          auto j0 = cols.empty() ? block.front() : cols.front().first;
          auto i0 = rows.empty() ? block.front() : rows.front().first;
          for (const auto& [x2, r] : rows) w.emplace_back(pair[x2][j0], r);
          for (std::size_t j = cols.empty() ? 0 : 1; j < cols.size(); ++j) {
            w.emplace_back(pair[i0][cols[j].first], cols[j].second);
            w.emplace_back(pair[i0][j0], -cols[j].second);
          }
        }
      }
      k.relation.structure.push_back(make_weighted(w));
    }
  }
  return k;
}

/// A coalgebra without proper quotients admits at most one homomorphism from
/// any coalgebra. A non-simple C receives two distinct ones: from C itself
/// when it has a second endomorphism, otherwise the two projections of the
/// kernel pair of C ->> C/~.
inline PropertyReport check_simple_subterminal(const Coalgebra& c, const std::vector<Coalgebra>& pool,
                                               const HomSearchConfig& cfg = {}) {
  PropertyReport report{"simple-subterminal", 0, {}, {}};
  auto id = digest(c);
  auto compatible = enumerate_compatible_partitions(c);
  bool simple = compatible.size() == 1 || c.size() == 0;
  if (simple != is_simple(c)) report.fail(id, "partition oracle disagrees with refinement");
  if (simple) {
    std::vector<Coalgebra> sources = pool;
    sources.push_back(c);
    for (const auto& d : sources) {
      if (!(d.functor == c.functor)) continue;
      ++report.instances;
      auto homs = enumerate_homomorphism_maps(d, c, std::nullopt, cfg);
      if (homs.size() > 1) report.fail(id, std::to_string(homs.size()) + " homomorphisms from " + digest(d));
    }
    return report;
  }
  ++report.instances;
  auto endo = enumerate_homomorphism_maps(c, c, std::nullopt, cfg);
  if (endo.size() >= 2) {
    report.witnesses.push_back(id + ": " + std::to_string(endo.size()) + " endomorphisms");
    return report;
  }
  auto coarsest = Partition::discrete(c.size());
  for (const auto& q : compatible) coarsest = Partition::join(coarsest, q);
  auto k = kernel_pair(c, coarsest);
  bool homs = validate_coalgebra(k.relation).ok() && check_homomorphism(k.relation, c, k.first).holds &&
              check_homomorphism(k.relation, c, k.second).holds;
  if (!homs || k.first == k.second) {
    report.fail(id, "non-simple coalgebra without two homomorphisms from a pool member or its kernel pair");
  } else {
    report.witnesses.push_back(id + ": kernel pair of " + std::to_string(k.relation.size()) +
                               " states with distinct projections");
  }
  return report;
}

/// Reachable part = intersection of all pointed subcoalgebras; it is
/// reachable and a fixpoint of reachable_part.
inline PropertyReport check_reachability_oracle(const PointedCoalgebra& c, const HomSearchConfig& cfg = {}) {
  PropertyReport report{"reachable-is-intersection", 1, {}, {}};
  auto id = digest(c);
  auto subs = enumerate_pointed_subcoalgebras(c, cfg.state_bound);
  std::vector<bool> in_all(c.size(), true);
  for (const auto& s : subs) {
    std::vector<bool> member(c.size(), false);
    for (auto x : s) member[x] = true;
    for (StateIndex x = 0; x < c.size(); ++x) in_all[x] = in_all[x] && member[x];
  }
  auto r = reachable_part(c);
  std::vector<bool> reached(c.size(), false);
  for (auto x : r.embedding.map) reached[x] = true;
  if (reached != in_all) report.fail(id, "reachable part differs from the intersection of subcoalgebras");
  if (!check_homomorphism(r.embedding)) report.fail(id, "embedding is not a pointed homomorphism");
  if (!is_injective(r.embedding.map, c.size())) report.fail(id, "embedding is not injective");
  auto again = reachable_part(r.reachable);
  if (!(again.reachable == r.reachable) || !(again.embedding == identity_morphism(r.reachable))) {
    report.fail(id, "reachable_part is not idempotent");
  }
  return report;
}

/// For every pointed subcoalgebra S >-> C there is exactly one pointed
/// homomorphism R -> S commuting with the inclusions.
inline PropertyReport check_least_subobject(const PointedCoalgebra& c, const HomSearchConfig& cfg = {}) {
  PropertyReport report{"least-subobject", 0, {}, {}};
  auto id = digest(c);
  auto r = reachable_part(c);
  for (const auto& subset : enumerate_pointed_subcoalgebras(c, cfg.state_bound)) {
    ++report.instances;
    auto s = restrict_to(c, subset);
    std::size_t mediating = 0;
    for (const auto& u : enumerate_homomorphisms(r.reachable, s.reachable, cfg)) {
      if (detail::compose(s.embedding.map, u.map) == r.embedding.map) ++mediating;
    }
    if (mediating != 1) {
      report.fail(id, std::to_string(mediating) + " mediating homomorphisms into a subcoalgebra of size " +
                          std::to_string(subset.size()));
    }
  }
  return report;
}

/// For every quotient e': C ->> D by a compatible partition there is exactly
/// one u: D -> Q with u . e' = e, where e: C ->> Q is the simple quotient.
template <CoalgebraLike C>
PropertyReport check_greatest_quotient(const C& c, const HomSearchConfig& cfg = {}) {
  PropertyReport report{"greatest-quotient", 0, {}, {}};
  auto id = digest(c);
  auto simple = simple_quotient(underlying(c));
  for (const auto& p : enumerate_compatible_partitions(c)) {
    ++report.instances;
    auto d = apply_partition_quotient(underlying(c), p);
    std::size_t mediating = 0;
    for (const auto& u : enumerate_homomorphism_maps(d.quotient, simple.quotient, std::nullopt, cfg)) {
      if (detail::compose(u, d.projection.map) == simple.projection.map) ++mediating;
    }
    if (mediating != 1) report.fail(id, std::to_string(mediating) + " mediating homomorphisms from a quotient");
    if (!p.refines(simple.partition)) report.fail(id, "compatible partition not refined by the simple quotient");
  }
  return report;
}

/// The refinement result is the coarsest compatible partition (the join of
/// all of them), the refinement sequence is monotone and short, and the
/// quotient is simple. For DFAs it also matches bounded language equivalence.
template <CoalgebraLike C>
PropertyReport check_refinement_oracle(const C& c) {
  PropertyReport report{"refinement-is-coarsest", 1, {}, {}};
  const auto& base = underlying(c);
  auto id = digest(c);
  auto seq = refinement_sequence(base);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (!seq[k].refines(seq[k - 1])) report.fail(id, "refinement step " + std::to_string(k) + " is not a refinement");
  }
  if (seq.size() > base.size() + 2) report.fail(id, "refinement took more than |C| rounds");
  const auto& p = seq.back();
  auto compatible = enumerate_compatible_partitions(base);
  if (std::find(compatible.begin(), compatible.end(), p) == compatible.end()) {
    report.fail(id, "refinement result is not compatible");
  }
  auto join = Partition::discrete(base.size());
  for (const auto& q : compatible) {
    join = Partition::join(join, q);
    if (!q.refines(p)) report.fail(id, "a compatible partition is coarser than the refinement result");
  }
  if (!(join == p)) report.fail(id, "refinement result differs from the join of compatible partitions");
  auto q = apply_partition_quotient(base, p);
  if (!check_homomorphism(q.projection)) report.fail(id, "projection is not a homomorphism");
  if (!behavioural_classes(q.quotient).is_discrete()) report.fail(id, "simple quotient is not simple");
  if (base.functor.template is<DfaFunctor>()) {
    auto lang = language_kernel(dfa_language_oracle(base, 2 * base.size()));
    if (!(lang == p)) report.fail(id, "behavioural classes differ from bounded language equivalence");
  }
  return report;
}

struct PointedHomPair {
  PointedCoalgebra source;  ///< reachable
  PointedCoalgebra target;
  std::vector<StateIndex> map;
};

/// For h: A -> B with A reachable, exactly one u: A -> reach(B) with
/// inclusion . u = h.
inline PropertyReport check_minimization_functorial(const std::vector<PointedHomPair>& pairs,
                                                    const HomSearchConfig& cfg = {}) {
  PropertyReport report{"minimization-functorial", 0, {}, {}};
  for (const auto& [a, b, h] : pairs) {
    ++report.instances;
    auto id = digest(a) + "->" + digest(b);
    if (!check_homomorphism(a, b, h)) {
      report.fail(id, "input pair is not a pointed homomorphism");
      continue;
    }
    if (enumerate_pointed_subcoalgebras(a, cfg.state_bound).size() != 1) {
      report.fail(id, "source is not reachable");
      continue;
    }
    auto rb = reachable_part(b);
    std::size_t mediating = 0;
    for (const auto& u : enumerate_homomorphisms(a, rb.reachable, cfg)) {
      if (detail::compose(rb.embedding.map, u.map) == h) ++mediating;
    }
    if (mediating != 1) report.fail(id, std::to_string(mediating) + " factorizations through the reachable part");
  }
  return report;
}

/// Quotients of reachable coalgebras stay reachable when the functor
/// preserves inverse images. For other functors violations are recorded as
/// witnesses. C is replaced by its reachable part if necessary.
inline PropertyReport check_quotient_closure(const PointedCoalgebra& c) {
  PropertyReport report{"quotient-closure", 0, {}, {}};
  auto r = reachable_part(c).reachable;
  auto id = digest(r);
  for (const auto& p : enumerate_compatible_partitions(r)) {
    ++report.instances;
    auto q = apply_partition_quotient(r, p);
    if (enumerate_pointed_subcoalgebras(q.quotient).size() == 1) continue;
    std::string what = "unreachable quotient by a partition with " + std::to_string(p.block_count()) + " blocks";
    if (r.base.functor.preserves_inverse_images()) {
      report.fail(id, what);
    } else {
      report.witnesses.push_back(id + ": " + what);
    }
  }
  return report;
}

/// reach(simple(C)) ~= simple(reach(C)) for inverse-image-preserving
/// functors; disagreements for the rational-weighted functor are witnesses.
inline PropertyReport check_commutation(const PointedCoalgebra& c) {
  PropertyReport report{"commutation", 1, {}, {}};
  auto id = digest(c);
  auto r = commutation_check(c);
  if (!is_well_pointed(r.simple_first)) report.fail(id, "well-pointed modification is not well-pointed");
  auto wp2 = well_pointed_modification(r.simple_first);
  if (!are_isomorphic(wp2, r.simple_first)) report.fail(id, "well-pointed modification is not idempotent");
  if (!r.agree) {
    if (c.base.functor.preserves_inverse_images()) {
      report.fail(id, "minimization orders disagree");
    } else {
      report.witnesses.push_back(id + ": orders disagree (" + std::to_string(r.simple_first.size()) + " vs " +
                                 std::to_string(r.reach_first.size()) + " states)");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 rng_;
};

inline FStructure random_structure(const FunctorSpec& spec, std::size_t targets, Draw& draw,
                                   const std::vector<Rational>& pool, double density) {
  if (auto* d = spec.get_if<DfaFunctor>()) {
    DfaStruct t{draw.chance(0.5), {}};
    for (std::size_t s = 0; s < d->alphabet.size(); ++s) t.next.push_back(draw.below(targets));
    return t;
  }
  if (spec.is<PowersetFunctor>()) {
    std::vector<StateIndex> succ;
    for (StateIndex y = 0; y < targets; ++y)
      if (draw.chance(density)) succ.push_back(y);
    return make_set(std::move(succ));
  }
  if (auto* l = spec.get_if<LabelledPowersetFunctor>()) {
    std::vector<std::pair<std::size_t, StateIndex>> succ;
    for (std::size_t lab = 0; lab < l->labels.size(); ++lab)
      for (StateIndex y = 0; y < targets; ++y)
        if (draw.chance(density)) succ.emplace_back(lab, y);
    return make_labelled(std::move(succ));
  }
  std::vector<std::pair<StateIndex, Rational>> w;
  for (StateIndex y = 0; y < targets; ++y)
    if (draw.chance(density)) w.emplace_back(y, pool[draw.below(pool.size())]);
  return make_weighted(w);
}

inline void require_pool(const FunctorSpec& spec, const std::vector<Rational>& pool) {
  if (!spec.is<WeightedFunctor>()) return;
  if (pool.empty()) throw Error(ErrorKind::WeightedWithoutPool, "weighted generator needs a weight pool");
  for (const auto& w : pool) {
    if (w.is_zero()) throw Error(ErrorKind::MalformedStructure, "weight pool contains zero");
    if (spec.is_weighted_over(Monoid::Naturals) && (!w.is_integer() || !w.is_positive())) {
      throw Error(ErrorKind::MalformedStructure, "bag pool weight " + w.to_string() + " is not a positive natural");
    }
  }
}

}  // namespace detail

/// Deterministic in all arguments. States are named s0, s1, ...; `density`
/// is the probability of each potential edge (DFA transitions are always
/// total, acceptance is a fair coin).
inline Coalgebra random_coalgebra(const FunctorSpec& spec, std::size_t n_states, std::uint64_t seed,
                                  const std::vector<Rational>& weight_pool = {}, double density = 0.3) {
  detail::require_pool(spec, weight_pool);
  detail::Draw draw(seed);
  Coalgebra c{spec, {}, {}};
  for (std::size_t i = 0; i < n_states; ++i) c.states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < n_states; ++i) c.structure.push_back(detail::random_structure(spec, n_states, draw, weight_pool, density));
  return c;
}

/// Pointed at s0; needs n_states >= 1.
inline PointedCoalgebra random_pointed_coalgebra(const FunctorSpec& spec, std::size_t n_states, std::uint64_t seed,
                                                 const std::vector<Rational>& weight_pool = {}, double density = 0.3) {
  if (n_states == 0) throw Error(ErrorKind::PointNotInCarrier, "a pointed coalgebra needs at least one state");
  return {random_coalgebra(spec, n_states, seed, weight_pool, density), 0};
}

/// Appends `extra` states with random structures over the enlarged carrier.
/// The existing states keep their structures, so every homomorphism into
/// `c` remains one into the result.
inline PointedCoalgebra extend_with_random_states(const PointedCoalgebra& c, std::size_t extra, std::uint64_t seed,
                                                  const std::vector<Rational>& weight_pool = {}, double density = 0.3) {
  detail::require_pool(c.base.functor, weight_pool);
  detail::Draw draw(seed);
  auto out = c;
  auto total = c.size() + extra;
  for (std::size_t i = 0; i < extra; ++i) {
    out.base.states.push_back("x" + std::to_string(i));
    out.base.structure.push_back(detail::random_structure(c.base.functor, total, draw, weight_pool, density));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded suites

struct FunctorCase {
  std::string name;
  FunctorSpec spec;
  std::vector<Rational> pool;
};

inline std::vector<FunctorCase> standard_functor_cases() {
  return {
      {"dfa", FunctorSpec::dfa({"a", "b"}), {}},
      {"powerset", FunctorSpec::powerset(), {}},
      {"labelled", FunctorSpec::labelled_powerset({"a", "b"}), {}},
      {"bag", FunctorSpec::bag(), {Rational(1), Rational(2)}},
      {"rational", FunctorSpec::weighted(Monoid::Rationals), {Rational(1), Rational(-1), Rational(2)}},
  };
}

struct SeededInstance {
  std::size_t states;
  double density;
};

/// Sizes cycle through 1..max_states, densities through 0.15..0.45.
inline SeededInstance seeded_shape(std::uint64_t seed, std::size_t max_states = 6) {
  return {1 + static_cast<std::size_t>(seed % max_states), 0.15 + 0.1 * static_cast<double>((seed / max_states) % 4)};
}

inline PointedCoalgebra seeded_instance(const FunctorCase& fc, std::uint64_t seed, std::size_t max_states = 6) {
  auto shape = seeded_shape(seed, max_states);
  return random_pointed_coalgebra(fc.spec, shape.states, seed, fc.pool, shape.density);
}

/// A reachable A, and h: A -> B where B is A's quotient by a compatible
/// partition extended by unreachable junk states.
inline PointedHomPair seeded_hom_pair(const FunctorCase& fc, std::uint64_t seed, std::size_t max_states = 6) {
  auto x = seeded_instance(fc, seed, max_states);
  auto a = reachable_part(x);
  auto parts = enumerate_compatible_partitions(a.reachable);
  const auto& p = parts[seed % parts.size()];
  auto q = apply_partition_quotient(a.reachable, p);
  auto extra = static_cast<std::size_t>(seed % 3);
  auto b = extend_with_random_states(q.quotient, extra, seed ^ 0x9e3779b97f4a7c15ULL, fc.pool,
                                     seeded_shape(seed, max_states).density);
  return {a.reachable, b, q.projection.map};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "reachability",       "refinement",      "least-subobject", "greatest-quotient", "functoriality",
      "commutation",        "quotient-closure", "minimal-iff-epi", "simple-subterminal",
  };
  return names;
}

/// Runs one named suite over seeds 0..seeds-1 for every standard functor,
/// one report per functor. "all" runs every suite.
inline std::vector<PropertyReport> run_suite(const std::string& name, std::uint64_t seeds, std::size_t max_states = 6) {
  if (name == "all") {
    std::vector<PropertyReport> all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, seeds, max_states);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorKind::ParseError, "unknown suite '" + name + "'", name);
  }
  std::vector<PropertyReport> out;
  for (const auto& fc : standard_functor_cases()) {
    PropertyReport total{name + "[" + fc.name + "]", 0, {}, {}};
    std::vector<PointedHomPair> pairs;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      auto c = seeded_instance(fc, seed, max_states);
      if (name == "reachability") {
        total.merge(check_reachability_oracle(c));
      } else if (name == "refinement") {
        total.merge(check_refinement_oracle(c));
      } else if (name == "least-subobject") {
        total.merge(check_least_subobject(c));
      } else if (name == "greatest-quotient") {
        total.merge(check_greatest_quotient(c.base));
      } else if (name == "functoriality") {
        pairs.push_back(seeded_hom_pair(fc, seed, max_states));
      } else if (name == "commutation") {
        total.merge(check_commutation(c));
      } else if (name == "quotient-closure") {
        total.merge(check_quotient_closure(c));
      } else if (name == "minimal-iff-epi") {
        std::vector<PointedCoalgebra> pool{seeded_instance(fc, seed + 1000, max_states), reachable_part(c).reachable};
        total.merge(check_minimal_iff_incoming_epi(c, pool));
      } else if (name == "simple-subterminal") {
        std::vector<Coalgebra> pool{seeded_instance(fc, seed + 1000, max_states).base, simple_quotient(c.base).quotient};
        total.merge(check_simple_subterminal(c.base, pool));
        total.merge(check_simple_subterminal(simple_quotient(c.base).quotient, {c.base}));
      }
    }
    if (name == "functoriality") total.merge(check_minimization_functorial(pairs));
    out.push_back(std::move(total));
  }
  return out;
}

}  // namespace coalgmin::oracle
