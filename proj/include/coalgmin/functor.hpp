#pragma once

// Set-functors supported by the library and the operations on their successor
// structures. A structure t in FX refers to states of a finite carrier X by
// index; all structures are kept in a canonical form so that semantic
// equality coincides with member-wise equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coalgmin/error.hpp"
#include "coalgmin/rational.hpp"

namespace coalgmin {

using StateIndex = std::size_t;

/// FX = 2 x X^A
struct DfaFunctor {
  std::vector<std::string> alphabet;
  friend bool operator==(const DfaFunctor&, const DfaFunctor&) = default;
};

/// FX = P X
struct PowersetFunctor {
  friend bool operator==(const PowersetFunctor&, const PowersetFunctor&) = default;
};

/// FX = P(A x X)
struct LabelledPowersetFunctor {
  std::vector<std::string> labels;
  friend bool operator==(const LabelledPowersetFunctor&, const LabelledPowersetFunctor&) = default;
};

enum class Monoid { Rationals, Naturals };

/// FX = M^(X), finitely supported weight maps. Naturals is the bag functor.
struct WeightedFunctor {
  Monoid monoid = Monoid::Rationals;
  friend bool operator==(const WeightedFunctor&, const WeightedFunctor&) = default;
};

class FunctorSpec {
 public:
  using Kind = std::variant<DfaFunctor, PowersetFunctor, LabelledPowersetFunctor, WeightedFunctor>;

  static FunctorSpec dfa(std::vector<std::string> alphabet) {
    check_symbols(alphabet, "alphabet");
    return FunctorSpec(DfaFunctor{std::move(alphabet)});
  }
  static FunctorSpec powerset() { return FunctorSpec(PowersetFunctor{}); }
  static FunctorSpec labelled_powerset(std::vector<std::string> labels) {
    check_symbols(labels, "label set");
    return FunctorSpec(LabelledPowersetFunctor{std::move(labels)});
  }
  static FunctorSpec weighted(Monoid monoid) { return FunctorSpec(WeightedFunctor{monoid}); }
  static FunctorSpec bag() { return weighted(Monoid::Naturals); }

  const Kind& kind() const noexcept { return kind_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&kind_);
  }
  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(kind_);
  }

  bool is_weighted_over(Monoid m) const noexcept {
    auto* w = get_if<WeightedFunctor>();
    return w != nullptr && w->monoid == m;
  }

  /// Advisory. Only the rational-weighted functor is known to fail it (weights
  /// can cancel); the others are validated empirically by the oracle suites.
  bool preserves_inverse_images() const noexcept { return !is_weighted_over(Monoid::Rationals); }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, DfaFunctor>) return "dfa";
          else if constexpr (std::is_same_v<K, PowersetFunctor>) return "powerset";
          else if constexpr (std::is_same_v<K, LabelledPowersetFunctor>) return "labelled-powerset";
          else return k.monoid == Monoid::Rationals ? "weighted(rational)" : "weighted(natural)";
        },
        kind_);
  }

  friend bool operator==(const FunctorSpec&, const FunctorSpec&) = default;

 private:
  explicit FunctorSpec(Kind kind) : kind_(std::move(kind)) {}

  static void check_symbols(const std::vector<std::string>& symbols, const char* what) {
    if (symbols.empty()) throw Error(ErrorKind::InvalidFunctor, std::string(what) + " must be nonempty");
    std::set<std::string> seen;
    for (const auto& s : symbols) {
      if (!seen.insert(s).second) {
        throw Error(ErrorKind::InvalidFunctor, "duplicate symbol '" + s + "' in " + what, s);
      }
    }
  }

  Kind kind_;
};

// ---------------------------------------------------------------------------
// Successor structures

struct DfaStruct {
  bool accepting = false;
  /// next[i] is the successor under alphabet symbol i.
  std::vector<StateIndex> next;
  friend auto operator<=>(const DfaStruct&, const DfaStruct&) = default;
};

struct SetStruct {
  /// Sorted, duplicate-free.
  std::vector<StateIndex> successors;
  friend auto operator<=>(const SetStruct&, const SetStruct&) = default;
};

struct LabelledStruct {
  /// (label index, target) pairs; sorted, duplicate-free.
  std::vector<std::pair<std::size_t, StateIndex>> successors;
  friend auto operator<=>(const LabelledStruct&, const LabelledStruct&) = default;
};

struct WeightedStruct {
  /// Sorted by target, no zero weights, one entry per target.
  std::vector<std::pair<StateIndex, Rational>> weights;
  friend auto operator<=>(const WeightedStruct&, const WeightedStruct&) = default;
};

using FStructure = std::variant<DfaStruct, SetStruct, LabelledStruct, WeightedStruct>;

inline FStructure make_dfa(bool accepting, std::vector<StateIndex> next) {
  return DfaStruct{accepting, std::move(next)};
}

inline FStructure make_set(std::vector<StateIndex> successors) {
  std::sort(successors.begin(), successors.end());
  successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
  return SetStruct{std::move(successors)};
}

inline FStructure make_labelled(std::vector<std::pair<std::size_t, StateIndex>> successors) {
  std::sort(successors.begin(), successors.end());
  successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
  return LabelledStruct{std::move(successors)};
}

/// Repeated targets are summed; entries that end up zero are dropped.
inline FStructure make_weighted(const std::vector<std::pair<StateIndex, Rational>>& entries) {
  std::map<StateIndex, Rational> acc;
  for (const auto& [target, w] : entries) acc[target] += w;
  WeightedStruct out;
  for (const auto& [target, w] : acc) {
    if (!w.is_zero()) out.weights.emplace_back(target, w);
  }
  return out;
}

struct Violation {
  ErrorKind kind;
  std::string detail;
  std::optional<StateIndex> state;
};

namespace detail {

inline bool structure_matches_spec(const FunctorSpec& spec, const FStructure& t) {
  return std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DfaFunctor>) return std::holds_alternative<DfaStruct>(t);
        else if constexpr (std::is_same_v<K, PowersetFunctor>) return std::holds_alternative<SetStruct>(t);
        else if constexpr (std::is_same_v<K, LabelledPowersetFunctor>) return std::holds_alternative<LabelledStruct>(t);
        else return std::holds_alternative<WeightedStruct>(t);
      },
      spec.kind());
}

}  // namespace detail

/// All invariant violations of t; an out-of-range reference (only checked
/// when carrier_size is given) is reported as DanglingState.
inline std::vector<Violation> inspect_structure(const FunctorSpec& spec, const FStructure& t,
                                                std::optional<std::size_t> carrier_size = std::nullopt) {
  std::vector<Violation> out;
  if (!detail::structure_matches_spec(spec, t)) {
    out.push_back({ErrorKind::SpecMismatch, "structure kind does not match functor " + spec.name(), {}});
    return out;
  }
  auto check_target = [&](StateIndex s) {
    if (carrier_size && s >= *carrier_size) {
      out.push_back({ErrorKind::DanglingState, "reference to state index " + std::to_string(s) + " outside the carrier", s});
    }
  };
  if (auto* d = std::get_if<DfaStruct>(&t)) {
    auto alphabet_size = spec.get_if<DfaFunctor>()->alphabet.size();
    if (d->next.size() != alphabet_size) {
      out.push_back({ErrorKind::MalformedStructure, "transition function is not total on the alphabet", {}});
    }
    for (auto s : d->next) check_target(s);
  } else if (auto* s = std::get_if<SetStruct>(&t)) {
    if (!std::is_sorted(s->successors.begin(), s->successors.end()) ||
        std::adjacent_find(s->successors.begin(), s->successors.end()) != s->successors.end()) {
      out.push_back({ErrorKind::MalformedStructure, "successor set not canonical", {}});
    }
    for (auto x : s->successors) check_target(x);
  } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
    auto labels = spec.get_if<LabelledPowersetFunctor>()->labels.size();
    if (!std::is_sorted(l->successors.begin(), l->successors.end()) ||
        std::adjacent_find(l->successors.begin(), l->successors.end()) != l->successors.end()) {
      out.push_back({ErrorKind::MalformedStructure, "labelled successor set not canonical", {}});
    }
    for (const auto& [label, x] : l->successors) {
      if (label >= labels) out.push_back({ErrorKind::MalformedStructure, "unknown label index " + std::to_string(label), {}});
      check_target(x);
    }
  } else {
    const auto& w = std::get<WeightedStruct>(t);
    bool naturals = spec.is_weighted_over(Monoid::Naturals);
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
      const auto& [x, weight] = w.weights[i];
      if (i > 0 && w.weights[i - 1].first >= x) {
        out.push_back({ErrorKind::MalformedStructure, "weight map not sorted by target", x});
      }
      if (weight.is_zero()) {
        out.push_back({ErrorKind::ZeroWeightEntry, "zero weight stored for target index " + std::to_string(x), x});
      } else if (naturals && (!weight.is_integer() || !weight.is_positive())) {
        out.push_back({ErrorKind::MalformedStructure, "bag multiplicity " + weight.to_string() + " is not a natural number", x});
      }
      check_target(x);
    }
  }
  return out;
}

/// Throws on the first violation. Zero weights surface as MalformedStructure.
inline void check_structure(const FunctorSpec& spec, const FStructure& t,
                            std::optional<std::size_t> carrier_size = std::nullopt) {
  auto violations = inspect_structure(spec, t, carrier_size);
  if (violations.empty()) return;
  const auto& v = violations.front();
  auto kind = v.kind == ErrorKind::ZeroWeightEntry ? ErrorKind::MalformedStructure : v.kind;
  throw Error(kind, v.detail, v.state ? std::to_string(*v.state) : std::string{});
}

/// Ft for a total map h given as h[x] = image of x.
inline FStructure fmap(const FunctorSpec& spec, std::span<const StateIndex> h, const FStructure& t) {
  check_structure(spec, t);
  auto apply = [&](StateIndex x) {
    if (x >= h.size()) {
      throw Error(ErrorKind::PartialMap, "map undefined on state index " + std::to_string(x), std::to_string(x));
    }
    return h[x];
  };
  if (auto* d = std::get_if<DfaStruct>(&t)) {
    DfaStruct out{d->accepting, {}};
    out.next.reserve(d->next.size());
    for (auto x : d->next) out.next.push_back(apply(x));
    return out;
  }
  if (auto* s = std::get_if<SetStruct>(&t)) {
    std::vector<StateIndex> image;
    image.reserve(s->successors.size());
    for (auto x : s->successors) image.push_back(apply(x));
    return make_set(std::move(image));
  }
  if (auto* l = std::get_if<LabelledStruct>(&t)) {
    std::vector<std::pair<std::size_t, StateIndex>> image;
    image.reserve(l->successors.size());
    for (const auto& [label, x] : l->successors) image.emplace_back(label, apply(x));
    return make_labelled(std::move(image));
  }
  const auto& w = std::get<WeightedStruct>(t);
  std::vector<std::pair<StateIndex, Rational>> image;
  image.reserve(w.weights.size());
  for (const auto& [x, weight] : w.weights) image.emplace_back(apply(x), weight);
  return make_weighted(image);
}

/// Sorted set of states occurring in t.
inline std::vector<StateIndex> support(const FunctorSpec& spec, const FStructure& t) {
  check_structure(spec, t);
  std::vector<StateIndex> out;
  if (auto* d = std::get_if<DfaStruct>(&t)) {
    out = d->next;
  } else if (auto* s = std::get_if<SetStruct>(&t)) {
    out = s->successors;
  } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
    for (const auto& p : l->successors) out.push_back(p.second);
  } else {
    for (const auto& p : std::get<WeightedStruct>(t).weights) out.push_back(p.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool structures_equal(const FunctorSpec& spec, const FStructure& a, const FStructure& b) {
  check_structure(spec, a);
  check_structure(spec, b);
  return a == b;
}

/// Re-indexes t onto the subset `subset` (given in the order of the new
/// carrier). Throws SupportEscapesSubset if t refers outside the subset.
inline FStructure restrict_structure(const FunctorSpec& spec, const FStructure& t,
                                     std::span<const StateIndex> subset) {
  std::map<StateIndex, StateIndex> position;
  for (std::size_t i = 0; i < subset.size(); ++i) position.emplace(subset[i], i);
  for (auto x : support(spec, t)) {
    if (!position.contains(x)) {
      throw Error(ErrorKind::SupportEscapesSubset, "successor index " + std::to_string(x) + " lies outside the subset",
                  std::to_string(x));
    }
  }
  std::size_t domain = 0;
  for (auto x : subset) domain = std::max(domain, x + 1);
  for (auto x : support(spec, t)) domain = std::max(domain, x + 1);
  std::vector<StateIndex> reindex(domain, 0);
  for (const auto& [old_index, new_index] : position) reindex[old_index] = new_index;
  return fmap(spec, reindex, t);
}

namespace detail {

/// Odometer over `digits` positions each ranging over [0, radix).
template <class Visit>
void odometer(std::size_t digits, std::size_t radix, Visit&& visit) {
  std::vector<std::size_t> counter(digits, 0);
  if (radix == 0 && digits > 0) return;
  while (true) {
    visit(counter);
    std::size_t i = 0;
    while (i < digits && ++counter[i] == radix) counter[i++] = 0;
    if (i == digits) return;
  }
}

}  // namespace detail

/// Every well-formed structure over a carrier of `carrier_size` states, each
/// exactly once. Weighted functors draw weights from `weight_pool`.
inline std::vector<FStructure> enumerate_structures(const FunctorSpec& spec, std::size_t carrier_size,
                                                    const std::optional<std::vector<Rational>>& weight_pool = std::nullopt) {
  std::vector<FStructure> out;
  if (auto* d = spec.get_if<DfaFunctor>()) {
    for (bool accepting : {false, true}) {
      detail::odometer(d->alphabet.size(), carrier_size, [&](const std::vector<std::size_t>& digits) {
        out.push_back(DfaStruct{accepting, digits});
      });
    }
    return out;
  }
  if (spec.is<PowersetFunctor>()) {
    detail::odometer(carrier_size, 2, [&](const std::vector<std::size_t>& bits) {
      std::vector<StateIndex> succ;
      for (std::size_t x = 0; x < carrier_size; ++x)
        if (bits[x]) succ.push_back(x);
      out.push_back(SetStruct{std::move(succ)});
    });
    return out;
  }
  if (auto* l = spec.get_if<LabelledPowersetFunctor>()) {
    std::size_t pairs = l->labels.size() * carrier_size;
    detail::odometer(pairs, 2, [&](const std::vector<std::size_t>& bits) {
      std::vector<std::pair<std::size_t, StateIndex>> succ;
      for (std::size_t i = 0; i < pairs; ++i)
        if (bits[i]) succ.emplace_back(i / carrier_size, i % carrier_size);
      out.push_back(LabelledStruct{std::move(succ)});
    });
    return out;
  }
  if (!weight_pool) throw Error(ErrorKind::WeightedWithoutPool, "weighted enumeration needs a finite weight pool");
  std::vector<Rational> pool;
  for (const auto& w : *weight_pool) {
    if (w.is_zero()) throw Error(ErrorKind::MalformedStructure, "weight pool contains zero");
    if (spec.is_weighted_over(Monoid::Naturals) && (!w.is_integer() || !w.is_positive())) {
      throw Error(ErrorKind::MalformedStructure, "bag pool weight " + w.to_string() + " is not a positive natural");
    }
    if (std::find(pool.begin(), pool.end(), w) == pool.end()) pool.push_back(w);
  }
  detail::odometer(carrier_size, pool.size() + 1, [&](const std::vector<std::size_t>& choice) {
    WeightedStruct t;
    for (std::size_t x = 0; x < carrier_size; ++x)
      if (choice[x] > 0) t.weights.emplace_back(x, pool[choice[x] - 1]);
    out.push_back(std::move(t));
  });
  return out;
}

/// Image of t under the map to the one-element set. Homomorphisms preserve it,
/// so it is a cheap necessary condition for two states to be related.
inline FStructure terminal_image(const FunctorSpec& spec, const FStructure& t) {
  auto s = support(spec, t);
  std::size_t domain = s.empty() ? 0 : s.back() + 1;
  std::vector<StateIndex> to_one(domain, 0);
  return fmap(spec, to_one, t);
}

}  // namespace coalgmin
