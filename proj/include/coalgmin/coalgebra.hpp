#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coalgmin/functor.hpp"

namespace coalgmin {

/// A finite F-coalgebra (C, c). States are named by distinct strings; the
/// structure of state i is structure[i] and refers to other states by index.
struct Coalgebra {
  FunctorSpec functor = FunctorSpec::powerset();
  std::vector<std::string> states;
  std::vector<FStructure> structure;

  std::size_t size() const noexcept { return states.size(); }
  const FStructure& at(StateIndex x) const { return structure.at(x); }

  std::optional<StateIndex> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const Coalgebra&, const Coalgebra&) = default;
};

/// A coalgebra with a distinguished initial state.
struct PointedCoalgebra {
  Coalgebra base;
  StateIndex point = 0;

  std::size_t size() const noexcept { return base.size(); }
  friend bool operator==(const PointedCoalgebra&, const PointedCoalgebra&) = default;
};

inline const Coalgebra& underlying(const Coalgebra& c) { return c; }
inline const Coalgebra& underlying(const PointedCoalgebra& c) { return c.base; }
inline std::optional<StateIndex> point_of(const Coalgebra&) { return std::nullopt; }
inline std::optional<StateIndex> point_of(const PointedCoalgebra& c) { return c.point; }

template <class C>
concept CoalgebraLike = std::same_as<C, Coalgebra> || std::same_as<C, PointedCoalgebra>;

/// Builds an object of the same kind as `like` around a new carrier; the
/// point, if any, is taken from `point`.
template <CoalgebraLike C>
C rebuild(const C&, Coalgebra base, std::optional<StateIndex> point) {
  if constexpr (std::same_as<C, PointedCoalgebra>) {
    return PointedCoalgebra{std::move(base), point.value()};
  } else {
    return base;
  }
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << coalgmin::to_string(v.kind) << ": " << v.detail << "\n";
    return os.str();
  }
};

inline ValidationReport validate_coalgebra(const Coalgebra& c) {
  ValidationReport report;
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    if (!names.insert(c.states[i]).second) {
      report.violations.push_back({ErrorKind::DuplicateState, "state '" + c.states[i] + "' declared twice", i});
    }
  }
  if (c.structure.size() < c.states.size()) {
    for (std::size_t i = c.structure.size(); i < c.states.size(); ++i) {
      report.violations.push_back({ErrorKind::MissingStructure, "no structure for state '" + c.states[i] + "'", i});
    }
  } else if (c.structure.size() > c.states.size()) {
    report.violations.push_back({ErrorKind::MalformedStructure, "more structures than states", {}});
  }
  for (std::size_t i = 0; i < std::min(c.structure.size(), c.states.size()); ++i) {
    for (auto v : inspect_structure(c.functor, c.structure[i], c.size())) {
      v.detail = "state '" + c.states[i] + "': " + v.detail;
      v.state = i;
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

inline ValidationReport validate_coalgebra(const PointedCoalgebra& c) {
  auto report = validate_coalgebra(c.base);
  if (c.point >= c.base.size()) {
    report.violations.push_back({ErrorKind::PointNotInCarrier, "point index " + std::to_string(c.point) + " outside the carrier", {}});
  }
  return report;
}

template <CoalgebraLike C>
void require_valid(const C& c) {
  auto report = validate_coalgebra(c);
  if (!report.ok()) throw Error(ErrorKind::ValidationError, report.to_string());
}

// ---------------------------------------------------------------------------
// Morphisms

/// A state map dom -> cod; map[x] is the image of dom state x.
template <CoalgebraLike C>
struct Morphism {
  C dom;
  C cod;
  std::vector<StateIndex> map;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

using CoalgebraMorphism = Morphism<Coalgebra>;
using PointedMorphism = Morphism<PointedCoalgebra>;

inline void require_total(std::span<const StateIndex> map, std::size_t dom_size, std::size_t cod_size) {
  if (map.size() != dom_size) {
    throw Error(ErrorKind::PartialMap, "map has " + std::to_string(map.size()) + " entries for " +
                                           std::to_string(dom_size) + " states");
  }
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] >= cod_size) {
      throw Error(ErrorKind::PartialMap, "image of state index " + std::to_string(x) + " outside the codomain",
                  std::to_string(x));
    }
  }
}

struct HomCheck {
  bool holds = true;
  /// Every dom state x at which d(h(x)) != Fh(c(x)), in carrier order.
  std::vector<StateIndex> counterexamples;
  bool point_violated = false;

  std::optional<StateIndex> first_counterexample() const {
    if (counterexamples.empty()) return std::nullopt;
    return counterexamples.front();
  }
  explicit operator bool() const noexcept { return holds; }
};

/// Decides d . h = Fh . c (and h(i_C) = i_D when both sides are pointed).
template <CoalgebraLike C>
HomCheck check_homomorphism(const C& dom, const C& cod, std::span<const StateIndex> map) {
  const auto& a = underlying(dom);
  const auto& b = underlying(cod);
  if (!(a.functor == b.functor)) throw Error(ErrorKind::SpecMismatch, "domain and codomain use different functors");
  require_total(map, a.size(), b.size());
  HomCheck result;
  for (StateIndex x = 0; x < a.size(); ++x) {
    if (!structures_equal(a.functor, b.at(map[x]), fmap(a.functor, map, a.at(x)))) {
      result.counterexamples.push_back(x);
    }
  }
  if (auto p = point_of(dom)) {
    if (map[*p] != *point_of(cod)) result.point_violated = true;
  }
  result.holds = result.counterexamples.empty() && !result.point_violated;
  return result;
}

template <CoalgebraLike C>
HomCheck check_homomorphism(const Morphism<C>& h) {
  return check_homomorphism(h.dom, h.cod, h.map);
}

template <CoalgebraLike C>
Morphism<C> identity_morphism(const C& c) {
  std::vector<StateIndex> id(c.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return {c, c, std::move(id)};
}

/// g . h
template <CoalgebraLike C>
Morphism<C> compose_morphisms(const Morphism<C>& g, const Morphism<C>& h) {
  if (!(h.cod == g.dom)) throw Error(ErrorKind::DomainMismatch, "codomain of h is not the domain of g");
  std::vector<StateIndex> map(h.map.size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = g.map.at(h.map[x]);
  return {h.dom, g.cod, std::move(map)};
}

inline bool is_injective(std::span<const StateIndex> map, std::size_t cod_size) {
  std::vector<bool> hit(cod_size, false);
  for (auto y : map) {
    if (hit.at(y)) return false;
    hit[y] = true;
  }
  return true;
}

inline bool is_surjective(std::span<const StateIndex> map, std::size_t cod_size) {
  std::vector<bool> hit(cod_size, false);
  for (auto y : map) hit.at(y) = true;
  return std::find(hit.begin(), hit.end(), false) == hit.end();
}

// ---------------------------------------------------------------------------
// Helpers

/// Disjoint union A + B; B's states follow A's and are shifted by |A|.
inline Coalgebra coproduct(const Coalgebra& a, const Coalgebra& b) {
  if (!(a.functor == b.functor)) throw Error(ErrorKind::SpecMismatch, "coproduct of different functors");
  Coalgebra out{a.functor, {}, {}};
  for (const auto& s : a.states) out.states.push_back("0:" + s);
  for (const auto& s : b.states) out.states.push_back("1:" + s);
  out.structure = a.structure;
  std::vector<StateIndex> shift(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) shift[i] = a.size() + i;
  for (const auto& t : b.structure) out.structure.push_back(fmap(b.functor, shift, t));
  return out;
}

/// Compact one-line rendering used for instance digests and diagnostics.
inline std::string describe(const Coalgebra& c) {
  std::ostringstream os;
  os << c.functor.name() << "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << "; ";
    os << c.states[i] << ":";
    const auto& t = c.structure[i];
    if (auto* d = std::get_if<DfaStruct>(&t)) {
      os << (d->accepting ? "F" : "N");
      for (auto y : d->next) os << " " << c.states.at(y);
    } else if (auto* s = std::get_if<SetStruct>(&t)) {
      for (auto y : s->successors) os << " " << c.states.at(y);
    } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
      const auto& labels = c.functor.get_if<LabelledPowersetFunctor>()->labels;
      for (const auto& [lab, y] : l->successors) os << " " << labels.at(lab) << ">" << c.states.at(y);
    } else {
      for (const auto& [y, w] : std::get<WeightedStruct>(t).weights) os << " " << w << "*" << c.states.at(y);
    }
  }
  os << "}";
  return os.str();
}

inline std::string describe(const PointedCoalgebra& c) {
  return describe(c.base) + "@" + c.base.states.at(c.point);
}

/// FNV-1a digest of the description, as 16 hex digits.
template <CoalgebraLike C>
std::string digest(const C& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : describe(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

}  // namespace coalgmin
