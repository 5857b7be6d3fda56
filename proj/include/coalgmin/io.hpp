#pragma once

// JSON documents for coalgebras, morphisms and partitions.
//
//   { "functor": {"kind": "dfa", "alphabet": ["a", "b"]},
//     "states": ["q", "p"],
//     "point": "q",                                   (optional)
//     "structure": { "q": {"accepting": true, "next": {"a": "p", "b": "q"}}, ... } }
//
// Structure payloads per kind: powerset -> list of states; labelled-powerset
// -> list of [label, state] pairs; weighted -> {state: "n" | "n/d"}.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coalgmin/coalgebra.hpp"
#include "coalgmin/partition.hpp"

namespace coalgmin::io {

using json = nlohmann::json;
using AnyCoalgebra = std::variant<Coalgebra, PointedCoalgebra>;

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
}

[[noreturn]] inline void bad(const std::string& reason) { throw Error(ErrorKind::ParseError, reason); }

inline const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad(std::string(what) + " must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

inline std::size_t position_in(const std::vector<std::string>& names, const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return names.size();
}

}  // namespace detail

inline FunctorSpec functor_from_json(const json& j) {
  const auto& kind_json = detail::field(j, "kind");
  if (!kind_json.is_string()) detail::bad("functor kind must be a string");
  auto kind = kind_json.get<std::string>();
  try {
    if (kind == "dfa") return FunctorSpec::dfa(detail::string_list(detail::field(j, "alphabet"), "alphabet"));
    if (kind == "powerset") return FunctorSpec::powerset();
    if (kind == "labelled-powerset") {
      return FunctorSpec::labelled_powerset(detail::string_list(detail::field(j, "labels"), "labels"));
    }
    if (kind == "weighted") {
      const auto& m = detail::field(j, "monoid");
      if (m == "rational") return FunctorSpec::weighted(Monoid::Rationals);
      if (m == "natural") return FunctorSpec::bag();
      detail::bad("monoid must be \"rational\" or \"natural\"");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ValidationError, e.what());
  }
  detail::bad("unknown functor kind '" + kind + "'");
}

inline json functor_to_json(const FunctorSpec& f) {
  json j = json::object();
  if (auto* d = f.get_if<DfaFunctor>()) {
    j["kind"] = "dfa";
    j["alphabet"] = d->alphabet;
  } else if (f.is<PowersetFunctor>()) {
    j["kind"] = "powerset";
  } else if (auto* l = f.get_if<LabelledPowersetFunctor>()) {
    j["kind"] = "labelled-powerset";
    j["labels"] = l->labels;
  } else {
    j["kind"] = "weighted";
    j["monoid"] = f.is_weighted_over(Monoid::Rationals) ? "rational" : "natural";
  }
  return j;
}

/// Parses and validates. Unknown state names, missing structures, zero
/// weights and a foreign point are collected and reported together.
inline AnyCoalgebra coalgebra_from_json(const json& doc) {
  auto functor = functor_from_json(detail::field(doc, "functor"));
  auto states = detail::string_list(detail::field(doc, "states"), "states");
  const auto& structure = detail::field(doc, "structure");
  if (!structure.is_object()) detail::bad("structure must be an object keyed by state");

  ValidationReport report;
  Coalgebra c{functor, states, std::vector<FStructure>(states.size())};
  auto resolve = [&](const json& name_json, const std::string& owner) -> StateIndex {
    if (!name_json.is_string()) detail::bad("state references must be strings (in '" + owner + "')");
    auto name = name_json.get<std::string>();
    auto pos = detail::position_in(states, name);
    if (pos == states.size()) {
      report.violations.push_back({ErrorKind::DanglingState, "state '" + owner + "' refers to unknown state '" + name + "'", {}});
      return 0;
    }
    return pos;
  };
  for (const auto& [key, _] : structure.items()) {
    if (detail::position_in(states, key) == states.size()) {
      report.violations.push_back({ErrorKind::DanglingState, "structure given for undeclared state '" + key + "'", {}});
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& name = states[i];
    if (!structure.contains(name)) {
      report.violations.push_back({ErrorKind::MissingStructure, "no structure for state '" + name + "'", i});
      c.structure[i] = std::visit(
          [](const auto& k) -> FStructure {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, DfaFunctor>) return DfaStruct{false, std::vector<StateIndex>(k.alphabet.size(), 0)};
            else if constexpr (std::is_same_v<K, PowersetFunctor>) return SetStruct{};
            else if constexpr (std::is_same_v<K, LabelledPowersetFunctor>) return LabelledStruct{};
            else return WeightedStruct{};
          },
          functor.kind());
      continue;
    }
    const auto& payload = structure.at(name);
    if (auto* d = functor.get_if<DfaFunctor>()) {
      const auto& acc = detail::field(payload, "accepting");
      if (!acc.is_boolean()) detail::bad("'accepting' of '" + name + "' must be a boolean");
      const auto& next = detail::field(payload, "next");
      if (!next.is_object()) detail::bad("'next' of '" + name + "' must be an object");
      DfaStruct t{acc.get<bool>(), std::vector<StateIndex>(d->alphabet.size(), 0)};
      for (const auto& [sym, _] : next.items()) {
        if (detail::position_in(d->alphabet, sym) == d->alphabet.size()) {
          report.violations.push_back({ErrorKind::MalformedStructure, "state '" + name + "' uses unknown symbol '" + sym + "'", i});
        }
      }
      for (std::size_t s = 0; s < d->alphabet.size(); ++s) {
        if (!next.contains(d->alphabet[s])) {
          report.violations.push_back({ErrorKind::MalformedStructure,
                                       "state '" + name + "' has no transition on '" + d->alphabet[s] + "'", i});
          continue;
        }
        t.next[s] = resolve(next.at(d->alphabet[s]), name);
      }
      c.structure[i] = std::move(t);
    } else if (functor.is<PowersetFunctor>()) {
      if (!payload.is_array()) detail::bad("powerset structure of '" + name + "' must be a list");
      std::vector<StateIndex> succ;
      for (const auto& y : payload) succ.push_back(resolve(y, name));
      c.structure[i] = make_set(std::move(succ));
    } else if (auto* l = functor.get_if<LabelledPowersetFunctor>()) {
      if (!payload.is_array()) detail::bad("labelled structure of '" + name + "' must be a list of pairs");
      std::vector<std::pair<std::size_t, StateIndex>> succ;
      for (const auto& pair : payload) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) {
          detail::bad("labelled successor of '" + name + "' must be a [label, state] pair");
        }
        auto label = pair[0].get<std::string>();
        auto lab = detail::position_in(l->labels, label);
        if (lab == l->labels.size()) {
          report.violations.push_back({ErrorKind::MalformedStructure, "state '" + name + "' uses unknown label '" + label + "'", i});
          continue;
        }
        succ.emplace_back(lab, resolve(pair[1], name));
      }
      c.structure[i] = make_labelled(std::move(succ));
    } else {
      if (!payload.is_object()) detail::bad("weighted structure of '" + name + "' must be an object");
      bool naturals = functor.is_weighted_over(Monoid::Naturals);
      std::vector<std::pair<StateIndex, Rational>> entries;
      for (const auto& [target, w] : payload.items()) {
        if (!w.is_string()) detail::bad("weight '" + name + "' -> '" + target + "' must be a string \"n\" or \"n/d\"");
        auto weight = Rational::parse(w.get<std::string>());
        if (weight.is_zero()) {
          report.violations.push_back({ErrorKind::ZeroWeightEntry, "state '" + name + "' stores weight 0 for '" + target + "'", i});
          continue;
        }
        if (naturals && (!weight.is_integer() || !weight.is_positive())) {
          report.violations.push_back({ErrorKind::MalformedStructure,
                                       "bag multiplicity '" + w.get<std::string>() + "' of '" + name + "' is not a natural number", i});
          continue;
        }
        entries.emplace_back(resolve(json(target), name), weight);
      }
      c.structure[i] = make_weighted(entries);
    }
  }

  for (const auto& v : validate_coalgebra(c).violations) report.violations.push_back(v);

  std::optional<StateIndex> point;
  if (doc.contains("point") && !doc.at("point").is_null()) {
    const auto& pj = doc.at("point");
    if (!pj.is_string()) detail::bad("point must be a state name");
    auto pos = detail::position_in(states, pj.get<std::string>());
    if (pos == states.size()) {
      report.violations.push_back({ErrorKind::PointNotInCarrier, "point '" + pj.get<std::string>() + "' is not a state", {}});
    } else {
      point = pos;
    }
  }
  if (!report.ok()) throw Error(ErrorKind::ValidationError, report.to_string());
  if (point) return PointedCoalgebra{std::move(c), *point};
  return c;
}

inline AnyCoalgebra parse_coalgebra(std::string_view text) { return coalgebra_from_json(detail::parse_json(text)); }

inline json to_json(const Coalgebra& c) {
  json doc = json::object();
  doc["functor"] = functor_to_json(c.functor);
  doc["states"] = c.states;
  json structure = json::object();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& t = c.structure[i];
    json payload;
    if (auto* d = std::get_if<DfaStruct>(&t)) {
      const auto& alphabet = c.functor.get_if<DfaFunctor>()->alphabet;
      json next = json::object();
      for (std::size_t s = 0; s < d->next.size(); ++s) next[alphabet[s]] = c.states[d->next[s]];
      payload = {{"accepting", d->accepting}, {"next", next}};
    } else if (auto* s = std::get_if<SetStruct>(&t)) {
      payload = json::array();
      for (auto y : s->successors) payload.push_back(c.states[y]);
    } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
      const auto& labels = c.functor.get_if<LabelledPowersetFunctor>()->labels;
      payload = json::array();
      for (const auto& [lab, y] : l->successors) payload.push_back(json::array({labels[lab], c.states[y]}));
    } else {
      payload = json::object();
      for (const auto& [y, w] : std::get<WeightedStruct>(t).weights) payload[c.states[y]] = w.to_string();
    }
    structure[c.states[i]] = std::move(payload);
  }
  doc["structure"] = std::move(structure);
  return doc;
}

inline json to_json(const PointedCoalgebra& c) {
  auto doc = to_json(c.base);
  doc["point"] = c.base.states.at(c.point);
  return doc;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <CoalgebraLike C>
std::string serialize(const C& c) {
  return dump(to_json(c));
}

inline std::string serialize(const AnyCoalgebra& c) {
  return std::visit([](const auto& x) { return serialize(x); }, c);
}

/// {"map": {dom state: cod state}}; must be total on dom.
inline std::vector<StateIndex> morphism_from_json(const json& doc, const Coalgebra& dom, const Coalgebra& cod) {
  const auto& m = detail::field(doc, "map");
  if (!m.is_object()) detail::bad("'map' must be an object");
  std::vector<StateIndex> out(dom.size(), 0);
  for (const auto& [key, value] : m.items()) {
    if (!dom.index_of(key)) throw Error(ErrorKind::DanglingState, "map mentions unknown domain state '" + key + "'", key);
  }
  for (std::size_t x = 0; x < dom.size(); ++x) {
    if (!m.contains(dom.states[x])) {
      throw Error(ErrorKind::PartialMap, "map undefined on '" + dom.states[x] + "'", dom.states[x]);
    }
    const auto& v = m.at(dom.states[x]);
    if (!v.is_string()) detail::bad("map values must be state names");
    auto y = cod.index_of(v.get<std::string>());
    if (!y) throw Error(ErrorKind::DanglingState, "map sends '" + dom.states[x] + "' to unknown state '" + v.get<std::string>() + "'");
    out[x] = *y;
  }
  return out;
}

inline std::vector<StateIndex> parse_morphism(std::string_view text, const Coalgebra& dom, const Coalgebra& cod) {
  return morphism_from_json(detail::parse_json(text), dom, cod);
}

inline json morphism_to_json(const Coalgebra& dom, const Coalgebra& cod, std::span<const StateIndex> map) {
  json m = json::object();
  for (std::size_t x = 0; x < map.size(); ++x) m[dom.states[x]] = cod.states.at(map[x]);
  return {{"map", m}};
}

template <CoalgebraLike C>
std::string serialize_morphism(const Morphism<C>& h) {
  return dump(morphism_to_json(underlying(h.dom), underlying(h.cod), h.map));
}

/// {"blocks": [[state, ...], ...]}
inline Partition partition_from_json(const json& doc, const Coalgebra& c) {
  const auto& blocks_json = detail::field(doc, "blocks");
  if (!blocks_json.is_array()) detail::bad("'blocks' must be a list of lists");
  std::vector<std::vector<StateIndex>> blocks;
  for (const auto& b : blocks_json) {
    auto names = detail::string_list(b, "block");
    std::vector<StateIndex> block;
    for (const auto& n : names) {
      auto x = c.index_of(n);
      if (!x) throw Error(ErrorKind::DanglingState, "partition mentions unknown state '" + n + "'", n);
      block.push_back(*x);
    }
    blocks.push_back(std::move(block));
  }
  return Partition::from_blocks(c.size(), std::move(blocks));
}

inline Partition parse_partition(std::string_view text, const Coalgebra& c) {
  return partition_from_json(detail::parse_json(text), c);
}

inline json partition_to_json(const Partition& p, const Coalgebra& c) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) {
    json names = json::array();
    for (auto x : b) names.push_back(c.states[x]);
    blocks.push_back(std::move(names));
  }
  return {{"blocks", blocks}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'", path);
  out << content;
}

inline AnyCoalgebra load_coalgebra(const std::string& path) { return parse_coalgebra(read_file(path)); }

}  // namespace coalgmin::io
