#pragma once

#include <sstream>
#include <string>

#include "coalgmin/coalgebra.hpp"

namespace coalgmin {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string render_dot(const Coalgebra& c, std::optional<StateIndex> point) {
  std::ostringstream os;
  os << "digraph coalgebra {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  if (point) os << "  __point [shape=none, label=\"\", width=0, height=0];\n";
  for (std::size_t x = 0; x < c.size(); ++x) {
    os << "  " << dot_quote(c.states[x]);
    if (auto* d = std::get_if<DfaStruct>(&c.structure[x]); d != nullptr && d->accepting) os << " [shape=doublecircle]";
    os << ";\n";
  }
  if (point) os << "  __point -> " << dot_quote(c.states.at(*point)) << ";\n";
  auto edge = [&](StateIndex from, StateIndex to, const std::string* label) {
    os << "  " << dot_quote(c.states[from]) << " -> " << dot_quote(c.states[to]);
    if (label) os << " [label=" << dot_quote(*label) << "]";
    os << ";\n";
  };
  for (std::size_t x = 0; x < c.size(); ++x) {
    const auto& t = c.structure[x];
    if (auto* d = std::get_if<DfaStruct>(&t)) {
      const auto& alphabet = c.functor.get_if<DfaFunctor>()->alphabet;
      for (std::size_t s = 0; s < d->next.size(); ++s) edge(x, d->next[s], &alphabet[s]);
    } else if (auto* s = std::get_if<SetStruct>(&t)) {
      for (auto y : s->successors) edge(x, y, nullptr);
    } else if (auto* l = std::get_if<LabelledStruct>(&t)) {
      const auto& labels = c.functor.get_if<LabelledPowersetFunctor>()->labels;
      for (const auto& [lab, y] : l->successors) edge(x, y, &labels[lab]);
    } else {
      for (const auto& [y, w] : std::get<WeightedStruct>(t).weights) {
        auto label = w.to_string();
        edge(x, y, &label);
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace detail

/// Graphviz rendering: one node per state in carrier order, accepting DFA
/// states double-circled, the point drawn as an arrow from an invisible node.
template <CoalgebraLike C>
std::string emit_dot(const C& c) {
  require_valid(c);
  return detail::render_dot(underlying(c), point_of(c));
}

}  // namespace coalgmin
