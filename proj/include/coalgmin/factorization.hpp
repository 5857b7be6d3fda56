#pragma once

// (surjective, injective) factorizations of coalgebra morphisms and
// quotients by compatible partitions.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coalgmin/coalgebra.hpp"
#include "coalgmin/partition.hpp"

namespace coalgmin {

/// A plain function between finite sets {0..n-1} -> {0..codomain_size-1}.
struct FiniteMap {
  std::vector<StateIndex> image;
  std::size_t codomain_size = 0;

  std::size_t domain_size() const noexcept { return image.size(); }
};

/// Given a commuting square g . e = m . f with e surjective and m injective,
/// returns the unique d : B -> C with d . e = f and m . d = g.
///
///        e
///    A ----> B
///  f |       | g
///    v       v
///    C ----> D
///        m
inline std::vector<StateIndex> diagonal_fill_in(const FiniteMap& e, const FiniteMap& m, const FiniteMap& f,
                                                const FiniteMap& g) {
  auto in_range = [](const FiniteMap& h) {
    for (auto y : h.image)
      if (y >= h.codomain_size) return false;
    return true;
  };
  if (!in_range(e) || !in_range(m) || !in_range(f) || !in_range(g)) {
    throw Error(ErrorKind::PartialMap, "map value outside its declared codomain");
  }
  if (e.domain_size() != f.domain_size() || e.codomain_size != g.domain_size() ||
      f.codomain_size != m.domain_size() || m.codomain_size != g.codomain_size) {
    throw Error(ErrorKind::DomainMismatch, "maps do not form a square");
  }
  if (!is_surjective(e.image, e.codomain_size)) throw Error(ErrorKind::NotSurjective, "top edge is not surjective");
  if (!is_injective(m.image, m.codomain_size)) throw Error(ErrorKind::NotInjective, "bottom edge is not injective");
  for (std::size_t a = 0; a < e.domain_size(); ++a) {
    if (g.image[e.image[a]] != m.image[f.image[a]]) {
      throw Error(ErrorKind::SquareDoesNotCommute, "g(e(a)) != m(f(a)) at a = " + std::to_string(a), std::to_string(a));
    }
  }
  std::vector<StateIndex> d(e.codomain_size, 0);
  std::vector<bool> chosen(e.codomain_size, false);
  for (std::size_t a = 0; a < e.domain_size(); ++a) {
    if (!chosen[e.image[a]]) {
      d[e.image[a]] = f.image[a];
      chosen[e.image[a]] = true;
    }
  }
  return d;
}

template <CoalgebraLike C>
struct Factorization {
  Morphism<C> e;  ///< surjective onto the image
  C image;
  Morphism<C> m;  ///< injective into the codomain
};

/// Factorizes a homomorphism h = m . e through its image. The image carrier
/// is h[dom] in codomain order, with the codomain's state names.
template <CoalgebraLike C>
Factorization<C> factorize(const Morphism<C>& h) {
  if (!check_homomorphism(h)) throw Error(ErrorKind::NotAHomomorphism, "factorize needs a coalgebra homomorphism");
  const auto& dom = underlying(h.dom);
  const auto& cod = underlying(h.cod);

  std::vector<bool> hit(cod.size(), false);
  for (auto y : h.map) hit[y] = true;
  std::vector<StateIndex> incl;                          // image index -> cod index
  std::vector<StateIndex> position(cod.size(), 0);       // cod index -> image index
  for (StateIndex y = 0; y < cod.size(); ++y) {
    if (hit[y]) {
      position[y] = incl.size();
      incl.push_back(y);
    }
  }
  std::vector<StateIndex> e_map(dom.size());
  for (StateIndex x = 0; x < dom.size(); ++x) e_map[x] = position[h.map[x]];

  Coalgebra image{dom.functor, {}, std::vector<FStructure>(incl.size())};
  for (auto y : incl) image.states.push_back(cod.states[y]);
  std::vector<bool> assigned(incl.size(), false);
  for (StateIndex x = 0; x < dom.size(); ++x) {
    auto t = fmap(dom.functor, e_map, dom.at(x));
    auto y = e_map[x];
    if (!assigned[y]) {
      image.structure[y] = std::move(t);
      assigned[y] = true;
    } else if (!(image.structure[y] == t)) {
      throw Error(ErrorKind::WellDefinednessViolation,
                  "image structure differs across the fiber of '" + image.states[y] + "'", image.states[y]);
    }
  }

  std::optional<StateIndex> image_point;
  if (auto p = point_of(h.dom)) image_point = e_map[*p];
  C image_obj = rebuild(h.dom, std::move(image), image_point);
  Factorization<C> out{{h.dom, image_obj, std::move(e_map)}, image_obj, {image_obj, h.cod, std::move(incl)}};
  return out;
}

template <CoalgebraLike C>
struct QuotientResult {
  C quotient;
  Morphism<C> projection;
  Partition partition;
};

namespace detail {

/// First (block, x, y) with x, y in one block but Fk(c(x)) != Fk(c(y)).
inline std::optional<std::tuple<std::size_t, StateIndex, StateIndex>> first_incompatibility(const Coalgebra& c,
                                                                                           const Partition& p) {
  const auto& kappa = p.block_map();
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    const auto& block = p.blocks()[b];
    auto reference = fmap(c.functor, kappa, c.at(block.front()));
    for (std::size_t i = 1; i < block.size(); ++i) {
      if (!(fmap(c.functor, kappa, c.at(block[i])) == reference)) return std::tuple{b, block.front(), block[i]};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// True if the canonical surjection onto the blocks carries a coalgebra
/// structure, i.e. states in one block have equal images under F(kappa).
template <CoalgebraLike C>
bool is_compatible(const C& c, const Partition& p) {
  if (p.carrier_size() != c.size()) return false;
  return !detail::first_incompatibility(underlying(c), p).has_value();
}

/// Quotient by a compatible partition. Quotient states are the blocks in
/// canonical order, named after their least member.
template <CoalgebraLike C>
QuotientResult<C> apply_partition_quotient(const C& c, const Partition& p) {
  require_valid(c);
  const auto& base = underlying(c);
  if (p.carrier_size() != base.size()) throw Error(ErrorKind::NotAPartition, "partition is over a different carrier");
  if (auto bad = detail::first_incompatibility(base, p)) {
    auto [b, x, y] = *bad;
    throw Error(ErrorKind::IncompatiblePartition,
                "block " + std::to_string(b) + ": states '" + base.states[x] + "' and '" + base.states[y] +
                    "' have different successor structures in the quotient",
                base.states[y]);
  }
  const auto& kappa = p.block_map();
  Coalgebra q{base.functor, {}, {}};
  for (const auto& block : p.blocks()) {
    q.states.push_back(base.states[block.front()]);
    q.structure.push_back(fmap(base.functor, kappa, base.at(block.front())));
  }
  std::optional<StateIndex> qp;
  if (auto pt = point_of(c)) qp = kappa[*pt];
  C quotient = rebuild(c, std::move(q), qp);
  return {quotient, {c, quotient, kappa}, p};
}

}  // namespace coalgmin
