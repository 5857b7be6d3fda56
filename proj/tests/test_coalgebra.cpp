#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace coalgmin;
using namespace coalgmin::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ParseError;
}

std::vector<ErrorKind> kinds(const ValidationReport& r) {
  std::vector<ErrorKind> out;
  for (const auto& v : r.violations) out.push_back(v.kind);
  return out;
}

std::vector<StateIndex> by_name(const Coalgebra& dom, const Coalgebra& cod,
                                std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<StateIndex> map(dom.size(), 0);
  for (const auto& [x, y] : pairs) map[idx(dom, x)] = idx(cod, y);
  return map;
}

}  // namespace

TEST_CASE("validation of well-formed and broken coalgebras", "[coalgebra][validate]") {
  auto fig1a = load_pointed("fig1a_dfa.json");
  CHECK(validate_coalgebra(fig1a).ok());
  CHECK(fig1a.size() == 4);

  Coalgebra dangling{FunctorSpec::powerset(), {"x"}, {make_set({1})}};
  CHECK(kinds(validate_coalgebra(dangling)) == std::vector{ErrorKind::DanglingState});

  Coalgebra zero{FunctorSpec::weighted(Monoid::Rationals), {"x"}, {WeightedStruct{{{0, Rational(0)}}}}};
  CHECK(kinds(validate_coalgebra(zero)) == std::vector{ErrorKind::ZeroWeightEntry});

  Coalgebra missing{FunctorSpec::powerset(), {"x", "y"}, {make_set({})}};
  CHECK(kinds(validate_coalgebra(missing)) == std::vector{ErrorKind::MissingStructure});

  PointedCoalgebra bad_point{Coalgebra{FunctorSpec::powerset(), {"x"}, {make_set({})}}, 3};
  CHECK(kinds(validate_coalgebra(bad_point)) == std::vector{ErrorKind::PointNotInCarrier});

  Coalgebra duplicate{FunctorSpec::powerset(), {"x", "x"}, {make_set({}), make_set({})}};
  CHECK(kinds(validate_coalgebra(duplicate)) == std::vector{ErrorKind::DuplicateState});

  CHECK_THROWS_AS(require_valid(dangling), Error);
  CHECK(validate_coalgebra(Coalgebra{}).ok());
}

TEST_CASE("validation reports every violation", "[coalgebra][validate]") {
  Coalgebra c{FunctorSpec::weighted(Monoid::Rationals),
              {"x", "y"},
              {WeightedStruct{{{0, Rational(0)}}}, make_weighted({{5, Rational(1)}})}};
  CHECK(kinds(validate_coalgebra(c)) == std::vector{ErrorKind::ZeroWeightEntry, ErrorKind::DanglingState});
}

TEST_CASE("the Fig 2 map is a pointed homomorphism", "[coalgebra][hom]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  auto h = load_map("fig2_map.json", dom.base, cod.base);
  CHECK(h == by_name(dom.base, cod.base, {{"q", "pbar"}, {"p", "pbar"}, {"s", "s"}, {"r", "r"}}));
  auto result = check_homomorphism(dom, cod, h);
  CHECK(result.holds);
  CHECK(result.counterexamples.empty());
  CHECK_FALSE(result.first_counterexample());
}

TEST_CASE("the perturbed Fig 2 map fails, with r among the counterexamples", "[coalgebra][hom]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  auto h = load_map("fig2_map_perturbed.json", dom.base, cod.base);
  CHECK(h[idx(dom.base, "r")] == idx(cod.base, "s"));
  auto result = check_homomorphism(dom.base, cod.base, h);
  CHECK_FALSE(result.holds);
  CHECK(std::count(result.counterexamples.begin(), result.counterexamples.end(), idx(dom.base, "r")) == 1);
  // Independent evaluation: r fails, and it is the only state whose accepting flag disagrees.
  const auto r = idx(dom.base, "r");
  CHECK(std::get<DfaStruct>(dom.base.at(r)).accepting != std::get<DfaStruct>(cod.base.at(h[r])).accepting);
  for (StateIndex x = 0; x < dom.size(); ++x) {
    bool fails = !(cod.base.at(h[x]) == fmap(dom.base.functor, h, dom.base.at(x)));
    CHECK(fails == (std::count(result.counterexamples.begin(), result.counterexamples.end(), x) == 1));
  }
}

TEST_CASE("the Fig 4 weighted map is a homomorphism", "[coalgebra][hom]") {
  auto dom = load_base("fig4_dom.json");
  auto cod = load_base("fig4_cod.json");
  auto h = load_map("fig4_map.json", dom, cod);
  CHECK(h == by_name(dom, cod, {{"q", "qbar"}, {"r", "qbar"}, {"p", "sbar"}, {"s", "sbar"}}));
  CHECK(check_homomorphism(dom, cod, h).holds);
}

TEST_CASE("identity maps are homomorphisms", "[coalgebra][hom]") {
  for (const char* name : {"fig1a_dfa.json", "fig4_dom.json", "fig5b.json", "fig7.json", "lts.json"}) {
    auto c = load_any(name);
    std::visit([](const auto& x) { CHECK(check_homomorphism(identity_morphism(x)).holds); }, c);
  }
}

TEST_CASE("homomorphism checks reject mismatched inputs", "[coalgebra][hom]") {
  auto dfa = load_base("fig1a_dfa.json");
  auto ps = load_base("fig7.json");
  std::vector<StateIndex> h(dfa.size(), 0);
  CHECK(kind_of([&] { (void)check_homomorphism(dfa, ps, h); }) == ErrorKind::SpecMismatch);
  std::vector<StateIndex> partial{0};
  CHECK(kind_of([&] { (void)check_homomorphism(dfa, dfa, partial); }) == ErrorKind::PartialMap);
}

TEST_CASE("point preservation is part of the pointed law", "[coalgebra][hom]") {
  auto r = load_pointed("fig7_R.json");
  // swapping the 2-cycle is an unpointed automorphism but moves the point
  std::vector<StateIndex> swap{1, 0};
  CHECK(check_homomorphism(r.base, r.base, swap).holds);
  auto pointed = check_homomorphism(r, r, swap);
  CHECK_FALSE(pointed.holds);
  CHECK(pointed.point_violated);
}

TEST_CASE("diagonal fill-in degenerate squares", "[coalgebra][diagonal]") {
  FiniteMap id3{{0, 1, 2}, 3};
  FiniteMap f{{1, 1, 0}, 2};
  FiniteMap m{{2, 0}, 3};
  FiniteMap g{{0, 0, 2}, 3};
  // e = id: d = f
  FiniteMap mf{{m.image[1], m.image[1], m.image[0]}, 3};
  CHECK(diagonal_fill_in(id3, m, f, mf) == f.image);
  // m = id: d = g
  FiniteMap e{{0, 1, 1, 2}, 3};
  FiniteMap ge{{g.image[0], g.image[1], g.image[1], g.image[2]}, 3};
  CHECK(diagonal_fill_in(e, id3, ge, g) == g.image);
}

TEST_CASE("diagonal fill-in errors", "[coalgebra][diagonal]") {
  FiniteMap e{{0, 0}, 2};  // not surjective
  FiniteMap id2{{0, 1}, 2};
  CHECK(kind_of([&] { (void)diagonal_fill_in(e, id2, id2, id2); }) == ErrorKind::NotSurjective);
  FiniteMap collapse{{0, 0}, 2};
  CHECK(kind_of([&] { (void)diagonal_fill_in(id2, collapse, id2, collapse); }) == ErrorKind::NotInjective);
  FiniteMap swap{{1, 0}, 2};
  CHECK(kind_of([&] { (void)diagonal_fill_in(id2, id2, id2, swap); }) == ErrorKind::SquareDoesNotCommute);
}

TEST_CASE("diagonal fill-ins are unique on all small commuting squares", "[coalgebra][diagonal][property]") {
  std::mt19937_64 rng(2024);
  int squares = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t nb = 1 + rng() % 4, nc = 1 + rng() % 4;
    std::size_t na = nb + rng() % 3, nd = nc + rng() % 2;
    // e: A -> B surjective
    std::vector<StateIndex> e(na);
    for (std::size_t a = 0; a < na; ++a) e[a] = a < nb ? a : rng() % nb;
    std::shuffle(e.begin(), e.end(), rng);
    // m: C -> D injective
    std::vector<StateIndex> slots(nd);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<StateIndex> m(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(nc));
    // a witness d0 builds f = d0 . e and g = m . d0
    std::vector<StateIndex> d0(nb), f(na), g(nb);
    for (auto& y : d0) y = rng() % nc;
    for (std::size_t a = 0; a < na; ++a) f[a] = d0[e[a]];
    for (std::size_t b = 0; b < nb; ++b) g[b] = m[d0[b]];

    auto d = diagonal_fill_in({e, nb}, {m, nd}, {f, nc}, {g, nd});
    std::size_t solutions = 0;
    for_each_map(nb, nc, [&](const std::vector<StateIndex>& cand) {
      for (std::size_t a = 0; a < na; ++a)
        if (cand[e[a]] != f[a]) return;
      for (std::size_t b = 0; b < nb; ++b)
        if (m[cand[b]] != g[b]) return;
      ++solutions;
      CHECK(cand == d);
    });
    CHECK(solutions == 1);
    ++squares;
  }
  CHECK(squares == 400);
}

TEST_CASE("factorizing the Fig 2 map gives the Fig 3 image", "[coalgebra][factorize]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  auto h = load_map("fig2_map.json", dom.base, cod.base);
  auto f = factorize(PointedMorphism{dom, cod, h});
  auto expected = load_pointed("fig3_image.json");
  CHECK(f.image == expected);
  CHECK(f.image.base.states == std::vector<std::string>{"pbar", "s", "r"});
  CHECK(compose_morphisms(f.m, f.e).map == h);
  CHECK(is_surjective(f.e.map, f.image.size()));
  CHECK(is_injective(f.m.map, cod.size()));
  CHECK(check_homomorphism(f.e).holds);
  CHECK(check_homomorphism(f.m).holds);
}

TEST_CASE("factorize degenerate cases", "[coalgebra][factorize]") {
  auto c = load_pointed("fig1a_dfa.json");
  auto id = identity_morphism(c);
  auto f = factorize(id);
  CHECK(is_injective(f.e.map, f.image.size()));
  CHECK(is_surjective(f.e.map, f.image.size()));
  CHECK(are_isomorphic(f.image, c));

  auto dom = load_base("fig4_dom.json");
  auto cod = load_base("fig4_cod.json");
  auto g = factorize(CoalgebraMorphism{dom, cod, load_map("fig4_map.json", dom, cod)});
  CHECK(is_surjective(g.m.map, cod.size()));
  CHECK(is_injective(g.m.map, cod.size()));

  auto perturbed = load_map("fig2_map_perturbed.json", c.base, load_base("fig2_cod.json"));
  CHECK(kind_of([&] { (void)factorize(CoalgebraMorphism{c.base, load_base("fig2_cod.json"), perturbed}); }) ==
        ErrorKind::NotAHomomorphism);
}

TEST_CASE("kernel partitions", "[coalgebra][partition]") {
  auto dom = load_base("fig1a_dfa.json");
  auto cod = load_base("fig2_cod.json");
  auto h = load_map("fig2_map.json", dom, cod);
  auto k = kernel_partition(h);
  // carrier order q=0, p=1, r=2, s=3
  CHECK(k.blocks() == std::vector<std::vector<StateIndex>>{{0, 1}, {2}, {3}});
  CHECK(kernel_partition(std::vector<StateIndex>{0, 1, 2}).is_discrete());
  CHECK(kernel_partition(std::vector<StateIndex>{5, 5, 5}).block_count() == 1);
}

TEST_CASE("partitions are canonical and checked", "[coalgebra][partition]") {
  auto p = Partition::from_blocks(4, {{3, 1}, {2, 0}});
  CHECK(p.blocks() == std::vector<std::vector<StateIndex>>{{0, 2}, {1, 3}});
  CHECK(kind_of([] { (void)Partition::from_blocks(3, {{0, 1}}); }) == ErrorKind::NotAPartition);
  CHECK(kind_of([] { (void)Partition::from_blocks(2, {{0, 1}, {1}}); }) == ErrorKind::NotAPartition);
  CHECK(kind_of([] { (void)Partition::from_blocks(2, {{0, 1}, {}}); }) == ErrorKind::NotAPartition);
  CHECK(Partition::discrete(3).refines(p.block_count() ? Partition::single_block(3) : p));
  auto j = Partition::join(Partition::from_blocks(4, {{0, 1}, {2}, {3}}), Partition::from_blocks(4, {{0}, {1, 2}, {3}}));
  CHECK(j.blocks() == std::vector<std::vector<StateIndex>>{{0, 1, 2}, {3}});
}

TEST_CASE("the cancellation quotient", "[coalgebra][quotient]") {
  auto c = load_pointed("cancellation.json");
  auto p = io::parse_partition(io::read_file(corpus_path("cancellation_partition.json")), c.base);
  auto q = apply_partition_quotient(c, p);
  CHECK(q.quotient.base.states == std::vector<std::string>{"a", "b1"});
  CHECK(q.quotient.base.at(0) == make_weighted({}));
  CHECK(q.quotient.base.at(1) == make_weighted({}));
  CHECK(check_homomorphism(q.projection).holds);
  CHECK(q.projection.map == std::vector<StateIndex>{0, 1, 1});
}

TEST_CASE("quotients by incompatible partitions are refused", "[coalgebra][quotient]") {
  auto c = load_base("fig5a.json");
  auto p = Partition::from_blocks(3, {{0, 2}, {1}});
  try {
    (void)apply_partition_quotient(c, p);
    FAIL("incompatible partition accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatiblePartition);
  }
  CHECK_FALSE(is_compatible(c, p));
  CHECK(kind_of([&] { (void)apply_partition_quotient(c, Partition::discrete(2)); }) == ErrorKind::NotAPartition);
}

TEST_CASE("discrete quotient is isomorphic to the input", "[coalgebra][quotient]") {
  for (const char* name : {"fig1a_dfa.json", "fig5b.json", "fig7.json", "lts.json"}) {
    auto c = load_pointed(name);
    auto q = apply_partition_quotient(c, Partition::discrete(c.size()));
    CHECK(q.quotient == c);
    CHECK(are_isomorphic(q.quotient, c));
  }
}

TEST_CASE("kernel quotient of the Fig 2 map matches its image", "[coalgebra][quotient]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  auto h = load_map("fig2_map.json", dom.base, cod.base);
  auto q = apply_partition_quotient(dom, kernel_partition(h));
  CHECK(are_isomorphic(q.quotient, factorize(PointedMorphism{dom, cod, h}).image));
}

TEST_CASE("composition", "[coalgebra][compose]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  PointedMorphism h{dom, cod, load_map("fig2_map.json", dom.base, cod.base)};
  CHECK(compose_morphisms(identity_morphism(cod), h) == h);
  CHECK(compose_morphisms(h, identity_morphism(dom)) == h);
  auto f = factorize(h);
  // e into the image, then the inclusion, reproduces h
  auto outer = compose_morphisms(f.m, f.e);
  CHECK(outer == h);
  CHECK(check_homomorphism(outer).holds);
  CHECK(kind_of([&] { (void)compose_morphisms(h, h); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("factorization and quotient laws on seeded homomorphisms", "[coalgebra][property]") {
  for (const auto& fc : oracle::standard_functor_cases()) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      auto pair = oracle::seeded_hom_pair(fc, seed, 5);
      PointedMorphism h{pair.source, pair.target, pair.map};
      REQUIRE(check_homomorphism(h).holds);
      auto f = factorize(h);
      CHECK(compose_morphisms(f.m, f.e).map == h.map);
      CHECK(is_surjective(f.e.map, f.image.size()));
      CHECK(is_injective(f.m.map, h.cod.size()));
      CHECK(check_homomorphism(f.e).holds);
      CHECK(check_homomorphism(f.m).holds);
      std::set<std::string> image_names;
      for (auto y : h.map) image_names.insert(h.cod.base.states[y]);
      CHECK(std::set<std::string>(f.image.base.states.begin(), f.image.base.states.end()) == image_names);

      auto q = apply_partition_quotient(h.dom, kernel_partition(h.map));
      CHECK(check_homomorphism(q.projection).holds);
      CHECK(are_isomorphic(q.quotient, f.image));

      // composing two homomorphisms: through the kernel quotient and then into B
      std::vector<StateIndex> back(q.quotient.size());
      for (StateIndex x = 0; x < h.dom.size(); ++x) back[q.projection.map[x]] = h.map[x];
      PointedMorphism into_cod{q.quotient, h.cod, back};
      CHECK(check_homomorphism(into_cod).holds);
      CHECK(check_homomorphism(compose_morphisms(into_cod, q.projection)).holds);
    }
  }
}

TEST_CASE("coproducts keep both summands", "[coalgebra]") {
  auto a = load_base("fig7_R.json");
  auto b = load_base("fig7_M.json");
  auto s = coproduct(a, b);
  CHECK(s.size() == 3);
  CHECK(s.states == std::vector<std::string>{"0:u", "0:v", "1:m"});
  CHECK(s.at(2) == make_set({2}));
  CHECK(validate_coalgebra(s).ok());
}

TEST_CASE("digests are stable and discriminate", "[coalgebra]") {
  auto a = load_pointed("fig7_R.json");
  CHECK(digest(a) == digest(load_pointed("fig7_R.json")));
  CHECK(digest(a) != digest(load_pointed("fig7_M.json")));
  CHECK(digest(a).size() == 16);
}
