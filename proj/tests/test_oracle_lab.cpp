#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace coalgmin;
using namespace coalgmin::oracle;
using namespace coalgmin::testing;

TEST_CASE("hom search: one-state loop", "[oracle][homs]") {
  Coalgebra loop{FunctorSpec::powerset(), {"x"}, {make_set({0})}};
  CHECK(enumerate_homomorphism_maps(loop, loop, std::nullopt) == std::vector<std::vector<StateIndex>>{{0}});
}

TEST_CASE("hom search finds the Fig 2 map", "[oracle][homs]") {
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  auto h = load_map("fig2_map.json", dom.base, cod.base);
  auto homs = enumerate_homomorphisms(dom, cod);
  bool found = false;
  for (const auto& m : homs) found = found || m.map == h;
  CHECK(found);
  std::vector<std::vector<StateIndex>> maps;
  for (const auto& m : homs) maps.push_back(m.map);
  CHECK(maps == brute_force_homs(dom.base, cod.base, std::pair{dom.point, cod.point}));
}

TEST_CASE("hom search: Fig 5a input to output", "[oracle][homs]") {
  auto a = load_base("fig5a.json");
  auto b = load_base("fig5a_target.json");
  auto homs = enumerate_homomorphism_maps(a, b, std::nullopt);
  CHECK(homs == brute_force_homs(a, b));
  // x -> u, y -> u, z -> v is the only one
  CHECK(homs.size() == 1);
  CHECK(homs.front() == std::vector<StateIndex>{0, 0, 1});
}

TEST_CASE("hom search agrees with exhaustive enumeration", "[oracle][homs][property]") {
  for (const auto& fc : standard_functor_cases()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto a = seeded_instance(fc, seed, 4).base;
      auto b = seeded_instance(fc, seed + 500, 4).base;
      CHECK(enumerate_homomorphism_maps(a, b, std::nullopt) == brute_force_homs(a, b));
      CHECK(enumerate_homomorphism_maps(a, a, std::pair{StateIndex{0}, StateIndex{0}}) ==
            brute_force_homs(a, a, std::pair{StateIndex{0}, StateIndex{0}}));
    }
  }
}

TEST_CASE("hom search bounds", "[oracle][homs]") {
  auto a = random_coalgebra(FunctorSpec::powerset(), 6, 1, {}, 0.0);
  HomSearchConfig tight;
  tight.max_candidates = 10;
  try {
    (void)enumerate_homomorphism_maps(a, a, std::nullopt, tight);
    FAIL("bound ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchBoundExceeded);
  }
  HomSearchConfig small;
  small.state_bound = 3;
  CHECK_THROWS_AS(enumerate_homomorphism_maps(a, a, std::nullopt, small), Error);
  CHECK_THROWS_AS(enumerate_homomorphism_maps(a, load_base("fig1a_dfa.json"), std::nullopt), Error);
}

TEST_CASE("minimal iff every incoming homomorphism is surjective", "[oracle][lemma]") {
  auto c = load_pointed("fig7.json");
  auto r = load_pointed("fig7_R.json");
  auto pass = check_minimal_iff_incoming_epi(r, {r, c, seeded_instance(standard_functor_cases()[1], 3)});
  CHECK(pass.passed());
  CHECK(pass.witnesses.empty());

  auto witness = check_minimal_iff_incoming_epi(c, {});
  CHECK(witness.passed());
  REQUIRE(witness.witnesses.size() == 1);
  CHECK(witness.witnesses.front().find("non-surjective") != std::string::npos);

  PointedCoalgebra single{Coalgebra{FunctorSpec::powerset(), {"x"}, {make_set({})}}, 0};
  CHECK(check_minimal_iff_incoming_epi(single, {single}).passed());
}

TEST_CASE("simple coalgebras are subterminal", "[oracle][lemma]") {
  auto input = load_base("fig5a.json");
  auto output = load_base("fig5a_target.json");
  auto pass = check_simple_subterminal(output, {input});
  CHECK(pass.passed());
  CHECK(enumerate_homomorphism_maps(input, output, std::nullopt).size() == 1);

  auto non_simple = check_simple_subterminal(input, {});
  CHECK(non_simple.passed());
  REQUIRE(non_simple.witnesses.size() == 1);
  CHECK(enumerate_homomorphism_maps(input, input, std::nullopt).size() >= 2);

  auto empty = check_simple_subterminal(Coalgebra{}, {});
  CHECK(empty.passed());
}

TEST_CASE("kernel pairs carry both projections as homomorphisms", "[oracle][lemma][property]") {
  for (const auto& fc : standard_functor_cases()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto c = seeded_instance(fc, seed).base;
      auto p = behavioural_classes(c);
      auto k = kernel_pair(c, p);
      INFO(fc.name << " seed " << seed);
      REQUIRE(validate_coalgebra(k.relation).ok());
      CHECK(check_homomorphism(k.relation, c, k.first).holds);
      CHECK(check_homomorphism(k.relation, c, k.second).holds);
      CHECK((k.first == k.second) == p.is_discrete());
    }
  }
  auto cancel = load_base("cancellation.json");
  auto k = kernel_pair(cancel, Partition::single_block(3));
  CHECK(k.relation.size() == 9);
  CHECK(check_homomorphism(k.relation, cancel, k.first).holds);
  CHECK(check_homomorphism(k.relation, cancel, k.second).holds);
  CHECK_THROWS_AS(kernel_pair(load_base("fig5a.json"), Partition::from_blocks(3, {{0, 2}, {1}})), Error);
}

TEST_CASE("least subobject", "[oracle][lemma]") {
  auto fig7 = check_least_subobject(load_pointed("fig7.json"));
  CHECK(fig7.passed());
  CHECK(fig7.instances == 3);
  auto reachable = check_least_subobject(load_pointed("fig1a_dfa.json"));
  CHECK(reachable.passed());
  CHECK(reachable.instances == 1);
}

TEST_CASE("greatest quotient", "[oracle][lemma]") {
  auto fig5a = check_greatest_quotient(load_base("fig5a.json"));
  CHECK(fig5a.passed());
  CHECK(fig5a.instances == 2);
  auto simple = check_greatest_quotient(load_base("fig5a_target.json"));
  CHECK(simple.passed());
  CHECK(simple.instances == 1);
  auto cancel = check_greatest_quotient(load_base("cancellation.json"));
  CHECK(cancel.passed());
  CHECK(cancel.instances == 3);
}

TEST_CASE("refinement oracle on the corpus", "[oracle][lemma]") {
  for (const char* name : {"fig1a_dfa.json", "fig1b_powerset.json", "fig4_dom.json", "fig5a.json", "fig5b.json",
                           "fig7.json", "cancellation.json", "loop_cancellation.json", "lts.json"}) {
    INFO(name);
    CHECK(check_refinement_oracle(load_any(name).index() == 0 ? load_base(name) : load_pointed(name).base).passed());
  }
}

TEST_CASE("minimization is functorial", "[oracle][lemma]") {
  auto c = load_pointed("fig7.json");
  auto r = reachable_part(c);
  auto report = check_minimization_functorial({{r.reachable, c, r.embedding.map}});
  CHECK(report.passed());
  auto dom = load_pointed("fig1a_dfa.json");
  auto cod = load_pointed("fig2_cod.json");
  CHECK(check_minimization_functorial({{dom, cod, load_map("fig2_map.json", dom.base, cod.base)}}).passed());
  auto bad = check_minimization_functorial({{dom, cod, load_map("fig2_map_perturbed.json", dom.base, cod.base)}});
  CHECK_FALSE(bad.passed());
}

TEST_CASE("quotient closure", "[oracle][lemma]") {
  auto cancel = check_quotient_closure(load_pointed("cancellation.json"));
  CHECK(cancel.passed());
  CHECK(cancel.instances == 3);
  CHECK(cancel.witnesses.size() == 1);
  CHECK(cancel.witnesses.front().find("2 blocks") != std::string::npos);
  auto dfa = check_quotient_closure(load_pointed("fig1a_dfa.json"));
  CHECK(dfa.passed());
  CHECK(dfa.witnesses.empty());
}

TEST_CASE("commutation report on the corpus", "[oracle][lemma]") {
  auto loop = check_commutation(load_pointed("loop_cancellation.json"));
  CHECK(loop.passed());
  CHECK(loop.witnesses.size() == 1);
  for (const char* name : {"fig1a_dfa.json", "fig7.json", "fig5a.json", "fig6a_bag.json", "lts.json"}) {
    auto r = check_commutation(load_pointed(name));
    CHECK(r.passed());
    CHECK(r.witnesses.empty());
  }
}

TEST_CASE("generators are deterministic and valid", "[oracle][generator]") {
  for (const auto& fc : standard_functor_cases()) {
    CHECK(random_coalgebra(fc.spec, 5, 17, fc.pool) == random_coalgebra(fc.spec, 5, 17, fc.pool));
    CHECK(seeded_instance(fc, 11) == seeded_instance(fc, 11));
  }
  auto sparse = random_coalgebra(FunctorSpec::powerset(), 6, 3, {}, 0.0);
  for (const auto& t : sparse.structure) CHECK(t == make_set({}));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CHECK(validate_coalgebra(random_coalgebra(FunctorSpec::powerset(), 6, seed)).ok());
  }
  try {
    (void)random_coalgebra(FunctorSpec::bag(), 3, 1);
    FAIL("weighted generator without pool");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WeightedWithoutPool);
  }
}

TEST_CASE("seeded hom pairs are homomorphisms from reachable sources", "[oracle][generator]") {
  for (const auto& fc : standard_functor_cases()) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto p = seeded_hom_pair(fc, seed);
      CHECK(is_reachable(p.source));
      CHECK(check_homomorphism(p.source, p.target, p.map).holds);
    }
  }
}

TEST_CASE("suites pass on a short seed range", "[oracle][suite]") {
  for (const auto& name : suite_names()) {
    for (const auto& r : run_suite(name, 12)) {
      INFO(r.summary());
      CHECK(r.passed());
      CHECK(r.instances > 0);
    }
  }
  CHECK_THROWS_AS(run_suite("nonsense", 1), Error);
}

TEST_CASE("suite reports are reproducible", "[oracle][suite]") {
  auto a = run_suite("commutation", 20);
  auto b = run_suite("commutation", 20);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].summary() == b[i].summary());
    CHECK(a[i].witnesses == b[i].witnesses);
  }
}
