#include <numeric>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "limcolim/commute.hpp"
#include "limcolim/fincat.hpp"
#include "limcolim/groups.hpp"
#include "limcolim/setfun.hpp"

using limcolim::Config;
using limcolim::default_config;
using limcolim::errc;
using limcolim::Error;
using namespace limcolim::fincat;
using namespace limcolim::groups;
using namespace limcolim::commute;

namespace {

FinCategory cat_of(const FinGroup& g) { return as_category(g); }

// Oracle for the coset comparison, by direct scans: count the orbits of the
// right group that contain left-fixed cosets (classes on the one side) and
// the orbits fixed by the left group as wholes (families on the other).
struct CosetScan {
  int orbits_with_fixed_point = 0;
  int fixed_orbits = 0;
};

CosetScan coset_scan(const FinGroup& g, const FinGroup& h, const Subgroup& s) {
  const auto p = direct_product(g, h);
  const auto cosets = left_cosets(p, s);
  const int d = static_cast<int>(cosets.reps.size());
  const auto left = [&](int x) { return x * h.order + h.identity; };
  const auto right = [&](int y) { return g.identity * h.order + y; };

  std::vector<char> fixed(d, 1);
  for (int c = 0; c < d; ++c)
    for (int x = 0; x < g.order && fixed[c]; ++x)
      fixed[c] = cosets.coset_of[p.mul(left(x), cosets.reps[c])] == c;

  std::vector<int> orbit(d, -1);
  int orbit_count = 0;
  for (int c = 0; c < d; ++c) {
    if (orbit[c] != -1) continue;
    for (int y = 0; y < h.order; ++y)
      orbit[cosets.coset_of[p.mul(right(y), cosets.reps[c])]] = orbit_count;
    ++orbit_count;
  }

  CosetScan out;
  std::vector<char> counted(orbit_count, 0);
  for (int c = 0; c < d; ++c)
    if (fixed[c] && !counted[orbit[c]]) {
      counted[orbit[c]] = 1;
      ++out.orbits_with_fixed_point;
    }
  for (int o = 0; o < orbit_count; ++o) {
    bool whole_fixed = true;
    for (int c = 0; c < d && whole_fixed; ++c) {
      if (orbit[c] != o) continue;
      for (int x = 0; x < g.order && whole_fixed; ++x)
        whole_fixed = orbit[cosets.coset_of[p.mul(left(x), cosets.reps[c])]] == o;
    }
    if (whole_fixed) ++out.fixed_orbits;
  }
  return out;
}

}  // namespace

TEST_CASE("coset comparisons match the direct orbit scan") {
  const std::vector<std::pair<FinGroup, FinGroup>> pairs = {
      {cyclic_group(2), cyclic_group(2)},   {cyclic_group(2), cyclic_group(3)},
      {cyclic_group(3), cyclic_group(3)},   {cyclic_group(4), cyclic_group(2)},
      {cyclic_group(2), cyclic_group(4)},   {klein_four_group(), cyclic_group(2)},
      {cyclic_group(2), klein_four_group()}, {symmetric_group(3), cyclic_group(2)},
      {cyclic_group(2), symmetric_group(3)}, {klein_four_group(), klein_four_group()}};
  for (const auto& [g, h] : pairs) {
    const auto p = direct_product(g, h);
    for (const auto& s : subgroups(p)) {
      const auto scan = coset_scan(g, h, s);
      const auto rep = limcolim::setfun::comparison_report(coset_bifunctor(g, h, s));
      INFO("pair (" << g.tag << ", " << h.tag << "), subgroup size " << s.order());
      CHECK(rep.colim_lim_size == scan.orbits_with_fixed_point);
      CHECK(rep.lim_colim_size == scan.fixed_orbits);
      CHECK(rep.injective);
      CHECK(rep.surjective == (scan.orbits_with_fixed_point == scan.fixed_orbits));
      CHECK(limcolim::commute::detail::orbit_condition_fails(g, h, p, s) ==
            !rep.surjective);
    }
  }
}

TEST_CASE("decision methods agree on a small catalog") {
  const std::vector<FinGroup> gs = {trivial_group(),  cyclic_group(2), cyclic_group(3),
                                    cyclic_group(4),  klein_four_group(),
                                    cyclic_group(6),  symmetric_group(3)};
  for (const auto& g : gs)
    for (const auto& h : gs) {
      if (g.order * h.order > 36) continue;
      const auto rep = decide_commute(g, h, Method::both);
      INFO("pair (" << g.tag << ", " << h.tag << ")");
      REQUIRE(rep.agreement.has_value());
      CHECK(*rep.agreement);
      CHECK(rep.commutes == !criterion_search(g, h).has_value());
      if (std::gcd(g.order, h.order) == 1) CHECK(rep.commutes);
      CHECK((rep.commutes ? 0 : 1) ==
            (rep.criterion_evidence || rep.orbit_evidence ? 1 : 0));
    }
}

TEST_CASE("coprime orders take the fast path") {
  const auto fast = decide_commute(cyclic_group(6), cyclic_group(5), Method::criterion);
  CHECK(fast.commutes);
  CHECK(fast.methods_run == std::vector<std::string>{"coprime"});
  CHECK_FALSE(fast.agreement.has_value());

  const auto both = decide_commute(cyclic_group(2), cyclic_group(3), Method::both);
  CHECK(both.commutes);
  CHECK(both.methods_run ==
        std::vector<std::string>{"coprime", "criterion", "orbits"});
  REQUIRE(both.agreement.has_value());
  CHECK(*both.agreement);
}

TEST_CASE("known verdicts and their evidence") {
  const auto c2c2 = decide_commute(cyclic_group(2), cyclic_group(2), Method::both);
  CHECK_FALSE(c2c2.commutes);
  CHECK(c2c2.methods_run == std::vector<std::string>{"criterion", "orbits"});
  REQUIRE(c2c2.criterion_evidence.has_value());
  CHECK(c2c2.criterion_evidence->quotient.group.order == 2);
  CHECK(c2c2.criterion_evidence->quotient.normal.elements == std::vector<int>{0});
  CHECK(c2c2.criterion_evidence->subquotient.sub.elements == std::vector<int>{0, 1});
  CHECK(c2c2.criterion_evidence->subquotient.normal_in_sub.elements ==
        std::vector<int>{0});
  CHECK(c2c2.criterion_evidence->isomorphism == std::vector<int>{0, 1});
  REQUIRE(c2c2.orbit_evidence.has_value());
  CHECK(c2c2.orbit_evidence->subgroup.elements == std::vector<int>{0, 3});
  CHECK(c2c2.orbit_evidence->report.colim_lim_size == 0);
  CHECK(c2c2.orbit_evidence->report.lim_colim_size == 1);

  // The order-3 subgroup of the permutation group carries the quotient.
  const auto c3s3 = decide_commute(cyclic_group(3), symmetric_group(3), Method::criterion);
  CHECK_FALSE(c3s3.commutes);
  REQUIRE(c3s3.criterion_evidence.has_value());
  CHECK(c3s3.criterion_evidence->quotient.group.order == 3);
  CHECK(c3s3.criterion_evidence->subquotient.sub.elements == std::vector<int>{0, 3, 4});
  CHECK(c3s3.criterion_evidence->subquotient.normal_in_sub.elements ==
        std::vector<int>{0});

  // The reverse order commutes: the permutation group has no quotient of
  // order three.
  CHECK(decide_commute(symmetric_group(3), cyclic_group(3), Method::both).commutes);

  for (const auto& h : {cyclic_group(2), cyclic_group(6), quaternion_group()})
    CHECK(decide_commute(trivial_group(), h, Method::both).commutes);

  // Non-coprime commuting pairs: the alternating group only has the odd
  // quotients, which two-groups cannot contain.
  CHECK(decide_commute(alternating_group(4), cyclic_group(2), Method::both).commutes);
  CHECK(decide_commute(alternating_group(4), klein_four_group(), Method::both).commutes);
  CHECK_FALSE(decide_commute(alternating_group(4), cyclic_group(12), Method::criterion).commutes);
}

TEST_CASE("distinct primes separate, equal primes collide") {
  const std::vector<int> primes = {2, 3, 5, 7};
  for (int p : primes)
    for (int q : primes) {
      const auto rep = decide_commute(cyclic_group(p), cyclic_group(q), Method::both);
      INFO("(c" << p << ", c" << q << ")");
      CHECK(rep.commutes == (p != q));
    }
}

TEST_CASE("group witnesses pick the least failing subgroup") {
  const auto w22 = group_witness(cyclic_group(2), cyclic_group(2));
  CHECK(w22.subgroup.elements == std::vector<int>{0, 3});
  CHECK(w22.triple.k1.elements == std::vector<int>{0, 1});
  CHECK(w22.triple.l1.elements == std::vector<int>{0});
  CHECK(w22.triple.k2.elements == std::vector<int>{0, 1});
  CHECK(w22.triple.l2.elements == std::vector<int>{0});
  CHECK(w22.triple.theta == std::vector<int>{0, 1});
  CHECK(w22.report.colim_lim_size == 0);
  CHECK(w22.report.lim_colim_size == 1);
  CHECK_FALSE(w22.report.surjective);
  CHECK(w22.bifunctor.functor.action ==
        std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 0}, {0, 1}});

  const auto w33 = group_witness(cyclic_group(3), cyclic_group(3));
  CHECK(w33.subgroup.elements == std::vector<int>{0, 4, 8});
  CHECK(w33.triple.l1.elements == std::vector<int>{0});
  CHECK(w33.report.colim_lim_size == 0);
  CHECK(w33.report.lim_colim_size == 1);

  const auto w66 = group_witness(symmetric_group(3), symmetric_group(3));
  CHECK(w66.subgroup.elements == std::vector<int>{0, 7, 13, 18, 24, 31});
  CHECK(w66.triple.k1.elements == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(w66.triple.l1.elements == std::vector<int>{0, 3, 4});
  CHECK(w66.report.colim_lim_size == 0);
  CHECK(w66.report.lim_colim_size == 1);

  CHECK_THROWS_MATCHES(group_witness(cyclic_group(2), cyclic_group(3)), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NoWitness")));
  CHECK_THROWS_MATCHES(group_witness(alternating_group(4), cyclic_group(2)), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NoWitness")));
}

TEST_CASE("cone witnesses turn missing cocones into missed elements") {
  const auto pp = parallel_pair_category();
  const auto c2 = cat_of(cyclic_group(2));
  const auto shape = opposite_category(pp);

  const auto d = build_diagram(shape, c2, {0, 0}, {0, 0, 0, 1});
  const auto w = cone_witness(pp, c2, d);
  CHECK(w.report.colim_lim_size == 0);
  CHECK(w.report.lim_colim_size == 1);
  CHECK_FALSE(w.report.surjective);
  CHECK(w.bifunctor.functor.carrier == std::vector<int>{2, 2});

  const auto wa = cone_witness_auto(pp, c2);
  CHECK(wa.diagram.object_map == d.object_map);
  CHECK(wa.diagram.morphism_map == d.morphism_map);
  CHECK(wa.report.colim_lim_size == 0);
  CHECK(wa.report.lim_colim_size == 1);

  const auto w3 = cone_witness_auto(pp, cat_of(cyclic_group(3)));
  CHECK(w3.diagram.morphism_map == std::vector<int>{0, 0, 0, 1});
  CHECK(w3.report.colim_lim_size == 0);
  CHECK(w3.report.lim_colim_size == 1);

  // A diagram with both arrows at the identity has every vertex as a cocone.
  const auto dull = build_diagram(shape, c2, {0, 0}, {0, 0, 0, 0});
  CHECK_THROWS_MATCHES(cone_witness(pp, c2, dull), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("CoconeExists")));

  // The diagram must use the opposite of the limit shape.
  const auto wrong = build_diagram(pp, c2, {0, 0}, {0, 0, 0, 1});
  CHECK_THROWS_MATCHES(cone_witness(pp, c2, wrong), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("BadParams")));

  // Every opposite-parallel-pair diagram into the walking span has a cocone.
  CHECK_THROWS_MATCHES(cone_witness_auto(pp, span_category()), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NoWitness")));

  // Two labelled arrows between consecutive objects never coequalize.
  const auto wjk = cone_witness_auto(pp, jk_category(2, 1));
  CHECK(wjk.diagram.object_map == std::vector<int>{1, 0});
  CHECK(wjk.report.colim_lim_size == 0);
  CHECK(wjk.report.lim_colim_size == 1);
}

TEST_CASE("span witnesses collapse two classes onto one family") {
  const auto pp = parallel_pair_category();
  const auto sp = span_category();

  const auto w = foltz_witness(pp, sp, 3, 4);
  CHECK(w.apex == 0);
  CHECK(w.report.colim_lim_size == 2);
  CHECK(w.report.lim_colim_size == 1);
  CHECK_FALSE(w.report.injective);
  CHECK(w.report.map_table == std::vector<int>{0, 0});

  const auto wa = foltz_witness_auto(pp, sp);
  CHECK(wa.left_leg == 3);
  CHECK(wa.right_leg == 4);
  CHECK(wa.report.colim_lim_size == 2);

  const auto wc3 = foltz_witness_auto(cat_of(cyclic_group(3)), sp);
  CHECK(wc3.report.colim_lim_size == 2);
  CHECK(wc3.report.lim_colim_size == 1);

  const auto wpp = foltz_witness_auto(cat_of(cyclic_group(2)), parallel_pair_category());
  CHECK(wpp.left_leg == 2);
  CHECK(wpp.right_leg == 3);
  CHECK(wpp.report.colim_lim_size == 2);
  CHECK(wpp.report.lim_colim_size == 1);

  // The truncated labelled category: the top pair of arrows has no cocone.
  const auto wjk = foltz_witness_auto(cat_of(cyclic_group(3)), jk_category(2, 2));
  CHECK(wjk.left_leg == 5);
  CHECK(wjk.right_leg == 6);
  CHECK(wjk.report.colim_lim_size == 2);
  CHECK(wjk.report.lim_colim_size == 1);

  CHECK_THROWS_MATCHES(foltz_witness_auto(idempotent_category(), sp), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("ConicalShape")));
  CHECK_THROWS_MATCHES(foltz_witness_auto(discrete_category(2), sp), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NotConnected")));
  CHECK_THROWS_MATCHES(foltz_witness(pp, sp, 3, 2), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("BadParams")));
  CHECK_THROWS_MATCHES(foltz_witness(pp, cat_of(cyclic_group(2)), 0, 1), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("CoconeExists")));
  CHECK_THROWS_MATCHES(foltz_witness_auto(pp, cat_of(cyclic_group(2))), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NoWitness")));
}

TEST_CASE("every witness report reproduces under a fresh comparison") {
  const auto check = [](const limcolim::setfun::BiFunctor& bf,
                        const limcolim::setfun::ComparisonReport& rep) {
    CHECK_FALSE(rep.bijective);
    CHECK(limcolim::setfun::comparison_report(bf) == rep);
  };
  const auto w1 = group_witness(cyclic_group(2), cyclic_group(2));
  check(w1.bifunctor, w1.report);
  const auto w2 = group_witness(cyclic_group(3), cyclic_group(3));
  check(w2.bifunctor, w2.report);
  const auto w3 = foltz_witness_auto(parallel_pair_category(), span_category());
  check(w3.bifunctor, w3.report);
  const auto w4 = cone_witness_auto(parallel_pair_category(), cat_of(cyclic_group(2)));
  check(w4.bifunctor, w4.report);
}

TEST_CASE("bounded search finds the diagonal and respects budgets") {
  const auto c2 = cat_of(cyclic_group(2));
  const auto found = bounded_search(c2, c2);
  REQUIRE(found.counterexample.has_value());
  REQUIRE(found.report.has_value());
  CHECK(found.samples_tried == 4);
  CHECK_FALSE(found.report->bijective);
  CHECK(limcolim::setfun::comparison_report(*found.counterexample) == *found.report);

  Config small;
  small.max_samples = 60;
  const auto none = bounded_search(c2, cat_of(cyclic_group(3)), small);
  CHECK_FALSE(none.counterexample.has_value());
  CHECK(none.samples_tried == 60);
  const auto again = bounded_search(c2, cat_of(cyclic_group(3)), small);
  CHECK(again.samples_tried == none.samples_tried);

  const auto trivial = bounded_search(cat_of(trivial_group()), cat_of(trivial_group()), small);
  CHECK_FALSE(trivial.counterexample.has_value());

  // Filtered colimit shapes cannot be refuted by sampling.
  Config fuzz;
  fuzz.max_samples = 50;
  for (const auto& j : {chain_category(3), idempotent_category()}) {
    const auto res = bounded_search(parallel_pair_category(), j, fuzz);
    INFO(j.tag);
    CHECK_FALSE(res.counterexample.has_value());
    CHECK(res.samples_tried == 50);
  }

  // General path: deterministic regardless of outcome.
  const auto a = bounded_search(parallel_pair_category(), span_category(), fuzz);
  const auto b = bounded_search(parallel_pair_category(), span_category(), fuzz);
  CHECK(a.samples_tried == b.samples_tried);
  CHECK(a.counterexample.has_value() == b.counterexample.has_value());
  if (a.report) CHECK_FALSE(a.report->bijective);
}
