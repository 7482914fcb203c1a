#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "limcolim/groups.hpp"
#include "test_util.hpp"

using namespace limcolim;
using namespace limcolim::groups;

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

namespace {

// Every subset containing the identity, tested for closure directly.
// Exponential, so only used for order <= 16.
std::set<std::vector<int>> subgroups_oracle(const FinGroup& g) {
  REQUIRE(g.order <= 16);
  std::set<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << g.order); ++mask) {
    if (!(mask >> g.identity & 1)) continue;
    std::vector<int> elems;
    for (int x = 0; x < g.order; ++x)
      if (mask >> x & 1) elems.push_back(x);
    bool closed = true;
    for (size_t i = 0; i < elems.size() && closed; ++i)
      for (size_t j = 0; j < elems.size() && closed; ++j)
        closed = (mask >> g.mul(elems[i], elems[j])) & 1;
    if (closed) out.insert(elems);
  }
  return out;
}

// Exhaustive bijection scan; usable for order <= 8.
bool isomorphic_oracle(const FinGroup& a, const FinGroup& b) {
  if (a.order != b.order) return false;
  REQUIRE(a.order <= 8);
  std::vector<int> map(a.order);
  std::iota(map.begin(), map.end(), 0);
  do {
    if (map[a.identity] != b.identity) continue;
    bool hom = true;
    for (int x = 0; x < a.order && hom; ++x)
      for (int y = 0; y < a.order && hom; ++y)
        hom = map[a.mul(x, y)] == b.mul(map[x], map[y]);
    if (hom) return true;
  } while (std::next_permutation(map.begin(), map.end()));
  return false;
}

void check_iso_witness(const FinGroup& a, const FinGroup& b, const std::vector<int>& map) {
  REQUIRE(static_cast<int>(map.size()) == a.order);
  std::vector<char> hit(b.order, 0);
  for (int v : map) {
    REQUIRE((v >= 0 && v < b.order));
    REQUIRE(!hit[v]);
    hit[v] = 1;
  }
  for (int x = 0; x < a.order; ++x)
    for (int y = 0; y < a.order; ++y) REQUIRE(map[a.mul(x, y)] == b.mul(map[x], map[y]));
}

}  // namespace

TEST_CASE("table validation names the failing axiom") {
  SECTION("row repeats a value") {
    CHECK_THROWS_MATCHES(group_from_table(2, {0, 0, 1, 0}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("not a permutation")));
  }
  SECTION("latin square without identity") {
    CHECK_THROWS_MATCHES(group_from_table(3, {1, 0, 2, 0, 2, 1, 2, 1, 0}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("no identity")));
  }
  SECTION("loop without two-sided inverses") {
    const std::vector<int> t = {0, 1, 2, 3, 4,  //
                                1, 0, 3, 4, 2,  //
                                2, 3, 4, 0, 1,  //
                                3, 4, 1, 2, 0,  //
                                4, 2, 0, 1, 3};
    CHECK_THROWS_MATCHES(group_from_table(5, t), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("inverse")));
  }
  SECTION("loop with inverses but no associativity") {
    // All elements are self-inverse, yet (1*1)*2 = 2 while 1*(1*2) = 4.
    const std::vector<int> t = {0, 1, 2, 3, 4,  //
                                1, 0, 3, 4, 2,  //
                                2, 4, 0, 1, 3,  //
                                3, 2, 4, 0, 1,  //
                                4, 3, 1, 2, 0};
    CHECK_THROWS_MATCHES(group_from_table(5, t), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("associativity")));
  }
  SECTION("size mismatch and range errors") {
    CHECK_THROWS_AS(group_from_table(2, {0, 1, 1}), Error);
    CHECK_THROWS_AS(group_from_table(2, {0, 1, 1, 7}), Error);
    CHECK_THROWS_AS(group_from_table(0, {}), Error);
  }
}

TEST_CASE("preset structure constants") {
  CHECK(cyclic_group(1).order == 1);
  CHECK(cyclic_group(12).order == 12);
  CHECK(klein_four_group().order == 4);
  CHECK(symmetric_group(3).order == 6);
  CHECK(symmetric_group(4).order == 24);
  CHECK(alternating_group(4).order == 12);
  CHECK(dihedral_group(4).order == 8);
  CHECK(dihedral_group(5).order == 10);
  CHECK(quaternion_group().order == 8);

  CHECK(is_abelian(cyclic_group(6)));
  CHECK(is_abelian(klein_four_group()));
  CHECK_FALSE(is_abelian(symmetric_group(3)));
  CHECK_FALSE(is_abelian(quaternion_group()));

  CHECK(center(symmetric_group(3)).size() == 1);
  CHECK(center(symmetric_group(4)).size() == 1);
  CHECK(center(alternating_group(4)).size() == 1);
  CHECK(center(dihedral_group(4)).size() == 2);
  CHECK(center(dihedral_group(5)).size() == 1);
  CHECK(center(quaternion_group()) == std::vector<int>{0, 1});

  // Element order multisets pin the presets down up to the usual ambiguities.
  auto order_multiset = [](const FinGroup& g) {
    std::vector<int> v(g.order);
    for (int x = 0; x < g.order; ++x) v[x] = element_order(g, x);
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(order_multiset(klein_four_group()) == std::vector<int>{1, 2, 2, 2});
  CHECK(order_multiset(quaternion_group()) == std::vector<int>{1, 2, 4, 4, 4, 4, 4, 4});
  CHECK(order_multiset(dihedral_group(4)) == std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4});
  CHECK(quaternion_group().labels[1] == "-1");
  CHECK(element_order(quaternion_group(), 1) == 2);

  CHECK_THROWS_AS(cyclic_group(25), Error);
  CHECK_THROWS_AS(dihedral_group(2), Error);
}

TEST_CASE("preset strings parse recursively") {
  CHECK(group_preset("c7").order == 7);
  CHECK(group_preset("q8").order == 8);
  CHECK(group_preset("prod:c2:c3").order == 6);
  CHECK(group_preset("prod:c2:prod:c2:c2").order == 8);
  CHECK(are_isomorphic(group_preset("prod:c2:c3"), cyclic_group(6)));
  CHECK_THROWS_AS(group_preset("c0"), Error);
  CHECK_THROWS_AS(group_preset("c25"), Error);
  CHECK_THROWS_AS(group_preset("x9"), Error);
  CHECK_THROWS_AS(group_preset("prod:c2"), Error);
}

TEST_CASE("direct product respects the index convention") {
  const auto g = symmetric_group(3);
  const auto h = cyclic_group(4);
  const auto p = direct_product(g, h);
  REQUIRE(p.order == 24);
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int b1 = 0; b1 < h.order; ++b1)
      for (int a2 = 0; a2 < g.order; ++a2)
        for (int b2 = 0; b2 < h.order; ++b2)
          CHECK(p.mul(a1 * h.order + b1, a2 * h.order + b2) ==
                g.mul(a1, a2) * h.order + h.mul(b1, b2));
  Config tight;
  tight.max_product_group_order = 20;
  CHECK_THROWS_AS(direct_product(g, h, tight), Error);
}

TEST_CASE("subgroup enumeration matches the subset oracle") {
  const std::vector<std::string> names = {"c2",    "c3",       "c4",          "c5",
                                          "c6",    "c7",       "c8",          "c12",
                                          "c16",   "klein4",   "s3",          "a4",
                                          "d4",    "d5",       "q8",          "prod:c2:c4",
                                          "prod:c2:c6",        "prod:c3:c3",  "prod:c2:klein4",
                                          "prod:c2:s3",        "prod:c4:c4",  "prod:klein4:klein4"};
  for (const auto& name : names) {
    const auto g = group_preset(name);
    if (g.order > 16) continue;
    INFO("group " << name);
    const auto oracle = subgroups_oracle(g);
    const auto got = subgroups(g);
    std::set<std::vector<int>> got_set;
    for (const auto& s : got) got_set.insert(s.elements);
    CHECK(got_set == oracle);
    CHECK(got.size() == oracle.size());
    // Canonical order: by size, then lexicographic.
    for (size_t i = 0; i + 1 < got.size(); ++i) {
      const bool le = got[i].elements.size() < got[i + 1].elements.size() ||
                      (got[i].elements.size() == got[i + 1].elements.size() &&
                       got[i].elements < got[i + 1].elements);
      CHECK(le);
    }
  }
  CHECK(subgroups(klein_four_group()).size() == 5);
  CHECK(subgroups(symmetric_group(3)).size() == 6);
}

TEST_CASE("subgroup construction validates closure") {
  const auto g = symmetric_group(3);
  CHECK_THROWS_MATCHES(subgroup_from_elements(g, {0, 1, 2}), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("NotASubgroup")));
  CHECK_THROWS_AS(subgroup_from_elements(g, {}), Error);
  CHECK_THROWS_AS(subgroup_from_elements(g, {0, 9}), Error);
  CHECK(subgroup_from_elements(g, {1, 0, 1}).elements == std::vector<int>{0, 1});
  CHECK(closure(g, {}).elements == std::vector<int>{0});
  CHECK(closure(g, {1}).order() == 2);
}

TEST_CASE("normality and quotients") {
  const auto s3 = symmetric_group(3);
  const auto norm = normal_subgroups(s3);
  REQUIRE(norm.size() == 3);
  CHECK(norm[0].order() == 1);
  CHECK(norm[1].order() == 3);
  CHECK(norm[2].order() == 6);

  CHECK(normal_subgroups(alternating_group(4)).size() == 3);
  CHECK(normal_subgroups(quaternion_group()).size() == 6);  // every subgroup
  CHECK(normal_subgroups(dihedral_group(4)).size() == 6);

  // A single reflection generates a non-normal subgroup of d4.
  const auto d4 = dihedral_group(4);
  CHECK_FALSE(is_normal(d4, closure(d4, {4})));

  const auto c6 = cyclic_group(6);
  const auto q = quotient_group(c6, closure(c6, {3}));
  CHECK(q.group.order == 3);
  CHECK(are_isomorphic(q.group, cyclic_group(3)));
  CHECK(q.reps == std::vector<int>{0, 1, 2});
  for (int x = 0; x < 6; ++x) CHECK(q.coset_of[x] == x % 3);

  CHECK_THROWS_MATCHES(quotient_group(d4, closure(d4, {4})), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("NotNormal")));

  // s4 / (normal klein four) is the symmetric group on three letters.
  const auto s4 = symmetric_group(4);
  for (const auto& n : normal_subgroups(s4))
    if (n.order() == 4) CHECK(are_isomorphic(quotient_group(s4, n).group, s3));
}

TEST_CASE("isomorphism testing agrees with the exhaustive oracle") {
  const auto c4 = cyclic_group(4);
  const auto k4 = klein_four_group();
  const auto c6 = cyclic_group(6);
  const auto s3 = symmetric_group(3);
  const auto d4 = dihedral_group(4);
  const auto q8 = quaternion_group();
  const auto c2xc3 = group_preset("prod:c2:c3");
  const auto c2xc4 = group_preset("prod:c2:c4");
  const auto c2cube = group_preset("prod:c2:prod:c2:c2");
  const auto c8 = cyclic_group(8);

  const std::vector<std::pair<const FinGroup*, const FinGroup*>> pairs = {
      {&c4, &k4},  {&c6, &s3},  {&c6, &c2xc3},   {&d4, &q8},    {&d4, &c2xc4},
      {&q8, &c8},  {&c8, &c2cube}, {&c2xc4, &c2cube}, {&k4, &c4},  {&s3, &s3},
      {&q8, &q8},  {&k4, &k4},
  };
  for (const auto& [a, b] : pairs) {
    INFO("pair of orders " << a->order << ", " << b->order);
    CHECK(are_isomorphic(*a, *b) == isomorphic_oracle(*a, *b));
  }

  // Any witness produced must actually be an isomorphism.
  for (const auto& [a, b] : pairs) {
    const auto w = isomorphism(*a, *b);
    if (w) check_iso_witness(*a, *b, *w);
  }

  // Identity witness on equal groups.
  for (const FinGroup* g : {&s3, &q8, &k4}) {
    const auto w = isomorphism(*g, *g);
    REQUIRE(w.has_value());
    std::vector<int> id(g->order);
    std::iota(id.begin(), id.end(), 0);
    CHECK(*w == id);
  }
  const auto w12 = isomorphism(cyclic_group(12), cyclic_group(12));
  REQUIRE(w12.has_value());
  CHECK((*w12)[1] == 1);
}

TEST_CASE("quotient catalogs") {
  const auto a4 = alternating_group(4);
  const auto qa4 = nontrivial_quotients_up_to_iso(a4);
  REQUIRE(qa4.size() == 2);
  CHECK(qa4[0].group.order == 3);
  CHECK(qa4[1].group.order == 12);
  CHECK(are_isomorphic(qa4[0].group, cyclic_group(3)));
  CHECK(qa4[0].normal.order() == 4);

  const auto s4 = symmetric_group(4);
  const auto qs4 = nontrivial_quotients_up_to_iso(s4);
  REQUIRE(qs4.size() == 3);
  CHECK(qs4[0].group.order == 2);
  CHECK(qs4[1].group.order == 6);
  CHECK(qs4[2].group.order == 24);

  const auto qq8 = nontrivial_quotients_up_to_iso(quaternion_group());
  REQUIRE(qq8.size() == 3);
  CHECK(qq8[0].group.order == 2);
  CHECK(qq8[1].group.order == 4);
  CHECK(are_isomorphic(qq8[1].group, klein_four_group()));

  CHECK(nontrivial_quotients_up_to_iso(cyclic_group(12)).size() == 5);
}

TEST_CASE("subquotient catalogs") {
  auto orders = [](const std::vector<SubquotientEntry>& v) {
    std::vector<int> out;
    for (const auto& e : v) out.push_back(e.group.order);
    return out;
  };

  CHECK(orders(subquotient_catalog(cyclic_group(2))) == std::vector<int>{1, 2});
  CHECK(orders(subquotient_catalog(symmetric_group(3))) == std::vector<int>{1, 2, 3, 6});
  CHECK(orders(subquotient_catalog(dihedral_group(4))) == std::vector<int>{1, 2, 4, 4, 8});
  CHECK(orders(subquotient_catalog(quaternion_group())) == std::vector<int>{1, 2, 4, 4, 8});
  CHECK(orders(subquotient_catalog(alternating_group(4))) ==
        std::vector<int>{1, 2, 3, 4, 12});

  // Every K/L pair reported must genuinely be a subquotient.
  for (const auto& e : subquotient_catalog(dihedral_group(4))) {
    const auto d4 = dihedral_group(4);
    const auto kg = subgroup_as_group(d4, e.sub);
    std::vector<int> local;
    for (int x : e.normal_in_sub.elements) local.push_back(kg.local_of[x]);
    CHECK(are_isomorphic(quotient_group(kg.group, Subgroup{local}).group, e.group));
  }
}

TEST_CASE("goursat decomposition round-trips") {
  const auto c2 = cyclic_group(2);
  const auto s3 = symmetric_group(3);

  SECTION("all subgroups of c2 x c2") {
    const auto p = direct_product(c2, c2);
    const auto subs = subgroups(p);
    REQUIRE(subs.size() == 5);
    for (const auto& s : subs) {
      const auto t = goursat_decompose(c2, c2, s);
      CHECK(goursat_reconstruct(c2, c2, t) == s);
    }
    // The diagonal corresponds to the identity map on C2 / 1.
    const auto diag = goursat_decompose(c2, c2, Subgroup{{0, 3}});
    CHECK(diag.k1.elements == std::vector<int>{0, 1});
    CHECK(diag.l1.elements == std::vector<int>{0});
    CHECK(diag.k2.elements == std::vector<int>{0, 1});
    CHECK(diag.l2.elements == std::vector<int>{0});
    CHECK(diag.theta == std::vector<int>{0, 1});
  }

  SECTION("all subgroups of s3 x c2 and triple count") {
    const auto p = direct_product(s3, c2);
    const auto subs = subgroups(p);
    for (const auto& s : subs) {
      const auto t = goursat_decompose(s3, c2, s);
      CHECK(goursat_reconstruct(s3, c2, t) == s);
    }
  }

  SECTION("invalid inputs are rejected") {
    CHECK_THROWS_MATCHES(goursat_decompose(c2, c2, Subgroup{{1, 2}}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotASubgroup")));
    // Swapping the graph map breaks the homomorphism property.
    auto t = goursat_decompose(c2, c2, Subgroup{{0, 3}});
    std::swap(t.theta[0], t.theta[1]);
    CHECK_THROWS_AS(goursat_reconstruct(c2, c2, t), Error);
  }
}

TEST_CASE("coset actions") {
  const auto s3 = symmetric_group(3);
  const auto h = closure(s3, {1});  // order 2
  const auto act = coset_action(s3, h);
  CHECK(act.degree == 3);
  CHECK(action_is_valid(s3, act));

  const auto ct = left_cosets(s3, h);
  CHECK(std::is_sorted(ct.reps.begin(), ct.reps.end()));
  for (int c = 0; c < act.degree; ++c) CHECK(ct.coset_of[ct.reps[c]] == c);

  const auto c4 = cyclic_group(4);
  const auto act2 = coset_action(c4, closure(c4, {2}));
  CHECK(act2.degree == 2);
  CHECK(act2.perms[1] == std::vector<int>{1, 0});
  CHECK(action_is_valid(c4, act2));

  // Left translation on the trivial subgroup is the regular action.
  const auto reg = coset_action(s3, closure(s3, {}));
  CHECK(reg.degree == 6);
  CHECK(action_is_valid(s3, reg));
}

TEST_CASE("group as one-object category") {
  const auto s3 = symmetric_group(3);
  const auto c = as_category(s3);
  CHECK(c.object_count == 1);
  CHECK(c.morphism_count() == 6);
  CHECK(test_util::revalidate(c) == c);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(c.compose(a, b) == s3.mul(a, b));

  const auto flags = fincat::classify(c);
  CHECK(flags.is_connected);
  CHECK_FALSE(flags.is_conical);
  CHECK(flags.has_span_cocones);
  CHECK_FALSE(flags.has_parallel_pair_cocones);

  // The trivial group gives the terminal category's flags.
  const auto t = fincat::classify(as_category(trivial_group()));
  CHECK(t.is_filtered);
  CHECK(t.has_parallel_pair_cocones);
}

TEST_CASE("enumeration caps") {
  Config tight;
  tight.max_product_group_order = 10;
  CHECK_THROWS_MATCHES(subgroups(symmetric_group(4), tight), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("SizeCapExceeded")));
  tight.max_group_order = 6;
  CHECK_THROWS_AS(nontrivial_quotients_up_to_iso(quaternion_group(), tight), Error);
  CHECK_THROWS_AS(subquotient_catalog(quaternion_group(), tight), Error);
  CHECK_THROWS_AS(group_preset("prod:s4:s4"), Error);
}
