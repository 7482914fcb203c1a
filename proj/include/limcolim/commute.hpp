#pragma once

#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"
#include "limcolim/fincat.hpp"
#include "limcolim/groups.hpp"
#include "limcolim/setfun.hpp"

namespace limcolim::commute {

enum class Method { criterion, orbits, both };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::criterion: return "criterion";
    case Method::orbits: return "orbits";
    case Method::both: return "both";
  }
  return "?";
}

// A nontrivial quotient of the left group isomorphic to a subquotient of the
// right group; its existence refutes commutation.
struct CriterionEvidence {
  groups::QuotientEntry quotient;
  groups::SubquotientEntry subquotient;
  std::vector<int> isomorphism;  // quotient carrier -> subquotient carrier
};

// A subgroup of the direct product whose coset action has a fixed orbit but
// no fixed point on the limit side, together with the comparison it breaks.
struct OrbitEvidence {
  groups::Subgroup subgroup;
  setfun::ComparisonReport report;
};

struct CommutationReport {
  bool commutes = false;
  std::vector<std::string> methods_run;
  std::optional<CriterionEvidence> criterion_evidence;
  std::optional<OrbitEvidence> orbit_evidence;
  std::optional<bool> agreement;
};

// ---------------------------------------------------------------------------
// The coset-action functor of a product subgroup
// ---------------------------------------------------------------------------

// Left cosets of S inside G x H as a functor on group(G) x group(H). The
// product-category morphism (u, v) and the product-group element (u, v)
// share the index u * |H| + v, so the group multiplication table is the
// action table.
inline setfun::BiFunctor coset_bifunctor(const groups::FinGroup& g,
                                         const groups::FinGroup& h,
                                         const groups::Subgroup& s,
                                         const Config& cfg = default_config()) {
  groups::detail::check_product_subgroup(g, h, s);
  const auto p = groups::direct_product(g, h, cfg);
  const auto cosets = groups::left_cosets(p, s);
  const int d = static_cast<int>(cosets.reps.size());
  const auto gc = groups::as_category(g);
  const auto hc = groups::as_category(h);
  const auto prod = fincat::product_category(gc, hc, cfg);
  std::vector<std::vector<int>> action(p.order, std::vector<int>(d));
  for (int e = 0; e < p.order; ++e)
    for (int c = 0; c < d; ++c) action[e][c] = cosets.coset_of[p.mul(e, cosets.reps[c])];
  return setfun::build_bifunctor(gc, hc,
                                 setfun::build_functor(prod.category, {d}, std::move(action)),
                                 cfg);
}

namespace detail {

// The coset action of S fails the orbit condition when no coset is fixed by
// the left group while some orbit of the right group is.
inline bool orbit_condition_fails(const groups::FinGroup& g, const groups::FinGroup& h,
                                  const groups::FinGroup& p, const groups::Subgroup& s) {
  const auto cosets = groups::left_cosets(p, s);
  const int d = static_cast<int>(cosets.reps.size());
  const auto left = [&](int x) { return x * h.order + h.identity; };
  const auto right = [&](int y) { return g.identity * h.order + y; };

  for (int c = 0; c < d; ++c) {
    bool fixed = true;
    for (int x = 0; x < g.order && fixed; ++x)
      fixed = cosets.coset_of[p.mul(left(x), cosets.reps[c])] == c;
    if (fixed) return false;
  }

  fincat::detail::UnionFind orbits(d);
  for (int y = 0; y < h.order; ++y)
    for (int c = 0; c < d; ++c)
      orbits.unite(c, cosets.coset_of[p.mul(right(y), cosets.reps[c])]);

  // The two embedded factors commute, so one member decides each orbit.
  for (int c = 0; c < d; ++c) {
    if (orbits.find(c) != c) continue;
    bool fixed = true;
    for (int x = 0; x < g.order && fixed; ++x)
      fixed = orbits.find(cosets.coset_of[p.mul(left(x), cosets.reps[c])]) == c;
    if (fixed) return true;
  }
  return false;
}

}  // namespace detail

// First match, in catalog order, between the nontrivial quotients of the
// left group and the subquotients of the right group.
inline std::optional<CriterionEvidence> criterion_search(
    const groups::FinGroup& g, const groups::FinGroup& h,
    const Config& cfg = default_config()) {
  const auto quotients = groups::nontrivial_quotients_up_to_iso(g, cfg);
  const auto subquotients = groups::subquotient_catalog(h, cfg);
  for (const auto& q : quotients)
    for (const auto& s : subquotients)
      if (auto iso = groups::isomorphism(q.group, s.group))
        return CriterionEvidence{q, s, std::move(*iso)};
  return std::nullopt;
}

// Least subgroup of the product, in canonical order, whose coset action
// fails the orbit condition.
inline std::optional<OrbitEvidence> orbit_search(const groups::FinGroup& g,
                                                 const groups::FinGroup& h,
                                                 const Config& cfg = default_config()) {
  const auto p = groups::direct_product(g, h, cfg);
  for (const auto& s : groups::subgroups(p, cfg))
    if (detail::orbit_condition_fails(g, h, p, s)) {
      OrbitEvidence ev;
      ev.report = setfun::comparison_report(coset_bifunctor(g, h, s, cfg), cfg);
      internal_check(!ev.report.surjective,
                     "a failing subgroup produced a surjective comparison");
      ev.subgroup = s;
      return ev;
    }
  return std::nullopt;
}

inline CommutationReport decide_commute(const groups::FinGroup& g, const groups::FinGroup& h,
                                        Method method = Method::both,
                                        const Config& cfg = default_config()) {
  expect(g.order <= cfg.max_group_order && h.order <= cfg.max_group_order,
         errc::size_cap_exceeded,
         "group orders capped at " + std::to_string(cfg.max_group_order));
  CommutationReport rep;
  const bool coprime = std::gcd(g.order, h.order) == 1;
  if (coprime) {
    rep.methods_run.push_back("coprime");
    rep.commutes = true;
    if (method != Method::both) return rep;
  }

  std::optional<bool> by_criterion, by_orbits;
  if (method == Method::criterion || method == Method::both) {
    rep.methods_run.push_back("criterion");
    auto ev = criterion_search(g, h, cfg);
    by_criterion = !ev.has_value();
    if (ev) rep.criterion_evidence = std::move(ev);
  }
  if (method == Method::orbits || method == Method::both) {
    rep.methods_run.push_back("orbits");
    auto ev = orbit_search(g, h, cfg);
    by_orbits = !ev.has_value();
    if (ev) rep.orbit_evidence = std::move(ev);
  }

  if (method == Method::both) {
    const bool agree =
        *by_criterion == *by_orbits && (!coprime || (*by_criterion && *by_orbits));
    if (!agree)
      fail(errc::internal_disagreement,
           "decision methods disagree: criterion says " +
               std::string(*by_criterion ? "commute" : "not_commute") + ", orbits say " +
               std::string(*by_orbits ? "commute" : "not_commute"));
    rep.agreement = true;
    rep.commutes = *by_criterion;
  } else if (by_criterion) {
    rep.commutes = *by_criterion;
  } else if (by_orbits) {
    rep.commutes = *by_orbits;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Explicit witnesses
// ---------------------------------------------------------------------------

// The least product subgroup projecting onto the whole left group while
// meeting it properly: its coset action has a fixed orbit with no fixed
// point, so the comparison misses an element.
struct GroupWitness {
  groups::Subgroup subgroup;
  groups::GoursatTriple triple;
  setfun::BiFunctor bifunctor;
  setfun::ComparisonReport report;
};

inline GroupWitness group_witness(const groups::FinGroup& g, const groups::FinGroup& h,
                                  const Config& cfg = default_config()) {
  const auto p = groups::direct_product(g, h, cfg);
  std::vector<int> full(g.order);
  std::iota(full.begin(), full.end(), 0);
  for (const auto& s : groups::subgroups(p, cfg)) {
    auto triple = groups::goursat_decompose(g, h, s);
    if (triple.k1.elements != full || triple.l1.elements == full) continue;
    GroupWitness w;
    w.subgroup = s;
    w.triple = std::move(triple);
    w.bifunctor = coset_bifunctor(g, h, s, cfg);
    w.report = setfun::comparison_report(w.bifunctor, cfg);
    internal_check(w.report.colim_lim_size == 0 && w.report.lim_colim_size >= 1 &&
                       !w.report.surjective,
                   "the witness subgroup did not break surjectivity");
    return w;
  }
  fail(errc::no_witness, "limits over the left group commute with colimits over the right");
}

// Hom sets under a cocone-free diagram: F(i, j) = hom(D_i, j). Limits on the
// left list cocones with a fixed vertex, so they are all empty, while every
// right-side colimit is a point.
struct ConeWitness {
  fincat::FiniteDiagram diagram;
  setfun::BiFunctor bifunctor;
  setfun::ComparisonReport report;
};

inline ConeWitness cone_witness(const fincat::FinCategory& i_cat,
                                const fincat::FinCategory& j_cat,
                                const fincat::FiniteDiagram& d,
                                const Config& cfg = default_config()) {
  const auto shape = fincat::opposite_category(i_cat);
  expect(d.shape == shape, errc::bad_params,
         "diagram shape must be the opposite of the limit shape");
  const auto dia = fincat::build_diagram(shape, j_cat, d.object_map, d.morphism_map);
  expect(!fincat::cocone_exists(j_cat, dia, cfg), errc::cocone_exists,
         "the diagram admits a cocone, so the construction cannot refute");

  const auto homs = fincat::hom_table(j_cat);
  const auto prod = fincat::product_category(i_cat, j_cat, cfg);
  const int ni = i_cat.object_count, nj = j_cat.object_count;
  std::vector<int> carrier(ni * nj);
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < nj; ++j)
      carrier[i * nj + j] = static_cast<int>(homs.at(dia.object_map[i], j).size());

  std::vector<std::vector<int>> action(prod.category.morphism_count());
  for (int u = 0; u < i_cat.morphism_count(); ++u)
    for (int v = 0; v < j_cat.morphism_count(); ++v) {
      const int i = i_cat.src(u), j = j_cat.src(v);
      const auto& dom = homs.at(dia.object_map[i], j);
      auto& act = action[u * j_cat.morphism_count() + v];
      act.resize(dom.size());
      for (size_t t = 0; t < dom.size(); ++t)
        act[t] = homs.pos[j_cat.compose(
            v, j_cat.compose(dom[t], dia.morphism_map[u]))];
    }

  ConeWitness w;
  w.diagram = dia;
  w.bifunctor = setfun::build_bifunctor(
      i_cat, j_cat, setfun::build_functor(prod.category, std::move(carrier), std::move(action)),
      cfg);
  w.report = setfun::comparison_report(w.bifunctor, cfg);
  internal_check(w.report.colim_lim_size == 0 && w.report.lim_colim_size == 1 &&
                     !w.report.surjective,
                 "the cocone-free diagram did not produce the empty-against-point gap");
  return w;
}

// Least diagram of the opposite shape with no cocone, by exhaustive
// enumeration over object and morphism assignments.
inline ConeWitness cone_witness_auto(const fincat::FinCategory& i_cat,
                                     const fincat::FinCategory& j_cat,
                                     const Config& cfg = default_config()) {
  fincat::detail::ensure_exhaustive_caps(i_cat, cfg, "diagram search (shape)");
  fincat::detail::ensure_exhaustive_caps(j_cat, cfg, "diagram search (target)");
  const auto shape = fincat::opposite_category(i_cat);
  const auto homs = fincat::hom_table(j_cat);
  expect(j_cat.object_count > 0 || shape.object_count == 0, errc::no_witness,
         "no diagram lands in an empty category");

  std::vector<int> objs(shape.object_count, 0);
  const int m = shape.morphism_count();
  while (true) {
    std::vector<const std::vector<int>*> candidates(m);
    std::vector<int> id_only(m, 0);
    std::uint64_t space = 1;
    for (int u = 0; u < m && space > 0; ++u) {
      candidates[u] = &homs.at(objs[shape.src(u)], objs[shape.dst(u)]);
      space *= candidates[u]->size();
      expect(space <= cfg.max_limit_families, errc::size_cap_exceeded,
             "diagram search space exceeds the configured cap");
    }
    if (space > 0) {
      std::vector<int> pick(m, 0);
      bool done = false;
      while (!done) {
        fincat::FiniteDiagram d;
        d.shape = shape;
        d.object_map = objs;
        d.morphism_map.resize(m);
        for (int u = 0; u < m; ++u) d.morphism_map[u] = (*candidates[u])[pick[u]];
        bool functorial = true;
        for (int x = 0; x < shape.object_count && functorial; ++x)
          functorial = d.morphism_map[shape.identity(x)] == j_cat.identity(objs[x]);
        for (int u2 = 0; u2 < m && functorial; ++u2)
          for (int u1 = 0; u1 < m && functorial; ++u1) {
            if (!shape.composable(u2, u1)) continue;
            functorial = j_cat.compose(d.morphism_map[u2], d.morphism_map[u1]) ==
                         d.morphism_map[shape.compose(u2, u1)];
          }
        if (functorial && !fincat::cocone_exists(j_cat, d, cfg))
          return cone_witness(i_cat, j_cat, d, cfg);
        int u = m - 1;
        while (u >= 0 && pick[u] + 1 == static_cast<int>(candidates[u]->size()))
          pick[u--] = 0;
        if (u < 0)
          done = true;
        else
          ++pick[u];
      }
    }
    int x = shape.object_count - 1;
    while (x >= 0 && objs[x] + 1 == j_cat.object_count) objs[x--] = 0;
    if (x < 0) break;
    ++objs[x];
  }
  fail(errc::no_witness, "every diagram of the opposite shape admits a cocone");
}

// The span-refutation functor: pairs (morphism into i, morphism out of the
// apex), identified across the first coordinate whenever the second factors
// through a leg. Needs a connected non-conical limit shape and a span with
// no cocone.
struct FoltzWitness {
  int apex = -1;
  int left_leg = -1;
  int right_leg = -1;
  setfun::BiFunctor bifunctor;
  setfun::ComparisonReport report;
};

inline FoltzWitness foltz_witness(const fincat::FinCategory& i_cat,
                                  const fincat::FinCategory& j_cat, int beta, int gamma,
                                  const Config& cfg = default_config()) {
  expect(fincat::is_connected(i_cat), errc::not_connected,
         "the limit shape must be connected");
  expect(!fincat::is_conical(i_cat, cfg), errc::conical_shape,
         "a conical limit shape degenerates the construction");
  expect(beta >= 0 && beta < j_cat.morphism_count() && gamma >= 0 &&
             gamma < j_cat.morphism_count(),
         errc::index_out_of_range, "span legs outside the morphism range");
  expect(j_cat.src(beta) == j_cat.src(gamma), errc::bad_params,
         "the span legs must share their source");
  for (int d = 0; d < j_cat.morphism_count(); ++d) {
    if (j_cat.src(d) != j_cat.dst(beta)) continue;
    for (int e = 0; e < j_cat.morphism_count(); ++e) {
      if (j_cat.src(e) != j_cat.dst(gamma)) continue;
      expect(j_cat.compose(d, beta) != j_cat.compose(e, gamma), errc::cocone_exists,
             "the span admits a cocone through (" + std::to_string(d) + ", " +
                 std::to_string(e) + ")");
    }
  }

  const int j0 = j_cat.src(beta);
  const auto homs = fincat::hom_table(j_cat);
  const auto by_dst = fincat::detail::morphisms_by_dst(i_cat);
  std::vector<int> pos_in_dst(i_cat.morphism_count());
  for (int i = 0; i < i_cat.object_count; ++i)
    for (size_t t = 0; t < by_dst[i].size(); ++t) pos_in_dst[by_dst[i][t]] = static_cast<int>(t);

  // Which maps out of the apex factor through a leg.
  std::vector<std::vector<char>> factors(j_cat.object_count);
  for (int j = 0; j < j_cat.object_count; ++j)
    factors[j].assign(homs.at(j0, j).size(), 0);
  for (int leg : {beta, gamma})
    for (int d = 0; d < j_cat.morphism_count(); ++d) {
      if (j_cat.src(d) != j_cat.dst(leg)) continue;
      factors[j_cat.dst(d)][homs.pos[j_cat.compose(d, leg)]] = 1;
    }

  const auto prod = fincat::product_category(i_cat, j_cat, cfg);
  const int nj = j_cat.object_count;
  std::vector<int> carrier(i_cat.object_count * nj);
  for (int i = 0; i < i_cat.object_count; ++i)
    for (int j = 0; j < nj; ++j)
      carrier[i * nj + j] =
          static_cast<int>(by_dst[i].size() * homs.at(j0, j).size());

  std::vector<std::vector<int>> action(prod.category.morphism_count());
  for (int u = 0; u < i_cat.morphism_count(); ++u)
    for (int v = 0; v < j_cat.morphism_count(); ++v) {
      const int i = i_cat.src(u), j = j_cat.src(v);
      const auto& deltas = homs.at(j0, j);
      const int hs = static_cast<int>(deltas.size());
      const int hs_dst = static_cast<int>(homs.at(j0, j_cat.dst(v)).size());
      auto& act = action[u * j_cat.morphism_count() + v];
      act.resize(by_dst[i].size() * deltas.size());
      for (size_t a = 0; a < by_dst[i].size(); ++a)
        for (int t = 0; t < hs; ++t) {
          const int alpha = i_cat.compose(u, by_dst[i][a]);
          const int delta = j_cat.compose(v, deltas[t]);
          act[a * hs + t] = pos_in_dst[alpha] * hs_dst + homs.pos[delta];
        }
    }

  std::vector<setfun::Merge> merges;
  for (int i = 0; i < i_cat.object_count; ++i)
    for (int j = 0; j < nj; ++j) {
      const int hs = static_cast<int>(homs.at(j0, j).size());
      for (int t = 0; t < hs; ++t) {
        if (!factors[j][t]) continue;
        for (size_t a = 1; a < by_dst[i].size(); ++a)
          merges.push_back({i * nj + j, t, static_cast<int>(a) * hs + t});
      }
    }

  const auto base = setfun::build_functor(prod.category, std::move(carrier), std::move(action));
  const auto quotient = setfun::quotient_functor(base, merges);

  FoltzWitness w;
  w.apex = j0;
  w.left_leg = beta;
  w.right_leg = gamma;
  w.bifunctor = setfun::build_bifunctor(i_cat, j_cat, quotient.functor, cfg);
  w.report = setfun::comparison_report(w.bifunctor, cfg);
  internal_check(w.report.colim_lim_size == 2 && w.report.lim_colim_size == 1 &&
                     !w.report.injective,
                 "the span construction did not produce the two-against-one gap");
  return w;
}

// Least span with no cocone, legs scanned in index order.
inline FoltzWitness foltz_witness_auto(const fincat::FinCategory& i_cat,
                                       const fincat::FinCategory& j_cat,
                                       const Config& cfg = default_config()) {
  expect(fincat::is_connected(i_cat), errc::not_connected,
         "the limit shape must be connected");
  expect(!fincat::is_conical(i_cat, cfg), errc::conical_shape,
         "a conical limit shape degenerates the construction");
  for (int beta = 0; beta < j_cat.morphism_count(); ++beta)
    for (int gamma = 0; gamma < j_cat.morphism_count(); ++gamma) {
      if (j_cat.src(beta) != j_cat.src(gamma)) continue;
      bool cocone = false;
      for (int d = 0; d < j_cat.morphism_count() && !cocone; ++d) {
        if (j_cat.src(d) != j_cat.dst(beta)) continue;
        for (int e = 0; e < j_cat.morphism_count() && !cocone; ++e) {
          if (j_cat.src(e) != j_cat.dst(gamma)) continue;
          cocone = j_cat.compose(d, beta) == j_cat.compose(e, gamma);
        }
      }
      if (!cocone) return foltz_witness(i_cat, j_cat, beta, gamma, cfg);
    }
  fail(errc::no_witness, "every span admits a cocone");
}

// ---------------------------------------------------------------------------
// Bounded counterexample search
// ---------------------------------------------------------------------------

struct SearchResult {
  std::optional<setfun::BiFunctor> counterexample;
  std::optional<setfun::ComparisonReport> report;
  int samples_tried = 0;
};

namespace detail {

inline std::optional<groups::FinGroup> as_group(const fincat::FinCategory& c) {
  if (c.object_count != 1) return std::nullopt;
  const int m = c.morphism_count();
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) table[g * m + f] = c.compose(g, f);
  try {
    return groups::group_from_table(m, std::move(table));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Deterministic sampler: for a pair of one-object group categories, scan the
// transitive coset actions in canonical order and then random small sums of
// them; otherwise sample random functors on the product. Returns the first
// non-bijective comparison within budget, if any.
inline SearchResult bounded_search(const fincat::FinCategory& i_cat,
                                   const fincat::FinCategory& j_cat,
                                   const Config& cfg = default_config()) {
  SearchResult res;
  std::mt19937_64 rng(cfg.seed);
  const auto gl = detail::as_group(i_cat);
  const auto gr = detail::as_group(j_cat);

  auto consider = [&](const setfun::BiFunctor& bf) -> bool {
    ++res.samples_tried;
    auto rep = setfun::comparison_report(bf, cfg);
    if (rep.bijective) return false;
    res.counterexample = bf;
    res.report = std::move(rep);
    return true;
  };

  if (gl && gr) {
    const auto p = groups::direct_product(*gl, *gr, cfg);
    const auto subs = groups::subgroups(p, cfg);
    std::vector<setfun::BiFunctor> orbits;
    orbits.reserve(subs.size());
    for (const auto& s : subs) orbits.push_back(coset_bifunctor(*gl, *gr, s, cfg));

    for (const auto& bf : orbits) {
      if (res.samples_tried >= cfg.max_samples) return res;
      if (bf.functor.carrier[0] > cfg.max_carrier_total) continue;
      if (consider(bf)) return res;
    }
    int attempts = 0;
    while (res.samples_tried < cfg.max_samples && attempts < 4 * cfg.max_samples + 16) {
      ++attempts;
      const int pieces = 2 + static_cast<int>(rng() % 2);
      setfun::SetFunctor sum = orbits[rng() % orbits.size()].functor;
      for (int k = 1; k < pieces; ++k)
        sum = setfun::disjoint_union(sum, orbits[rng() % orbits.size()].functor);
      if (sum.carrier[0] > cfg.max_carrier_total) continue;
      setfun::BiFunctor bf{i_cat, j_cat, std::move(sum)};
      if (res.samples_tried % 128 == 0)
        setfun::build_bifunctor(bf.left, bf.right, bf.functor, cfg);
      if (consider(bf)) return res;
    }
    return res;
  }

  const auto prod = fincat::product_category(i_cat, j_cat, cfg);
  int attempts = 0;
  while (res.samples_tried < cfg.max_samples && attempts < 4 * cfg.max_samples + 16) {
    ++attempts;
    auto f = setfun::random_functor(prod.category, rng);
    int total = 0;
    for (int c : f.carrier) total += c;
    if (total > cfg.max_carrier_total) continue;
    setfun::BiFunctor bf{i_cat, j_cat, std::move(f)};
    if (res.samples_tried % 128 == 0)
      setfun::build_bifunctor(bf.left, bf.right, bf.functor, cfg);
    if (consider(bf)) return res;
  }
  return res;
}

}  // namespace limcolim::commute
