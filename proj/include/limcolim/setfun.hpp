#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"
#include "limcolim/fincat.hpp"

namespace limcolim::setfun {

// Set-valued functor on a finite category: a finite carrier per object and
// one action table per morphism, mapping the source carrier into the target.
struct SetFunctor {
  fincat::FinCategory domain;
  std::vector<int> carrier;
  std::vector<std::vector<int>> action;

  friend bool operator==(const SetFunctor& a, const SetFunctor& b) {
    return a.domain == b.domain && a.carrier == b.carrier && a.action == b.action;
  }
};

namespace detail {

inline void validate_functor_tables(const fincat::FinCategory& domain,
                                    const std::vector<int>& carrier,
                                    const std::vector<std::vector<int>>& action) {
  expect(static_cast<int>(carrier.size()) == domain.object_count, errc::bad_params,
         "carrier list must cover every object");
  for (int c : carrier) expect(c >= 0, errc::bad_params, "carrier sizes must be nonnegative");
  expect(static_cast<int>(action.size()) == domain.morphism_count(), errc::bad_params,
         "action list must cover every morphism");
  for (int f = 0; f < domain.morphism_count(); ++f) {
    expect(static_cast<int>(action[f].size()) == carrier[domain.src(f)], errc::bad_params,
           "action of morphism " + std::to_string(f) + " has the wrong domain size");
    for (int v : action[f])
      expect(v >= 0 && v < carrier[domain.dst(f)], errc::index_out_of_range,
             "action of morphism " + std::to_string(f) + " leaves the target carrier");
  }
  for (int x = 0; x < domain.object_count; ++x) {
    const auto& id = action[domain.identity(x)];
    for (int e = 0; e < carrier[x]; ++e)
      expect(id[e] == e, errc::functoriality_violation,
             "identity of object " + std::to_string(x) + " does not act as the identity");
  }
  for (int g = 0; g < domain.morphism_count(); ++g)
    for (int f = 0; f < domain.morphism_count(); ++f) {
      if (!domain.composable(g, f)) continue;
      const auto& gf = action[domain.compose(g, f)];
      for (int e = 0; e < carrier[domain.src(f)]; ++e)
        expect(gf[e] == action[g][action[f][e]], errc::functoriality_violation,
               "composition is not preserved at (" + std::to_string(g) + ", " +
                   std::to_string(f) + ")");
    }
}

}  // namespace detail

inline SetFunctor build_functor(fincat::FinCategory domain, std::vector<int> carrier,
                                std::vector<std::vector<int>> action) {
  detail::validate_functor_tables(domain, carrier, action);
  return SetFunctor{std::move(domain), std::move(carrier), std::move(action)};
}

// Hom functor hom(o, -); elements are positions in the ascending hom lists.
inline SetFunctor representable(const fincat::FinCategory& c, int o) {
  expect(o >= 0 && o < c.object_count, errc::index_out_of_range,
         "representing object outside the range");
  const auto homs = fincat::hom_table(c);
  std::vector<int> carrier(c.object_count);
  for (int x = 0; x < c.object_count; ++x)
    carrier[x] = static_cast<int>(homs.at(o, x).size());
  std::vector<std::vector<int>> action(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f) {
    const auto& dom = homs.at(o, c.src(f));
    action[f].resize(dom.size());
    for (size_t p = 0; p < dom.size(); ++p) action[f][p] = homs.pos[c.compose(f, dom[p])];
  }
  return build_functor(c, std::move(carrier), std::move(action));
}

inline SetFunctor disjoint_union(const SetFunctor& a, const SetFunctor& b) {
  expect(a.domain == b.domain, errc::bad_params,
         "disjoint union needs functors on the same category");
  SetFunctor out;
  out.domain = a.domain;
  out.carrier.resize(a.carrier.size());
  for (size_t x = 0; x < a.carrier.size(); ++x) out.carrier[x] = a.carrier[x] + b.carrier[x];
  out.action.resize(a.action.size());
  for (size_t f = 0; f < a.action.size(); ++f) {
    out.action[f] = a.action[f];
    const int shift = a.carrier[a.domain.dst(static_cast<int>(f))];
    for (int v : b.action[f]) out.action[f].push_back(v + shift);
  }
  return out;
}

// Quotient by the congruence generated by the given identifications.
// class_of maps old elements (per object) to new ones.
struct FunctorQuotient {
  SetFunctor functor;
  std::vector<std::vector<int>> class_of;
};

struct Merge {
  int object = 0;
  int a = 0;
  int b = 0;
};

inline FunctorQuotient quotient_functor(const SetFunctor& f, const std::vector<Merge>& merges) {
  const auto& dom = f.domain;
  std::vector<fincat::detail::UnionFind> uf;
  uf.reserve(dom.object_count);
  for (int x = 0; x < dom.object_count; ++x) uf.emplace_back(f.carrier[x]);
  const auto by_src = fincat::detail::morphisms_by_src(dom);

  std::vector<Merge> queue(merges);
  for (auto& m : queue) {
    expect(m.object >= 0 && m.object < dom.object_count, errc::index_out_of_range,
           "merge names an object outside the range");
    expect(m.a >= 0 && m.a < f.carrier[m.object] && m.b >= 0 && m.b < f.carrier[m.object],
           errc::index_out_of_range, "merge names an element outside the carrier");
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const auto m = queue[qi];
    if (!uf[m.object].unite(m.a, m.b)) continue;
    for (int g : by_src[m.object])
      queue.push_back({dom.dst(g), f.action[g][m.a], f.action[g][m.b]});
  }

  FunctorQuotient out;
  out.functor.domain = dom;
  out.class_of.resize(dom.object_count);
  out.functor.carrier.resize(dom.object_count);
  std::vector<std::vector<int>> rep_of(dom.object_count);
  for (int x = 0; x < dom.object_count; ++x) {
    out.class_of[x].assign(f.carrier[x], -1);
    int next = 0;
    for (int e = 0; e < f.carrier[x]; ++e) {
      const int r = uf[x].find(e);
      if (out.class_of[x][r] == -1) {
        out.class_of[x][r] = next++;
        rep_of[x].push_back(r);
      }
      out.class_of[x][e] = out.class_of[x][r];
    }
    out.functor.carrier[x] = next;
  }
  out.functor.action.resize(dom.morphism_count());
  for (int g = 0; g < dom.morphism_count(); ++g) {
    const int sx = dom.src(g), dx = dom.dst(g);
    out.functor.action[g].resize(out.functor.carrier[sx]);
    for (int c = 0; c < out.functor.carrier[sx]; ++c)
      out.functor.action[g][c] = out.class_of[dx][f.action[g][rep_of[sx][c]]];
    for (int e = 0; e < f.carrier[sx]; ++e)
      internal_check(out.functor.action[g][out.class_of[sx][e]] ==
                         out.class_of[dx][f.action[g][e]],
                     "congruence closure left an action ill-defined");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limits and colimits
// ---------------------------------------------------------------------------

// Compatible families, sorted lexicographically. The limit over the empty
// category is a single empty family.
struct LimitSet {
  std::vector<std::vector<int>> families;

  int size() const { return static_cast<int>(families.size()); }
};

inline LimitSet limit(const SetFunctor& f, const Config& cfg = default_config()) {
  const auto& dom = f.domain;
  const int n = dom.object_count;
  std::uint64_t prod = 1;
  for (int x = 0; x < n; ++x) {
    prod *= static_cast<std::uint64_t>(f.carrier[x]);
    expect(prod <= cfg.max_limit_families, errc::size_cap_exceeded,
           "family space exceeds the configured limit cap");
    if (prod == 0) break;
  }

  LimitSet out;
  std::vector<int> fam(n, -1);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.families.push_back(fam);
      return;
    }
    for (int v = 0; v < f.carrier[x]; ++v) {
      fam[x] = v;
      bool ok = true;
      for (int g = 0; g < dom.morphism_count() && ok; ++g) {
        const int a = dom.src(g), b = dom.dst(g);
        if (a > x || b > x || (a != x && b != x)) continue;
        ok = f.action[g][fam[a]] == fam[b];
      }
      if (ok) self(self, x + 1);
    }
    fam[x] = -1;
  };
  rec(rec, 0);
  return out;
}

// Classes of the zigzag relation on the disjoint union of the carriers.
// Flat indexing by object offset; classes ordered by least member.
struct ColimitSet {
  std::vector<int> offsets;   // per object, plus total at the end
  std::vector<int> class_of;  // flat element -> class
  std::vector<int> reps;      // class -> least flat element

  int size() const { return static_cast<int>(reps.size()); }
  int flat(int object, int element) const { return offsets[object] + element; }
  int object_of(int flat_index) const {
    int x = 0;
    while (offsets[x + 1] <= flat_index) ++x;
    return x;
  }
};

inline ColimitSet colimit(const SetFunctor& f) {
  const auto& dom = f.domain;
  ColimitSet out;
  out.offsets.resize(dom.object_count + 1, 0);
  for (int x = 0; x < dom.object_count; ++x)
    out.offsets[x + 1] = out.offsets[x] + f.carrier[x];
  const int total = out.offsets[dom.object_count];

  fincat::detail::UnionFind uf(total);
  for (int g = 0; g < dom.morphism_count(); ++g)
    for (int e = 0; e < f.carrier[dom.src(g)]; ++e)
      uf.unite(out.offsets[dom.src(g)] + e, out.offsets[dom.dst(g)] + f.action[g][e]);

  out.class_of.assign(total, -1);
  for (int e = 0; e < total; ++e) {
    const int r = uf.find(e);
    if (out.class_of[r] == -1) {
      out.class_of[r] = static_cast<int>(out.reps.size());
      out.reps.push_back(e);
    }
    out.class_of[e] = out.class_of[r];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functors of two variables
// ---------------------------------------------------------------------------

// Functor on the product of two categories. Index conventions follow
// ProductCategory: object (i, j) at i * right_objects + j, morphism (u, v)
// at u * right_morphisms + v.
struct BiFunctor {
  fincat::FinCategory left;
  fincat::FinCategory right;
  SetFunctor functor;

  int object_index(int i, int j) const { return i * right.object_count + j; }
  int morphism_index(int u, int v) const { return u * right.morphism_count() + v; }
};

inline BiFunctor build_bifunctor(fincat::FinCategory left, fincat::FinCategory right,
                                 SetFunctor f, const Config& cfg = default_config()) {
  const auto prod = fincat::product_category(left, right, cfg);
  expect(prod.category == f.domain, errc::invalid_bifunctor,
         "functor domain is not the product of the two factors");
  detail::validate_functor_tables(f.domain, f.carrier, f.action);
  return BiFunctor{std::move(left), std::move(right), std::move(f)};
}

// F(-, j) as a functor on the left factor.
inline SetFunctor left_restriction(const BiFunctor& b, int j) {
  SetFunctor out;
  out.domain = b.left;
  out.carrier.resize(b.left.object_count);
  for (int i = 0; i < b.left.object_count; ++i)
    out.carrier[i] = b.functor.carrier[b.object_index(i, j)];
  out.action.resize(b.left.morphism_count());
  const int idj = b.right.identity(j);
  for (int u = 0; u < b.left.morphism_count(); ++u)
    out.action[u] = b.functor.action[b.morphism_index(u, idj)];
  return out;
}

// F(i, -) as a functor on the right factor.
inline SetFunctor right_restriction(const BiFunctor& b, int i) {
  SetFunctor out;
  out.domain = b.right;
  out.carrier.resize(b.right.object_count);
  for (int j = 0; j < b.right.object_count; ++j)
    out.carrier[j] = b.functor.carrier[b.object_index(i, j)];
  out.action.resize(b.right.morphism_count());
  const int idi = b.left.identity(i);
  for (int v = 0; v < b.right.morphism_count(); ++v)
    out.action[v] = b.functor.action[b.morphism_index(idi, v)];
  return out;
}

// ---------------------------------------------------------------------------
// The canonical comparison
// ---------------------------------------------------------------------------

// Data of the canonical map  colim_J lim_I F  ->  lim_I colim_J F.
// Element decodings are human-readable representatives: a colimit-of-limits
// class shows its least representative "j<j>(x_0,...,x_{n-1})", a
// limit-of-colimits family shows one orbit representative "j<j>:<x>" per
// left object.
struct ComparisonReport {
  int colim_lim_size = 0;
  int lim_colim_size = 0;
  std::vector<int> map_table;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  std::vector<std::string> colim_lim_elements;
  std::vector<std::string> lim_colim_elements;

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

inline ComparisonReport comparison_report(const BiFunctor& b,
                                          const Config& cfg = default_config()) {
  const int ni = b.left.object_count;
  const int nj = b.right.object_count;

  // Limits of the left restrictions, one per right object.
  std::vector<LimitSet> lims(nj);
  for (int j = 0; j < nj; ++j) lims[j] = limit(left_restriction(b, j), cfg);

  // Those limits assemble into a functor on the right factor; families are
  // sorted, so images can be located by binary search.
  SetFunctor lim_f;
  lim_f.domain = b.right;
  lim_f.carrier.resize(nj);
  for (int j = 0; j < nj; ++j) lim_f.carrier[j] = lims[j].size();
  lim_f.action.resize(b.right.morphism_count());
  for (int g = 0; g < b.right.morphism_count(); ++g) {
    const int js = b.right.src(g), jd = b.right.dst(g);
    lim_f.action[g].resize(lims[js].size());
    for (int t = 0; t < lims[js].size(); ++t) {
      std::vector<int> image(ni);
      for (int i = 0; i < ni; ++i)
        image[i] = b.functor.action[b.morphism_index(b.left.identity(i), g)]
                            [lims[js].families[t][i]];
      const auto& fams = lims[jd].families;
      const auto it = std::lower_bound(fams.begin(), fams.end(), image);
      internal_check(it != fams.end() && *it == image,
                     "limit family fails to transport along the right factor");
      lim_f.action[g][t] = static_cast<int>(it - fams.begin());
    }
  }
  const ColimitSet colim_lim = colimit(lim_f);

  // Colimits of the right restrictions, one per left object.
  std::vector<ColimitSet> colims(ni);
  for (int i = 0; i < ni; ++i) colims[i] = colimit(right_restriction(b, i));

  // Those colimits assemble into a functor on the left factor; the action on
  // classes is checked to be independent of the representative.
  SetFunctor colim_f;
  colim_f.domain = b.left;
  colim_f.carrier.resize(ni);
  for (int i = 0; i < ni; ++i) colim_f.carrier[i] = colims[i].size();
  colim_f.action.resize(b.left.morphism_count());
  for (int u = 0; u < b.left.morphism_count(); ++u) {
    const int is = b.left.src(u), id = b.left.dst(u);
    colim_f.action[u].assign(colims[is].size(), -1);
    for (int j = 0; j < nj; ++j) {
      const int w = b.morphism_index(u, b.right.identity(j));
      for (int e = 0; e < b.functor.carrier[b.object_index(is, j)]; ++e) {
        const int cls = colims[is].class_of[colims[is].flat(j, e)];
        const int img = colims[id].class_of[colims[id].flat(j, b.functor.action[w][e])];
        if (colim_f.action[u][cls] == -1)
          colim_f.action[u][cls] = img;
        else
          internal_check(colim_f.action[u][cls] == img,
                         "orbit transport depends on the representative");
      }
    }
    for (int cls : colim_f.action[u])
      internal_check(cls != -1, "an orbit class was never transported");
  }
  const LimitSet lim_colim = limit(colim_f, cfg);

  // The canonical map sends the class of (j, family) to the tuple of the
  // family's per-object orbit classes.
  ComparisonReport rep;
  rep.colim_lim_size = colim_lim.size();
  rep.lim_colim_size = lim_colim.size();
  rep.map_table.resize(colim_lim.size());
  rep.colim_lim_elements.resize(colim_lim.size());

  for (int k = 0; k < colim_lim.size(); ++k) {
    const int flat = colim_lim.reps[k];
    const int j = colim_lim.object_of(flat);
    const auto& fam = lims[j].families[flat - colim_lim.offsets[j]];
    std::vector<int> tuple(ni);
    for (int i = 0; i < ni; ++i)
      tuple[i] = colims[i].class_of[colims[i].flat(j, fam[i])];
    const auto& fams = lim_colim.families;
    const auto it = std::lower_bound(fams.begin(), fams.end(), tuple);
    internal_check(it != fams.end() && *it == tuple,
                   "canonical image is not a compatible family");
    rep.map_table[k] = static_cast<int>(it - fams.begin());

    std::string dec = "j" + std::to_string(j) + "(";
    for (int i = 0; i < ni; ++i) dec += (i ? "," : "") + std::to_string(fam[i]);
    rep.colim_lim_elements[k] = dec + ")";
  }

  rep.lim_colim_elements.resize(lim_colim.size());
  for (int t = 0; t < lim_colim.size(); ++t) {
    std::string dec = "(";
    for (int i = 0; i < ni; ++i) {
      const int flat = colims[i].reps[lim_colim.families[t][i]];
      const int j = colims[i].object_of(flat);
      dec += (i ? ", " : "") + ("i" + std::to_string(i)) + "=j" + std::to_string(j) +
             ":" + std::to_string(flat - colims[i].offsets[j]);
    }
    rep.lim_colim_elements[t] = dec + ")";
  }

  std::vector<char> hit(lim_colim.size(), 0);
  rep.injective = true;
  for (int v : rep.map_table) {
    if (hit[v]) rep.injective = false;
    hit[v] = 1;
  }
  rep.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  rep.bijective = rep.injective && rep.surjective;
  return rep;
}

// ---------------------------------------------------------------------------
// Random functors for the bounded search
// ---------------------------------------------------------------------------

// Deterministic under a fixed generator state: sums of representables with a
// few random identifications, closed up to a congruence.
inline SetFunctor random_functor(const fincat::FinCategory& c, std::mt19937_64& rng) {
  if (c.object_count == 0) return SetFunctor{c, {}, {}};
  const int seeds = 1 + static_cast<int>(rng() % 2);
  SetFunctor f = representable(c, static_cast<int>(rng() % c.object_count));
  for (int s = 1; s < seeds; ++s)
    f = disjoint_union(f, representable(c, static_cast<int>(rng() % c.object_count)));
  std::vector<Merge> merges;
  const int wanted = static_cast<int>(rng() % 4);
  for (int t = 0; t < wanted; ++t) {
    const int x = static_cast<int>(rng() % c.object_count);
    if (f.carrier[x] < 2) continue;
    merges.push_back({x, static_cast<int>(rng() % f.carrier[x]),
                      static_cast<int>(rng() % f.carrier[x])});
  }
  return quotient_functor(f, merges).functor;
}

}  // namespace limcolim::setfun
