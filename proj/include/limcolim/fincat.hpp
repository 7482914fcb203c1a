#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"

namespace limcolim::fincat {

struct Morphism {
  int src = 0;
  int dst = 0;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

// Finite category as an explicit composition table. Morphisms are identified
// by index; compose(g, f) means "g after f" and is only meaningful when
// dst(f) == src(g). The tag records which preset produced the category and
// carries no mathematical content.
struct FinCategory {
  int object_count = 0;
  std::vector<Morphism> morphisms;
  std::vector<int> identity_of;
  std::vector<int> composition;  // g * morphism_count + f; -1 for non-composable
  std::string tag;

  int morphism_count() const { return static_cast<int>(morphisms.size()); }
  int src(int f) const { return morphisms[f].src; }
  int dst(int f) const { return morphisms[f].dst; }
  int identity(int x) const { return identity_of[x]; }
  bool composable(int g, int f) const { return morphisms[f].dst == morphisms[g].src; }
  int compose(int g, int f) const {
    return composition[static_cast<size_t>(g) * morphisms.size() + f];
  }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.object_count == b.object_count && a.morphisms == b.morphisms &&
           a.identity_of == b.identity_of && a.composition == b.composition;
  }
};

struct CompositionEntry {
  int g = 0;
  int f = 0;
  int composite = 0;
};

struct RawCategory {
  int object_count = 0;
  std::vector<Morphism> morphisms;
  std::vector<int> identity_of;
  std::vector<CompositionEntry> compositions;
  std::string tag;
};

namespace detail {

inline std::vector<std::vector<int>> morphisms_by_src(const FinCategory& c) {
  std::vector<std::vector<int>> by_src(c.object_count);
  for (int f = 0; f < c.morphism_count(); ++f) by_src[c.src(f)].push_back(f);
  return by_src;
}

inline std::vector<std::vector<int>> morphisms_by_dst(const FinCategory& c) {
  std::vector<std::vector<int>> by_dst(c.object_count);
  for (int f = 0; f < c.morphism_count(); ++f) by_dst[c.dst(f)].push_back(f);
  return by_dst;
}

}  // namespace detail

inline std::vector<int> hom(const FinCategory& c, int x, int y) {
  std::vector<int> out;
  for (int f = 0; f < c.morphism_count(); ++f)
    if (c.src(f) == x && c.dst(f) == y) out.push_back(f);
  return out;
}

// Hom sets as ascending index lists, plus each morphism's position in its
// own list. Shared by the sifted check and the witness constructions.
struct HomTable {
  int object_count = 0;
  std::vector<std::vector<int>> lists;  // x * object_count + y
  std::vector<int> pos;                 // morphism -> position in its list

  const std::vector<int>& at(int x, int y) const {
    return lists[static_cast<size_t>(x) * object_count + y];
  }
};

inline HomTable hom_table(const FinCategory& c) {
  HomTable t;
  t.object_count = c.object_count;
  t.lists.resize(static_cast<size_t>(c.object_count) * c.object_count);
  t.pos.resize(c.morphism_count(), -1);
  for (int f = 0; f < c.morphism_count(); ++f) {
    auto& lst = t.lists[static_cast<size_t>(c.src(f)) * c.object_count + c.dst(f)];
    t.pos[f] = static_cast<int>(lst.size());
    lst.push_back(f);
  }
  return t;
}

inline FinCategory build_category(const RawCategory& raw) {
  expect(raw.object_count >= 0, errc::bad_params, "object count must be nonnegative");
  const int n = raw.object_count;
  const int m = static_cast<int>(raw.morphisms.size());

  for (int f = 0; f < m; ++f) {
    const auto& mo = raw.morphisms[f];
    expect(mo.src >= 0 && mo.src < n && mo.dst >= 0 && mo.dst < n, errc::index_out_of_range,
           "morphism " + std::to_string(f) + " has an endpoint outside the object range");
  }
  expect(static_cast<int>(raw.identity_of.size()) == n, errc::bad_params,
         "identity list must name exactly one morphism per object");
  for (int x = 0; x < n; ++x) {
    const int e = raw.identity_of[x];
    expect(e >= 0 && e < m, errc::index_out_of_range,
           "identity of object " + std::to_string(x) + " is not a morphism index");
    expect(raw.morphisms[e].src == x && raw.morphisms[e].dst == x, errc::identity_violation,
           "identity of object " + std::to_string(x) + " is not an endomorphism of it");
  }

  std::vector<int> table(static_cast<size_t>(m) * m, -1);
  for (const auto& e : raw.compositions) {
    expect(e.g >= 0 && e.g < m && e.f >= 0 && e.f < m && e.composite >= 0 && e.composite < m,
           errc::index_out_of_range, "composition entry uses a morphism index outside the range");
    const std::string pair = "(" + std::to_string(e.g) + ", " + std::to_string(e.f) + ")";
    expect(raw.morphisms[e.f].dst == raw.morphisms[e.g].src, errc::composition_gap,
           "composition entry given for the non-composable pair " + pair);
    expect(raw.morphisms[e.composite].src == raw.morphisms[e.f].src &&
               raw.morphisms[e.composite].dst == raw.morphisms[e.g].dst,
           errc::composition_gap, "composite for " + pair + " has the wrong endpoints");
    int& slot = table[static_cast<size_t>(e.g) * m + e.f];
    expect(slot == -1 || slot == e.composite, errc::composition_gap,
           "conflicting composition entries for " + pair);
    slot = e.composite;
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (raw.morphisms[f].dst == raw.morphisms[g].src)
        expect(table[static_cast<size_t>(g) * m + f] != -1, errc::composition_gap,
               "no composite defined for the composable pair (" + std::to_string(g) + ", " +
                   std::to_string(f) + ")");

  FinCategory c{n, raw.morphisms, raw.identity_of, std::move(table), raw.tag};

  for (int f = 0; f < m; ++f) {
    expect(c.compose(f, c.identity(c.src(f))) == f && c.compose(c.identity(c.dst(f)), f) == f,
           errc::identity_violation,
           "identity law fails at morphism " + std::to_string(f));
  }

  const auto by_src = detail::morphisms_by_src(c);
  for (int f = 0; f < m; ++f)
    for (int g : by_src[c.dst(f)]) {
      const int gf = c.compose(g, f);
      for (int h : by_src[c.dst(g)])
        expect(c.compose(h, gf) == c.compose(c.compose(h, g), f), errc::associativity_violation,
               "associativity fails at (" + std::to_string(h) + ", " + std::to_string(g) + ", " +
                   std::to_string(f) + ")");
    }

  return c;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

inline FinCategory empty_category() {
  return build_category({0, {}, {}, {}, "empty"});
}

inline FinCategory terminal_category() {
  return build_category({1, {{0, 0}}, {0}, {{0, 0, 0}}, "terminal"});
}

inline FinCategory discrete_category(int n) {
  expect(n >= 0, errc::bad_params, "discrete category needs a nonnegative object count");
  expect(n <= 1024, errc::size_cap_exceeded, "discrete category capped at 1024 objects");
  RawCategory raw;
  raw.object_count = n;
  raw.tag = "discrete:" + std::to_string(n);
  for (int x = 0; x < n; ++x) {
    raw.morphisms.push_back({x, x});
    raw.identity_of.push_back(x);
    raw.compositions.push_back({x, x, x});
  }
  return build_category(raw);
}

// Linear order on n objects: identities first, then one morphism a -> b for
// each a < b, listed in lexicographic order.
inline FinCategory chain_category(int n) {
  expect(n >= 0, errc::bad_params, "chain category needs a nonnegative object count");
  expect(n <= 64, errc::size_cap_exceeded, "chain category capped at 64 objects");
  RawCategory raw;
  raw.object_count = n;
  raw.tag = "chain:" + std::to_string(n);
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    idx[x][x] = static_cast<int>(raw.morphisms.size());
    raw.morphisms.push_back({x, x});
    raw.identity_of.push_back(idx[x][x]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      idx[a][b] = static_cast<int>(raw.morphisms.size());
      raw.morphisms.push_back({a, b});
    }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c)
        raw.compositions.push_back({idx[b][c], idx[a][b], idx[a][c]});
  return build_category(raw);
}

// Objects: 0 the apex, 1 and 2 the feet. Morphisms: id0, id1, id2, then
// 3: 0 -> 1 and 4: 0 -> 2.
inline FinCategory span_category() {
  RawCategory raw;
  raw.object_count = 3;
  raw.morphisms = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}};
  raw.identity_of = {0, 1, 2};
  raw.compositions = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 0, 3}, {1, 3, 3}, {4, 0, 4}, {2, 4, 4}};
  raw.tag = "span";
  return build_category(raw);
}

inline FinCategory parallel_pair_category() {
  RawCategory raw;
  raw.object_count = 2;
  raw.morphisms = {{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  raw.identity_of = {0, 1};
  raw.compositions = {{0, 0, 0}, {1, 1, 1}, {2, 0, 2}, {1, 2, 2}, {3, 0, 3}, {1, 3, 3}};
  raw.tag = "parallel_pair";
  return build_category(raw);
}

// One object with a single non-identity endomorphism e satisfying e*e = e.
inline FinCategory idempotent_category() {
  RawCategory raw;
  raw.object_count = 1;
  raw.morphisms = {{0, 0}, {0, 0}};
  raw.identity_of = {0};
  raw.compositions = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  raw.tag = "idempotent";
  return build_category(raw);
}

// Objects 0..last; for n < m there are exactly k morphisms n -> m, carrying
// labels 0..k-1, and composition adds labels mod k. Identities come first,
// then the labelled morphisms sorted by (source, target, label). Composites
// of long chains wrap around, so cocone-style diagnostics near the top
// object reflect the truncation; classify flags this via the tag.
inline FinCategory jk_category(int k, int last) {
  expect(k >= 1, errc::bad_params, "label count must be at least 1");
  expect(last >= 0, errc::bad_params, "largest object must be nonnegative");
  const int n = last + 1;
  const long long labelled = static_cast<long long>(k) * n * (n - 1) / 2;
  expect(n + labelled <= 2048, errc::size_cap_exceeded,
         "truncated label category capped at 2048 morphisms");
  RawCategory raw;
  raw.object_count = n;
  raw.tag = "jk:" + std::to_string(k) + ":" + std::to_string(last);
  for (int x = 0; x < n; ++x) {
    raw.morphisms.push_back({x, x});
    raw.identity_of.push_back(x);
    raw.compositions.push_back({x, x, x});
  }
  std::vector<std::vector<std::vector<int>>> idx(
      n, std::vector<std::vector<int>>(n, std::vector<int>(k, -1)));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int t = 0; t < k; ++t) {
        idx[a][b][t] = static_cast<int>(raw.morphisms.size());
        raw.morphisms.push_back({a, b});
      }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int t = 0; t < k; ++t) {
        raw.compositions.push_back({idx[a][b][t], a, idx[a][b][t]});
        raw.compositions.push_back({b, idx[a][b][t], idx[a][b][t]});
        for (int c = b + 1; c < n; ++c)
          for (int s = 0; s < k; ++s)
            raw.compositions.push_back({idx[b][c][s], idx[a][b][t], idx[a][c][(t + s) % k]});
      }
  return build_category(raw);
}

// Morphism indices are preserved; only direction and the order of
// composition flip, so this is an exact involution.
inline FinCategory opposite_category(const FinCategory& c) {
  FinCategory o;
  o.object_count = c.object_count;
  o.identity_of = c.identity_of;
  o.morphisms.reserve(c.morphisms.size());
  for (const auto& mo : c.morphisms) o.morphisms.push_back({mo.dst, mo.src});
  const int m = c.morphism_count();
  o.composition.assign(static_cast<size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      o.composition[static_cast<size_t>(g) * m + f] = c.composition[static_cast<size_t>(f) * m + g];
  if (!c.tag.empty()) o.tag = c.tag == "span" ? "cospan" : "op:" + c.tag;
  return o;
}

inline FinCategory cospan_category() { return opposite_category(span_category()); }

// Product category with arithmetic index maps: object (i, j) sits at
// i * right_objects + j and morphism (u, v) at u * right_morphisms + v.
struct ProductCategory {
  FinCategory category;
  int left_objects = 0;
  int right_objects = 0;
  int left_morphisms = 0;
  int right_morphisms = 0;

  int object_index(int i, int j) const { return i * right_objects + j; }
  int morphism_index(int u, int v) const { return u * right_morphisms + v; }
  int left_object(int o) const { return o / right_objects; }
  int right_object(int o) const { return o % right_objects; }
  int left_morphism(int w) const { return w / right_morphisms; }
  int right_morphism(int w) const { return w % right_morphisms; }
};

// Built directly: composition is componentwise, so the table is valid
// whenever the factors are.
inline ProductCategory product_category(const FinCategory& l, const FinCategory& r,
                                        const Config& cfg = default_config()) {
  const long long mm = static_cast<long long>(l.morphism_count()) * r.morphism_count();
  expect(mm <= cfg.max_product_morphisms, errc::size_cap_exceeded,
         "product category would have " + std::to_string(mm) + " morphisms (cap " +
             std::to_string(cfg.max_product_morphisms) + ")");

  ProductCategory p;
  p.left_objects = l.object_count;
  p.right_objects = r.object_count;
  p.left_morphisms = l.morphism_count();
  p.right_morphisms = r.morphism_count();

  FinCategory& c = p.category;
  c.object_count = l.object_count * r.object_count;
  c.morphisms.reserve(static_cast<size_t>(mm));
  for (int u = 0; u < l.morphism_count(); ++u)
    for (int v = 0; v < r.morphism_count(); ++v)
      c.morphisms.push_back(
          {p.object_index(l.src(u), r.src(v)), p.object_index(l.dst(u), r.dst(v))});
  c.identity_of.resize(c.object_count);
  for (int i = 0; i < l.object_count; ++i)
    for (int j = 0; j < r.object_count; ++j)
      c.identity_of[p.object_index(i, j)] = p.morphism_index(l.identity(i), r.identity(j));
  const int m = static_cast<int>(mm);
  c.composition.assign(static_cast<size_t>(m) * m, -1);
  for (int gu = 0; gu < l.morphism_count(); ++gu)
    for (int gv = 0; gv < r.morphism_count(); ++gv)
      for (int fu = 0; fu < l.morphism_count(); ++fu) {
        if (!l.composable(gu, fu)) continue;
        const int cu = l.compose(gu, fu);
        for (int fv = 0; fv < r.morphism_count(); ++fv) {
          if (!r.composable(gv, fv)) continue;
          c.composition[static_cast<size_t>(p.morphism_index(gu, gv)) * m +
                        p.morphism_index(fu, fv)] = p.morphism_index(cu, r.compose(gv, fv));
        }
      }
  return p;
}

// Full subcategory on the given objects; morphism order is inherited.
inline FinCategory full_subcategory(const FinCategory& c, std::vector<int> objects) {
  std::sort(objects.begin(), objects.end());
  expect(std::adjacent_find(objects.begin(), objects.end()) == objects.end(), errc::bad_params,
         "object list has duplicates");
  for (int x : objects)
    expect(x >= 0 && x < c.object_count, errc::index_out_of_range,
           "object " + std::to_string(x) + " outside the range");

  std::vector<int> new_obj(c.object_count, -1);
  for (size_t i = 0; i < objects.size(); ++i) new_obj[objects[i]] = static_cast<int>(i);
  std::vector<int> new_mor(c.morphism_count(), -1);

  RawCategory raw;
  raw.object_count = static_cast<int>(objects.size());
  for (int f = 0; f < c.morphism_count(); ++f)
    if (new_obj[c.src(f)] >= 0 && new_obj[c.dst(f)] >= 0) {
      new_mor[f] = static_cast<int>(raw.morphisms.size());
      raw.morphisms.push_back({new_obj[c.src(f)], new_obj[c.dst(f)]});
    }
  raw.identity_of.resize(objects.size());
  for (size_t i = 0; i < objects.size(); ++i) raw.identity_of[i] = new_mor[c.identity(objects[i])];
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f)
      if (new_mor[g] >= 0 && new_mor[f] >= 0 && c.composable(g, f))
        raw.compositions.push_back({new_mor[g], new_mor[f], new_mor[c.compose(g, f)]});
  return build_category(raw);
}

// ---------------------------------------------------------------------------
// Diagrams and cocones
// ---------------------------------------------------------------------------

struct FiniteDiagram {
  FinCategory shape;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  friend bool operator==(const FiniteDiagram& a, const FiniteDiagram& b) {
    return a.shape == b.shape && a.object_map == b.object_map && a.morphism_map == b.morphism_map;
  }
};

inline FiniteDiagram build_diagram(FinCategory shape, const FinCategory& target,
                                   std::vector<int> object_map, std::vector<int> morphism_map) {
  expect(static_cast<int>(object_map.size()) == shape.object_count, errc::bad_params,
         "object map must cover every shape object");
  expect(static_cast<int>(morphism_map.size()) == shape.morphism_count(), errc::bad_params,
         "morphism map must cover every shape morphism");
  for (int x : object_map)
    expect(x >= 0 && x < target.object_count, errc::index_out_of_range,
           "object map leaves the target object range");
  for (int f : morphism_map)
    expect(f >= 0 && f < target.morphism_count(), errc::index_out_of_range,
           "morphism map leaves the target morphism range");
  for (int f = 0; f < shape.morphism_count(); ++f)
    expect(target.src(morphism_map[f]) == object_map[shape.src(f)] &&
               target.dst(morphism_map[f]) == object_map[shape.dst(f)],
           errc::functoriality_violation,
           "image of morphism " + std::to_string(f) + " has the wrong endpoints");
  for (int x = 0; x < shape.object_count; ++x)
    expect(morphism_map[shape.identity(x)] == target.identity(object_map[x]),
           errc::functoriality_violation,
           "identity of object " + std::to_string(x) + " is not sent to an identity");
  for (int g = 0; g < shape.morphism_count(); ++g)
    for (int f = 0; f < shape.morphism_count(); ++f)
      if (shape.composable(g, f))
        expect(morphism_map[shape.compose(g, f)] ==
                   target.compose(morphism_map[g], morphism_map[f]),
               errc::functoriality_violation,
               "composition is not preserved at (" + std::to_string(g) + ", " +
                   std::to_string(f) + ")");
  return FiniteDiagram{std::move(shape), std::move(object_map), std::move(morphism_map)};
}

// Legs run from the diagram's images to the vertex.
struct Cocone {
  int vertex = -1;
  std::vector<int> legs;
};

namespace detail {

inline void ensure_exhaustive_caps(const FinCategory& c, const Config& cfg, const char* op) {
  expect(c.object_count <= cfg.max_exhaustive_objects &&
             c.morphism_count() <= cfg.max_exhaustive_morphisms,
         errc::size_cap_exceeded,
         std::string(op) + " is exhaustive and refuses categories above the configured caps");
}

}  // namespace detail

// First cocone in (vertex, legs) lexicographic order, scanning vertices and
// leg candidates ascending.
inline std::optional<Cocone> find_cocone(const FinCategory& target, const FiniteDiagram& dia,
                                         const Config& cfg = default_config()) {
  detail::ensure_exhaustive_caps(dia.shape, cfg, "cocone search (shape)");
  detail::ensure_exhaustive_caps(target, cfg, "cocone search (target)");
  const int k = dia.shape.object_count;
  const auto homs = hom_table(target);

  std::vector<int> legs(k, -1);
  for (int v = 0; v < target.object_count; ++v) {
    auto rec = [&](auto&& self, int x) -> bool {
      if (x == k) return true;
      for (int q : homs.at(dia.object_map[x], v)) {
        legs[x] = q;
        bool ok = true;
        for (int f = 0; f < dia.shape.morphism_count() && ok; ++f) {
          const int a = dia.shape.src(f), b = dia.shape.dst(f);
          if (a > x || b > x || (a != x && b != x)) continue;
          ok = target.compose(legs[b], dia.morphism_map[f]) == legs[a];
        }
        if (ok && self(self, x + 1)) return true;
      }
      legs[x] = -1;
      return false;
    };
    if (rec(rec, 0)) return Cocone{v, legs};
  }
  return std::nullopt;
}

inline bool cocone_exists(const FinCategory& target, const FiniteDiagram& dia,
                          const Config& cfg = default_config()) {
  return find_cocone(target, dia, cfg).has_value();
}

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

// Components as sorted object lists, ordered by least member.
inline std::vector<std::vector<int>> connected_components(const FinCategory& c) {
  detail::UnionFind uf(c.object_count);
  for (int f = 0; f < c.morphism_count(); ++f) uf.unite(c.src(f), c.dst(f));
  std::vector<int> comp_of(c.object_count, -1);
  std::vector<std::vector<int>> comps;
  for (int x = 0; x < c.object_count; ++x) {
    const int r = uf.find(x);
    if (comp_of[r] == -1) {
      comp_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of[r]].push_back(x);
  }
  return comps;
}

inline bool is_connected(const FinCategory& c) {
  return c.object_count > 0 && connected_components(c).size() == 1;
}

namespace detail {

// Cospans for every demanded pair plus a coequalizing morphism for every
// demanded parallel pair. `in` selects which objects raise demands; the
// witnessing vertex or morphism is unrestricted because it can never leave
// the objects' component.
inline bool cospans_and_coequalizers(const FinCategory& c, const std::vector<char>& in) {
  const int n = c.object_count;
  std::vector<char> reach(static_cast<size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) reach[static_cast<size_t>(x) * n + x] = 1;
  for (int f = 0; f < c.morphism_count(); ++f)
    reach[static_cast<size_t>(c.src(f)) * n + c.dst(f)] = 1;

  for (int x = 0; x < n; ++x) {
    if (!in[x]) continue;
    for (int y = x + 1; y < n; ++y) {
      if (!in[y]) continue;
      bool found = false;
      for (int v = 0; v < n && !found; ++v)
        found = reach[static_cast<size_t>(x) * n + v] && reach[static_cast<size_t>(y) * n + v];
      if (!found) return false;
    }
  }

  const auto by_src = morphisms_by_src(c);
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (!in[c.src(f)]) continue;
    for (int g = f + 1; g < c.morphism_count(); ++g) {
      if (c.src(g) != c.src(f) || c.dst(g) != c.dst(f)) continue;
      bool found = false;
      for (int h : by_src[c.dst(f)])
        if (c.compose(h, f) == c.compose(h, g)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_filtered(const FinCategory& c) {
  if (c.object_count == 0) return false;
  return detail::cospans_and_coequalizers(c, std::vector<char>(c.object_count, 1));
}

// Every connected component filtered; vacuously true when empty.
inline bool is_pseudo_filtered(const FinCategory& c) {
  for (const auto& comp : connected_components(c)) {
    std::vector<char> in(c.object_count, 0);
    for (int x : comp) in[x] = 1;
    if (!detail::cospans_and_coequalizers(c, in)) return false;
  }
  return true;
}

// Cone over the identity diagram: legs run from the vertex to every object.
struct Cone {
  int vertex = -1;
  std::vector<int> legs;
};

inline std::optional<Cone> find_identity_cone(const FinCategory& c,
                                              const Config& cfg = default_config()) {
  detail::ensure_exhaustive_caps(c, cfg, "cone search");
  const int n = c.object_count;
  const auto homs = hom_table(c);
  const auto by_dst = detail::morphisms_by_dst(c);

  for (int vtx = 0; vtx < n; ++vtx) {
    std::vector<int> legs(n, -1);
    auto rec = [&](auto&& self, int x) -> bool {
      if (x == n) return true;
      // Any morphism from an already-assigned object forces the leg here.
      int forced = -1;
      for (int f : by_dst[x]) {
        if (c.src(f) >= x) continue;
        const int v = c.compose(f, legs[c.src(f)]);
        if (forced == -1)
          forced = v;
        else if (forced != v)
          return false;
      }
      std::vector<int> cands = forced >= 0 ? std::vector<int>{forced} : homs.at(vtx, x);
      for (int v : cands) {
        bool ok = true;
        for (int f = 0; f < c.morphism_count() && ok; ++f) {
          if (c.src(f) != x || c.dst(f) > x) continue;
          const int img = c.compose(f, v);
          ok = c.dst(f) == x ? img == v : img == legs[c.dst(f)];
        }
        if (!ok) continue;
        legs[x] = v;
        if (self(self, x + 1)) return true;
        legs[x] = -1;
      }
      return false;
    };
    if (rec(rec, 0)) return Cone{vtx, legs};
  }
  return std::nullopt;
}

inline bool is_conical(const FinCategory& c, const Config& cfg = default_config()) {
  return find_identity_cone(c, cfg).has_value();
}

// Nonempty, and for every object pair the category of cospans under it is
// nonempty and zigzag-connected.
inline bool is_sifted(const FinCategory& c, const Config& cfg = default_config()) {
  detail::ensure_exhaustive_caps(c, cfg, "sifted check");
  if (c.object_count == 0) return false;
  const auto homs = hom_table(c);
  const auto by_src = detail::morphisms_by_src(c);

  for (int x = 0; x < c.object_count; ++x)
    for (int y = x; y < c.object_count; ++y) {
      std::vector<int> base(c.object_count + 1, 0);
      for (int v = 0; v < c.object_count; ++v)
        base[v + 1] = base[v] + static_cast<int>(homs.at(x, v).size() * homs.at(y, v).size());
      const int total = base[c.object_count];
      if (total == 0) return false;

      auto cospan_id = [&](int v, int f, int g) {
        return base[v] + homs.pos[f] * static_cast<int>(homs.at(y, v).size()) + homs.pos[g];
      };
      detail::UnionFind uf(total);
      for (int v = 0; v < c.object_count; ++v)
        for (int f : homs.at(x, v))
          for (int g : homs.at(y, v))
            for (int h : by_src[v])
              uf.unite(cospan_id(v, f, g), cospan_id(c.dst(h), c.compose(h, f), c.compose(h, g)));
      int classes = 0;
      for (int i = 0; i < total; ++i)
        if (uf.find(i) == i) ++classes;
      if (classes != 1) return false;
    }
  return true;
}

// Every pair of morphisms out of a common source extends to a commuting
// square somewhere.
inline bool has_span_cocones(const FinCategory& c) {
  const auto by_src = detail::morphisms_by_src(c);
  const auto homs = hom_table(c);
  for (int beta = 0; beta < c.morphism_count(); ++beta)
    for (int gamma = 0; gamma < c.morphism_count(); ++gamma) {
      if (c.src(gamma) != c.src(beta)) continue;
      bool found = false;
      for (int delta : by_src[c.dst(beta)]) {
        const int t = c.compose(delta, beta);
        for (int eps : homs.at(c.dst(gamma), c.dst(delta)))
          if (c.compose(eps, gamma) == t) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) return false;
    }
  return true;
}

inline bool has_parallel_pair_cocones(const FinCategory& c) {
  const auto by_src = detail::morphisms_by_src(c);
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = f + 1; g < c.morphism_count(); ++g) {
      if (c.src(g) != c.src(f) || c.dst(g) != c.dst(f)) continue;
      bool found = false;
      for (int h : by_src[c.dst(f)])
        if (c.compose(h, f) == c.compose(h, g)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

struct PropertyFlags {
  bool is_empty = false;
  bool is_connected = false;
  bool is_conical = false;
  bool is_filtered = false;
  bool is_pseudo_filtered = false;
  bool is_sifted = false;
  bool has_span_cocones = false;
  bool has_parallel_pair_cocones = false;
  int component_count = 0;
  bool truncation_warning = false;

  friend bool operator==(const PropertyFlags&, const PropertyFlags&) = default;
};

inline PropertyFlags classify(const FinCategory& c, const Config& cfg = default_config()) {
  PropertyFlags p;
  p.is_empty = c.object_count == 0;
  p.component_count = static_cast<int>(connected_components(c).size());
  p.is_connected = !p.is_empty && p.component_count == 1;
  p.is_conical = is_conical(c, cfg);
  p.is_filtered = is_filtered(c);
  p.is_pseudo_filtered = is_pseudo_filtered(c);
  p.is_sifted = is_sifted(c, cfg);
  p.has_span_cocones = has_span_cocones(c);
  p.has_parallel_pair_cocones = has_parallel_pair_cocones(c);
  p.truncation_warning = c.tag.find("jk:") != std::string::npos;
  return p;
}

}  // namespace limcolim::fincat
