#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"
#include "limcolim/fincat.hpp"

namespace limcolim::groups {

// Finite group as a Cayley table. Elements are indices 0..order-1; the
// identity and inverses are found during validation. Labels and the tag are
// informational only and ignored by equality.
struct FinGroup {
  int order = 0;
  std::vector<int> table;  // row-major: table[a * order + b] = a * b
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> labels;
  std::string tag;

  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const { return inverse[a]; }

  friend bool operator==(const FinGroup& a, const FinGroup& b) {
    return a.order == b.order && a.table == b.table;
  }
};

inline FinGroup group_from_table(int order, std::vector<int> table,
                                 std::vector<std::string> labels = {}, std::string tag = {}) {
  expect(order >= 1, errc::not_a_group, "a group needs at least one element");
  expect(static_cast<int>(table.size()) == order * order, errc::bad_params,
         "table must have order*order entries");
  expect(labels.empty() || static_cast<int>(labels.size()) == order, errc::bad_params,
         "label list must be empty or name every element");
  for (int v : table)
    expect(v >= 0 && v < order, errc::not_a_group, "table entry outside the element range");

  for (int a = 0; a < order; ++a) {
    std::vector<int> row(order, 0), col(order, 0);
    for (int b = 0; b < order; ++b) {
      ++row[table[a * order + b]];
      ++col[table[b * order + a]];
    }
    for (int v = 0; v < order; ++v)
      expect(row[v] == 1 && col[v] == 1, errc::not_a_group,
             "row or column " + std::to_string(a) + " is not a permutation");
  }

  int identity = -1;
  for (int e = 0; e < order && identity == -1; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a)
      ok = table[e * order + a] == a && table[a * order + e] == a;
    if (ok) identity = e;
  }
  expect(identity != -1, errc::not_a_group, "no identity element");

  std::vector<int> inverse(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (table[a * order + b] == identity && table[b * order + a] == identity) {
        inverse[a] = b;
        break;
      }
    expect(inverse[a] != -1, errc::not_a_group,
           "element " + std::to_string(a) + " has no two-sided inverse");
  }

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int ab = table[a * order + b];
      for (int c = 0; c < order; ++c)
        expect(table[ab * order + c] == table[a * order + table[b * order + c]],
               errc::not_a_group,
               "associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                   std::to_string(c) + ")");
    }

  return FinGroup{order, std::move(table), identity, std::move(inverse), std::move(labels),
                  std::move(tag)};
}

inline int element_order(const FinGroup& g, int x) {
  int k = 1, cur = x;
  while (cur != g.identity) {
    cur = g.mul(cur, x);
    ++k;
  }
  return k;
}

inline bool is_abelian(const FinGroup& g) {
  for (int a = 0; a < g.order; ++a)
    for (int b = a + 1; b < g.order; ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline std::vector<int> center(const FinGroup& g) {
  std::vector<int> z;
  for (int a = 0; a < g.order; ++a) {
    bool central = true;
    for (int b = 0; b < g.order && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

inline FinGroup cyclic_group(int n) {
  expect(n >= 1 && n <= 24, errc::bad_params, "cyclic preset supports orders 1..24");
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return group_from_table(n, std::move(table), {}, "c" + std::to_string(n));
}

inline FinGroup trivial_group() { return cyclic_group(1); }

inline FinGroup klein_four_group() {
  std::vector<int> table(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) table[a * 4 + b] = a ^ b;
  return group_from_table(4, std::move(table), {}, "klein4");
}

namespace detail {

// Elements indexed by their position in `perms`; product p*q acts as
// "q first, then p".
inline FinGroup group_from_perms(const std::vector<std::vector<int>>& perms, std::string tag) {
  const int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<int> comp(perms[0].size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (size_t x = 0; x < comp.size(); ++x) comp[x] = perms[a][perms[b][x]];
      const auto it = index.find(comp);
      internal_check(it != index.end(), "permutation set is not closed under composition");
      table[a * n + b] = it->second;
    }
  return group_from_table(n, std::move(table), {}, std::move(tag));
}

inline bool perm_is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

}  // namespace detail

inline FinGroup symmetric_group(int n) {
  expect(n >= 1 && n <= 4, errc::bad_params, "symmetric preset supports degrees 1..4");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  return detail::group_from_perms(perms, "s" + std::to_string(n));
}

inline FinGroup alternating_group(int n) {
  expect(n == 3 || n == 4, errc::bad_params, "alternating preset supports degrees 3 and 4");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    if (detail::perm_is_even(base)) perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return detail::group_from_perms(perms, "a" + std::to_string(n));
}

// Order 2n: rotations x -> x+i first, then reflections x -> i-x.
inline FinGroup dihedral_group(int n) {
  expect(n >= 3 && n <= 12, errc::bad_params, "dihedral preset supports 3..12 vertices");
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < n; ++i) {
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = (x + i) % n;
    perms.push_back(p);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = ((i - x) % n + n) % n;
    perms.push_back(p);
  }
  return detail::group_from_perms(perms, "d" + std::to_string(n));
}

inline FinGroup quaternion_group() {
  // Elements 2*basis + sign with basis 0..3 reading 1, i, j, k.
  static const int bas[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int b1 = a / 2, s1 = a % 2, b2 = b / 2, s2 = b % 2;
      table[a * 8 + b] = 2 * bas[b1][b2] + (s1 ^ s2 ^ sgn[b1][b2]);
    }
  return group_from_table(8, std::move(table), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"},
                          "q8");
}

// Element (a, b) sits at index a * h.order + b.
inline FinGroup direct_product(const FinGroup& g, const FinGroup& h,
                               const Config& cfg = default_config()) {
  const long long n = static_cast<long long>(g.order) * h.order;
  expect(n <= cfg.max_product_group_order, errc::size_cap_exceeded,
         "product group would have order " + std::to_string(n) + " (cap " +
             std::to_string(cfg.max_product_group_order) + ")");
  const int no = static_cast<int>(n);
  std::vector<int> table(static_cast<size_t>(no) * no);
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int b1 = 0; b1 < h.order; ++b1)
      for (int a2 = 0; a2 < g.order; ++a2)
        for (int b2 = 0; b2 < h.order; ++b2)
          table[static_cast<size_t>(a1 * h.order + b1) * no + (a2 * h.order + b2)] =
              g.mul(a1, a2) * h.order + h.mul(b1, b2);
  std::string tag;
  if (!g.tag.empty() && !h.tag.empty()) tag = "prod:" + g.tag + ":" + h.tag;
  return group_from_table(no, std::move(table), {}, std::move(tag));
}

// Grammar: c1..c24 | klein4 | s3 | s4 | a4 | d4 | d5 | q8 | prod:<a>:<b>.
// The right factor of prod may itself be a prod expression.
inline FinGroup group_preset(const std::string& name, const Config& cfg = default_config()) {
  if (name.size() >= 2 && name[0] == 'c' &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    const int n = std::stoi(name.substr(1));
    expect(n >= 1 && n <= 24, errc::bad_params, "cyclic preset supports orders 1..24");
    return cyclic_group(n);
  }
  if (name == "klein4") return klein_four_group();
  if (name == "s3") return symmetric_group(3);
  if (name == "s4") return symmetric_group(4);
  if (name == "a4") return alternating_group(4);
  if (name == "d4") return dihedral_group(4);
  if (name == "d5") return dihedral_group(5);
  if (name == "q8") return quaternion_group();
  if (name.rfind("prod:", 0) == 0) {
    const std::string rest = name.substr(5);
    const auto colon = rest.find(':');
    expect(colon != std::string::npos, errc::bad_params,
           "product preset needs two factors: prod:<a>:<b>");
    return direct_product(group_preset(rest.substr(0, colon), cfg),
                          group_preset(rest.substr(colon + 1), cfg), cfg);
  }
  fail(errc::bad_params, "unknown group preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

struct Subgroup {
  std::vector<int> elements;  // ascending, identity included

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  }
};

inline Subgroup closure(const FinGroup& g, const std::vector<int>& seed) {
  std::vector<char> in(g.order, 0);
  std::vector<int> elems;
  auto add = [&](int x) {
    expect(x >= 0 && x < g.order, errc::index_out_of_range, "generator outside the group");
    if (!in[x]) {
      in[x] = 1;
      elems.push_back(x);
    }
  };
  add(g.identity);
  for (int x : seed) add(x);
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      const int a = elems[i], b = elems[j];
      if (!in[g.mul(a, b)]) {
        in[g.mul(a, b)] = 1;
        elems.push_back(g.mul(a, b));
      }
      if (!in[g.mul(b, a)]) {
        in[g.mul(b, a)] = 1;
        elems.push_back(g.mul(b, a));
      }
    }
  std::sort(elems.begin(), elems.end());
  return Subgroup{std::move(elems)};
}

inline bool is_subgroup(const FinGroup& g, const std::vector<int>& sorted_elements) {
  if (sorted_elements.empty()) return false;
  for (int x : sorted_elements)
    if (x < 0 || x >= g.order) return false;
  for (int a : sorted_elements)
    for (int b : sorted_elements)
      if (!std::binary_search(sorted_elements.begin(), sorted_elements.end(), g.mul(a, b)))
        return false;
  return true;
}

inline Subgroup subgroup_from_elements(const FinGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  expect(!elements.empty(), errc::not_a_subgroup, "a subgroup cannot be empty");
  for (int x : elements)
    expect(x >= 0 && x < g.order, errc::index_out_of_range, "element outside the group");
  for (int a : elements)
    for (int b : elements)
      expect(std::binary_search(elements.begin(), elements.end(), g.mul(a, b)),
             errc::not_a_subgroup,
             "set is not closed: " + std::to_string(a) + " * " + std::to_string(b) +
                 " escapes it");
  return Subgroup{std::move(elements)};
}

namespace detail {

// Closure of an already-closed base extended by one element; only products
// involving new elements need processing.
inline std::vector<int> closure_extend(const FinGroup& g, const std::vector<int>& base, int x) {
  std::vector<char> in(g.order, 0);
  std::vector<int> elems(base);
  for (int e : base) in[e] = 1;
  const size_t start = elems.size();
  in[x] = 1;
  elems.push_back(x);
  for (size_t i = start; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      const int a = elems[i], b = elems[j];
      const int ab = g.mul(a, b), ba = g.mul(b, a);
      if (!in[ab]) {
        in[ab] = 1;
        elems.push_back(ab);
      }
      if (!in[ba]) {
        in[ba] = 1;
        elems.push_back(ba);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace detail

// Breadth-first closure search: every subgroup arises by repeatedly adjoining
// one missing element, so the scan is exhaustive. Sorted by (order, elements).
inline std::vector<Subgroup> subgroups(const FinGroup& g,
                                       const Config& cfg = default_config()) {
  expect(g.order <= cfg.max_product_group_order, errc::size_cap_exceeded,
         "subgroup enumeration capped at order " + std::to_string(cfg.max_product_group_order));
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> queue;
  queue.push_back(closure(g, {}).elements);
  known.insert(queue[0]);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    std::vector<char> in(g.order, 0);
    for (int e : cur) in[e] = 1;
    for (int x = 0; x < g.order; ++x) {
      if (in[x]) continue;
      auto ext = detail::closure_extend(g, cur, x);
      if (known.insert(ext).second) queue.push_back(std::move(ext));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(known.size());
  for (const auto& e : known) out.push_back(Subgroup{e});
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_normal(const FinGroup& g, const Subgroup& s) {
  for (int a = 0; a < g.order; ++a)
    for (int x : s.elements)
      if (!s.contains(g.mul(g.mul(a, x), g.inv(a)))) return false;
  return true;
}

inline std::vector<Subgroup> normal_subgroups(const FinGroup& g,
                                              const Config& cfg = default_config()) {
  std::vector<Subgroup> out;
  for (auto& s : subgroups(g, cfg))
    if (is_normal(g, s)) out.push_back(std::move(s));
  return out;
}

struct SubgroupGroup {
  FinGroup group;
  std::vector<int> parent_of;  // local element -> parent element
  std::vector<int> local_of;   // parent element -> local element or -1
};

inline SubgroupGroup subgroup_as_group(const FinGroup& g, const Subgroup& s) {
  expect(is_subgroup(g, s.elements), errc::not_a_subgroup, "element set is not a subgroup");
  const int n = s.order();
  std::vector<int> local_of(g.order, -1);
  for (int i = 0; i < n; ++i) local_of[s.elements[i]] = i;
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i * n + j] = local_of[g.mul(s.elements[i], s.elements[j])];
  return SubgroupGroup{group_from_table(n, std::move(table)), s.elements, std::move(local_of)};
}

// Cosets indexed by their least representative, ascending.
struct Quotient {
  FinGroup group;
  std::vector<int> coset_of;
  std::vector<int> reps;
};

inline Quotient quotient_group(const FinGroup& g, const Subgroup& n) {
  expect(is_subgroup(g, n.elements), errc::not_a_subgroup, "element set is not a subgroup");
  expect(is_normal(g, n), errc::not_normal, "subgroup is not normal");
  std::vector<int> coset_of(g.order, -1);
  std::vector<int> reps;
  for (int a = 0; a < g.order; ++a) {
    if (coset_of[a] != -1) continue;
    const int k = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int x : n.elements) coset_of[g.mul(a, x)] = k;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i * q + j] = coset_of[g.mul(reps[i], reps[j])];
  return Quotient{group_from_table(q, std::move(table)), std::move(coset_of), std::move(reps)};
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

// Greedy ascending generating sequence; prefix closure sizes guide pruning.
inline std::vector<int> generating_set(const FinGroup& g) {
  std::vector<int> gens;
  auto cur = closure(g, {});
  while (cur.order() < g.order) {
    int x = 0;
    while (cur.contains(x)) ++x;
    gens.push_back(x);
    auto seed = cur.elements;
    seed.push_back(x);
    cur = closure(g, seed);
  }
  return gens;
}

inline std::optional<std::vector<int>> isomorphism(const FinGroup& a, const FinGroup& b) {
  if (a.order != b.order) return std::nullopt;
  std::vector<int> ord_a(a.order), ord_b(b.order);
  for (int x = 0; x < a.order; ++x) ord_a[x] = element_order(a, x);
  for (int x = 0; x < b.order; ++x) ord_b[x] = element_order(b, x);
  {
    auto sa = ord_a, sb = ord_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  if (is_abelian(a) != is_abelian(b)) return std::nullopt;
  if (center(a).size() != center(b).size()) return std::nullopt;

  std::vector<int> gens;
  std::vector<int> prefix_size;
  {
    auto cur = closure(a, {});
    while (cur.order() < a.order) {
      int x = 0;
      while (cur.contains(x)) ++x;
      gens.push_back(x);
      auto seed = cur.elements;
      seed.push_back(x);
      cur = closure(a, seed);
      prefix_size.push_back(cur.order());
    }
  }
  if (gens.empty()) {
    // Trivial group; only the identity map exists.
    return std::vector<int>{b.identity};
  }

  std::vector<int> images(gens.size(), -1);
  std::vector<int> result;

  auto try_leaf = [&]() -> bool {
    std::vector<int> map(a.order, -1);
    map[a.identity] = b.identity;
    std::vector<int> queue{a.identity};
    while (!queue.empty()) {
      const int x = queue.back();
      queue.pop_back();
      for (size_t k = 0; k < gens.size(); ++k) {
        const int y = a.mul(x, gens[k]);
        const int m = b.mul(map[x], images[k]);
        if (map[y] == -1) {
          map[y] = m;
          queue.push_back(y);
        } else if (map[y] != m) {
          return false;
        }
      }
    }
    std::vector<char> hit(b.order, 0);
    for (int x = 0; x < a.order; ++x) {
      if (map[x] == -1 || hit[map[x]]) return false;
      hit[map[x]] = 1;
    }
    for (int x = 0; x < a.order; ++x)
      for (int y = 0; y < a.order; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
    result = std::move(map);
    return true;
  };

  auto rec = [&](auto&& self, size_t k) -> bool {
    if (k == gens.size()) return try_leaf();
    std::vector<int> partial;
    for (size_t i = 0; i < k; ++i) partial.push_back(images[i]);
    for (int cand = 0; cand < b.order; ++cand) {
      if (ord_b[cand] != ord_a[gens[k]]) continue;
      auto seed = partial;
      seed.push_back(cand);
      if (closure(b, seed).order() != prefix_size[k]) continue;
      images[k] = cand;
      if (self(self, k + 1)) return true;
    }
    images[k] = -1;
    return false;
  };
  if (rec(rec, 0)) return result;
  return std::nullopt;
}

inline bool are_isomorphic(const FinGroup& a, const FinGroup& b) {
  return isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Quotient and subquotient catalogs
// ---------------------------------------------------------------------------

struct QuotientEntry {
  FinGroup group;
  Subgroup normal;
};

// Quotients G/N of order > 1, one representative per isomorphism class,
// ordered by (order, table, normal subgroup).
inline std::vector<QuotientEntry> nontrivial_quotients_up_to_iso(
    const FinGroup& g, const Config& cfg = default_config()) {
  expect(g.order <= cfg.max_group_order, errc::size_cap_exceeded,
         "quotient catalog capped at order " + std::to_string(cfg.max_group_order));
  std::vector<QuotientEntry> all;
  for (auto& n : normal_subgroups(g, cfg)) {
    if (n.order() == g.order) continue;
    all.push_back({quotient_group(g, n).group, std::move(n)});
  }
  std::sort(all.begin(), all.end(), [](const QuotientEntry& x, const QuotientEntry& y) {
    if (x.group.order != y.group.order) return x.group.order < y.group.order;
    if (x.group.table != y.group.table) return x.group.table < y.group.table;
    return x.normal.elements < y.normal.elements;
  });
  std::vector<QuotientEntry> kept;
  for (auto& e : all) {
    bool fresh = true;
    for (const auto& k : kept)
      if (are_isomorphic(k.group, e.group)) {
        fresh = false;
        break;
      }
    if (fresh) kept.push_back(std::move(e));
  }
  return kept;
}

struct SubquotientEntry {
  FinGroup group;
  Subgroup sub;            // K, in parent indices
  Subgroup normal_in_sub;  // L, in parent indices
};

// All K/L with L normal in K <= H, one representative per isomorphism class.
inline std::vector<SubquotientEntry> subquotient_catalog(const FinGroup& h,
                                                         const Config& cfg = default_config()) {
  expect(h.order <= cfg.max_group_order, errc::size_cap_exceeded,
         "subquotient catalog capped at order " + std::to_string(cfg.max_group_order));
  std::vector<SubquotientEntry> all;
  for (const auto& k : subgroups(h, cfg)) {
    const auto kg = subgroup_as_group(h, k);
    for (const auto& l : normal_subgroups(kg.group, cfg)) {
      std::vector<int> l_parent;
      for (int e : l.elements) l_parent.push_back(kg.parent_of[e]);
      all.push_back({quotient_group(kg.group, l).group, k, Subgroup{std::move(l_parent)}});
    }
  }
  std::sort(all.begin(), all.end(), [](const SubquotientEntry& x, const SubquotientEntry& y) {
    if (x.group.order != y.group.order) return x.group.order < y.group.order;
    if (x.group.table != y.group.table) return x.group.table < y.group.table;
    if (x.sub.elements != y.sub.elements) return x.sub.elements < y.sub.elements;
    return x.normal_in_sub.elements < y.normal_in_sub.elements;
  });
  std::vector<SubquotientEntry> kept;
  for (auto& e : all) {
    bool fresh = true;
    for (const auto& k : kept)
      if (are_isomorphic(k.group, e.group)) {
        fresh = false;
        break;
      }
    if (fresh) kept.push_back(std::move(e));
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Goursat correspondence for subgroups of a product
// ---------------------------------------------------------------------------

// Subgroups S <= G x H correspond to quintuples (K1, L1, K2, L2, theta)
// with L1 normal in K1 <= G, L2 normal in K2 <= H and theta an isomorphism
// K1/L1 -> K2/L2. Cosets are indexed by least representative.
struct GoursatTriple {
  Subgroup k1, l1;  // in G
  Subgroup k2, l2;  // in H
  std::vector<int> theta;

  friend bool operator==(const GoursatTriple&, const GoursatTriple&) = default;
};

namespace detail {

inline int product_index(const FinGroup& h, int a, int b) { return a * h.order + b; }

inline void check_product_subgroup(const FinGroup& g, const FinGroup& h,
                                   const Subgroup& s) {
  expect(!s.elements.empty(), errc::not_a_subgroup, "a subgroup cannot be empty");
  const int n = g.order * h.order;
  for (int e : s.elements)
    expect(e >= 0 && e < n, errc::index_out_of_range, "element outside the product group");
  for (int x : s.elements)
    for (int y : s.elements) {
      const int prod = product_index(h, g.mul(x / h.order, y / h.order),
                                     h.mul(x % h.order, y % h.order));
      expect(s.contains(prod), errc::not_a_subgroup,
             "set is not closed: " + std::to_string(x) + " * " + std::to_string(y) +
                 " escapes it");
    }
}

}  // namespace detail

inline GoursatTriple goursat_decompose(const FinGroup& g, const FinGroup& h,
                                       const Subgroup& s) {
  detail::check_product_subgroup(g, h, s);

  std::vector<int> k1, l1, k2, l2;
  for (int e : s.elements) {
    k1.push_back(e / h.order);
    k2.push_back(e % h.order);
    if (e % h.order == h.identity) l1.push_back(e / h.order);
    if (e / h.order == g.identity) l2.push_back(e % h.order);
  }
  auto dedupe = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(k1);
  dedupe(l1);
  dedupe(k2);
  dedupe(l2);

  const auto kg1 = subgroup_as_group(g, Subgroup{k1});
  const auto kg2 = subgroup_as_group(h, Subgroup{k2});
  std::vector<int> l1_local, l2_local;
  for (int e : l1) l1_local.push_back(kg1.local_of[e]);
  for (int e : l2) l2_local.push_back(kg2.local_of[e]);
  internal_check(is_normal(kg1.group, Subgroup{l1_local}), "first kernel is not normal");
  internal_check(is_normal(kg2.group, Subgroup{l2_local}), "second kernel is not normal");
  const auto q1 = quotient_group(kg1.group, Subgroup{l1_local});
  const auto q2 = quotient_group(kg2.group, Subgroup{l2_local});
  internal_check(q1.group.order == q2.group.order, "quotients differ in order");

  std::vector<int> theta(q1.group.order, -1);
  for (int e : s.elements) {
    const int c1 = q1.coset_of[kg1.local_of[e / h.order]];
    const int c2 = q2.coset_of[kg2.local_of[e % h.order]];
    if (theta[c1] == -1)
      theta[c1] = c2;
    else
      internal_check(theta[c1] == c2, "graph map is not well defined");
  }
  for (int i = 0; i < q1.group.order; ++i)
    for (int j = 0; j < q1.group.order; ++j)
      internal_check(theta[q1.group.mul(i, j)] == q2.group.mul(theta[i], theta[j]),
                     "graph map is not a homomorphism");

  return GoursatTriple{Subgroup{k1}, Subgroup{l1}, Subgroup{k2}, Subgroup{l2},
                       std::move(theta)};
}

inline Subgroup goursat_reconstruct(const FinGroup& g, const FinGroup& h,
                                    const GoursatTriple& t) {
  expect(is_subgroup(g, t.k1.elements), errc::not_a_subgroup, "K1 is not a subgroup");
  expect(is_subgroup(g, t.l1.elements), errc::not_a_subgroup, "L1 is not a subgroup");
  expect(is_subgroup(h, t.k2.elements), errc::not_a_subgroup, "K2 is not a subgroup");
  expect(is_subgroup(h, t.l2.elements), errc::not_a_subgroup, "L2 is not a subgroup");
  expect(std::includes(t.k1.elements.begin(), t.k1.elements.end(), t.l1.elements.begin(),
                       t.l1.elements.end()),
         errc::bad_params, "L1 must lie inside K1");
  expect(std::includes(t.k2.elements.begin(), t.k2.elements.end(), t.l2.elements.begin(),
                       t.l2.elements.end()),
         errc::bad_params, "L2 must lie inside K2");

  const auto kg1 = subgroup_as_group(g, t.k1);
  const auto kg2 = subgroup_as_group(h, t.k2);
  std::vector<int> l1_local, l2_local;
  for (int e : t.l1.elements) l1_local.push_back(kg1.local_of[e]);
  for (int e : t.l2.elements) l2_local.push_back(kg2.local_of[e]);
  expect(is_normal(kg1.group, Subgroup{l1_local}), errc::not_normal, "L1 is not normal in K1");
  expect(is_normal(kg2.group, Subgroup{l2_local}), errc::not_normal, "L2 is not normal in K2");
  const auto q1 = quotient_group(kg1.group, Subgroup{l1_local});
  const auto q2 = quotient_group(kg2.group, Subgroup{l2_local});
  expect(q1.group.order == q2.group.order &&
             static_cast<int>(t.theta.size()) == q1.group.order,
         errc::bad_params, "graph map must be a bijection between the quotients");
  {
    std::vector<char> hit(q2.group.order, 0);
    for (int v : t.theta) {
      expect(v >= 0 && v < q2.group.order && !hit[v], errc::bad_params,
             "graph map must be a bijection between the quotients");
      hit[v] = 1;
    }
    for (int i = 0; i < q1.group.order; ++i)
      for (int j = 0; j < q1.group.order; ++j)
        expect(t.theta[q1.group.mul(i, j)] == q2.group.mul(t.theta[i], t.theta[j]),
               errc::bad_params, "graph map must be a homomorphism");
  }

  std::vector<int> elems;
  for (int a : t.k1.elements)
    for (int b : t.k2.elements)
      if (t.theta[q1.coset_of[kg1.local_of[a]]] == q2.coset_of[kg2.local_of[b]])
        elems.push_back(detail::product_index(h, a, b));
  return Subgroup{std::move(elems)};
}

// ---------------------------------------------------------------------------
// Actions on cosets
// ---------------------------------------------------------------------------

struct CosetTable {
  std::vector<int> coset_of;
  std::vector<int> reps;  // ascending least representatives
};

inline CosetTable left_cosets(const FinGroup& p, const Subgroup& s) {
  std::vector<int> coset_of(p.order, -1);
  std::vector<int> reps;
  for (int a = 0; a < p.order; ++a) {
    if (coset_of[a] != -1) continue;
    const int k = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int x : s.elements) coset_of[p.mul(a, x)] = k;
  }
  return CosetTable{std::move(coset_of), std::move(reps)};
}

struct GroupAction {
  int degree = 0;
  std::vector<std::vector<int>> perms;  // one permutation per group element
};

inline bool action_is_valid(const FinGroup& p, const GroupAction& a) {
  if (static_cast<int>(a.perms.size()) != p.order) return false;
  for (const auto& perm : a.perms) {
    if (static_cast<int>(perm.size()) != a.degree) return false;
    std::vector<char> hit(a.degree, 0);
    for (int v : perm) {
      if (v < 0 || v >= a.degree || hit[v]) return false;
      hit[v] = 1;
    }
  }
  for (int c = 0; c < a.degree; ++c)
    if (a.perms[p.identity][c] != c) return false;
  for (int x = 0; x < p.order; ++x)
    for (int y = 0; y < p.order; ++y)
      for (int c = 0; c < a.degree; ++c)
        if (a.perms[p.mul(x, y)][c] != a.perms[x][a.perms[y][c]]) return false;
  return true;
}

// Left translation on the cosets of s. The construction is homomorphic by
// associativity; the generator spot-check guards against table corruption.
inline GroupAction coset_action(const FinGroup& p, const Subgroup& s) {
  expect(is_subgroup(p, s.elements), errc::not_a_subgroup, "element set is not a subgroup");
  const auto ct = left_cosets(p, s);
  const int degree = static_cast<int>(ct.reps.size());
  GroupAction a{degree, std::vector<std::vector<int>>(p.order, std::vector<int>(degree))};
  for (int x = 0; x < p.order; ++x)
    for (int c = 0; c < degree; ++c) a.perms[x][c] = ct.coset_of[p.mul(x, ct.reps[c])];
  for (int c = 0; c < degree; ++c)
    internal_check(a.perms[p.identity][c] == c, "identity fails to act trivially");
  for (int gen : generating_set(p))
    for (int x = 0; x < p.order; ++x)
      for (int c = 0; c < degree; ++c)
        internal_check(a.perms[p.mul(gen, x)][c] == a.perms[gen][a.perms[x][c]],
                       "coset translation is not homomorphic");
  return a;
}

// One-object category whose morphisms are the group elements;
// compose(g, f) = g * f.
inline fincat::FinCategory as_category(const FinGroup& g) {
  fincat::FinCategory c;
  c.object_count = 1;
  c.morphisms.assign(g.order, {0, 0});
  c.identity_of = {g.identity};
  c.composition.resize(static_cast<size_t>(g.order) * g.order);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      c.composition[static_cast<size_t>(a) * g.order + b] = g.mul(a, b);
  c.tag = g.tag.empty() ? "group" : "group:" + g.tag;
  return c;
}

}  // namespace limcolim::groups
