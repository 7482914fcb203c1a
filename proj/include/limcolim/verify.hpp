#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "limcolim/commute.hpp"
#include "limcolim/json_io.hpp"

namespace limcolim::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"c2",  "c3", "c4", "c5",     "c6",
                                                 "c7",  "c8", "c12", "klein4", "s3",
                                                 "s4",  "a4", "d4",  "d5",     "q8"};
  return names;
}

// Subgroup lists per ordered preset pair, computed once per unordered pair;
// the reversed pair is obtained by transposing coordinates.
class ProductCache {
 public:
  explicit ProductCache(const Config& cfg) : cfg_(cfg) {
    for (const auto& n : preset_names()) groups_.push_back(groups::group_preset(n, cfg));
  }

  int count() const { return static_cast<int>(groups_.size()); }
  const groups::FinGroup& group(int i) const { return groups_[static_cast<size_t>(i)]; }
  const std::string& name(int i) const { return preset_names()[static_cast<size_t>(i)]; }

  const std::vector<groups::Subgroup>& subgroups_of(int a, int b) {
    const auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<groups::Subgroup> subs;
    if (a > b) {
      const auto& fwd = subgroups_of(b, a);
      subs.reserve(fwd.size());
      const int go = group(a).order, ho = group(b).order;
      for (const auto& s : fwd) {
        std::vector<int> e;
        e.reserve(s.elements.size());
        for (int x : s.elements) e.push_back((x % go) * ho + x / go);
        std::sort(e.begin(), e.end());
        subs.push_back(groups::Subgroup{std::move(e)});
      }
      std::sort(subs.begin(), subs.end());
    } else {
      const auto p = groups::direct_product(group(a), group(b), cfg_);
      subs = groups::subgroups(p, cfg_);
    }
    return cache_.emplace(key, std::move(subs)).first->second;
  }

 private:
  Config cfg_;
  std::vector<groups::FinGroup> groups_;
  std::map<std::pair<int, int>, std::vector<groups::Subgroup>> cache_;
};

// The subquotient criterion computed directly from the catalogs, bypassing
// the coprime fast path.
inline bool raw_criterion_commutes(const groups::FinGroup& g, const groups::FinGroup& h,
                                   const Config& cfg) {
  for (const auto& q : groups::nontrivial_quotients_up_to_iso(g, cfg))
    for (const auto& s : groups::subquotient_catalog(h, cfg))
      if (groups::are_isomorphic(q.group, s.group)) return false;
  return true;
}

// All subsets containing the identity and closed under multiplication.
inline std::vector<std::vector<int>> subset_closure_subgroups(const groups::FinGroup& g) {
  const int n = g.order;
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!((mask >> g.identity) & 1u)) continue;
    std::vector<int> elems;
    for (int x = 0; x < n; ++x)
      if ((mask >> x) & 1u) elems.push_back(x);
    bool closed = true;
    for (size_t i = 0; i < elems.size() && closed; ++i)
      for (size_t j = 0; j < elems.size() && closed; ++j)
        closed = (mask >> g.mul(elems[i], elems[j])) & 1u;
    if (closed) out.push_back(std::move(elems));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

inline std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << s << "s";
  return o.str();
}

}  // namespace detail

// Runs the full self-verification suite. Witness bifunctors for the failing
// diagonal pairs are written under witness_dir. Progress lines go to
// *progress as each check finishes (pass nullptr to silence them).
inline std::vector<CheckResult> run_all(std::ostream* progress,
                                        const Config& cfg = default_config(),
                                        const std::string& witness_dir = "verify_witnesses") {
  std::vector<CheckResult> results;
  detail::ProductCache cache(cfg);
  const int np = cache.count();
  const long long product_bound = 144;

  const auto product_order = [&](int a, int b) {
    return static_cast<long long>(cache.group(a).order) * cache.group(b).order;
  };

  const auto record = [&](CheckResult r) {
    if (progress) {
      *progress << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name << " ("
                << detail::fmt_seconds(r.seconds) << ")\n";
      if (!r.pass) *progress << "     " << r.detail << "\n";
      progress->flush();
    }
    results.push_back(std::move(r));
  };

  // Verdict table shared between checks 4 and 9.
  std::map<std::pair<int, int>, bool> orbit_verdicts;

  // 1. Quotiented two-coset bifunctor on (parallel_pair, span).
  {
    detail::Timer t;
    CheckResult r{1, "foltz witness on (parallel_pair, span) is 2 vs 1 and not injective"};
    try {
      const auto w = commute::foltz_witness_auto(fincat::parallel_pair_category(),
                                                 fincat::span_category(), cfg);
      r.seconds = t.elapsed();
      const bool sizes = w.report.colim_lim_size == 2 && w.report.lim_colim_size == 1 &&
                         !w.report.injective;
      r.pass = sizes && r.seconds < 1.0;
      std::ostringstream d;
      d << "colim_lim=" << w.report.colim_lim_size << " lim_colim=" << w.report.lim_colim_size
        << " injective=" << (w.report.injective ? "true" : "false") << " span=(apex "
        << w.apex << ", legs " << w.left_leg << "," << w.right_leg << ") budget 1s";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 2. Hom-set bifunctor for a cocone-free parallel pair in c2.
  {
    detail::Timer t;
    CheckResult r{2, "cone witness on (parallel_pair, group:c2) is 0 vs 1 and not surjective"};
    try {
      const auto pp = fincat::parallel_pair_category();
      const auto c2cat = groups::as_category(groups::group_preset("c2", cfg));
      const auto d =
          fincat::build_diagram(fincat::opposite_category(pp), c2cat, {0, 0}, {0, 0, 0, 1});
      const auto w = commute::cone_witness(pp, c2cat, d, cfg);
      r.seconds = t.elapsed();
      const bool sizes = w.report.colim_lim_size == 0 && w.report.lim_colim_size == 1 &&
                         !w.report.surjective;
      r.pass = sizes && r.seconds < 1.0;
      std::ostringstream det;
      det << "colim_lim=" << w.report.colim_lim_size
          << " lim_colim=" << w.report.lim_colim_size
          << " surjective=" << (w.report.surjective ? "true" : "false") << " budget 1s";
      r.detail = det.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 3. Coprime pairs commute by both methods.
  {
    detail::Timer t;
    CheckResult r{3, "coprime preset pairs commute with both methods agreeing"};
    try {
      int pairs = 0, bad = 0;
      std::string first_bad;
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b) {
          if (product_order(a, b) > product_bound) continue;
          if (std::gcd(cache.group(a).order, cache.group(b).order) != 1) continue;
          ++pairs;
          const auto rep =
              commute::decide_commute(cache.group(a), cache.group(b), commute::Method::both, cfg);
          const bool ok = rep.commutes && rep.agreement.value_or(false);
          if (!ok && first_bad.empty()) first_bad = cache.name(a) + "," + cache.name(b);
          bad += !ok;
        }
      r.seconds = t.elapsed();
      r.pass = pairs >= 20 && bad == 0 && r.seconds < 60.0;
      std::ostringstream d;
      d << pairs << " coprime pairs (need >= 20), " << bad << " disagreed";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      d << ", budget 60s";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 4. Subquotient criterion equals the orbit scan on the full census.
  {
    detail::Timer t;
    CheckResult r{4, "criterion and orbit verdicts match on all preset pairs up to order 144"};
    try {
      int pairs = 0, mismatches = 0;
      std::string first_bad;
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b) {
          if (product_order(a, b) > product_bound) continue;
          ++pairs;
          const auto& g = cache.group(a);
          const auto& h = cache.group(b);
          const bool crit = detail::raw_criterion_commutes(g, h, cfg);
          const auto p = groups::direct_product(g, h, cfg);
          bool orbit = true;
          for (const auto& s : cache.subgroups_of(a, b))
            if (commute::detail::orbit_condition_fails(g, h, p, s)) {
              orbit = false;
              break;
            }
          orbit_verdicts[{a, b}] = orbit;
          if (crit != orbit) {
            ++mismatches;
            if (first_bad.empty()) first_bad = cache.name(a) + "," + cache.name(b);
          }
        }
      r.seconds = t.elapsed();
      r.pass = mismatches == 0 && r.seconds < 300.0;
      std::ostringstream d;
      d << pairs << " ordered pairs, " << mismatches << " mismatches";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      d << ", budget 300s";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 5. Distinct primes commute, equal primes do not, with written witnesses.
  {
    detail::Timer t;
    CheckResult r{5, "prime cyclic separation with emitted witness bifunctors"};
    try {
      const std::vector<int> primes = {2, 3, 5, 7};
      std::filesystem::create_directories(witness_dir);
      int bad = 0, files = 0;
      std::string first_bad;
      for (int p : primes)
        for (int q : primes) {
          const auto gp = groups::cyclic_group(p);
          const auto gq = groups::cyclic_group(q);
          const auto rep = commute::decide_commute(gp, gq, commute::Method::both, cfg);
          if (p != q) {
            if (!rep.commutes) {
              ++bad;
              if (first_bad.empty())
                first_bad = "c" + std::to_string(p) + ",c" + std::to_string(q);
            }
            continue;
          }
          bool ok = !rep.commutes;
          if (ok) {
            const auto w = commute::group_witness(gp, gp, cfg);
            ok = !w.report.bijective;
            if (ok) {
              const auto path = std::filesystem::path(witness_dir) /
                                ("group_witness_c" + std::to_string(p) + "_c" +
                                 std::to_string(p) + ".json");
              std::ofstream out(path);
              out << io::group_witness_to_json(w).dump(2) << "\n";
              ok = out.good();
              files += ok;
            }
          }
          if (!ok) {
            ++bad;
            if (first_bad.empty())
              first_bad = "c" + std::to_string(p) + ",c" + std::to_string(p);
          }
        }
      r.seconds = t.elapsed();
      r.pass = bad == 0 && files == static_cast<int>(primes.size());
      std::ostringstream d;
      d << "12 distinct-prime pairs commute, 4 diagonal pairs refuted, " << files
        << " witness files under " << witness_dir;
      if (!first_bad.empty()) d << " (first bad: " << first_bad << ")";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 6. One-object shape facts across the preset list.
  {
    detail::Timer t;
    CheckResult r{6, "group presets have span cocones and lack parallel-pair cocones"};
    try {
      int bad = 0;
      std::string first_bad;
      for (int a = 0; a < np; ++a) {
        const auto flags = fincat::classify(groups::as_category(cache.group(a)), cfg);
        const bool ok = flags.has_span_cocones && !flags.has_parallel_pair_cocones;
        if (!ok) {
          ++bad;
          if (first_bad.empty()) first_bad = cache.name(a);
        }
      }
      r.seconds = t.elapsed();
      r.pass = bad == 0;
      std::ostringstream d;
      d << np << " presets checked, " << bad << " wrong";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 7. Goursat roundtrip across the same census, both orders.
  {
    detail::Timer t;
    CheckResult r{7, "goursat decompose and reconstruct is the identity with distinct triples"};
    try {
      long long subgroup_total = 0;
      int bad = 0;
      std::string first_bad;
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b) {
          if (product_order(a, b) > product_bound) continue;
          const auto& g = cache.group(a);
          const auto& h = cache.group(b);
          const auto& subs = cache.subgroups_of(a, b);
          std::vector<groups::GoursatTriple> triples;
          triples.reserve(subs.size());
          bool pair_ok = true;
          for (const auto& s : subs) {
            const auto tpl = groups::goursat_decompose(g, h, s);
            const auto back = groups::goursat_reconstruct(g, h, tpl);
            pair_ok = pair_ok && back.elements == s.elements;
            triples.push_back(tpl);
          }
          for (size_t i = 0; i < triples.size() && pair_ok; ++i)
            for (size_t j = i + 1; j < triples.size() && pair_ok; ++j)
              pair_ok = !(triples[i] == triples[j]);
          pair_ok = pair_ok && triples.size() == subs.size();
          subgroup_total += static_cast<long long>(subs.size());
          if (!pair_ok) {
            ++bad;
            if (first_bad.empty()) first_bad = cache.name(a) + "," + cache.name(b);
          }
        }
      r.seconds = t.elapsed();
      r.pass = bad == 0;
      std::ostringstream d;
      d << subgroup_total << " subgroups roundtripped, " << bad << " bad pairs";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 8. Production enumeration vs bitmask subset closure.
  {
    detail::Timer t;
    CheckResult r{8, "subgroup enumeration matches exhaustive subset closure up to order 16"};
    try {
      std::vector<std::pair<std::string, groups::FinGroup>> census;
      for (int a = 0; a < np; ++a)
        if (cache.group(a).order <= 16) census.emplace_back(cache.name(a), cache.group(a));
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
          if (product_order(a, b) <= 16)
            census.emplace_back(cache.name(a) + "x" + cache.name(b),
                                groups::direct_product(cache.group(a), cache.group(b), cfg));
      int bad = 0;
      std::string first_bad;
      for (const auto& [name, g] : census) {
        std::vector<std::vector<int>> production;
        for (const auto& s : groups::subgroups(g, cfg)) production.push_back(s.elements);
        std::sort(production.begin(), production.end(), [](const auto& x, const auto& y) {
          if (x.size() != y.size()) return x.size() < y.size();
          return x < y;
        });
        if (production != detail::subset_closure_subgroups(g)) {
          ++bad;
          if (first_bad.empty()) first_bad = name;
        }
      }
      r.seconds = t.elapsed();
      r.pass = bad == 0 && !census.empty();
      std::ostringstream d;
      d << census.size() << " groups compared, " << bad << " mismatches";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 9. Seeded sampling never refutes a commuting pair.
  {
    detail::Timer t;
    CheckResult r{9, "seeded search finds no counterexample for commuting pairs"};
    try {
      Config scfg = cfg;
      scfg.max_samples = 1000;
      int pairs = 0, bad = 0;
      long long samples = 0;
      std::string first_bad;
      for (const auto& [key, commutes] : orbit_verdicts) {
        if (!commutes) continue;
        ++pairs;
        const auto res =
            commute::bounded_search(groups::as_category(cache.group(key.first)),
                                    groups::as_category(cache.group(key.second)), scfg);
        samples += res.samples_tried;
        const bool ok = !res.counterexample.has_value() && res.samples_tried >= 1000;
        if (!ok) {
          ++bad;
          if (first_bad.empty())
            first_bad = cache.name(key.first) + "," + cache.name(key.second);
        }
      }
      r.seconds = t.elapsed();
      r.pass = pairs > 0 && bad == 0 && r.seconds < 600.0;
      std::ostringstream d;
      d << pairs << " commuting pairs, " << samples << " bifunctors sampled, " << bad
        << " false counterexamples";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      d << ", budget 600s";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  // 10. Pseudo-filtered equals the componentwise conjunction, computed here
  // through full_subcategory as an independent path.
  {
    detail::Timer t;
    CheckResult r{10, "pseudo-filtered equals componentwise filtered on the catalog"};
    try {
      const std::vector<std::string> catalog = {
          "terminal", "empty",     "discrete:2",    "discrete:3", "chain:2",
          "chain:3",  "span",      "cospan",        "parallel_pair", "idempotent",
          "group:c2", "group:s3",  "group:klein4",  "jk:1:2",     "jk:2:3"};
      int bad = 0;
      std::string first_bad;
      for (const auto& name : catalog) {
        const auto c = io::category_preset(name, cfg);
        const auto flags = fincat::classify(c, cfg);
        bool conj = true;
        for (const auto& comp : fincat::connected_components(c))
          conj = conj && fincat::is_filtered(fincat::full_subcategory(c, comp));
        if (flags.is_pseudo_filtered != conj) {
          ++bad;
          if (first_bad.empty()) first_bad = name;
        }
      }
      r.seconds = t.elapsed();
      r.pass = bad == 0 && catalog.size() >= 12;
      std::ostringstream d;
      d << catalog.size() << " categories checked, " << bad << " mismatches";
      if (!first_bad.empty()) d << " (first: " << first_bad << ")";
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.seconds = t.elapsed();
      r.detail = std::string("threw: ") + e.what();
    }
    record(std::move(r));
  }

  return results;
}

inline io::json results_to_json(const std::vector<CheckResult>& results) {
  io::json out = io::json::array();
  for (const auto& r : results)
    out.push_back(
        {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  return out;
}

}  // namespace limcolim::verify
