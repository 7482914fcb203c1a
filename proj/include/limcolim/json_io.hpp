#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "limcolim/commute.hpp"
#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"
#include "limcolim/fincat.hpp"
#include "limcolim/groups.hpp"
#include "limcolim/setfun.hpp"

namespace limcolim::io {

using json = nlohmann::json;

inline json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, where + ": " + e.what());
  }
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  expect(in.good(), errc::parse_error, "cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace detail {

inline void require_keys(const json& j, const std::vector<std::string>& keys,
                         const std::string& what) {
  expect(j.is_object(), errc::parse_error, what + " must be a JSON object");
  for (const auto& k : keys)
    expect(j.contains(k), errc::parse_error, what + " is missing the key \"" + k + "\"");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool known = false;
    for (const auto& want : keys) known = known || want == k;
    expect(known, errc::parse_error, what + " has an unknown key \"" + k + "\"");
  }
}

inline int to_int(const json& j, const std::string& what) {
  expect(j.is_number_integer(), errc::parse_error, what + " must be an integer");
  return j.get<int>();
}

inline std::vector<int> to_int_vector(const json& j, const std::string& what) {
  expect(j.is_array(), errc::parse_error, what + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(to_int(e, what + " entry"));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

inline json category_to_json(const fincat::FinCategory& c) {
  json j;
  j["objects"] = c.object_count;
  j["morphisms"] = json::array();
  for (int f = 0; f < c.morphism_count(); ++f)
    j["morphisms"].push_back({{"id", f}, {"src", c.src(f)}, {"dst", c.dst(f)}});
  j["identities"] = c.identity_of;
  j["compose"] = json::array();
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f)) j["compose"].push_back({g, f, c.compose(g, f)});
  if (!c.tag.empty()) j["tag"] = c.tag;
  return j;
}

inline fincat::FinCategory category_from_json(const json& j) {
  expect(j.is_object(), errc::parse_error, "category must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    expect(k == "objects" || k == "morphisms" || k == "identities" || k == "compose" ||
               k == "tag",
           errc::parse_error, "category has an unknown key \"" + k + "\"");
  }
  for (const char* k : {"objects", "morphisms", "identities", "compose"})
    expect(j.contains(k), errc::parse_error,
           "category is missing the key \"" + std::string(k) + "\"");

  fincat::RawCategory raw;
  raw.object_count = detail::to_int(j["objects"], "objects");
  expect(j["morphisms"].is_array(), errc::parse_error, "morphisms must be an array");
  int next_id = 0;
  for (const auto& m : j["morphisms"]) {
    detail::require_keys(m, {"id", "src", "dst"}, "morphism");
    expect(detail::to_int(m["id"], "morphism id") == next_id, errc::parse_error,
           "morphism ids must be 0,1,... in order; got " + m["id"].dump() + " at position " +
               std::to_string(next_id));
    ++next_id;
    raw.morphisms.push_back(
        {detail::to_int(m["src"], "src"), detail::to_int(m["dst"], "dst")});
  }
  raw.identity_of = detail::to_int_vector(j["identities"], "identities");
  expect(j["compose"].is_array(), errc::parse_error, "compose must be an array");
  for (const auto& t : j["compose"]) {
    const auto v = detail::to_int_vector(t, "compose triple");
    expect(v.size() == 3, errc::parse_error, "compose entries must be [g, f, gf] triples");
    raw.compositions.push_back({v[0], v[1], v[2]});
  }
  if (j.contains("tag")) raw.tag = j["tag"].get<std::string>();
  return fincat::build_category(raw);
}

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

inline json group_to_json(const groups::FinGroup& g) {
  json j;
  j["order"] = g.order;
  j["table"] = json::array();
  for (int a = 0; a < g.order; ++a) {
    json row = json::array();
    for (int b = 0; b < g.order; ++b) row.push_back(g.mul(a, b));
    j["table"].push_back(row);
  }
  if (!g.labels.empty()) j["labels"] = g.labels;
  if (!g.tag.empty()) j["tag"] = g.tag;
  return j;
}

inline groups::FinGroup group_from_json(const json& j) {
  expect(j.is_object(), errc::parse_error, "group must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    expect(k == "order" || k == "table" || k == "labels" || k == "tag", errc::parse_error,
           "group has an unknown key \"" + k + "\"");
  }
  for (const char* k : {"order", "table"})
    expect(j.contains(k), errc::parse_error,
           "group is missing the key \"" + std::string(k) + "\"");
  const int order = detail::to_int(j["order"], "order");
  expect(j["table"].is_array() && static_cast<int>(j["table"].size()) == order,
         errc::parse_error, "table must have one row per element");
  std::vector<int> flat;
  for (const auto& row : j["table"]) {
    const auto r = detail::to_int_vector(row, "table row");
    expect(static_cast<int>(r.size()) == order, errc::parse_error,
           "table rows must have one entry per element");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    expect(j["labels"].is_array(), errc::parse_error, "labels must be an array");
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  std::string tag = j.contains("tag") ? j["tag"].get<std::string>() : std::string();
  return groups::group_from_table(order, std::move(flat), std::move(labels), std::move(tag));
}

// ---------------------------------------------------------------------------
// Preset strings and file-or-preset arguments
// ---------------------------------------------------------------------------

// Grammar: terminal | empty | discrete:n | chain:n | span | cospan |
// parallel_pair | idempotent | group:NAME | jk:k:N.
inline fincat::FinCategory category_preset(const std::string& name,
                                           const Config& cfg = default_config()) {
  const auto num = [&](const std::string& s) {
    expect(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
           errc::usage_error, "expected a number in preset \"" + name + "\"");
    return std::stoi(s);
  };
  if (name == "terminal") return fincat::terminal_category();
  if (name == "empty") return fincat::empty_category();
  if (name == "span") return fincat::span_category();
  if (name == "cospan") return fincat::cospan_category();
  if (name == "parallel_pair") return fincat::parallel_pair_category();
  if (name == "idempotent") return fincat::idempotent_category();
  if (name.rfind("discrete:", 0) == 0) return fincat::discrete_category(num(name.substr(9)));
  if (name.rfind("chain:", 0) == 0) return fincat::chain_category(num(name.substr(6)));
  if (name.rfind("group:", 0) == 0)
    return groups::as_category(groups::group_preset(name.substr(6), cfg));
  if (name.rfind("jk:", 0) == 0) {
    const auto rest = name.substr(3);
    const auto colon = rest.find(':');
    expect(colon != std::string::npos, errc::usage_error,
           "jk preset needs the form jk:k:N");
    return fincat::jk_category(num(rest.substr(0, colon)), num(rest.substr(colon + 1)));
  }
  fail(errc::usage_error, "unknown category preset \"" + name + "\"");
}

inline fincat::FinCategory parse_category(const std::string& arg,
                                          const Config& cfg = default_config()) {
  if (std::filesystem::exists(arg)) return category_from_json(load_json_file(arg));
  try {
    return category_preset(arg, cfg);
  } catch (const Error& e) {
    if (e.code() == errc::bad_params)
      fail(errc::usage_error, std::string("bad category preset: ") + e.what());
    throw;
  }
}

inline groups::FinGroup parse_group(const std::string& arg,
                                    const Config& cfg = default_config()) {
  if (std::filesystem::exists(arg)) return group_from_json(load_json_file(arg));
  try {
    return groups::group_preset(arg, cfg);
  } catch (const Error& e) {
    if (e.code() == errc::bad_params)
      fail(errc::usage_error, std::string("unknown group preset \"") + arg + "\": " +
                                  e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// Functors
// ---------------------------------------------------------------------------

inline json functor_to_json(const setfun::SetFunctor& f) {
  json j;
  j["category"] = category_to_json(f.domain);
  j["carriers"] = f.carrier;
  json action = json::object();
  for (int m = 0; m < f.domain.morphism_count(); ++m)
    action[std::to_string(m)] = f.action[m];
  j["action"] = action;
  return j;
}

namespace detail {

inline setfun::SetFunctor functor_from_parts(const json& j, fincat::FinCategory domain,
                                             const std::string& what) {
  for (const char* k : {"carriers", "action"})
    expect(j.contains(k), errc::parse_error,
           what + " is missing the key \"" + std::string(k) + "\"");
  const auto carriers = to_int_vector(j["carriers"], "carriers");
  expect(j["action"].is_object(), errc::parse_error,
         "action must be an object keyed by morphism id");
  std::vector<std::vector<int>> action(domain.morphism_count());
  std::vector<char> seen(domain.morphism_count(), 0);
  for (const auto& [key, value] : j["action"].items()) {
    expect(!key.empty() && key.find_first_not_of("0123456789") == std::string::npos,
           errc::parse_error, "action key \"" + key + "\" is not a morphism id");
    const int m = std::stoi(key);
    expect(m >= 0 && m < domain.morphism_count(), errc::parse_error,
           "action names morphism " + key + " outside the category");
    action[m] = to_int_vector(value, "action of morphism " + key);
    seen[m] = 1;
  }
  for (int m = 0; m < domain.morphism_count(); ++m)
    expect(seen[m], errc::parse_error,
           what + " action is missing morphism " + std::to_string(m));
  return setfun::build_functor(std::move(domain), carriers, std::move(action));
}

inline fincat::FinCategory category_ref_or_inline(const json& j, const Config& cfg) {
  if (j.is_string()) return category_preset(j.get<std::string>(), cfg);
  return category_from_json(j);
}

}  // namespace detail

inline setfun::SetFunctor functor_from_json(const json& j,
                                            const Config& cfg = default_config()) {
  expect(j.is_object(), errc::parse_error, "functor must be a JSON object");
  expect(j.contains("category"), errc::parse_error,
         "functor is missing the key \"category\"");
  return detail::functor_from_parts(j, detail::category_ref_or_inline(j["category"], cfg),
                                    "functor");
}

inline json bifunctor_to_json(const setfun::BiFunctor& b) {
  json j = functor_to_json(b.functor);
  j["factors"] = {{"I", category_to_json(b.left)}, {"J", category_to_json(b.right)}};
  return j;
}

inline setfun::BiFunctor bifunctor_from_json(const json& j,
                                             const Config& cfg = default_config()) {
  expect(j.is_object(), errc::parse_error, "bifunctor must be a JSON object");
  expect(j.contains("factors"), errc::parse_error,
         "bifunctor is missing the key \"factors\"");
  const auto& factors = j["factors"];
  expect(factors.is_object() && factors.contains("I") && factors.contains("J"),
         errc::parse_error, "factors must hold categories under \"I\" and \"J\"");
  auto left = detail::category_ref_or_inline(factors["I"], cfg);
  auto right = detail::category_ref_or_inline(factors["J"], cfg);
  fincat::FinCategory domain;
  if (j.contains("category"))
    domain = detail::category_ref_or_inline(j["category"], cfg);
  else
    domain = fincat::product_category(left, right, cfg).category;
  auto functor = detail::functor_from_parts(j, std::move(domain), "bifunctor");
  return setfun::build_bifunctor(std::move(left), std::move(right), std::move(functor), cfg);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json flags_to_json(const fincat::PropertyFlags& f) {
  return {{"is_empty", f.is_empty},
          {"is_connected", f.is_connected},
          {"is_conical", f.is_conical},
          {"is_filtered", f.is_filtered},
          {"is_pseudo_filtered", f.is_pseudo_filtered},
          {"is_sifted", f.is_sifted},
          {"has_span_cocones", f.has_span_cocones},
          {"has_parallel_pair_cocones", f.has_parallel_pair_cocones},
          {"component_count", f.component_count},
          {"truncation_warning", f.truncation_warning}};
}

inline json comparison_to_json(const setfun::ComparisonReport& r) {
  return {{"colim_lim_size", r.colim_lim_size},
          {"lim_colim_size", r.lim_colim_size},
          {"map_table", r.map_table},
          {"injective", r.injective},
          {"surjective", r.surjective},
          {"bijective", r.bijective},
          {"colim_lim_elements", r.colim_lim_elements},
          {"lim_colim_elements", r.lim_colim_elements}};
}

inline json subgroup_to_json(const groups::Subgroup& s) { return json(s.elements); }

inline json commutation_to_json(const commute::CommutationReport& r) {
  json j;
  j["verdict"] = r.commutes ? "commute" : "not_commute";
  j["methods_run"] = r.methods_run;
  if (r.agreement) j["agreement"] = *r.agreement;
  if (r.criterion_evidence) {
    const auto& e = *r.criterion_evidence;
    j["criterion_evidence"] = {
        {"quotient",
         {{"group", group_to_json(e.quotient.group)},
          {"normal", subgroup_to_json(e.quotient.normal)}}},
        {"subquotient",
         {{"group", group_to_json(e.subquotient.group)},
          {"sub", subgroup_to_json(e.subquotient.sub)},
          {"normal_in_sub", subgroup_to_json(e.subquotient.normal_in_sub)}}},
        {"isomorphism", e.isomorphism}};
  }
  if (r.orbit_evidence) {
    j["orbit_evidence"] = {{"subgroup", subgroup_to_json(r.orbit_evidence->subgroup)},
                           {"report", comparison_to_json(r.orbit_evidence->report)}};
  }
  return j;
}

inline json group_info_to_json(const groups::FinGroup& g,
                               const Config& cfg = default_config()) {
  json j;
  j["order"] = g.order;
  j["abelian"] = groups::is_abelian(g);
  j["center"] = groups::center(g);
  const auto subs = groups::subgroups(g, cfg);
  j["subgroup_count"] = static_cast<int>(subs.size());
  j["normal_subgroups"] = json::array();
  for (const auto& n : groups::normal_subgroups(g, cfg))
    j["normal_subgroups"].push_back(subgroup_to_json(n));
  j["quotients"] = json::array();
  for (const auto& q : groups::nontrivial_quotients_up_to_iso(g, cfg))
    j["quotients"].push_back(
        {{"group", group_to_json(q.group)}, {"normal", subgroup_to_json(q.normal)}});
  j["subquotients"] = json::array();
  for (const auto& s : groups::subquotient_catalog(g, cfg))
    j["subquotients"].push_back({{"group", group_to_json(s.group)},
                                 {"sub", subgroup_to_json(s.sub)},
                                 {"normal_in_sub", subgroup_to_json(s.normal_in_sub)}});
  return j;
}

inline json group_witness_to_json(const commute::GroupWitness& w) {
  return {{"kind", "group"},
          {"subgroup", subgroup_to_json(w.subgroup)},
          {"goursat",
           {{"k1", subgroup_to_json(w.triple.k1)},
            {"l1", subgroup_to_json(w.triple.l1)},
            {"k2", subgroup_to_json(w.triple.k2)},
            {"l2", subgroup_to_json(w.triple.l2)},
            {"theta", w.triple.theta}}},
          {"bifunctor", bifunctor_to_json(w.bifunctor)},
          {"report", comparison_to_json(w.report)}};
}

inline json cone_witness_to_json(const commute::ConeWitness& w) {
  return {{"kind", "cone"},
          {"diagram",
           {{"object_map", w.diagram.object_map}, {"morphism_map", w.diagram.morphism_map}}},
          {"bifunctor", bifunctor_to_json(w.bifunctor)},
          {"report", comparison_to_json(w.report)}};
}

inline json foltz_witness_to_json(const commute::FoltzWitness& w) {
  return {{"kind", "foltz"},
          {"span", {{"apex", w.apex}, {"left_leg", w.left_leg}, {"right_leg", w.right_leg}}},
          {"bifunctor", bifunctor_to_json(w.bifunctor)},
          {"report", comparison_to_json(w.report)}};
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

struct CliConfig {
  Config engine;
  std::string format = "json";
};

inline CliConfig config_from_json(const json& j) {
  CliConfig out;
  expect(j.is_object(), errc::parse_error, "config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k == "max_exhaustive_objects")
      out.engine.max_exhaustive_objects = detail::to_int(v, k);
    else if (k == "max_exhaustive_morphisms")
      out.engine.max_exhaustive_morphisms = detail::to_int(v, k);
    else if (k == "max_limit_families") {
      expect(v.is_number_unsigned() || v.is_number_integer(), errc::parse_error,
             "max_limit_families must be an integer");
      out.engine.max_limit_families = v.get<std::uint64_t>();
    } else if (k == "max_group_order")
      out.engine.max_group_order = detail::to_int(v, k);
    else if (k == "max_product_group_order")
      out.engine.max_product_group_order = detail::to_int(v, k);
    else if (k == "max_product_morphisms")
      out.engine.max_product_morphisms = detail::to_int(v, k);
    else if (k == "max_carrier_total")
      out.engine.max_carrier_total = detail::to_int(v, k);
    else if (k == "max_samples")
      out.engine.max_samples = detail::to_int(v, k);
    else if (k == "seed") {
      expect(v.is_number_unsigned() || v.is_number_integer(), errc::parse_error,
             "seed must be an integer");
      out.engine.seed = v.get<std::uint64_t>();
    } else if (k == "parallelism")
      out.engine.parallelism = detail::to_int(v, k);
    else if (k == "format") {
      const auto s = v.get<std::string>();
      expect(s == "json" || s == "text", errc::parse_error,
             "format must be \"json\" or \"text\"");
      out.format = s;
    } else
      fail(errc::parse_error, "config has an unknown key \"" + k + "\"");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering: the same tree as the JSON output, indented
// ---------------------------------------------------------------------------

inline void render_text(const json& j, std::ostream& out, int indent = 0) {
  const std::string pad(2 * static_cast<size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && !v[0].is_primitive())) {
        out << pad << k << ":\n";
        render_text(v, out, indent + 1);
      } else if (v.is_array()) {
        out << pad << k << ": " << v.dump() << "\n";
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
            << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << pad << "-\n";
        render_text(v, out, indent + 1);
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(j, out);
  else
    out << j.dump(2) << "\n";
}

}  // namespace limcolim::io
