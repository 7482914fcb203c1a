#pragma once

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "limcolim/json_io.hpp"
#include "limcolim/verify.hpp"

namespace limcolim::cli {

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s, size_t want,
                                       const std::string& what) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    expect(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos,
           errc::usage_error, what + " must be a comma-separated list of integers");
    out.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  expect(out.size() == want, errc::usage_error,
         what + " needs exactly " + std::to_string(want) + " integers");
  return out;
}

inline void write_file(const std::string& path, const io::json& j) {
  std::ofstream f(path);
  expect(f.good(), errc::usage_error, "cannot write to " + path);
  f << j.dump(2) << "\n";
  expect(f.good(), errc::usage_error, "write to " + path + " failed");
}

}  // namespace detail

// Parses and dispatches one invocation. Exit code 0 means the computation
// completed (verdicts live in the report), 1 means usage, parse, or domain
// errors, 2 means a size cap was exceeded.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite limit/colimit commutation toolkit"};
  app.name("limcolim");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format;
  std::uint64_t seed = 0;
  int parallelism = 0;
  auto* config_opt =
      app.add_option("--config", config_path, "JSON config file (default: $LIMCOLIM_CONFIG)");
  auto* format_opt = app.add_option("--format", format, "Output format")
                         ->check(CLI::IsMember({"json", "text"}));
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
  auto* par_opt = app.add_option("--parallelism", parallelism, "Worker count")
                      ->check(CLI::PositiveNumber);

  auto* classify_cmd =
      app.add_subcommand("classify", "Report shape properties of a category");
  std::string classify_input;
  classify_cmd->add_option("input", classify_input, "Category preset or JSON file")
      ->required();

  auto* commute_cmd =
      app.add_subcommand("commute-groups", "Decide limit/colimit commutation for two groups");
  std::string cg_g, cg_h, cg_method = "both";
  bool cg_witness = false;
  commute_cmd->add_option("G", cg_g, "Limit-side group preset or file")->required();
  commute_cmd->add_option("H", cg_h, "Colimit-side group preset or file")->required();
  commute_cmd->add_option("--method", cg_method, "Decision method")
      ->check(CLI::IsMember({"criterion", "orbits", "both"}));
  commute_cmd->add_flag("--witness", cg_witness,
                        "Attach an explicit counterexample bifunctor when the verdict is "
                        "not_commute");

  auto* witness_cmd = app.add_subcommand("witness", "Build an explicit counterexample");
  witness_cmd->require_subcommand(1);
  witness_cmd->fallthrough();

  auto* foltz_cmd = witness_cmd->add_subcommand(
      "foltz", "Quotiented two-coset bifunctor over a cocone-free span");
  std::string fz_i, fz_j, fz_span, fz_out;
  foltz_cmd->add_option("I", fz_i, "Limit-side category preset or file")->required();
  foltz_cmd->add_option("J", fz_j, "Colimit-side category preset or file")->required();
  foltz_cmd->add_option("--span", fz_span,
                        "j0,j1,j2,beta,gamma (objects and legs; searched when omitted)");
  foltz_cmd->add_option("--out", fz_out, "Also write the bifunctor JSON to this file");

  auto* cone_cmd = witness_cmd->add_subcommand(
      "cone", "Hom-set bifunctor of a cocone-free diagram");
  std::string cn_i, cn_j, cn_diagram, cn_out;
  cone_cmd->add_option("I", cn_i, "Limit-side category preset or file")->required();
  cone_cmd->add_option("J", cn_j, "Colimit-side category preset or file")->required();
  cone_cmd->add_option("--diagram", cn_diagram,
                       "JSON file with object_map/morphism_map for a diagram of shape I^op "
                       "in J (searched when omitted)");
  cone_cmd->add_option("--out", cn_out, "Also write the bifunctor JSON to this file");

  auto* group_cmd = witness_cmd->add_subcommand(
      "group", "Coset-action bifunctor refuting a non-commuting group pair");
  std::string gw_g, gw_h, gw_out;
  group_cmd->add_option("G", gw_g, "Limit-side group preset or file")->required();
  group_cmd->add_option("H", gw_h, "Colimit-side group preset or file")->required();
  group_cmd->add_option("--out", gw_out, "Also write the bifunctor JSON to this file");

  auto* compare_cmd =
      app.add_subcommand("compare", "Run the canonical comparison map on a bifunctor file");
  std::string cmp_file;
  compare_cmd->add_option("bifunctor", cmp_file, "Bifunctor JSON file")->required();

  auto* info_cmd = app.add_subcommand("group-info", "Subgroup and quotient catalogs");
  std::string gi_g;
  info_cmd->add_option("G", gi_g, "Group preset or file")->required();

  auto* verify_cmd =
      app.add_subcommand("verify-paper", "Run the full self-verification suite");
  std::string vp_dir = "verify_witnesses";
  verify_cmd->add_option("--witness-dir", vp_dir, "Directory for emitted witness files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    io::CliConfig cc;
    const char* env_path = std::getenv("LIMCOLIM_CONFIG");
    if (config_opt->count() > 0)
      cc = io::config_from_json(io::load_json_file(config_path));
    else if (env_path != nullptr && *env_path != '\0')
      cc = io::config_from_json(io::load_json_file(env_path));
    if (format_opt->count() > 0) cc.format = format;
    if (seed_opt->count() > 0) cc.engine.seed = seed;
    if (par_opt->count() > 0) cc.engine.parallelism = parallelism;
    const Config& cfg = cc.engine;

    if (classify_cmd->parsed()) {
      const auto c = io::parse_category(classify_input, cfg);
      io::emit(io::flags_to_json(fincat::classify(c, cfg)), cc.format, out);
      return 0;
    }

    if (commute_cmd->parsed()) {
      const auto g = io::parse_group(cg_g, cfg);
      const auto h = io::parse_group(cg_h, cfg);
      const auto method = cg_method == "criterion"  ? commute::Method::criterion
                          : cg_method == "orbits"   ? commute::Method::orbits
                                                    : commute::Method::both;
      const auto rep = commute::decide_commute(g, h, method, cfg);
      auto j = io::commutation_to_json(rep);
      if (cg_witness && !rep.commutes)
        j["witness"] = io::group_witness_to_json(commute::group_witness(g, h, cfg));
      io::emit(j, cc.format, out);
      return 0;
    }

    if (foltz_cmd->parsed()) {
      const auto i_cat = io::parse_category(fz_i, cfg);
      const auto j_cat = io::parse_category(fz_j, cfg);
      commute::FoltzWitness w;
      if (foltz_cmd->count("--span") > 0) {
        const auto v = detail::parse_int_list(fz_span, 5, "--span");
        for (int k = 0; k < 3; ++k)
          expect(v[k] >= 0 && v[k] < j_cat.object_count, errc::usage_error,
                 "--span object " + std::to_string(v[k]) + " outside J");
        for (int k = 3; k < 5; ++k)
          expect(v[k] >= 0 && v[k] < j_cat.morphism_count(), errc::usage_error,
                 "--span leg " + std::to_string(v[k]) + " outside J");
        expect(j_cat.src(v[3]) == v[0] && j_cat.dst(v[3]) == v[1], errc::usage_error,
               "--span: beta must run j0 -> j1");
        expect(j_cat.src(v[4]) == v[0] && j_cat.dst(v[4]) == v[2], errc::usage_error,
               "--span: gamma must run j0 -> j2");
        w = commute::foltz_witness(i_cat, j_cat, v[3], v[4], cfg);
      } else {
        w = commute::foltz_witness_auto(i_cat, j_cat, cfg);
      }
      if (!fz_out.empty()) detail::write_file(fz_out, io::bifunctor_to_json(w.bifunctor));
      io::emit(io::foltz_witness_to_json(w), cc.format, out);
      return 0;
    }

    if (cone_cmd->parsed()) {
      const auto i_cat = io::parse_category(cn_i, cfg);
      const auto j_cat = io::parse_category(cn_j, cfg);
      commute::ConeWitness w;
      if (cone_cmd->count("--diagram") > 0) {
        const auto dj = io::load_json_file(cn_diagram);
        io::detail::require_keys(dj, {"object_map", "morphism_map"}, "diagram");
        const auto d = fincat::build_diagram(
            fincat::opposite_category(i_cat), j_cat,
            io::detail::to_int_vector(dj["object_map"], "object_map"),
            io::detail::to_int_vector(dj["morphism_map"], "morphism_map"));
        w = commute::cone_witness(i_cat, j_cat, d, cfg);
      } else {
        w = commute::cone_witness_auto(i_cat, j_cat, cfg);
      }
      if (!cn_out.empty()) detail::write_file(cn_out, io::bifunctor_to_json(w.bifunctor));
      io::emit(io::cone_witness_to_json(w), cc.format, out);
      return 0;
    }

    if (group_cmd->parsed()) {
      const auto g = io::parse_group(gw_g, cfg);
      const auto h = io::parse_group(gw_h, cfg);
      const auto w = commute::group_witness(g, h, cfg);
      if (!gw_out.empty()) detail::write_file(gw_out, io::bifunctor_to_json(w.bifunctor));
      io::emit(io::group_witness_to_json(w), cc.format, out);
      return 0;
    }

    if (compare_cmd->parsed()) {
      const auto b = io::bifunctor_from_json(io::load_json_file(cmp_file), cfg);
      io::emit(io::comparison_to_json(setfun::comparison_report(b, cfg)), cc.format, out);
      return 0;
    }

    if (info_cmd->parsed()) {
      const auto g = io::parse_group(gi_g, cfg);
      io::emit(io::group_info_to_json(g, cfg), cc.format, out);
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto results = verify::run_all(&err, cfg, vp_dir);
      io::emit(verify::results_to_json(results), cc.format, out);
      return 0;
    }

    fail(errc::usage_error, "no subcommand given");
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == errc::size_cap_exceeded ? 2 : 1;
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace limcolim::cli
