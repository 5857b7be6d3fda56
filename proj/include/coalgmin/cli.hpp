#pragma once

// Command-line front end. Exit codes: 0 success / property holds,
// 1 property fails, 2 input or validation error.

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coalgmin/coalgmin.hpp"

namespace coalgmin::cli {

enum ExitCode : int { Success = 0, PropertyFalse = 1, InputError = 2 };

namespace detail {

using io::AnyCoalgebra;

inline std::string states(std::size_t n) { return std::to_string(n) + (n == 1 ? " state" : " states"); }

inline PointedCoalgebra require_pointed(const AnyCoalgebra& c, const std::string& path) {
  if (auto* p = std::get_if<PointedCoalgebra>(&c)) return *p;
  throw Error(ErrorKind::ValidationError, "'" + path + "' has no point", path);
}

inline const Coalgebra& base_of(const AnyCoalgebra& c) {
  return std::visit([](const auto& x) -> const Coalgebra& { return underlying(x); }, c);
}

inline std::string join_names(const Coalgebra& c, const std::vector<StateIndex>& xs) {
  std::string out;
  for (auto x : xs) out += (out.empty() ? "" : ", ") + c.states[x];
  return out;
}

struct Output {
  std::filesystem::path dir;
  std::ostream& out;

  void write(const std::string& name, const std::string& content) const {
    std::filesystem::create_directories(dir);
    io::write_file((dir / name).string(), content);
    out << "wrote " << (dir / name).string() << "\n";
  }
};

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"coalgmin: reachability, simple quotients and well-pointed modifications of finite coalgebras"};
  app.require_subcommand(1);

  std::string file, file_b, dom_path, cod_path, map_path, out_dir = ".", partition_path, order = "simple-first", suite;
  bool pointed = false;
  std::size_t max_candidates = oracle::HomSearchConfig{}.max_candidates;
  std::uint64_t seeds = 200;
  std::size_t max_states = 6;

  auto* validate = app.add_subcommand("validate", "check a coalgebra document");
  validate->add_option("file", file)->required();

  auto* check_hom = app.add_subcommand("check-hom", "decide whether a map is a coalgebra homomorphism");
  auto* factorize_cmd = app.add_subcommand("factorize", "factor a homomorphism through its image");
  for (auto* sub : {check_hom, factorize_cmd}) {
    sub->add_option("--dom", dom_path)->required();
    sub->add_option("--cod", cod_path)->required();
    sub->add_option("--map", map_path)->required();
    sub->add_flag("--pointed", pointed, "also require point preservation");
  }
  factorize_cmd->add_option("--out-dir", out_dir)->required();

  auto* reach = app.add_subcommand("reach", "reachable part of a pointed coalgebra");
  auto* minimize = app.add_subcommand("minimize", "simple quotient by partition refinement");
  auto* quotient = app.add_subcommand("quotient", "quotient by a given partition");
  auto* wellpoint = app.add_subcommand("wellpoint", "well-pointed modification");
  auto* unravel = app.add_subcommand("unravel", "tree unravelling of an acyclic pointed coalgebra");
  for (auto* sub : {reach, minimize, quotient, wellpoint, unravel}) {
    sub->add_option("file", file)->required();
    sub->add_option("--out-dir", out_dir, "directory for output documents");
  }
  quotient->add_option("--partition", partition_path)->required();
  wellpoint->add_option("--order", order)->check(CLI::IsMember({"simple-first", "reach-first", "both"}));

  auto* iso = app.add_subcommand("iso", "find an isomorphism between two coalgebras");
  auto* homs = app.add_subcommand("homs", "enumerate all homomorphisms between two coalgebras");
  for (auto* sub : {iso, homs}) {
    sub->add_option("a", file)->required();
    sub->add_option("b", file_b)->required();
    sub->add_flag("--pointed", pointed, "only point-preserving maps");
  }
  homs->add_option("--max", max_candidates, "search bound on visited candidates");

  auto* dot = app.add_subcommand("dot", "render as Graphviz DOT on standard output");
  dot->add_option("file", file)->required();

  auto* props = app.add_subcommand("props", "run seeded oracle property suites");
  props->add_option("--suite", suite, "suite name or 'all'")->required();
  props->add_option("--seeds", seeds, "number of seeds per functor");
  props->add_option("--max-states", max_states, "largest generated carrier");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Success : InputError;
  }

  try {
    Output output{out_dir, out};

    if (validate->parsed()) {
      auto c = io::load_coalgebra(file);
      const auto& b = base_of(c);
      out << "ok: " << states(b.size()) << ", functor " << b.functor.name()
          << (std::holds_alternative<PointedCoalgebra>(c) ? ", pointed" : "") << "\n";
      return Success;
    }

    if (check_hom->parsed() || factorize_cmd->parsed()) {
      auto dom = io::load_coalgebra(dom_path);
      auto cod = io::load_coalgebra(cod_path);
      auto map = io::parse_morphism(io::read_file(map_path), base_of(dom), base_of(cod));
      if (check_hom->parsed()) {
        HomCheck result = pointed ? check_homomorphism(require_pointed(dom, dom_path), require_pointed(cod, cod_path), map)
                                  : check_homomorphism(base_of(dom), base_of(cod), map);
        out << "homomorphism: " << (result.holds ? "true" : "false") << "\n";
        if (!result.counterexamples.empty()) {
          out << "counterexamples: " << join_names(base_of(dom), result.counterexamples) << "\n";
        }
        if (result.point_violated) out << "point not preserved\n";
        return result.holds ? Success : PropertyFalse;
      }
      auto write = [&](const auto& f) {
        output.write("e.json", io::serialize_morphism(f.e));
        output.write("image.json", io::serialize(f.image));
        output.write("m.json", io::serialize_morphism(f.m));
      };
      if (pointed) {
        write(factorize(PointedMorphism{require_pointed(dom, dom_path), require_pointed(cod, cod_path), map}));
      } else {
        write(factorize(CoalgebraMorphism{base_of(dom), base_of(cod), map}));
      }
      return Success;
    }

    if (reach->parsed()) {
      auto c = require_pointed(io::load_coalgebra(file), file);
      auto r = reachable_part(c);
      out << "reachable: " << r.reachable.size() << " of " << states(c.size()) << "\n";
      output.write("reachable.json", io::serialize(r.reachable));
      output.write("embedding.json", io::serialize_morphism(r.embedding));
      return Success;
    }

    if (minimize->parsed() || quotient->parsed()) {
      auto c = io::load_coalgebra(file);
      return std::visit(
          [&](const auto& x) {
            auto q = minimize->parsed()
                         ? simple_quotient(x)
                         : apply_partition_quotient(x, io::parse_partition(io::read_file(partition_path), underlying(x)));
            out << "quotient: " << q.quotient.size() << " of " << states(x.size()) << "\n";
            output.write("quotient.json", io::serialize(q.quotient));
            output.write("projection.json", io::serialize_morphism(q.projection));
            if (minimize->parsed()) output.write("partition.json", io::dump(io::partition_to_json(q.partition, underlying(x))));
            return static_cast<int>(Success);
          },
          c);
    }

    if (wellpoint->parsed()) {
      auto c = require_pointed(io::load_coalgebra(file), file);
      if (order == "simple-first") {
        auto w = well_pointed_modification(c);
        out << "well-pointed: " << states(w.size()) << "\n";
        output.write("simple-first.json", io::serialize(w));
        return Success;
      }
      if (order == "reach-first") {
        auto w = simple_quotient(reachable_part(c).reachable).quotient;
        out << "reach-first: " << states(w.size()) << ", reachable: " << (is_reachable(w) ? "true" : "false") << "\n";
        output.write("reach-first.json", io::serialize(w));
        return Success;
      }
      auto report = commutation_check(c);
      output.write("simple-first.json", io::serialize(report.simple_first));
      output.write("reach-first.json", io::serialize(report.reach_first));
      io::json verdict = {{"agree", report.agree},
                          {"simple_first_states", report.simple_first.size()},
                          {"reach_first_states", report.reach_first.size()},
                          {"reach_first_reachable", is_reachable(report.reach_first)}};
      verdict["iso"] = report.iso ? io::morphism_to_json(report.simple_first.base, report.reach_first.base, *report.iso)["map"]
                                  : io::json(nullptr);
      output.write("verdict.json", io::dump(verdict));
      out << "agree: " << (report.agree ? "true" : "false") << "\n";
      return report.agree ? Success : PropertyFalse;
    }

    if (iso->parsed() || homs->parsed()) {
      auto a = io::load_coalgebra(file);
      auto b = io::load_coalgebra(file_b);
      if (iso->parsed()) {
        auto found = pointed ? are_isomorphic(require_pointed(a, file), require_pointed(b, file_b))
                             : are_isomorphic(base_of(a), base_of(b));
        if (!found) {
          out << "isomorphic: false\n";
          return PropertyFalse;
        }
        out << io::dump(io::morphism_to_json(base_of(a), base_of(b), *found));
        return Success;
      }
      oracle::HomSearchConfig cfg;
      cfg.max_candidates = max_candidates;
      std::optional<std::pair<StateIndex, StateIndex>> points;
      if (pointed) points = std::pair{require_pointed(a, file).point, require_pointed(b, file_b).point};
      auto maps = oracle::enumerate_homomorphism_maps(base_of(a), base_of(b), points, cfg);
      io::json list = io::json::array();
      for (const auto& m : maps) list.push_back(io::morphism_to_json(base_of(a), base_of(b), m)["map"]);
      out << io::dump({{"count", maps.size()}, {"homomorphisms", list}});
      return Success;
    }

    if (unravel->parsed()) {
      auto c = require_pointed(io::load_coalgebra(file), file);
      auto u = tree_unravel(c);
      out << "tree: " << states(u.tree.size()) << "\n";
      output.write("tree.json", io::serialize(u.tree));
      output.write("covering.json", io::serialize_morphism(u.covering));
      return Success;
    }

    if (dot->parsed()) {
      auto c = io::load_coalgebra(file);
      out << std::visit([](const auto& x) { return emit_dot(x); }, c);
      return Success;
    }

    if (props->parsed()) {
      bool all_pass = true;
      for (const auto& r : oracle::run_suite(suite, seeds, max_states)) {
        out << r.summary() << "\n";
        for (const auto& f : r.failures) out << "  failure " << f.instance << ": " << f.witness << "\n";
        all_pass = all_pass && r.passed();
      }
      return all_pass ? Success : PropertyFalse;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}

}  // namespace coalgmin::cli
