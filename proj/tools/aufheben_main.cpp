// aufheben — command-line front end for the finite-category level toolkit.
//
// Exit codes: 0 = computed and all invariants held; 1 = domain error, with
// {"error": code, "witness": ...} on standard error; 2 = usage error.
// Every file argument accepts "-" for standard input. The environment
// variable AUFHEBEN_CAP overrides the default size/enumeration caps.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aufheben/fincat.hpp"
#include "aufheben/ideals.hpp"
#include "aufheben/io.hpp"
#include "aufheben/levels.hpp"
#include "aufheben/presheaf.hpp"

namespace {

using aufheben::Error;
using nlohmann::json;

std::string slurp(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ParseError", "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Splits a comma-separated name list, ignoring commas inside parentheses or
// brackets so product names like "([0],2)" survive intact.
std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : csv) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::size_t cap_or(std::size_t fallback) {
  const char* s = std::getenv("AUFHEBEN_CAP");
  if (s == nullptr || *s == '\0') return fallback;
  try {
    const long long v = std::stoll(s);
    if (v <= 0) throw std::out_of_range("nonpositive");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error("InvalidParams", std::string("AUFHEBEN_CAP must be a positive integer, got ") + s);
  }
}

std::string bracey(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ",";
    out += names[i];
  }
  return out + "}";
}

void warn_formula_only(bool formula_only) {
  if (formula_only) {
    std::cerr << "warning: category lacks the split-epi/mono factorization property; "
                 "successor computed by formula only\n";
  }
}

aufheben::MorphismIdeal ideal_from_flags(const aufheben::FinCategory& cat,
                                         const std::string& subcat,
                                         const std::string& generators) {
  if (!subcat.empty() && !generators.empty()) {
    throw Error("InvalidParams", "--subcat and --generators are mutually exclusive");
  }
  if (!subcat.empty()) {
    return aufheben::ideal_of_subcategory(cat, aufheben::make_subcategory(cat, split_names(subcat)));
  }
  aufheben::Bitset gens(cat.num_morphisms());
  for (const std::string& name : split_names(generators)) gens.set(cat.morphism_id(name));
  return aufheben::two_sided_closure(cat, gens);
}

json classify_json(const aufheben::FinCategory& cat, aufheben::MorId f) {
  const aufheben::MorphismClass& c = cat.classes().row(f);
  json j;
  j["name"] = cat.morphisms[f].name;
  j["mono"] = c.mono;
  j["epi"] = c.epi;
  j["split_mono"] = c.split_mono;
  j["split_epi"] = c.split_epi;
  j["iso"] = c.iso;
  if (auto fac = aufheben::split_epi_mono_factor(cat, f)) {
    j["factor"] = {{"e", cat.morphisms[fac->first].name}, {"m", cat.morphisms[fac->second].name}};
  } else {
    j["factor"] = nullptr;
  }
  return j;
}

std::string classify_text(const aufheben::FinCategory& cat, aufheben::MorId f) {
  const aufheben::MorphismClass& c = cat.classes().row(f);
  std::ostringstream out;
  out << cat.morphisms[f].name << ": mono=" << c.mono << " epi=" << c.epi
      << " split_mono=" << c.split_mono << " split_epi=" << c.split_epi << " iso=" << c.iso;
  if (auto fac = aufheben::split_epi_mono_factor(cat, f)) {
    out << " factor=(" << cat.morphisms[fac->first].name << " ; "
        << cat.morphisms[fac->second].name << ")";
  } else {
    out << " factor=none";
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"finite categories: levels, successors, ideals, and presheaf machinery"};
  app.require_subcommand(1);

  std::string cat_path, psh_path, morphism, subcat, generators, map_name, ontop_elem;
  std::string dot_path;
  bool as_json = false, check_idem = false, check_mc = false;
  bool op_core = false, op_sheafify = false, op_boolean = false;
  int dim_max = -1;
  std::string kind;
  std::vector<std::string> params;

  CLI::App* cmd_check = app.add_subcommand("check", "validate a category file");
  cmd_check->add_option("category", cat_path, "category JSON ('-' = stdin)")->required();

  CLI::App* cmd_classify = app.add_subcommand("classify", "mono/epi/split/iso classification");
  cmd_classify->add_option("category", cat_path)->required();
  cmd_classify->add_option("--morphism", morphism, "classify this morphism only");
  cmd_classify->add_flag("--json", as_json, "emit JSON instead of text");

  CLI::App* cmd_levels = app.add_subcommand("levels", "poset of subobject-closed subcategories");
  cmd_levels->add_option("category", cat_path)->required();
  auto* dot_opt = cmd_levels->add_option("--dot", dot_path, "emit DOT (to stdout, or to a file)");
  dot_opt->expected(0, 1);
  cmd_levels->add_flag("--json", as_json)->excludes(dot_opt);

  CLI::App* cmd_chain = app.add_subcommand("chain", "successor chain from the empty level");
  cmd_chain->add_option("category", cat_path)->required();
  cmd_chain->add_flag("--json", as_json);

  CLI::App* cmd_succ = app.add_subcommand("successor", "successor of a closed subcategory");
  cmd_succ->add_option("category", cat_path)->required();
  cmd_succ->add_option("--subcat", subcat, "comma-separated object names")->required();
  cmd_succ->add_flag("--json", as_json);

  CLI::App* cmd_ideal = app.add_subcommand("ideal", "two-sided ideal from generators or a subcategory");
  cmd_ideal->add_option("category", cat_path)->required();
  cmd_ideal->add_option("--generators", generators, "comma-separated morphism names");
  cmd_ideal->add_option("--subcat", subcat, "comma-separated object names");
  cmd_ideal->add_flag("--idempotent", check_idem, "report the idempotence verdict");
  cmd_ideal->add_flag("--mc", check_mc, "report the mono-cartesian verdict");

  CLI::App* cmd_ontop = app.add_subcommand("ontop", "is a map on top of an ideal");
  cmd_ontop->add_option("category", cat_path)->required();
  cmd_ontop->add_option("--map", map_name, "morphism name")->required();
  cmd_ontop->add_option("--subcat", subcat);
  cmd_ontop->add_option("--generators", generators);
  cmd_ontop->add_flag("--json", as_json);

  CLI::App* cmd_psh = app.add_subcommand("presheaf", "presheaf operations for an ideal topology");
  cmd_psh->add_option("category", cat_path)->required();
  cmd_psh->add_option("presheaf", psh_path, "presheaf JSON ('-' = stdin)")->required();
  cmd_psh->add_option("--ideal-subcat", subcat, "ideal of this subcategory");
  cmd_psh->add_option("--ideal-generators", generators, "ideal closure of these morphisms");
  auto* o_core = cmd_psh->add_flag("--core", op_core, "I-generated core");
  auto* o_shf = cmd_psh->add_flag("--sheafify", op_sheafify, "sheaf reflection (plus twice)");
  auto* o_bool = cmd_psh->add_flag("--boolean", op_boolean, "is the subobject lattice Boolean");
  auto* o_dim = cmd_psh->add_option("--dim", dim_max, "Heyting dimension, probing depth <= N");
  auto* o_ontop = cmd_psh->add_option("--ontop", ontop_elem, "OBJECT:ELEMENT on-top test");
  o_core->excludes(o_shf)->excludes(o_bool)->excludes(o_dim)->excludes(o_ontop);
  o_shf->excludes(o_bool)->excludes(o_dim)->excludes(o_ontop);
  o_bool->excludes(o_dim)->excludes(o_ontop);
  o_dim->excludes(o_ontop);

  CLI::App* cmd_ex = app.add_subcommand("example", "emit a generated example category");
  cmd_ex->add_option("kind", kind, "delta | fin | trees | graphic | poset")->required();
  cmd_ex->add_option("params", params, "kind parameters (e.g. a truncation bound)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_check->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    json j;
    j["name"] = cat.name;
    j["objects"] = cat.num_objects();
    j["morphisms"] = cat.num_morphisms();
    j["valid"] = true;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (cmd_classify->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    std::vector<aufheben::MorId> targets;
    if (morphism.empty()) {
      for (aufheben::MorId f = 0; f < static_cast<aufheben::MorId>(cat.num_morphisms()); ++f)
        targets.push_back(f);
    } else {
      targets.push_back(cat.morphism_id(morphism));
    }
    if (as_json) {
      if (targets.size() == 1 && !morphism.empty()) {
        std::cout << classify_json(cat, targets[0]).dump(2) << "\n";
      } else {
        json arr = json::array();
        for (aufheben::MorId f : targets) arr.push_back(classify_json(cat, f));
        std::cout << arr.dump(2) << "\n";
      }
    } else {
      for (aufheben::MorId f : targets) std::cout << classify_text(cat, f) << "\n";
    }
    return 0;
  }

  if (cmd_levels->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    const aufheben::LevelPoset lp = aufheben::level_poset(cat, cap_or(100000));
    warn_formula_only(lp.formula_only);
    if (dot_opt->count() > 0) {
      const std::string dot = aufheben::level_poset_to_dot(lp);
      if (dot_path.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw Error("ParseError", "cannot open " + dot_path + " for writing");
        out << dot;
      }
    } else if (as_json) {
      std::cout << aufheben::level_poset_to_json(lp);
    } else {
      std::cout << "levels: " << lp.levels.size() << "\n";
      for (std::size_t i = 0; i < lp.levels.size(); ++i) {
        std::cout << i << ": " << bracey(object_names(lp.levels[i])) << "\n";
      }
      std::cout << "covers:";
      for (const auto& [lo, hi] : lp.covers) std::cout << " " << lo << "->" << hi;
      std::cout << "\nsuccessor:";
      for (std::size_t i = 0; i < lp.successor.size(); ++i)
        std::cout << " " << i << "->" << lp.successor[i];
      std::cout << "\n";
    }
    return 0;
  }

  if (cmd_chain->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    bool formula_only = false;
    const auto chain = aufheben::successor_chain(cat, &formula_only);
    warn_formula_only(formula_only);
    if (as_json) {
      std::cout << aufheben::chain_to_json(cat, chain, formula_only);
    } else {
      for (const auto& s : chain) std::cout << bracey(object_names(s)) << "\n";
    }
    return 0;
  }

  if (cmd_succ->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    bool formula_only = false;
    const aufheben::FullSubcategory s = aufheben::make_subcategory(cat, split_names(subcat));
    const aufheben::FullSubcategory next = aufheben::successor(cat, s, &formula_only);
    warn_formula_only(formula_only);
    if (as_json) {
      json j;
      j["objects"] = object_names(next);
      j["formula_only"] = formula_only;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << bracey(object_names(next)) << "\n";
    }
    return 0;
  }

  if (cmd_ideal->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    if (subcat.empty() && generators.empty()) {
      throw Error("InvalidParams", "ideal needs --generators or --subcat");
    }
    const aufheben::MorphismIdeal ideal = ideal_from_flags(cat, subcat, generators);
    const json members = aufheben::morphism_names(ideal);
    if (!check_idem && !check_mc) {
      std::cout << members.dump(2) << "\n";
      return 0;
    }
    json j;
    j["members"] = members;
    if (check_idem) {
      const auto v = aufheben::is_idempotent(cat, ideal);
      j["idempotent"] = v.idempotent;
      if (v.counterexample) {
        j["idempotent_counterexample"] = cat.morphisms[*v.counterexample].name;
      }
    }
    if (check_mc) {
      const aufheben::McVerdict v = aufheben::is_mono_cartesian(cat, ideal);
      j["mono_cartesian"] = v.result == aufheben::McVerdict::Result::kYes  ? "yes"
                            : v.result == aufheben::McVerdict::Result::kNo ? "no"
                                                                           : "unknown";
      j["mono_cartesian_note"] = v.note;
      if (v.witness) j["mono_cartesian_witness"] = cat.morphisms[*v.witness].name;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (cmd_ontop->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    if (subcat.empty() && generators.empty()) {
      throw Error("InvalidParams", "ontop needs --generators or --subcat");
    }
    const aufheben::MorphismIdeal ideal = ideal_from_flags(cat, subcat, generators);
    const aufheben::OnTopVerdict v =
        aufheben::map_on_top_of_ideal(cat, cat.morphism_id(map_name), ideal);
    if (as_json) {
      json j;
      j["on_top"] = v.on_top;
      if (v.witness) j["witness"] = cat.morphisms[*v.witness].name;
      std::cout << j.dump(2) << "\n";
    } else if (v.on_top) {
      std::cout << "yes\n";
    } else {
      std::cout << "no (witness: " << cat.morphisms[*v.witness].name << ")\n";
    }
    return 0;
  }

  if (cmd_psh->parsed()) {
    const aufheben::FinCategory cat = aufheben::load_category(slurp(cat_path));
    const aufheben::FinPresheaf x = aufheben::load_presheaf(cat, slurp(psh_path));
    aufheben::MorphismIdeal ideal = (subcat.empty() && generators.empty())
                                        ? aufheben::make_ideal(cat, aufheben::Bitset(cat.num_morphisms()))
                                        : ideal_from_flags(cat, subcat, generators);
    if (op_core) {
      const aufheben::Subpresheaf core = aufheben::i_generated_core(ideal, x);
      std::cout << aufheben::presheaf_to_json(
          *aufheben::subpresheaf_to_presheaf(core, x.name + "-core").presheaf);
    } else if (op_sheafify) {
      std::cout << aufheben::presheaf_to_json(*aufheben::sheafify(ideal, x).sheaf);
    } else if (op_boolean) {
      const auto v = aufheben::is_boolean_object(x, cap_or(50000));
      json j;
      j["boolean"] = v.boolean;
      std::cout << j.dump(2) << "\n";
    } else if (o_dim->count() > 0) {
      const std::optional<int> d = aufheben::heyting_dim(x, dim_max, cap_or(50000));
      json j;
      j["dim"] = d ? json(*d) : json(nullptr);
      std::cout << j.dump(2) << "\n";
    } else if (o_ontop->count() > 0) {
      const auto colon = ontop_elem.find(':');
      if (colon == std::string::npos) {
        throw Error("InvalidParams", "--ontop expects OBJECT:ELEMENT, got " + ontop_elem);
      }
      const aufheben::ObjId d = cat.object_id(ontop_elem.substr(0, colon));
      const std::optional<std::int32_t> local = x.find_elem(d, ontop_elem.substr(colon + 1));
      if (!local) {
        throw Error("DanglingReference",
                    "no element " + ontop_elem.substr(colon + 1) + " at " + cat.objects[d]);
      }
      const auto v = aufheben::element_on_top(ideal, x, d, *local);
      json j;
      j["on_top"] = v.on_top;
      if (v.witness) j["witness"] = cat.morphisms[*v.witness].name;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << aufheben::presheaf_to_json(x);
    }
    return 0;
  }

  if (cmd_ex->parsed()) {
    const aufheben::FinCategory cat =
        aufheben::generate_example(kind, params, cap_or(aufheben::kDefaultMorphismCap));
    std::cout << aufheben::category_to_json(cat);
    return 0;
  }

  return 2;  // unreachable: require_subcommand guarantees a branch above ran
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    json j;
    j["error"] = e.code();
    j["witness"] = e.witness();
    std::cerr << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Internal";
    j["witness"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
}
