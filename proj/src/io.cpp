#include "aufheben/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace aufheben {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("ParseError", "input is not valid JSON");
  return j;
}

const json& member(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail("ParseError", std::string("missing key \"") + key + "\"");
  return *it;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) fail("ParseError", std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::string bracey(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ",";
    out += names[i];
  }
  out += "}";
  return out;
}

}  // namespace

CategorySpec category_spec_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) fail("ParseError", "category document must be an object");

  CategorySpec spec;
  spec.name = as_string(member(j, "name"), "name");
  for (const json& o : member(j, "objects")) {
    spec.objects.push_back(as_string(o, "object"));
  }
  for (const json& m : member(j, "morphisms")) {
    spec.morphisms.push_back(MorphismSpec{as_string(member(m, "name"), "morphism name"),
                                          as_string(member(m, "dom"), "dom"),
                                          as_string(member(m, "cod"), "cod")});
  }
  for (const auto& [obj, mor] : member(j, "identities").items()) {
    spec.identities.emplace_back(obj, as_string(mor, "identity"));
  }
  for (const json& c : member(j, "composition")) {
    spec.composition.push_back(CompositeSpec{as_string(member(c, "g"), "g"),
                                             as_string(member(c, "f"), "f"),
                                             as_string(member(c, "gf"), "gf")});
  }
  return spec;
}

FinCategory load_category(const std::string& text) {
  return build_category(category_spec_from_json(text));
}

std::string category_to_json(const FinCategory& cat) {
  json j;
  j["name"] = cat.name;
  j["objects"] = cat.objects;
  json mors = json::array();
  for (const Morphism& m : cat.morphisms) {
    mors.push_back({{"name", m.name}, {"dom", cat.objects[m.dom]}, {"cod", cat.objects[m.cod]}});
  }
  j["morphisms"] = std::move(mors);
  json ids;
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    ids[cat.objects[d]] = cat.morphisms[cat.identity(d)].name;
  }
  j["identities"] = std::move(ids);
  json comp = json::array();
  for (MorId g = 0; g < static_cast<MorId>(cat.num_morphisms()); ++g) {
    for (MorId f : cat.into(cat.dom(g))) {
      comp.push_back({{"g", cat.morphisms[g].name},
                      {"f", cat.morphisms[f].name},
                      {"gf", cat.morphisms[cat.compose(g, f)].name}});
    }
  }
  j["composition"] = std::move(comp);
  return j.dump(2) + "\n";
}

FinPresheaf load_presheaf(const FinCategory& cat, const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) fail("ParseError", "presheaf document must be an object");
  const std::string cat_name = as_string(member(j, "category"), "category");
  if (cat_name != cat.name) {
    fail("DanglingReference",
         "presheaf is over \"" + cat_name + "\", loaded category is \"" + cat.name + "\"");
  }

  std::vector<std::vector<std::string>> elems(cat.num_objects());
  for (const auto& [obj, list] : member(j, "elements").items()) {
    const ObjId d = cat.object_id(obj);
    for (const json& e : list) elems[d].push_back(as_string(e, "element"));
  }

  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  auto local_of = [&](ObjId d, const std::string& name) -> std::int32_t {
    const std::vector<std::string>& at = elems[d];
    const auto it = std::find(at.begin(), at.end(), name);
    if (it == at.end()) fail("DanglingReference", "element " + name + " at " + cat.objects[d]);
    return static_cast<std::int32_t>(it - at.begin());
  };
  const json& actions = member(j, "actions");
  for (const auto& [mor, table] : actions.items()) {
    cat.morphism_id(mor);  // reject typos loudly
    (void)table;
  }
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const auto it = actions.find(cat.morphisms[f].name);
    if (it == actions.end()) {
      if (cat.is_identity(f) || elems[cat.cod(f)].empty()) continue;  // synthesised/empty
      fail("ParseError", "missing action for " + cat.morphisms[f].name);
    }
    const ObjId c = cat.dom(f), d = cat.cod(f);
    action[f].assign(elems[d].size(), -1);
    for (const auto& [from, to] : it->items()) {
      action[f][local_of(d, from)] = local_of(c, as_string(to, "action value"));
    }
    for (std::size_t i = 0; i < action[f].size(); ++i) {
      if (action[f][i] < 0) {
        fail("ParseError",
             "action of " + cat.morphisms[f].name + " misses element " + elems[d][i]);
      }
    }
  }
  return make_presheaf(cat, cat_name + "-presheaf", std::move(elems), std::move(action));
}

std::string presheaf_to_json(const FinPresheaf& x) {
  const FinCategory& cat = *x.category;
  json j;
  j["category"] = cat.name;
  json elements;
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    elements[cat.objects[d]] = x.elems[d];
  }
  j["elements"] = std::move(elements);
  json actions;
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    if (cat.is_identity(f)) continue;
    json table;
    for (std::size_t i = 0; i < x.elems[cat.cod(f)].size(); ++i) {
      table[x.elems[cat.cod(f)][i]] = x.elems[cat.dom(f)][x.action[f][i]];
    }
    actions[cat.morphisms[f].name] = std::move(table);
  }
  j["actions"] = std::move(actions);
  return j.dump(2) + "\n";
}

std::string chain_to_json(const FinCategory& cat,
                          const std::vector<FullSubcategory>& chain, bool formula_only) {
  json j;
  j["category"] = cat.name;
  json levels = json::array();
  for (const FullSubcategory& s : chain) levels.push_back(object_names(s));
  j["chain"] = std::move(levels);
  j["formula_only"] = formula_only;
  return j.dump(2) + "\n";
}

std::string level_poset_to_json(const LevelPoset& lp) {
  json j;
  j["category"] = lp.category->name;
  json levels = json::array();
  for (const FullSubcategory& s : lp.levels) levels.push_back(object_names(s));
  j["levels"] = std::move(levels);
  j["successor"] = lp.successor;
  json covers = json::array();
  for (const auto& [lo, hi] : lp.covers) covers.push_back({lo, hi});
  j["covers"] = std::move(covers);
  j["formula_only"] = lp.formula_only;
  return j.dump(2) + "\n";
}

std::string level_poset_to_dot(const LevelPoset& lp) {
  std::ostringstream out;
  out << "digraph levels {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < lp.levels.size(); ++i) {
    out << "  n" << i << " [label=\"" << bracey(object_names(lp.levels[i])) << "\"];\n";
  }
  for (const auto& [lo, hi] : lp.covers) {
    out << "  n" << lo << " -> n" << hi << ";\n";
  }
  for (std::size_t i = 0; i < lp.levels.size(); ++i) {
    out << "  n" << i << " -> n" << lp.successor[i] << " [style=dashed, label=\"succ\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace aufheben
