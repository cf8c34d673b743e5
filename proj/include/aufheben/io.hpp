#pragma once

// JSON (de)serialization for categories, presheaves, and level posets, plus
// DOT emission. All emitted JSON is canonical: keys sorted, arrays in the
// library's deterministic orders.

#include <string>

#include "aufheben/levels.hpp"
#include "aufheben/presheaf.hpp"

namespace aufheben {

// Parses the category schema; throws ParseError on malformed JSON or shape,
// then the usual builder errors on semantic problems.
CategorySpec category_spec_from_json(const std::string& text);
FinCategory load_category(const std::string& text);
std::string category_to_json(const FinCategory& cat);

// Presheaf schema: {"category", "elements": {obj: [names]}, "actions":
// {mor: {codElem: domElem}}}. Identity actions may be omitted.
FinPresheaf load_presheaf(const FinCategory& cat, const std::string& text);
std::string presheaf_to_json(const FinPresheaf& x);

std::string chain_to_json(const FinCategory& cat,
                          const std::vector<FullSubcategory>& chain, bool formula_only);
std::string level_poset_to_json(const LevelPoset& lp);
std::string level_poset_to_dot(const LevelPoset& lp);

}  // namespace aufheben
