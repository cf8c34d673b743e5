#pragma once

// Shared fixtures for the test suites: deterministic random presheaves and
// small formatting utilities. The sampler below is seeded by each caller;
// frozen expectations in the suites depend on its exact draw order, so treat
// any change here as a golden-breaking change.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aufheben/fincat.hpp"
#include "aufheben/presheaf.hpp"

namespace testutil {

// A coproduct of 1-3 random representables with 0-3 random same-object
// gluings: cheap to build, and varied enough to exercise cores, coends and
// sheafification away from the representable special case.
inline aufheben::FinPresheaf random_presheaf(const aufheben::FinCategory& cat,
                                             std::mt19937_64& rng, const std::string& name) {
  using namespace aufheben;
  std::vector<FinPresheaf> reps;
  const int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) {
    reps.push_back(representable(cat, static_cast<ObjId>(rng() % cat.num_objects())));
  }
  std::vector<const FinPresheaf*> parts;
  for (auto& r : reps) parts.push_back(&r);
  FinPresheaf co = coproduct_presheaf(parts, name + "-co");
  const int glue = static_cast<int>(rng() % 4);
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int i = 0; i < glue; ++i) {
    ObjId d = static_cast<ObjId>(rng() % cat.num_objects());
    if (co.count_at(d) == 0) continue;
    pairs.push_back({co.gid(d, static_cast<std::int32_t>(rng() % co.count_at(d))),
                     co.gid(d, static_cast<std::int32_t>(rng() % co.count_at(d)))});
  }
  return *quotient_presheaf(co, pairs, name).quotient;
}

inline std::string braced(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ",";
    out += names[i];
  }
  return out + "}";
}

inline std::vector<std::string> braced_all(const std::vector<aufheben::FullSubcategory>& subs) {
  std::vector<std::string> out;
  for (const auto& s : subs) out.push_back(braced(object_names(s)));
  return out;
}

}  // namespace testutil
