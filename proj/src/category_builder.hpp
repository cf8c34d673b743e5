#pragma once

// Internal helper for assembling dense-table categories. Used by
// build_category, densify and the example generators; not part of the public
// surface.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aufheben/fincat.hpp"

namespace aufheben {

class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name) { cat_.name = std::move(name); }

  ObjId add_object(std::string obj) {
    cat_.objects.push_back(std::move(obj));
    return static_cast<ObjId>(cat_.objects.size() - 1);
  }

  MorId add_morphism(std::string mor, ObjId dom, ObjId cod) {
    cat_.morphisms.push_back(Morphism{std::move(mor), dom, cod});
    return static_cast<MorId>(cat_.morphisms.size() - 1);
  }

  void set_identities(std::vector<MorId> ids) { cat_.identities = std::move(ids); }

  // Allocates the dense table (all entries unset) once objects/morphisms are
  // final. Also builds the name maps and hom buckets.
  void prepare_table() {
    cat_.build_buckets_and_names();
    cat_.g_base_.assign(cat_.morphisms.size(), 0);
    cat_.into_rank_.assign(cat_.morphisms.size(), 0);
    std::vector<MorId> seen_into(cat_.num_objects(), 0);
    for (std::size_t f = 0; f < cat_.morphisms.size(); ++f)
      cat_.into_rank_[f] = seen_into[cat_.morphisms[f].cod]++;
    std::uint64_t base = 0;
    for (std::size_t g = 0; g < cat_.morphisms.size(); ++g) {
      cat_.g_base_[g] = base;
      base += cat_.into_[cat_.morphisms[g].dom].size();
    }
    cat_.comp_.assign(base, -1);
  }

  std::uint64_t table_size() const { return cat_.comp_.size(); }

  MorId& slot(MorId g, MorId f) {
    return cat_.comp_[static_cast<std::size_t>(cat_.g_base_[g]) + cat_.into_rank_[f]];
  }

  const FinCategory& peek() const { return cat_; }

  // Checks totality of the table, then releases the category.
  FinCategory finish();

 private:
  FinCategory cat_;
};

}  // namespace aufheben
