#pragma once

// Downset enumeration for finite preorders. Both closed-subcategory and
// subpresheaf enumeration are instances: subobject-closed subcategories are
// downsets of the mono preorder on objects, subpresheaves are downsets of the
// generation preorder on elements. The preorder is first collapsed to its
// partially ordered set of strongly connected classes; downsets of the DAG
// are walked by deciding class membership in topological order.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aufheben/fincat.hpp"

namespace aufheben::detail {

struct PreorderClasses {
  std::vector<std::vector<std::int32_t>> members;  // per class, ascending
  std::vector<Bitset> strict_preds;                // per class, over classes
  std::vector<std::size_t> topo;                   // predecessors first
};

// leq(a, b): a weakly below b; must be reflexive and transitive. Classes are
// keyed by their smallest member, giving a deterministic layout.
template <typename Leq>
PreorderClasses preorder_classes(std::size_t n, Leq&& leq) {
  PreorderClasses out;
  std::vector<int> cls(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    const int id = static_cast<int>(out.members.size());
    out.members.emplace_back();
    for (std::size_t b = a; b < n; ++b) {
      if (cls[b] < 0 && leq(a, b) && leq(b, a)) {
        cls[b] = id;
        out.members.back().push_back(static_cast<std::int32_t>(b));
      }
    }
  }

  const std::size_t k = out.members.size();
  out.strict_preds.assign(k, Bitset(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && leq(out.members[i].front(), out.members[j].front())) {
        out.strict_preds[j].set(i);
      }
    }
  }

  std::vector<bool> placed(k, false);
  while (out.topo.size() < k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (placed[j]) continue;
      bool ready = true;
      for (std::size_t i = out.strict_preds[j].find_first(); i != Bitset::npos;
           i = out.strict_preds[j].find_next(i)) {
        if (!placed[i]) { ready = false; break; }
      }
      if (ready) {
        placed[j] = true;
        out.topo.push_back(j);
        break;
      }
    }
  }
  return out;
}

// Calls sink(chosen) once per downset (as a class bitset); sink returns
// false to abort the walk.
template <typename Sink>
void walk_downsets(const PreorderClasses& pc, Sink&& sink) {
  const std::size_t k = pc.topo.size();
  Bitset chosen(k);
  auto rec = [&](auto&& self, std::size_t p) -> bool {
    if (p == k) return sink(chosen);
    const std::size_t j = pc.topo[p];
    if (!self(self, p + 1)) return false;  // without class j
    if (pc.strict_preds[j].is_subset_of(chosen)) {
      chosen.set(j);
      const bool keep = self(self, p + 1);
      chosen.reset(j);
      if (!keep) return false;
    }
    return true;
  };
  rec(rec, 0);
}

inline Bitset classes_to_bits(const PreorderClasses& pc, const Bitset& chosen,
                              std::size_t n) {
  Bitset bits(n);
  for (std::size_t j = chosen.find_first(); j != Bitset::npos; j = chosen.find_next(j)) {
    for (std::int32_t m : pc.members[j]) bits.set(static_cast<std::size_t>(m));
  }
  return bits;
}

}  // namespace aufheben::detail
