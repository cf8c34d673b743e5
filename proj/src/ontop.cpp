#include "aufheben/presheaf.hpp"

#include <utility>
#include <vector>

namespace aufheben {

namespace {

void check_elem(const FinPresheaf& x, ObjId d, std::int32_t local) {
  if (d < 0 || d >= static_cast<ObjId>(x.category->num_objects())) {
    fail("DanglingReference", "object index " + std::to_string(d));
  }
  if (local < 0 || local >= x.count_at(d)) {
    fail("DanglingReference", "element index " + std::to_string(local) + " at " +
                                  x.category->objects[d]);
  }
}

}  // namespace

ElementOnTopVerdict element_on_top(const MorphismIdeal& ideal, const FinPresheaf& x,
                                   ObjId d, std::int32_t local) {
  check_elem(x, d, local);
  const FinCategory& cat = *x.category;
  const Subpresheaf core = i_generated_core(ideal, x);  // validates idempotency
  const std::int32_t g0 = x.gid(d, local);
  for (MorId f : cat.into(d)) {
    const std::int32_t xf = x.act(g0, f);
    if (core.parts.test(xf)) continue;
    bool regenerated = false;
    for (MorId g : cat.hom(d, cat.dom(f))) {
      if (x.act(xf, g) == g0) { regenerated = true; break; }
    }
    if (!regenerated) return {false, f};
  }
  return {true, std::nullopt};
}

ElementOnTopVerdict element_on_top_oracle(const MorphismIdeal& ideal, const FinPresheaf& x,
                                          ObjId d, std::int32_t local, std::size_t cap) {
  check_elem(x, d, local);
  const Subpresheaf core = i_generated_core(ideal, x);
  const std::int32_t g0 = x.gid(d, local);
  for (const Subpresheaf& u : enumerate_subpresheaves(x, cap)) {
    const Subpresheaf w = sub_join(u, sub_implies(u, core));
    if (!w.parts.test(g0)) return {false, std::nullopt};
  }
  return {true, std::nullopt};
}

bool boundary_leq(const PresheafMap& h, const Subpresheaf& u, const Subpresheaf& v) {
  if (u.host != h.target || v.host != h.target) {
    fail("DanglingReference", "subobjects do not live in the map's target");
  }
  const Subpresheaf w = sub_join(u, sub_implies(u, v));
  for (std::int32_t g = 0; g < h.source->total; ++g) {
    if (!w.parts.test(h.apply(g))) return false;
  }
  return true;
}

MapOnTopVerdict map_on_top(const PresheafMap& h, const Subpresheaf& v, std::size_t cap) {
  if (v.host != h.target) fail("DanglingReference", "subobject of a different presheaf");
  const std::vector<Subpresheaf> subs = enumerate_subpresheaves(*h.target, cap);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!boundary_leq(h, subs[i], v)) return {false, i};
  }
  return {true, std::nullopt};
}

MapOnTopVerdict has_skeletal_boundaries(const MorphismIdeal& ideal, const FinPresheaf& x,
                                        std::size_t cap) {
  const Subpresheaf core = i_generated_core(ideal, x);
  const PresheafMap id = identity_map(x);
  return map_on_top(id, core, cap);
}

BooleanVerdict is_boolean_object(const FinPresheaf& x, std::size_t cap) {
  const std::vector<Subpresheaf> subs = enumerate_subpresheaves(x, cap);
  const std::size_t total = static_cast<std::size_t>(x.total);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    bool complemented = false;
    for (const Subpresheaf& v : subs) {
      if ((subs[i].parts & v.parts).none() && (subs[i].parts | v.parts).count() == total) {
        complemented = true;
        break;
      }
    }
    if (!complemented) return {false, i};
  }
  return {true, std::nullopt};
}

bool bounded_depth_holds(const FinPresheaf& x, int d, std::size_t cap) {
  if (d < 0) fail("InvalidParams", "depth must be nonnegative");
  const std::vector<Subpresheaf> subs = enumerate_subpresheaves(x, cap);
  const std::size_t levels = subs.size();
  const std::size_t total = static_cast<std::size_t>(x.total);
  const Subpresheaf bottom = sub_bottom(x);

  // Odometer over assignments (a_0 .. a_d); vals[k] caches B_k(a_0..a_k), so
  // bumping position k only recomputes vals[k..d].
  std::vector<std::size_t> idx(static_cast<std::size_t>(d) + 1, 0);
  std::vector<Subpresheaf> vals(idx.size(), bottom);
  auto recompute_from = [&](std::size_t k) {
    for (std::size_t j = k; j < idx.size(); ++j) {
      const Subpresheaf& a = subs[idx[j]];
      const Subpresheaf& prev = j == 0 ? bottom : vals[j - 1];
      // B_0 = a ∨ ¬a; B_j = a ∨ (a ⇒ B_{j−1}). ¬a is a ⇒ ⊥, so both cases
      // are the same formula against `prev`.
      vals[j] = sub_join(a, sub_implies(a, prev));
    }
  };

  recompute_from(0);
  while (true) {
    if (vals.back().parts.count() != total) return false;
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < levels) break;
      idx[pos] = 0;
      if (pos == 0) return true;  // odometer wrapped: all assignments passed
    }
    recompute_from(pos);
  }
}

std::optional<int> heyting_dim(const FinPresheaf& x, int max_d, std::size_t cap) {
  if (enumerate_subpresheaves(x, cap).size() == 1) return -1;
  for (int d = 0; d <= max_d; ++d) {
    if (bounded_depth_holds(x, d, cap)) return d;
  }
  return std::nullopt;
}

}  // namespace aufheben
