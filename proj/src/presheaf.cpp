#include "aufheben/presheaf.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "downsets.hpp"

namespace aufheben {

namespace {

void check_same_host(const Subpresheaf& u, const Subpresheaf& v) {
  if (u.host != v.host) fail("DanglingReference", "subpresheaves of different presheaves");
}

void check_gid(const FinPresheaf& x, std::int32_t g) {
  if (g < 0 || g >= x.total) {
    fail("DanglingReference", "element id " + std::to_string(g) + " outside " + x.name);
  }
}

// Orbit of each element under the action: orbit[g] = gids of g·f over all f
// (reflexive, transitive). Subpresheaves are exactly the orbit-downsets.
std::vector<Bitset> generation_orbits(const FinPresheaf& x) {
  const FinCategory& cat = *x.category;
  std::vector<Bitset> orbit(x.total, Bitset(static_cast<std::size_t>(x.total)));
  for (std::int32_t g = 0; g < x.total; ++g) {
    Bitset& row = orbit[g];
    row.set(g);
    std::vector<std::int32_t> work{g};
    while (!work.empty()) {
      const std::int32_t cur = work.back();
      work.pop_back();
      for (MorId f : cat.into(x.object_of(cur))) {
        const std::int32_t nxt = x.act(cur, f);
        if (!row.test(nxt)) {
          row.set(nxt);
          work.push_back(nxt);
        }
      }
    }
  }
  return orbit;
}

}  // namespace

std::optional<std::int32_t> FinPresheaf::find_elem(ObjId d, const std::string& elem) const {
  const std::vector<std::string>& at = elems[d];
  for (std::size_t i = 0; i < at.size(); ++i) {
    if (at[i] == elem) return static_cast<std::int32_t>(i);
  }
  return std::nullopt;
}

void FinPresheaf::finalize() {
  offset.assign(elems.size(), 0);
  std::int32_t running = 0;
  for (std::size_t d = 0; d < elems.size(); ++d) {
    offset[d] = running;
    running += static_cast<std::int32_t>(elems[d].size());
  }
  total = running;
  obj_of_gid_.assign(total, 0);
  for (std::size_t d = 0; d < elems.size(); ++d) {
    for (std::size_t i = 0; i < elems[d].size(); ++i) {
      obj_of_gid_[offset[d] + static_cast<std::int32_t>(i)] = static_cast<ObjId>(d);
    }
  }
}

void validate_presheaf(const FinPresheaf& x) {
  const FinCategory& cat = *x.category;
  if (x.elems.size() != cat.num_objects() || x.action.size() != cat.num_morphisms()) {
    fail("DanglingReference", "presheaf " + x.name + " has wrong element/action shape");
  }
  for (std::size_t d = 0; d < x.elems.size(); ++d) {
    for (std::size_t i = 0; i < x.elems[d].size(); ++i) {
      for (std::size_t j = i + 1; j < x.elems[d].size(); ++j) {
        if (x.elems[d][i] == x.elems[d][j]) {
          fail("DuplicateName", "element " + x.elems[d][i] + " at " + cat.objects[d]);
        }
      }
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const std::size_t want = x.elems[cat.cod(f)].size();
    if (x.action[f].size() != want) {
      fail("DanglingReference",
           "action of " + cat.morphisms[f].name + " has size " +
               std::to_string(x.action[f].size()) + ", expected " + std::to_string(want));
    }
    const std::int32_t dom_size = static_cast<std::int32_t>(x.elems[cat.dom(f)].size());
    for (std::int32_t v : x.action[f]) {
      if (v < 0 || v >= dom_size) {
        fail("DanglingReference", "action of " + cat.morphisms[f].name + " hits index " +
                                      std::to_string(v));
      }
    }
  }
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    const MorId id = cat.identity(d);
    for (std::size_t i = 0; i < x.elems[d].size(); ++i) {
      if (x.action[id][i] != static_cast<std::int32_t>(i)) {
        fail("FunctorialityViolation",
             x.elems[d][i] + " · " + cat.morphisms[id].name + " ≠ " + x.elems[d][i]);
      }
    }
  }
  // (x·f)·g = x·(f∘g) for every composable pair f: C→D, g: B→C.
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const ObjId c = cat.dom(f), d = cat.cod(f);
    for (MorId g : cat.into(c)) {
      const MorId fg = cat.compose(f, g);
      for (std::size_t i = 0; i < x.elems[d].size(); ++i) {
        if (x.action[g][x.action[f][i]] != x.action[fg][i]) {
          fail("FunctorialityViolation",
               "(" + x.elems[d][i] + " · " + cat.morphisms[f].name + ") · " +
                   cat.morphisms[g].name + " ≠ " + x.elems[d][i] + " · " +
                   cat.morphisms[fg].name);
        }
      }
    }
  }
}

FinPresheaf make_presheaf(const FinCategory& cat, std::string name,
                          std::vector<std::vector<std::string>> elems,
                          std::vector<std::vector<std::int32_t>> action) {
  FinPresheaf x;
  x.category = &cat;
  x.name = std::move(name);
  x.elems = std::move(elems);
  x.action = std::move(action);
  if (x.elems.size() != cat.num_objects() || x.action.size() != cat.num_morphisms()) {
    fail("DanglingReference", "presheaf " + x.name + " has wrong element/action shape");
  }
  // Identity actions may be left empty; fill them in.
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    std::vector<std::int32_t>& ida = x.action[cat.identity(d)];
    if (ida.empty() && !x.elems[d].empty()) {
      ida.resize(x.elems[d].size());
      for (std::size_t i = 0; i < ida.size(); ++i) ida[i] = static_cast<std::int32_t>(i);
    }
  }
  x.finalize();
  validate_presheaf(x);
  return x;
}

FinPresheaf representable(const FinCategory& cat, ObjId c) {
  if (c < 0 || c >= static_cast<ObjId>(cat.num_objects())) {
    fail("DanglingReference", "object index " + std::to_string(c));
  }
  // Position of each morphism inside its hom(dom, c) bucket.
  std::vector<std::int32_t> pos(cat.num_morphisms(), -1);
  std::vector<std::vector<std::string>> elems(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    const std::vector<MorId>& bucket = cat.hom(d, c);
    elems[d].reserve(bucket.size());
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      pos[bucket[i]] = static_cast<std::int32_t>(i);
      elems[d].push_back(cat.morphisms[bucket[i]].name);
    }
  }
  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const std::vector<MorId>& at_cod = cat.hom(cat.cod(f), c);
    action[f].resize(at_cod.size());
    for (std::size_t i = 0; i < at_cod.size(); ++i) {
      action[f][i] = pos[cat.compose(at_cod[i], f)];
    }
  }
  return make_presheaf(cat, "y(" + cat.objects[c] + ")", std::move(elems), std::move(action));
}

FinPresheaf terminal_presheaf(const FinCategory& cat) {
  std::vector<std::vector<std::string>> elems(cat.num_objects(), {"*"});
  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms(),
                                                std::vector<std::int32_t>{0});
  return make_presheaf(cat, "1", std::move(elems), std::move(action));
}

Subpresheaf subpresheaf_closure(const FinPresheaf& x, Bitset seed) {
  if (seed.size() != static_cast<std::size_t>(x.total)) {
    fail("DanglingReference", "seed bitset length does not match " + x.name);
  }
  const FinCategory& cat = *x.category;
  Bitset parts = std::move(seed);
  std::vector<std::int32_t> work;
  for (std::size_t g = parts.find_first(); g != Bitset::npos; g = parts.find_next(g)) {
    work.push_back(static_cast<std::int32_t>(g));
  }
  while (!work.empty()) {
    const std::int32_t cur = work.back();
    work.pop_back();
    for (MorId f : cat.into(x.object_of(cur))) {
      const std::int32_t nxt = x.act(cur, f);
      if (!parts.test(nxt)) {
        parts.set(nxt);
        work.push_back(nxt);
      }
    }
  }
  return Subpresheaf{&x, std::move(parts)};
}

Subpresheaf subpresheaf_from_names(
    const FinPresheaf& x, const std::vector<std::pair<std::string, std::string>>& named) {
  Bitset seed(static_cast<std::size_t>(x.total));
  for (const auto& [obj, elem] : named) {
    const ObjId d = x.category->object_id(obj);
    const std::optional<std::int32_t> local = x.find_elem(d, elem);
    if (!local) fail("DanglingReference", "element " + elem + " at " + obj);
    seed.set(x.gid(d, *local));
  }
  return subpresheaf_closure(x, std::move(seed));
}

void validate_subpresheaf(const Subpresheaf& u) {
  const FinPresheaf& x = *u.host;
  if (u.parts.size() != static_cast<std::size_t>(x.total)) {
    fail("DanglingReference", "subpresheaf bitset length does not match " + x.name);
  }
  const FinCategory& cat = *x.category;
  for (std::size_t g = u.parts.find_first(); g != Bitset::npos; g = u.parts.find_next(g)) {
    const std::int32_t cur = static_cast<std::int32_t>(g);
    for (MorId f : cat.into(x.object_of(cur))) {
      if (!u.parts.test(x.act(cur, f))) {
        fail("NotActionClosed",
             x.elem_name(cur) + " · " + cat.morphisms[f].name + " escapes the subset");
      }
    }
  }
}

Subpresheaf sub_top(const FinPresheaf& x) {
  Bitset all(static_cast<std::size_t>(x.total));
  all.set();
  return Subpresheaf{&x, std::move(all)};
}

Subpresheaf sub_bottom(const FinPresheaf& x) {
  return Subpresheaf{&x, Bitset(static_cast<std::size_t>(x.total))};
}

Subpresheaf sub_meet(const Subpresheaf& u, const Subpresheaf& v) {
  check_same_host(u, v);
  return Subpresheaf{u.host, u.parts & v.parts};
}

Subpresheaf sub_join(const Subpresheaf& u, const Subpresheaf& v) {
  check_same_host(u, v);
  return Subpresheaf{u.host, u.parts | v.parts};
}

Subpresheaf sub_implies(const Subpresheaf& u, const Subpresheaf& v) {
  check_same_host(u, v);
  const FinPresheaf& x = *u.host;
  const FinCategory& cat = *x.category;
  Bitset parts(static_cast<std::size_t>(x.total));
  for (std::int32_t g = 0; g < x.total; ++g) {
    bool in = true;
    for (MorId f : cat.into(x.object_of(g))) {  // includes the identity
      const std::int32_t r = x.act(g, f);
      if (u.parts.test(r) && !v.parts.test(r)) { in = false; break; }
    }
    if (in) parts.set(g);
  }
  return Subpresheaf{&x, std::move(parts)};
}

Subpresheaf sub_not(const Subpresheaf& u) { return sub_implies(u, sub_bottom(*u.host)); }

std::vector<Subpresheaf> enumerate_subpresheaves(const FinPresheaf& x, std::size_t cap) {
  const std::vector<Bitset> orbit = generation_orbits(x);
  const detail::PreorderClasses pc = detail::preorder_classes(
      static_cast<std::size_t>(x.total),
      [&orbit](std::size_t a, std::size_t b) { return orbit[b].test(a); });
  std::vector<Bitset> found;
  bool overflow = false;
  detail::walk_downsets(pc, [&](const Bitset& chosen) {
    if (found.size() >= cap) { overflow = true; return false; }
    found.push_back(detail::classes_to_bits(pc, chosen, static_cast<std::size_t>(x.total)));
    return true;
  });
  if (overflow) {
    fail("CapExceeded", "more than " + std::to_string(cap) + " subpresheaves of " + x.name);
  }
  std::sort(found.begin(), found.end(), subset_order_less);
  std::vector<Subpresheaf> out;
  out.reserve(found.size());
  for (Bitset& b : found) out.push_back(Subpresheaf{&x, std::move(b)});
  return out;
}

Subpresheaf i_generated_core(const MorphismIdeal& ideal, const FinPresheaf& x) {
  const FinCategory& cat = *x.category;
  if (ideal.category != &cat) fail("DanglingReference", "ideal over a different category");
  require_idempotent(cat, ideal);
  Bitset parts(static_cast<std::size_t>(x.total));
  for (std::size_t f = ideal.members.find_first(); f != Bitset::npos;
       f = ideal.members.find_next(f)) {
    const MorId fm = static_cast<MorId>(f);
    const ObjId d = cat.dom(fm), e = cat.cod(fm);
    for (std::int32_t i = 0; i < x.count_at(e); ++i) {
      parts.set(x.gid(d, x.action[fm][i]));
    }
  }
  Subpresheaf core{&x, std::move(parts)};
  validate_subpresheaf(core);  // two-sidedness makes the core action-closed
  return core;
}

bool is_minimal(const MorphismIdeal& ideal, const FinPresheaf& x) {
  return i_generated_core(ideal, x).parts.count() == static_cast<std::size_t>(x.total);
}

void validate_map(const PresheafMap& h) {
  const FinPresheaf& src = *h.source;
  const FinPresheaf& tgt = *h.target;
  if (src.category != tgt.category) {
    fail("DanglingReference", "map between presheaves over different categories");
  }
  const FinCategory& cat = *src.category;
  if (h.component.size() != cat.num_objects()) {
    fail("DanglingReference", "map component count mismatch");
  }
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    if (h.component[d].size() != src.elems[d].size()) {
      fail("DanglingReference", "map component at " + cat.objects[d] + " has wrong size");
    }
    for (std::int32_t v : h.component[d]) {
      if (v < 0 || v >= tgt.count_at(d)) {
        fail("DanglingReference", "map hits missing element at " + cat.objects[d]);
      }
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const ObjId c = cat.dom(f), d = cat.cod(f);
    for (std::size_t i = 0; i < src.elems[d].size(); ++i) {
      const std::int32_t lhs = h.component[c][src.action[f][i]];
      const std::int32_t rhs = tgt.action[f][h.component[d][i]];
      if (lhs != rhs) {
        fail("NaturalityViolation",
             "at " + src.elems[d][i] + " · " + cat.morphisms[f].name);
      }
    }
  }
}

PresheafMap identity_map(const FinPresheaf& x) {
  PresheafMap h;
  h.source = &x;
  h.target = &x;
  h.component.resize(x.elems.size());
  for (std::size_t d = 0; d < x.elems.size(); ++d) {
    h.component[d].resize(x.elems[d].size());
    for (std::size_t i = 0; i < x.elems[d].size(); ++i) {
      h.component[d][i] = static_cast<std::int32_t>(i);
    }
  }
  return h;
}

PresheafMap compose_maps(const PresheafMap& snd, const PresheafMap& fst) {
  if (fst.target != snd.source) fail("DanglingReference", "maps do not compose");
  PresheafMap h;
  h.source = fst.source;
  h.target = snd.target;
  h.component.resize(fst.component.size());
  for (std::size_t d = 0; d < fst.component.size(); ++d) {
    h.component[d].resize(fst.component[d].size());
    for (std::size_t i = 0; i < fst.component[d].size(); ++i) {
      h.component[d][i] = snd.component[d][fst.component[d][i]];
    }
  }
  return h;
}

bool is_injective(const PresheafMap& h) {
  for (std::size_t d = 0; d < h.component.size(); ++d) {
    std::vector<std::int32_t> seen(h.target->elems[d].size(), -1);
    for (std::size_t i = 0; i < h.component[d].size(); ++i) {
      std::int32_t& slot = seen[h.component[d][i]];
      if (slot >= 0) return false;
      slot = static_cast<std::int32_t>(i);
    }
  }
  return true;
}

bool is_bijective(const PresheafMap& h) {
  if (!is_injective(h)) return false;
  for (std::size_t d = 0; d < h.component.size(); ++d) {
    if (h.component[d].size() != h.target->elems[d].size()) return false;
  }
  return true;
}

SubAsPresheaf subpresheaf_to_presheaf(const Subpresheaf& u, std::string name) {
  validate_subpresheaf(u);
  const FinPresheaf& x = *u.host;
  const FinCategory& cat = *x.category;

  std::vector<std::vector<std::string>> elems(cat.num_objects());
  std::vector<std::vector<std::int32_t>> sub_local(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    sub_local[d].assign(x.elems[d].size(), -1);
    for (std::int32_t i = 0; i < x.count_at(d); ++i) {
      if (u.parts.test(x.gid(d, i))) {
        sub_local[d][i] = static_cast<std::int32_t>(elems[d].size());
        elems[d].push_back(x.elems[d][i]);
      }
    }
  }
  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const ObjId c = cat.dom(f), d = cat.cod(f);
    action[f].reserve(elems[d].size());
    for (std::int32_t i = 0; i < x.count_at(d); ++i) {
      if (sub_local[d][i] >= 0) action[f].push_back(sub_local[c][x.action[f][i]]);
    }
  }

  SubAsPresheaf out;
  out.presheaf = std::make_shared<const FinPresheaf>(
      make_presheaf(cat, std::move(name), std::move(elems), std::move(action)));
  out.inclusion.source = out.presheaf.get();
  out.inclusion.target = &x;
  out.inclusion.component.resize(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    for (std::int32_t i = 0; i < x.count_at(d); ++i) {
      if (sub_local[d][i] >= 0) out.inclusion.component[d].push_back(i);
    }
  }
  validate_map(out.inclusion);
  return out;
}

ImageFactorization image_factor(const PresheafMap& h) {
  validate_map(h);
  const FinPresheaf& tgt = *h.target;
  Bitset bits(static_cast<std::size_t>(tgt.total));
  for (std::int32_t g = 0; g < h.source->total; ++g) bits.set(h.apply(g));

  ImageFactorization out;
  out.as_subobject = Subpresheaf{&tgt, std::move(bits)};
  SubAsPresheaf mat = subpresheaf_to_presheaf(out.as_subobject, "im");
  out.image = mat.presheaf;
  out.inclusion = std::move(mat.inclusion);

  // Source element ↦ position of its image inside the image presheaf.
  out.onto.source = h.source;
  out.onto.target = out.image.get();
  out.onto.component.resize(h.component.size());
  for (ObjId d = 0; d < static_cast<ObjId>(h.component.size()); ++d) {
    out.onto.component[d].resize(h.component[d].size());
    for (std::size_t i = 0; i < h.component[d].size(); ++i) {
      const std::string& target_name = tgt.elems[d][h.component[d][i]];
      out.onto.component[d][i] = *out.image->find_elem(d, target_name);
    }
  }
  validate_map(out.onto);
  return out;
}

FinPresheaf coproduct_presheaf(const std::vector<const FinPresheaf*>& parts,
                               std::string name) {
  if (parts.empty()) fail("InvalidParams", "coproduct of zero presheaves needs a category");
  const FinCategory& cat = *parts.front()->category;
  for (const FinPresheaf* p : parts) {
    if (p->category != &cat) fail("DanglingReference", "coproduct across categories");
  }
  std::vector<std::vector<std::string>> elems(cat.num_objects());
  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (const std::string& e : parts[k]->elems[d]) {
        elems[d].push_back(std::to_string(k) + ":" + e);
      }
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const ObjId c = cat.dom(f);
    std::int32_t base_c = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (std::int32_t v : parts[k]->action[f]) action[f].push_back(base_c + v);
      base_c += parts[k]->count_at(c);
    }
  }
  return make_presheaf(cat, std::move(name), std::move(elems), std::move(action));
}

QuotientResult quotient_presheaf(
    const FinPresheaf& x, const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
    std::string name) {
  const FinCategory& cat = *x.category;
  std::vector<std::int32_t> parent(x.total);
  for (std::int32_t g = 0; g < x.total; ++g) parent[g] = g;
  auto find = [&](std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  std::vector<std::pair<std::int32_t, std::int32_t>> work = pairs;
  for (const auto& [a, b] : work) {
    check_gid(x, a);
    check_gid(x, b);
    if (x.object_of(a) != x.object_of(b)) {
      fail("InvalidParams", "cannot identify elements at different objects");
    }
  }
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    const std::int32_t ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[std::max(ra, rb)] = std::min(ra, rb);
    // A congruence: identified elements must stay identified under the action.
    for (MorId f : cat.into(x.object_of(a))) {
      work.emplace_back(x.act(a, f), x.act(b, f));
    }
  }

  // Class per object, ordered by least member gid; named after the
  // lexicographically least member name.
  std::vector<std::int32_t> class_local(x.total, -1);
  std::vector<std::vector<std::string>> elems(cat.num_objects());
  std::vector<std::vector<std::int32_t>> rep(cat.num_objects());  // least gid per class
  for (std::int32_t g = 0; g < x.total; ++g) {
    if (find(g) != g) continue;
    const ObjId d = x.object_of(g);
    class_local[g] = static_cast<std::int32_t>(rep[d].size());
    rep[d].push_back(g);
  }
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    elems[d].resize(rep[d].size());
    for (std::size_t k = 0; k < rep[d].size(); ++k) {
      std::string least;
      for (std::int32_t g = 0; g < x.total; ++g) {
        if (find(g) != rep[d][k]) continue;
        const std::string& candidate = x.elem_name(g);
        if (least.empty() || candidate < least) least = candidate;
      }
      elems[d][k] = least;
    }
  }

  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
    const ObjId d = cat.cod(f);
    action[f].resize(rep[d].size());
    for (std::size_t k = 0; k < rep[d].size(); ++k) {
      action[f][k] = class_local[find(x.act(rep[d][k], f))];
    }
  }

  QuotientResult out;
  out.quotient = std::make_shared<const FinPresheaf>(
      make_presheaf(cat, std::move(name), std::move(elems), std::move(action)));
  out.projection.source = &x;
  out.projection.target = out.quotient.get();
  out.projection.component.resize(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    out.projection.component[d].resize(x.elems[d].size());
    for (std::int32_t i = 0; i < x.count_at(d); ++i) {
      out.projection.component[d][i] = class_local[find(x.gid(d, i))];
    }
  }
  validate_map(out.projection);
  return out;
}

std::vector<PresheafMap> natural_transformations(const FinPresheaf& source,
                                                 const FinPresheaf& target,
                                                 std::size_t cap) {
  if (source.category != target.category) {
    fail("DanglingReference", "presheaves over different categories");
  }
  const FinCategory& cat = *source.category;
  std::vector<PresheafMap> out;
  std::vector<std::int32_t> assigned(source.total, -1);  // target gid per source gid

  // Assigning one element forces its whole orbit; propagate and log for undo.
  auto propagate = [&](std::int32_t s, std::int32_t t,
                       std::vector<std::int32_t>& log) -> bool {
    std::vector<std::pair<std::int32_t, std::int32_t>> queue{{s, t}};
    while (!queue.empty()) {
      const auto [cs, ct] = queue.back();
      queue.pop_back();
      if (assigned[cs] >= 0) {
        if (assigned[cs] != ct) return false;
        continue;
      }
      assigned[cs] = ct;
      log.push_back(cs);
      for (MorId f : cat.into(source.object_of(cs))) {
        queue.emplace_back(source.act(cs, f), target.act(ct, f));
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::int32_t g) -> void {
    while (g < source.total && assigned[g] >= 0) ++g;
    if (g == source.total) {
      if (out.size() >= cap) fail("CapExceeded", "more than " + std::to_string(cap) +
                                                     " natural transformations");
      PresheafMap h;
      h.source = &source;
      h.target = &target;
      h.component.resize(cat.num_objects());
      for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
        h.component[d].resize(source.elems[d].size());
        for (std::int32_t i = 0; i < source.count_at(d); ++i) {
          h.component[d][i] = target.local_of(assigned[source.gid(d, i)]);
        }
      }
      out.push_back(std::move(h));
      return;
    }
    const ObjId d = source.object_of(g);
    for (std::int32_t v = 0; v < target.count_at(d); ++v) {
      std::vector<std::int32_t> log;
      if (propagate(g, target.gid(d, v), log)) self(self, g + 1);
      for (std::int32_t s : log) assigned[s] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace aufheben
