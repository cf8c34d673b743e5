#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "aufheben/presheaf.hpp"

namespace aufheben {

std::vector<MorId> ideal_sieve(const MorphismIdeal& ideal, ObjId d) {
  const FinCategory& cat = *ideal.category;
  if (d < 0 || d >= static_cast<ObjId>(cat.num_objects())) {
    fail("DanglingReference", "object index " + std::to_string(d));
  }
  std::vector<MorId> sieve;
  for (MorId f : cat.into(d)) {
    if (ideal.contains(f)) sieve.push_back(f);
  }
  return sieve;
}

namespace {

// Positions of sieve members, plus the closure links used while matching:
// for slot i (morphism f: C→D) and g: B→C, the value at slot i forces the
// value at the slot of f∘g.
struct SieveLinks {
  std::vector<MorId> sieve;
  std::vector<std::vector<std::pair<MorId, std::int32_t>>> links;  // (g, slot of f∘g)
};

SieveLinks sieve_links(const MorphismIdeal& ideal, ObjId d) {
  const FinCategory& cat = *ideal.category;
  SieveLinks out;
  out.sieve = ideal_sieve(ideal, d);
  std::vector<std::int32_t> pos(cat.num_morphisms(), -1);
  for (std::size_t i = 0; i < out.sieve.size(); ++i) {
    pos[out.sieve[i]] = static_cast<std::int32_t>(i);
  }
  out.links.resize(out.sieve.size());
  for (std::size_t i = 0; i < out.sieve.size(); ++i) {
    const MorId f = out.sieve[i];
    for (MorId g : cat.into(cat.dom(f))) {
      const std::int32_t j = pos[cat.compose(f, g)];
      if (j < 0) fail("AssertionFailed", "two-sided ideal sieve is not composition-closed");
      out.links[i].emplace_back(g, j);
    }
  }
  return out;
}

std::string family_name(const FinPresheaf& x, const FinCategory& cat,
                        const MatchingFamily& fam) {
  std::string name = "{";
  for (std::size_t i = 0; i < fam.sieve.size(); ++i) {
    if (i > 0) name += ";";
    name += cat.morphisms[fam.sieve[i]].name;
    name += ":=";
    name += x.elems[cat.dom(fam.sieve[i])][fam.values[i]];
  }
  name += "}";
  return name;
}

}  // namespace

std::vector<MatchingFamily> matching_families(const MorphismIdeal& ideal,
                                              const FinPresheaf& x, ObjId d) {
  const FinCategory& cat = *ideal.category;
  if (x.category != &cat) fail("DanglingReference", "presheaf over a different category");
  require_idempotent(cat, ideal);
  const SieveLinks sl = sieve_links(ideal, d);
  const std::size_t k = sl.sieve.size();

  std::vector<MatchingFamily> out;
  std::vector<std::int32_t> assign(k, -1);
  std::vector<std::int32_t> forced(k, -1);

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back(MatchingFamily{d, sl.sieve, assign});
      return;
    }
    const std::int32_t n = x.count_at(cat.dom(sl.sieve[i]));
    const std::int32_t lo = forced[i] >= 0 ? forced[i] : 0;
    const std::int32_t hi = forced[i] >= 0 ? forced[i] + 1 : n;
    for (std::int32_t v = lo; v < hi; ++v) {
      assign[i] = v;
      std::vector<std::int32_t> log;
      bool ok = true;
      for (const auto& [g, j] : sl.links[i]) {
        const std::int32_t w = x.action[g][v];
        if (assign[j] >= 0) {
          if (assign[j] != w) { ok = false; break; }
        } else if (forced[j] >= 0) {
          if (forced[j] != w) { ok = false; break; }
        } else {
          forced[j] = w;
          log.push_back(j);
        }
      }
      if (ok) self(self, i + 1);
      for (std::int32_t j : log) forced[j] = -1;
      assign[i] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

PlusResult plus_construction(const MorphismIdeal& ideal, const FinPresheaf& x) {
  const FinCategory& cat = *ideal.category;
  if (x.category != &cat) fail("DanglingReference", "presheaf over a different category");
  require_idempotent(cat, ideal);

  std::vector<std::vector<MatchingFamily>> fams(cat.num_objects());
  std::vector<std::vector<MorId>> sieves(cat.num_objects());
  std::vector<std::vector<std::int32_t>> slot(cat.num_objects());  // morphism -> sieve slot
  std::vector<std::map<std::vector<std::int32_t>, std::int32_t>> index(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    fams[d] = matching_families(ideal, x, d);
    sieves[d] = ideal_sieve(ideal, d);
    slot[d].assign(cat.num_morphisms(), -1);
    for (std::size_t i = 0; i < sieves[d].size(); ++i) {
      slot[d][sieves[d][i]] = static_cast<std::int32_t>(i);
    }
    for (std::size_t i = 0; i < fams[d].size(); ++i) {
      index[d][fams[d][i].values] = static_cast<std::int32_t>(i);
    }
  }

  std::vector<std::vector<std::string>> elems(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    elems[d].reserve(fams[d].size());
    for (const MatchingFamily& fam : fams[d]) {
      elems[d].push_back(family_name(x, cat, fam));
    }
  }

  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (MorId h = 0; h < static_cast<MorId>(cat.num_morphisms()); ++h) {
    const ObjId c = cat.dom(h), d = cat.cod(h);
    action[h].resize(fams[d].size());
    for (std::size_t i = 0; i < fams[d].size(); ++i) {
      // (x_f | f ∈ I(−,D)) · h = (x_{h∘k} | k ∈ I(−,C)).
      std::vector<std::int32_t> shifted(sieves[c].size());
      for (std::size_t kk = 0; kk < sieves[c].size(); ++kk) {
        shifted[kk] = fams[d][i].values[slot[d][cat.compose(h, sieves[c][kk])]];
      }
      action[h][i] = index[c].at(shifted);
    }
  }

  PlusResult out;
  out.plus = std::make_shared<const FinPresheaf>(
      make_presheaf(cat, x.name + "+", std::move(elems), std::move(action)));
  out.unit.source = &x;
  out.unit.target = out.plus.get();
  out.unit.component.resize(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    out.unit.component[d].resize(x.elems[d].size());
    for (std::int32_t i = 0; i < x.count_at(d); ++i) {
      std::vector<std::int32_t> values(sieves[d].size());
      for (std::size_t kk = 0; kk < sieves[d].size(); ++kk) {
        values[kk] = x.action[sieves[d][kk]][i];
      }
      out.unit.component[d][i] = index[d].at(values);
    }
  }
  validate_map(out.unit);
  return out;
}

bool is_separated(const MorphismIdeal& ideal, const FinPresheaf& x) {
  return is_injective(plus_construction(ideal, x).unit);
}

bool is_sheaf(const MorphismIdeal& ideal, const FinPresheaf& x) {
  return is_bijective(plus_construction(ideal, x).unit);
}

SheafifyResult sheafify(const MorphismIdeal& ideal, const FinPresheaf& x) {
  const PlusResult once = plus_construction(ideal, x);
  const PlusResult twice = plus_construction(ideal, *once.plus);

  auto sheaf = std::make_shared<FinPresheaf>(*twice.plus);
  sheaf->name = "a(" + x.name + ")";

  SheafifyResult out;
  out.sheaf = sheaf;
  out.unit = compose_maps(twice.unit, once.unit);
  out.unit.source = &x;
  out.unit.target = sheaf.get();
  return out;
}

CoendResult coend_skeleton(const MorphismIdeal& ideal, const FinPresheaf& q,
                           std::size_t cap) {
  const FinCategory& cat = *ideal.category;
  if (q.category != &cat) fail("DanglingReference", "presheaf over a different category");
  require_idempotent(cat, ideal);

  // Triples (x, f, g), created in (B, g, f, x) order so that union-by-least
  // index later yields deterministic class representatives.
  using Key = std::array<std::int32_t, 3>;
  std::vector<Key> triples;
  std::map<Key, std::int32_t> index;
  for (ObjId b = 0; b < static_cast<ObjId>(cat.num_objects()); ++b) {
    for (MorId g : cat.out_of(b)) {
      if (!ideal.contains(g)) continue;
      for (MorId f : cat.out_of(cat.cod(g))) {
        if (!ideal.contains(f)) continue;
        const ObjId d = cat.cod(f);
        for (std::int32_t i = 0; i < q.count_at(d); ++i) {
          if (triples.size() >= cap) {
            fail("CarrierOverflow", "more than " + std::to_string(cap) + " coend triples");
          }
          const Key key{q.gid(d, i), f, g};
          index.emplace(key, static_cast<std::int32_t>(triples.size()));
          triples.push_back(key);
        }
      }
    }
  }

  std::vector<std::int32_t> parent(triples.size());
  for (std::size_t t = 0; t < triples.size(); ++t) parent[t] = static_cast<std::int32_t>(t);
  auto find = [&](std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto unite = [&](const Key& a, const Key& b) {
    const std::int32_t ra = find(index.at(a)), rb = find(index.at(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };

  // Dinaturality in the Q(D) slot: (x'·u, f, g) ~ (x', u∘f, g) for u: D→D'.
  for (MorId u = 0; u < static_cast<MorId>(cat.num_morphisms()); ++u) {
    const ObjId dd = cat.dom(u), d2 = cat.cod(u);
    for (MorId f : cat.into(dd)) {
      if (!ideal.contains(f)) continue;
      const MorId uf = cat.compose(u, f);
      for (MorId g : cat.into(cat.dom(f))) {
        if (!ideal.contains(g)) continue;
        for (std::int32_t i = 0; i < q.count_at(d2); ++i) {
          const std::int32_t xg = q.gid(d2, i);
          unite(Key{q.act(xg, u), f, g}, Key{xg, uf, g});
        }
      }
    }
  }
  // Dinaturality in the middle slot: (x, f'∘h, g) ~ (x, f', h∘g) for h: C→C'.
  for (MorId h = 0; h < static_cast<MorId>(cat.num_morphisms()); ++h) {
    const ObjId c = cat.dom(h), c2 = cat.cod(h);
    for (MorId fp : cat.out_of(c2)) {
      if (!ideal.contains(fp)) continue;
      const MorId fph = cat.compose(fp, h);
      const ObjId d = cat.cod(fp);
      for (MorId g : cat.into(c)) {
        if (!ideal.contains(g)) continue;
        const MorId hg = cat.compose(h, g);
        for (std::int32_t i = 0; i < q.count_at(d); ++i) {
          const std::int32_t xg = q.gid(d, i);
          unite(Key{xg, fph, g}, Key{xg, fp, hg});
        }
      }
    }
  }

  // Classes, carried at dom(g), in ascending root order (= creation order of
  // the least representative, which is B-major).
  std::vector<std::int32_t> class_local(triples.size(), -1);
  std::vector<std::vector<std::int32_t>> roots_at(cat.num_objects());
  std::vector<std::vector<std::string>> elems(cat.num_objects());
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const std::int32_t tt = static_cast<std::int32_t>(t);
    if (find(tt) != tt) continue;
    const Key& key = triples[t];
    const ObjId b = cat.dom(key[2]);
    class_local[t] = static_cast<std::int32_t>(roots_at[b].size());
    roots_at[b].push_back(tt);
    elems[b].push_back("[" + q.elem_name(key[0]) + "|" + cat.morphisms[key[1]].name + "|" +
                       cat.morphisms[key[2]].name + "]");
  }

  std::vector<std::vector<std::int32_t>> action(cat.num_morphisms());
  for (MorId h = 0; h < static_cast<MorId>(cat.num_morphisms()); ++h) {
    const ObjId b = cat.cod(h);  // h: B'→B acts on classes carried at B
    action[h].resize(roots_at[b].size());
    for (std::size_t i = 0; i < roots_at[b].size(); ++i) {
      const Key& key = triples[roots_at[b][i]];
      const Key moved{key[0], key[1], cat.compose(key[2], h)};
      action[h][i] = class_local[find(index.at(moved))];
    }
  }

  CoendResult out;
  out.skeleton = std::make_shared<const FinPresheaf>(
      make_presheaf(cat, q.name + "!", std::move(elems), std::move(action)));
  out.counit.source = out.skeleton.get();
  out.counit.target = &q;
  out.counit.component.resize(cat.num_objects());
  for (ObjId b = 0; b < static_cast<ObjId>(cat.num_objects()); ++b) {
    out.counit.component[b].resize(roots_at[b].size());
    for (std::size_t i = 0; i < roots_at[b].size(); ++i) {
      const Key& key = triples[roots_at[b][i]];
      out.counit.component[b][i] = q.local_of(q.act(key[0], cat.compose(key[1], key[2])));
    }
  }
  validate_map(out.counit);

  Bitset image(static_cast<std::size_t>(q.total));
  for (std::int32_t g = 0; g < out.skeleton->total; ++g) image.set(out.counit.apply(g));
  if (image != i_generated_core(ideal, q).parts) {
    fail("AssertionFailed", "coend counit image differs from the generated core");
  }
  return out;
}

}  // namespace aufheben
