#include "aufheben/levels.hpp"

#include <algorithm>
#include <map>

namespace aufheben {

namespace {

OnTopVerdict on_top_unchecked(const FinCategory& cat, MorId e, const MorphismIdeal& ideal) {
  const ObjId base = cat.dom(e);
  for (MorId f : cat.into(base)) {
    const MorId ef = cat.compose(e, f);
    if (ideal.contains(ef)) continue;
    bool rescued = false;
    for (MorId g : cat.hom(base, cat.dom(f))) {
      if (cat.compose(ef, g) == e) { rescued = true; break; }
    }
    if (!rescued) return {false, f};
  }
  return {true, std::nullopt};
}

std::optional<ObjId> find_terminal(const FinCategory& cat) {
  for (ObjId t = 0; t < static_cast<ObjId>(cat.num_objects()); ++t) {
    bool terminal = true;
    for (ObjId x = 0; x < static_cast<ObjId>(cat.num_objects()); ++x) {
      if (cat.hom(x, t).size() != 1) { terminal = false; break; }
    }
    if (terminal) return t;
  }
  return std::nullopt;
}

}  // namespace

FullSubcategory successor(const FinCategory& cat, const FullSubcategory& s,
                          bool* formula_only) {
  if (s.category != &cat || s.objects.size() != cat.num_objects()) {
    fail("DanglingReference", "subcategory of a different category");
  }
  const ClosedVerdict cv = is_subobject_closed(cat, s);
  if (!cv.closed) {
    fail("NotClosed", cat.morphisms[*cv.counterexample].name);
  }
  if (formula_only != nullptr) *formula_only = !cat.factorization().holds;

  const ClassTable& ct = cat.classes();
  Bitset out(cat.num_objects());
  for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
    bool admit = true;
    for (MorId m : cat.into(d)) {
      if (ct.mono[m] && !ct.iso[m] && !s.contains(cat.dom(m))) {
        admit = false;
        break;
      }
    }
    if (admit) out.set(d);
  }
  return FullSubcategory{&cat, std::move(out)};
}

std::vector<FullSubcategory> successor_chain(const FinCategory& cat, bool* formula_only) {
  bool fo = false, step_fo = false;
  std::vector<FullSubcategory> chain;
  chain.push_back(FullSubcategory{&cat, Bitset(cat.num_objects())});
  while (chain.size() <= cat.num_objects() + 2) {
    FullSubcategory next = successor(cat, chain.back(), &step_fo);
    fo |= step_fo;
    if (next == chain.back()) {
      if (formula_only != nullptr) *formula_only = fo;
      return chain;
    }
    chain.push_back(std::move(next));
  }
  fail("AssertionFailed", "successor chain failed to stabilize");  // unreachable
}

OnTopVerdict map_on_top_of_ideal(const FinCategory& cat, MorId e, const MorphismIdeal& ideal) {
  if (e < 0 || e >= static_cast<MorId>(cat.num_morphisms())) {
    fail("DanglingReference", "morphism index " + std::to_string(e));
  }
  require_idempotent(cat, ideal);
  return on_top_unchecked(cat, e, ideal);
}

Bitset on_top_ideal(const FinCategory& cat, const MorphismIdeal& ideal) {
  require_idempotent(cat, ideal);
  Bitset members(cat.num_morphisms());
  for (MorId e = 0; e < static_cast<MorId>(cat.num_morphisms()); ++e) {
    if (on_top_unchecked(cat, e, ideal).on_top) members.set(e);
  }
  return members;
}

PrecohesiveReport check_precohesive_hypotheses(const FinCategory& cat) {
  PrecohesiveReport report;
  report.terminal = find_terminal(cat);
  report.has_terminal = report.terminal.has_value();
  if (!report.has_terminal) return report;

  const ObjId t = *report.terminal;
  report.points.assign(cat.num_objects(), -1);
  report.every_object_has_point = true;
  for (ObjId x = 0; x < static_cast<ObjId>(cat.num_objects()); ++x) {
    const std::vector<MorId>& pts = cat.hom(t, x);
    if (pts.empty()) {
      report.every_object_has_point = false;
      if (!report.pointless) report.pointless = x;
    } else {
      report.points[x] = pts.front();
    }
  }
  return report;
}

EdgewiseVerdict edgewise_connected(const FinCategory& cat, ObjId d,
                                   const FullSubcategory& level_one) {
  const std::optional<ObjId> t = find_terminal(cat);
  if (!t) fail("NoTerminal", cat.name);

  const std::vector<MorId>& pts = cat.hom(*t, d);
  for (MorId u : pts) {
    for (MorId v : pts) {
      bool joined = false;
      for (std::size_t e = level_one.objects.find_first();
           e != Bitset::npos && !joined; e = level_one.objects.find_next(e)) {
        const ObjId mid = static_cast<ObjId>(e);
        for (MorId f : cat.hom(mid, d)) {
          bool hit_u = false, hit_v = false;
          for (MorId p : cat.hom(*t, mid)) {
            const MorId fp = cat.compose(f, p);
            hit_u |= fp == u;
            hit_v |= fp == v;
            if (hit_u && hit_v) break;
          }
          if (hit_u && hit_v) { joined = true; break; }
        }
      }
      if (!joined) return {false, std::make_pair(u, v)};
    }
  }
  return {true, std::nullopt};
}

LevelPoset level_poset(const FinCategory& cat, std::size_t cap) {
  LevelPoset lp;
  lp.category = &cat;
  lp.levels = enumerate_closed_subcategories(cat, cap);
  lp.formula_only = !cat.factorization().holds;

  std::map<Bitset, std::size_t> index;
  for (std::size_t i = 0; i < lp.levels.size(); ++i) index[lp.levels[i].objects] = i;

  lp.successor.resize(lp.levels.size());
  for (std::size_t i = 0; i < lp.levels.size(); ++i) {
    const FullSubcategory next = successor(cat, lp.levels[i]);
    const auto it = index.find(next.objects);
    if (it == index.end()) {
      fail("AssertionFailed", "successor left the level poset");  // closure preservation
    }
    lp.successor[i] = it->second;
  }

  // Transitive reduction of strict containment between levels.
  for (std::size_t i = 0; i < lp.levels.size(); ++i) {
    for (std::size_t j = 0; j < lp.levels.size(); ++j) {
      if (i == j) continue;
      const Bitset& lo = lp.levels[i].objects;
      const Bitset& hi = lp.levels[j].objects;
      if (!lo.is_proper_subset_of(hi)) continue;
      bool covering = true;
      for (std::size_t k = 0; k < lp.levels.size() && covering; ++k) {
        if (k == i || k == j) continue;
        const Bitset& mid = lp.levels[k].objects;
        if (lo.is_proper_subset_of(mid) && mid.is_proper_subset_of(hi)) covering = false;
      }
      if (covering) lp.covers.emplace_back(i, j);
    }
  }
  return lp;
}

}  // namespace aufheben
