// Acceptance gate: twelve numbered criteria, one [PASS]/[FAIL] line each.
//
// Run with no arguments to execute the whole gate, or pass criterion numbers
// (e.g. `acceptance 3 7`) to run a subset. Exit code 0 iff every selected
// criterion passed. Sub-clauses print their own [pass]/[FAIL] lines with
// witnesses, so a red criterion always names the objects that broke it.
//
// Criteria 4c, 5 and 6a encode stated laws that the computed structures
// refute; they are kept red on purpose, with the refuting witnesses printed,
// rather than being weakened until they pass.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aufheben/fincat.hpp"
#include "aufheben/ideals.hpp"
#include "aufheben/levels.hpp"
#include "aufheben/presheaf.hpp"
#include "helpers.hpp"

using namespace aufheben;

namespace {

// Infrastructure guard: a failure here means a fixture itself did not build,
// which is not a criterion verdict. Never compiled out.
#define REQUIRE(cond, msg)                                                      \
  do {                                                                          \
    if (!(cond)) {                                                              \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg       \
                << "\n";                                                        \
      std::exit(1);                                                            \
    }                                                                           \
  } while (0)

struct Gate {
  bool ok = true;
  void clause(const std::string& id, bool pass, const std::string& detail = "") {
    std::cout << "  [" << (pass ? "pass" : "FAIL") << "] " << id;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    ok = ok && pass;
  }
};

std::string braced(const FullSubcategory& s) { return testutil::braced(object_names(s)); }

std::string chain_str(const std::vector<FullSubcategory>& chain) {
  std::string out;
  for (const FullSubcategory& s : chain) {
    if (!out.empty()) out += " ";
    out += braced(s);
  }
  return out;
}

// The full subcategory of a product category spanned by a pair of factor
// subcategories; object (a, b) sits at index a * |right| + b.
FullSubcategory boxed(const FinCategory& prod, const FinCategory& left,
                      const FinCategory& right, const FullSubcategory& sl,
                      const FullSubcategory& sr) {
  Bitset bits(prod.num_objects());
  for (ObjId a = 0; a < static_cast<ObjId>(left.num_objects()); ++a) {
    for (ObjId b = 0; b < static_cast<ObjId>(right.num_objects()); ++b) {
      if (sl.objects.test(a) && sr.objects.test(b)) {
        bits.set(static_cast<std::size_t>(a) * right.num_objects() + b);
      }
    }
  }
  return full_subcategory(prod, bits);
}

std::string extras_str(const FinCategory& cat, const FullSubcategory& got,
                       const FullSubcategory& want) {
  std::string out;
  const Bitset extra = got.objects & ~want.objects;
  for (auto i = extra.find_first(); i != Bitset::npos; i = extra.find_next(i)) {
    if (!out.empty()) out += " ";
    out += cat.objects[i];
  }
  return out.empty() ? "(none)" : out;
}

// y(f): the natural map between representables induced by f, with components
// given by post-composition.
PresheafMap yoneda_map(const FinCategory& c, MorId f, const std::vector<FinPresheaf>& reps) {
  PresheafMap yf;
  yf.source = &reps[c.dom(f)];
  yf.target = &reps[c.cod(f)];
  yf.component.resize(c.num_objects());
  for (ObjId b = 0; b < static_cast<ObjId>(c.num_objects()); ++b) {
    const auto& bucket = c.hom(b, c.dom(f));
    yf.component[b].resize(bucket.size());
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const MorId fu = c.compose(f, bucket[i]);
      const auto& tb = c.hom(b, c.cod(f));
      for (std::size_t j = 0; j < tb.size(); ++j) {
        if (tb[j] == fu) yf.component[b][i] = static_cast<std::int32_t>(j);
      }
    }
  }
  validate_map(yf);
  return yf;
}

// ---- criteria -------------------------------------------------------------

bool criterion_01() {
  Gate g;
  FinCategory d4 = make_delta(4);
  const auto closed = enumerate_closed_subcategories(d4);
  g.clause("1a",
           chain_str(closed) ==
               "{} {[0]} {[0],[1]} {[0],[1],[2]} {[0],[1],[2],[3]} "
               "{[0],[1],[2],[3],[4]}",
           "closed subcategories form the 6-chain; got " + chain_str(closed));
  bool steps = closed.size() == 6;
  for (std::size_t d = 0; steps && d + 1 < closed.size(); ++d) {
    steps = successor(d4, closed[d]) == closed[d + 1];
  }
  g.clause("1b", steps, "successor(level d) = level d+1 for every step");
  g.clause("1c", successor(d4, closed.back()) == closed.back(), "successor(top) = top");
  return g.ok;
}

bool criterion_02() {
  Gate g;
  FinCategory f4 = make_fin(4);
  bool formula_only = true;
  const auto chain = successor_chain(f4, &formula_only);
  g.clause("2a", !formula_only, "fin(4) has the factorization property");
  g.clause("2b", chain_str(chain) == "{} {1} {1,2} {1,2,3} {1,2,3,4}",
           "chain is [{}, F1, F2, F3, F4]; got " + chain_str(chain));
  return g.ok;
}

bool criterion_03() {
  Gate g;
  FinCategory gr = make_graphic();
  const auto chain = successor_chain(gr);
  g.clause("3a", chain_str(chain) == "{} {1} {1,D} {1,D,G}",
           "chain is [{}, {1}, {1,D}, {1,D,G}]; got " + chain_str(chain));

  // "D has exactly two subobjects": two monos into D in the site...
  std::vector<std::string> monos;
  const ObjId D = gr.object_id("D");
  for (MorId f : gr.into(D)) {
    if (gr.classes().mono[f]) monos.push_back(gr.morphisms[f].name);
  }
  std::sort(monos.begin(), monos.end());
  g.clause("3b", monos == std::vector<std::string>{"dag", "id_D"},
           "monos into D are the point and the identity; got " + testutil::braced(monos));

  // ...and on the presheaf side Sub(y(D)) is the 3-chain 0 < point < y(D)
  const auto subs = enumerate_subpresheaves(representable(gr, D));
  std::vector<std::size_t> sizes;
  for (const auto& u : subs) sizes.push_back(u.size());
  g.clause("3c", sizes == std::vector<std::size_t>{0, 3, 5},
           "Sub(y(D)) is the 3-chain with part sizes 0, 3, 5");
  return g.ok;
}

bool criterion_04() {
  Gate g;
  FinCategory d2 = make_delta(2);
  FinCategory f3 = make_fin(3);
  FinCategory p = product(d2, f3, 5000);
  const auto ch = successor_chain(p);
  const auto cd = successor_chain(d2);
  const auto ce = successor_chain(f3);
  REQUIRE(ch.size() >= 4 && cd.size() >= 3 && ce.size() >= 3, "product chains too short");

  g.clause("4a", ch[1] == boxed(p, d2, f3, cd[1], ce[1]), "(DxE)_0 = D_0 x E_0");

  FullSubcategory u1 = boxed(p, d2, f3, cd[2], ce[1]);
  u1.objects |= boxed(p, d2, f3, cd[1], ce[2]).objects;
  g.clause("4b", ch[2] == u1, "(DxE)_1 = (D_1 x E_0) u (D_0 x E_1)");

  const FullSubcategory d1e1 = boxed(p, d2, f3, cd[2], ce[2]);
  g.clause("4c", ch[3] == d1e1,
           "(DxE)_2 = D_1 x E_1; computed (DxE)_2 has extra objects: " +
               extras_str(p, ch[3], d1e1));
  return g.ok;
}

bool criterion_05() {
  Gate g;
  FinCategory f4 = make_fin(4);
  FinCategory q = product(f4, f4, 300000);
  const auto cq = successor_chain(f4);
  REQUIRE(cq.size() >= 3, "fin(4) chain too short");
  const FullSubcategory s = boxed(q, f4, f4, cq[2], cq[2]);
  const FullSubcategory ss = successor(q, s);
  g.clause("5", ss == s,
           "successor({1,2}x{1,2}) = itself; computed successor has extra objects: " +
               extras_str(q, ss, s));
  return g.ok;
}

bool criterion_06() {
  Gate g;
  FinCategory t4 = make_trees(4);
  const MorphismIdeal ideal = ideal_of_subcategory(t4, make_subcategory(t4, {"(())"}));

  std::vector<std::string> on_top;
  std::string three_node_witnesses;
  for (ObjId d = 0; d < static_cast<ObjId>(t4.num_objects()); ++d) {
    const OnTopVerdict v = map_on_top_of_ideal(t4, t4.identity(d), ideal);
    if (v.on_top) on_top.push_back(t4.objects[d]);
    if (!v.on_top && t4.objects[d].size() == 6 && v.witness) {  // a 3-node tree
      three_node_witnesses += t4.objects[d] + " not on top, witness " +
                              t4.morphisms[*v.witness].name + "; ";
    }
  }
  std::sort(on_top.begin(), on_top.end());
  g.clause("6a", on_top == std::vector<std::string>{"((()))", "(()())"},
           "on-top identities are exactly the two 3-node trees; computed set " +
               testutil::braced(on_top) + "; " + three_node_witnesses);

  bool four_node_all_false = true;
  for (ObjId d = 0; d < static_cast<ObjId>(t4.num_objects()); ++d) {
    if (t4.objects[d].size() != 8) continue;  // 4-node trees encode to 8 chars
    four_node_all_false =
        four_node_all_false && !map_on_top_of_ideal(t4, t4.identity(d), ideal).on_top;
  }
  g.clause("6b", four_node_all_false, "no 4-node tree identity is on top");

  FinCategory t5 = make_trees(5, 200000);
  const FactorizationVerdict& fv = t5.factorization();
  bool surjection_stuck = true;
  for (const char* name :
       {"((())(()))->((()())):01213", "((())(()))->((()())):01312"}) {
    const MorId f = t5.morphism_id(name);
    surjection_stuck = surjection_stuck && t5.classes().epi[f] &&
                       !split_epi_mono_factor(t5, f).has_value();
  }
  g.clause("6c", !fv.holds && surjection_stuck,
           "factorization property fails on trees(5); both epis "
           "((())(()))->((()())) admit no split-epi/mono factorization" +
               (fv.counterexample
                    ? "; first counterexample " + t5.morphisms[*fv.counterexample].name
                    : std::string{}));
  return g.ok;
}

bool criterion_07() {
  Gate g;
  for (const FinCategory& cat : {make_delta(3), make_graphic()}) {
    bool round = true, idem = true, mc = true;
    for (const FullSubcategory& s : enumerate_closed_subcategories(cat)) {
      const MorphismIdeal ideal = ideal_of_subcategory(cat, s);
      round = round && subcategory_of_ideal(cat, ideal) == s;
      round = round &&
              ideal_of_subcategory(cat, subcategory_of_ideal(cat, ideal)).members ==
                  ideal.members;
      idem = idem && is_idempotent(cat, ideal).idempotent;
      mc = mc && is_mono_cartesian(cat, ideal).result == McVerdict::Result::kYes;
    }
    g.clause("7-" + cat.name, round && idem && mc,
             "round-trips are identities; ideals idempotent and mono-cartesian");
  }
  return g.ok;
}

// Criteria 8 and 9 replay one seeded sample; the draw order (and hence the
// size fingerprint below) is pinned so reruns exercise identical presheaves.
constexpr const char* kSampleSizes =
    "11 12 3 8 9 3 7 18 9 9 3 19 4 3 11 9 6 3 3 17 19 15 12 9 3 12 7 9 8 7 3 13 "
    "10 9 7 3 16 25 13 38 3 9 10 3 3 19 3 38 12 16 41 47 6 18 9 25 10 25 29 3";

bool criterion_08() {
  Gate g;
  std::mt19937_64 rng(2026);
  int n = 0, coend_ok = 0;
  std::ostringstream sizes;
  for (const FinCategory& cat : {make_graphic(), make_delta(2)}) {
    const auto closed = enumerate_closed_subcategories(cat);
    for (int rep = 0; rep < 30; ++rep) {
      const FinPresheaf x = testutil::random_presheaf(cat, rng, "P" + std::to_string(n));
      if (n > 0) sizes << " ";
      sizes << x.total;
      const MorphismIdeal ideal = ideal_of_subcategory(
          cat, closed[static_cast<std::size_t>(rep) % closed.size()]);
      const Subpresheaf core = i_generated_core(ideal, x);
      const CoendResult ce = coend_skeleton(ideal, x);
      Bitset image(x.total);
      for (std::int32_t e = 0; e < ce.skeleton->total; ++e) {
        image.set(static_cast<std::size_t>(ce.counit.apply(e)));
      }
      coend_ok += image == core.parts;
      ++n;
    }
  }
  g.clause("8a", sizes.str() == kSampleSizes, "sample fingerprint (60 seeded draws)");
  g.clause("8b", n == 60 && coend_ok == n,
           "coend counit image = core on " + std::to_string(coend_ok) + "/" +
               std::to_string(n) + " samples");
  return g.ok;
}

bool criterion_09() {
  Gate g;
  std::mt19937_64 rng(2026);
  int n = 0, sheaf_ok = 0;
  for (const FinCategory& cat : {make_graphic(), make_delta(2)}) {
    const auto closed = enumerate_closed_subcategories(cat);
    for (int rep = 0; rep < 30; ++rep) {
      const FinPresheaf x = testutil::random_presheaf(cat, rng, "P" + std::to_string(n));
      const MorphismIdeal ideal = ideal_of_subcategory(
          cat, closed[static_cast<std::size_t>(rep) % closed.size()]);
      const SheafifyResult sh = sheafify(ideal, x);
      bool ok = is_sheaf(ideal, *sh.sheaf);
      ok = ok && is_bijective(sheafify(ideal, *sh.sheaf).unit);
      sheaf_ok += ok;
      ++n;
    }
  }
  g.clause("9a", n == 60 && sheaf_ok == n,
           "sheafify lands in sheaves and is idempotent on " + std::to_string(sheaf_ok) +
               "/" + std::to_string(n) + " samples");

  // universal property, exhaustively on sampled fixtures with <= 6 elements
  std::mt19937_64 rng2(99);
  FinCategory gr = make_graphic();
  const MorphismIdeal i1 = ideal_of_subcategory(gr, make_subcategory(gr, {"1", "D"}));
  std::vector<FinPresheaf> small;
  while (small.size() < 6) {
    FinPresheaf x = testutil::random_presheaf(gr, rng2, "U" + std::to_string(small.size()));
    if (x.total <= 6) small.push_back(std::move(x));
  }
  int checked = 0, unique_factor = 0;
  for (const FinPresheaf& p : small) {
    const SheafifyResult ap = sheafify(i1, p);
    for (const FinPresheaf& fsrc : small) {
      const SheafifyResult f = sheafify(i1, fsrc);
      for (const PresheafMap& h : natural_transformations(p, *f.sheaf)) {
        int matches = 0;
        for (const PresheafMap& k : natural_transformations(*ap.sheaf, *f.sheaf)) {
          matches += compose_maps(k, ap.unit).component == h.component;
        }
        ++checked;
        unique_factor += matches == 1;
      }
    }
  }
  g.clause("9b", checked == 48 && unique_factor == checked,
           "every map to a sheaf factors uniquely through the unit (" +
               std::to_string(unique_factor) + "/" + std::to_string(checked) + ")");
  return g.ok;
}

bool criterion_10() {
  Gate g;
  int checked = 0, agree = 0;
  for (const FinCategory& cat : {make_graphic(), make_delta(2), make_fin(3)}) {
    for (const FullSubcategory& s : enumerate_closed_subcategories(cat)) {
      const MorphismIdeal ideal = ideal_of_subcategory(cat, s);
      for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
        const FinPresheaf y = representable(cat, d);
        if (enumerate_subpresheaves(y, 10000).size() > 10000) continue;
        for (std::int32_t e = 0; e < y.total; ++e) {
          const auto fast = element_on_top(ideal, y, y.object_of(e), y.local_of(e));
          const auto slow = element_on_top_oracle(ideal, y, y.object_of(e), y.local_of(e));
          ++checked;
          agree += fast.on_top == slow.on_top;
        }
      }
    }
  }
  g.clause("10", checked == 416 && agree == checked,
           "fast on-top = quantified oracle on " + std::to_string(agree) + "/" +
               std::to_string(checked) + " fixture elements");
  return g.ok;
}

bool criterion_11() {
  Gate g;
  for (const FinCategory& cat : {make_graphic(), make_fin(3), make_delta(3)}) {
    std::vector<FinPresheaf> reps;
    for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
      reps.push_back(representable(cat, d));
    }
    bool all_ok = true;
    for (const FullSubcategory& s : enumerate_closed_subcategories(cat)) {
      const MorphismIdeal ideal = ideal_of_subcategory(cat, s);
      Bitset members(cat.num_morphisms());
      for (MorId f = 0; f < static_cast<MorId>(cat.num_morphisms()); ++f) {
        const PresheafMap yf = yoneda_map(cat, f, reps);
        const Subpresheaf core = i_generated_core(ideal, reps[cat.cod(f)]);
        if (map_on_top(yf, core, 100000).on_top) members.set(f);
      }
      const FullSubcategory via_presheaf =
          subcategory_of_ideal(cat, make_ideal(cat, members));
      all_ok = all_ok && via_presheaf == successor(cat, s);
    }
    g.clause("11-" + cat.name, all_ok,
             "successor(S) = subcategory of the on-top ideal, all closed S");
  }
  return g.ok;
}

bool criterion_12() {
  Gate g;

  // 12a: successor is inflationary, monotone, and closure-preserving
  bool laws = true;
  for (const FinCategory& cat :
       {make_delta(2), make_delta(3), make_fin(3), make_fin(4), make_graphic(),
        make_trees(4)}) {
    const auto closed = enumerate_closed_subcategories(cat);
    std::vector<FullSubcategory> succs;
    for (const FullSubcategory& s : closed) {
      const FullSubcategory next = successor(cat, s);
      laws = laws && s.objects.is_subset_of(next.objects);
      laws = laws && is_subobject_closed(cat, next).closed;
      succs.push_back(next);
    }
    for (std::size_t i = 0; i < closed.size(); ++i) {
      for (std::size_t j = 0; j < closed.size(); ++j) {
        if (closed[i].objects.is_subset_of(closed[j].objects)) {
          laws = laws && succs[i].objects.is_subset_of(succs[j].objects);
        }
      }
    }
  }
  g.clause("12a", laws, "successor inflationary + monotone + closure-preserving");

  // 12b: core naturality squares at monos are pullbacks. Monos sampled two
  // ways: injective natural maps between representables, and subobject
  // inclusions of representables and seeded random presheaves.
  bool squares = true;
  int square_count = 0;
  auto square_is_pullback = [&](const MorphismIdeal& ideal, const PresheafMap& m) {
    const Subpresheaf src_core = i_generated_core(ideal, *m.source);
    const Subpresheaf dst_core = i_generated_core(ideal, *m.target);
    Bitset preimage(m.source->total);
    for (std::int32_t e = 0; e < m.source->total; ++e) {
      if (dst_core.parts.test(static_cast<std::size_t>(m.apply(e)))) preimage.set(e);
    }
    ++square_count;
    return preimage == src_core.parts;
  };
  std::mt19937_64 rng(731);
  for (const FinCategory& cat : {make_graphic(), make_delta(2)}) {
    std::vector<FinPresheaf> reps;
    for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
      reps.push_back(representable(cat, d));
    }
    std::vector<FinPresheaf> samples = reps;
    for (int i = 0; i < 4; ++i) {
      samples.push_back(testutil::random_presheaf(cat, rng, "m" + std::to_string(i)));
    }
    for (const FullSubcategory& s : enumerate_closed_subcategories(cat)) {
      const MorphismIdeal ideal = ideal_of_subcategory(cat, s);
      for (const FinPresheaf& x : reps) {
        for (const FinPresheaf& y : reps) {
          for (const PresheafMap& h : natural_transformations(x, y)) {
            if (!is_injective(h)) continue;
            squares = squares && square_is_pullback(ideal, h);
          }
        }
      }
      for (const FinPresheaf& x : samples) {
        for (const Subpresheaf& u : enumerate_subpresheaves(x)) {
          const SubAsPresheaf as = subpresheaf_to_presheaf(u, "u");
          squares = squares && square_is_pullback(ideal, as.inclusion);
        }
      }
    }
  }
  g.clause("12b", squares,
           "core naturality squares at " + std::to_string(square_count) +
               " sampled monos are pullbacks");

  // 12c/12d: Boolean <=> boundaries skeletal at the empty ideal <=> B_0
  bool equiv = true, b0 = true;
  for (const FinCategory& cat : {make_graphic(), make_delta(2), make_fin(3)}) {
    const MorphismIdeal empty = make_ideal(cat, Bitset(cat.num_morphisms()));
    std::vector<FinPresheaf> fixtures;
    for (ObjId d = 0; d < static_cast<ObjId>(cat.num_objects()); ++d) {
      fixtures.push_back(representable(cat, d));
    }
    fixtures.push_back(terminal_presheaf(cat));
    for (const FinPresheaf& x : fixtures) {
      const bool boolean = is_boolean_object(x).boolean;
      equiv = equiv && boolean == has_skeletal_boundaries(empty, x).on_top;
      b0 = b0 && boolean == bounded_depth_holds(x, 0);
    }
  }
  g.clause("12c", equiv, "Boolean object <=> skeletal boundaries at the empty ideal");
  g.clause("12d", b0, "B_0 valid <=> subobject lattice Boolean");

  // 12e: Leibniz containment succ(C) x E_0 <= succ(C x E_0) on the product
  FinCategory d2 = make_delta(2);
  FinCategory f3 = make_fin(3);
  FinCategory p = product(d2, f3, 5000);
  const auto ce = successor_chain(f3);
  bool leibniz = true;
  for (const FullSubcategory& c : enumerate_closed_subcategories(d2)) {
    const FullSubcategory lhs = successor(p, boxed(p, d2, f3, c, ce[1]));
    const FullSubcategory rhs = boxed(p, d2, f3, successor(d2, c), ce[1]);
    leibniz = leibniz && rhs.objects.is_subset_of(lhs.objects);
  }
  g.clause("12e", leibniz, "Leibniz containment on delta(2) x fin(3)");

  return g.ok;
}

struct Criterion {
  int number;
  const char* summary;
  std::function<bool()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "delta(4) levels form the 6-chain and successor shifts by one", criterion_01},
      {2, "fin(4) successor chain is [{}, F1, F2, F3, F4]", criterion_02},
      {3, "graphic chain and the two subobjects of D", criterion_03},
      {4, "product level laws on delta(2) x fin(3)", criterion_04},
      {5, "fin(4)^2: successor of {1,2}x{1,2} equals itself", criterion_05},
      {6, "trees: on-top identities and the factorization witness", criterion_06},
      {7, "ideal <-> subcategory bijection, idempotent + mono-cartesian", criterion_07},
      {8, "coend counit image equals the core on 60 seeded samples", criterion_08},
      {9, "sheafification: sheaf, idempotent, universal", criterion_09},
      {10, "fast on-top equals the quantified oracle on all fixture elements",
       criterion_10},
      {11, "successor agrees with the presheaf-route successor", criterion_11},
      {12, "algebraic law suites (successor, pullbacks, Boolean, Leibniz)", criterion_12},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::cerr << "usage: acceptance [criterion-number...]  (1.."
                << criteria().size() << ")\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (const Criterion& c : criteria()) selected.push_back(c.number);
  }

  bool all_ok = true;
  for (int n : selected) {
    const Criterion& c = criteria()[static_cast<std::size_t>(n - 1)];
    const bool ok = c.run();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": "
              << c.summary << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
