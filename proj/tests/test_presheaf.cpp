#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "aufheben/fincat.hpp"
#include "aufheben/ideals.hpp"
#include "aufheben/io.hpp"
#include "aufheben/presheaf.hpp"
#include "helpers.hpp"

using namespace aufheben;

namespace {

std::vector<std::size_t> sub_sizes(const std::vector<Subpresheaf>& subs) {
  std::vector<std::size_t> out;
  for (const auto& u : subs) out.push_back(u.size());
  return out;
}

std::vector<std::string> member_names(const Subpresheaf& u) {
  std::vector<std::string> out;
  const FinPresheaf& x = *u.host;
  for (std::size_t g = u.parts.find_first(); g != Bitset::npos; g = u.parts.find_next(g)) {
    const ObjId d = x.object_of(static_cast<std::int32_t>(g));
    out.push_back(x.category->objects[d] + ":" + x.elem_name(static_cast<std::int32_t>(g)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("representables and their subobject lattices on graphic") {
  FinCategory g = make_graphic();
  const FinPresheaf y1 = representable(g, g.object_id("1"));
  const FinPresheaf yG = representable(g, g.object_id("G"));
  const FinPresheaf yD = representable(g, g.object_id("D"));
  CHECK(y1.total == 3);
  CHECK(yG.total == 9);
  CHECK(yD.total == 5);

  CHECK(sub_sizes(enumerate_subpresheaves(y1)) == std::vector<std::size_t>{0, 3});
  CHECK(sub_sizes(enumerate_subpresheaves(yG)) ==
        std::vector<std::size_t>{0, 3, 3, 5, 6, 8, 9});
  const auto subD = enumerate_subpresheaves(yD);
  CHECK(sub_sizes(subD) == std::vector<std::size_t>{0, 3, 5});
  CHECK(member_names(subD[0]).empty());
  CHECK(member_names(subD[1]) == std::vector<std::string>{"1:dag", "D:dag_D", "G:dag_G"});
  CHECK(member_names(subD[2]) ==
        std::vector<std::string>{"1:dag", "D:dag_D", "D:id_D", "G:dag_G", "G:r"});

  CHECK(heyting_dim(y1) == 0);
  CHECK(heyting_dim(yG) == 2);
  CHECK(heyting_dim(yD) == 1);
}

TEST_CASE("dimension of a representable matches its object's entry level") {
  FinCategory d2 = make_delta(2);
  struct Row {
    const char* obj;
    std::int32_t elems;
    std::size_t subs;
    int dim;
  };
  const std::vector<Row> rows = {{"[0]", 3, 2, 0}, {"[1]", 9, 5, 1}, {"[2]", 19, 19, 2}};
  for (const Row& r : rows) {
    CAPTURE(r.obj);
    const FinPresheaf y = representable(d2, d2.object_id(r.obj));
    CHECK(y.total == r.elems);
    CHECK(enumerate_subpresheaves(y).size() == r.subs);
    CHECK(heyting_dim(y) == r.dim);
  }

  FinCategory d3 = make_delta(3);
  CHECK(enumerate_subpresheaves(representable(d3, d3.object_id("[2]"))).size() == 19);
  CHECK(heyting_dim(representable(d3, d3.object_id("[2]"))) == 2);
  const FinPresheaf y3 = representable(d3, d3.object_id("[3]"));
  CHECK(y3.total == 69);
  CHECK(enumerate_subpresheaves(y3, 500).size() == 167);

  FinCategory f3 = make_fin(3);
  const FinPresheaf yf3 = representable(f3, f3.object_id("3"));
  CHECK(enumerate_subpresheaves(yf3).size() == 19);
  CHECK(heyting_dim(yf3) == 2);
  CHECK_FALSE(is_boolean_object(yf3).boolean);
}

TEST_CASE("the core of a representable under a level's ideal") {
  FinCategory g = make_graphic();
  const MorphismIdeal i1 = ideal_of_subcategory(g, make_subcategory(g, {"1", "D"}));
  CHECK(morphism_names(i1) ==
        std::vector<std::string>{"alpha", "bang_D", "bang_G", "bot", "bot_D", "bot_G", "dag",
                                 "dag_D", "dag_G", "id_1", "id_D", "r", "s", "top", "top_D",
                                 "top_G"});

  const FinPresheaf yG = representable(g, g.object_id("G"));
  const Subpresheaf core = i_generated_core(i1, yG);
  CHECK(member_names(core) ==
        std::vector<std::string>{"1:bot", "1:top", "D:bot_D", "D:s", "D:top_D", "G:alpha",
                                 "G:bot_G", "G:top_G"});
  CHECK_FALSE(is_minimal(i1, yG));
  // the core is the largest I-generated subobject, so it is action-closed
  CHECK_NOTHROW(validate_subpresheaf(core));

  // yD is generated by its own level's ideal
  CHECK(is_minimal(i1, representable(g, g.object_id("D"))));
}

TEST_CASE("fast on-top test agrees with the quantified oracle") {
  FinCategory g = make_graphic();
  const MorphismIdeal i1 = ideal_of_subcategory(g, make_subcategory(g, {"1", "D"}));
  const FinPresheaf yG = representable(g, g.object_id("G"));
  for (ObjId d = 0; d < static_cast<ObjId>(g.num_objects()); ++d) {
    for (std::int32_t i = 0; i < yG.count_at(d); ++i) {
      CAPTURE(g.objects[d]);
      CAPTURE(yG.elems[d][i]);
      const auto fast = element_on_top(i1, yG, d, i);
      const auto slow = element_on_top_oracle(i1, yG, d, i);
      CHECK(fast.on_top == slow.on_top);
      CHECK(fast.on_top);  // every element of yG is on top of I({1,D})
    }
  }

  // same agreement over a representable of delta(2) and the level-1 ideal
  FinCategory d2 = make_delta(2);
  const MorphismIdeal j = ideal_of_subcategory(d2, make_subcategory(d2, {"[0]"}));
  const FinPresheaf y1 = representable(d2, d2.object_id("[1]"));
  for (ObjId d = 0; d < static_cast<ObjId>(d2.num_objects()); ++d) {
    for (std::int32_t i = 0; i < y1.count_at(d); ++i) {
      const auto fast = element_on_top(j, y1, d, i);
      const auto slow = element_on_top_oracle(j, y1, d, i);
      CAPTURE(d2.objects[d]);
      CAPTURE(y1.elems[d][i]);
      CHECK(fast.on_top == slow.on_top);
      if (!fast.on_top) {
        REQUIRE(fast.witness.has_value());
      }
    }
  }

  CHECK(has_skeletal_boundaries(i1, yG).on_top);
}

TEST_CASE("Heyting algebra laws on Sub(y(G))") {
  FinCategory g = make_graphic();
  const FinPresheaf yG = representable(g, g.object_id("G"));
  const auto subs = enumerate_subpresheaves(yG);
  const Subpresheaf top = sub_top(yG), bottom = sub_bottom(yG);
  CHECK(top.size() == 9);
  CHECK(bottom.size() == 0);
  for (const Subpresheaf& u : subs) {
    CHECK(sub_meet(u, top) == u);
    CHECK(sub_join(u, bottom) == u);
    CHECK(sub_implies(u, u) == top);
    CHECK(sub_meet(u, sub_not(u)) == bottom);
    for (const Subpresheaf& v : subs) {
      // adjunction: w ∧ u ≤ v  iff  w ≤ (u ⇒ v), tested at both witnesses
      const Subpresheaf imp = sub_implies(u, v);
      CHECK(sub_meet(imp, u).leq(v));
      for (const Subpresheaf& w : subs) {
        CHECK(sub_meet(w, u).leq(v) == w.leq(imp));
      }
    }
  }
}

TEST_CASE("boolean verdicts and the depth hierarchy") {
  FinCategory g = make_graphic();
  const FinPresheaf yD = representable(g, g.object_id("D"));
  const BooleanVerdict b = is_boolean_object(yD);
  CHECK_FALSE(b.boolean);
  REQUIRE(b.witness.has_value());
  CHECK_FALSE(bounded_depth_holds(yD, 0));
  CHECK(bounded_depth_holds(yD, 1));

  const FinPresheaf t = terminal_presheaf(g);
  CHECK(heyting_dim(t) == 0);
  CHECK(is_boolean_object(t).boolean);

  // a two-step lattice never certifies a dimension past max_d
  const FinPresheaf yG = representable(g, g.object_id("G"));
  CHECK(heyting_dim(yG, 1) == std::nullopt);
}

TEST_CASE("the empty presheaf has the trivial lattice") {
  FinCategory g = make_graphic();
  FinPresheaf empty = make_presheaf(g, "empty", {{}, {}, {}},
                                    std::vector<std::vector<std::int32_t>>(g.num_morphisms()));
  CHECK(empty.total == 0);
  CHECK(enumerate_subpresheaves(empty).size() == 1);
  CHECK(heyting_dim(empty) == -1);
  CHECK(is_boolean_object(empty).boolean);
}

TEST_CASE("natural transformations realize the Yoneda count") {
  FinCategory g = make_graphic();
  for (ObjId c = 0; c < static_cast<ObjId>(g.num_objects()); ++c) {
    for (ObjId d = 0; d < static_cast<ObjId>(g.num_objects()); ++d) {
      CAPTURE(g.objects[c]);
      CAPTURE(g.objects[d]);
      const auto nats =
          natural_transformations(representable(g, c), representable(g, d));
      CHECK(nats.size() == g.hom(c, d).size());
    }
  }
  const FinPresheaf yD = representable(g, g.object_id("D"));
  const FinPresheaf yG = representable(g, g.object_id("G"));
  const auto nats = natural_transformations(yD, yG);
  CHECK(nats.size() == 3);
  for (const PresheafMap& h : nats) CHECK_NOTHROW(validate_map(h));
}

TEST_CASE("image factorization splits any map as onto then inclusion") {
  FinCategory g = make_graphic();
  const FinPresheaf yD = representable(g, g.object_id("D"));
  const FinPresheaf yG = representable(g, g.object_id("G"));
  for (const PresheafMap& h : natural_transformations(yD, yG)) {
    const ImageFactorization f = image_factor(h);
    CHECK(is_injective(f.inclusion));
    CHECK(f.as_subobject.size() == static_cast<std::size_t>(f.image->total));
    const PresheafMap back = compose_maps(f.inclusion, f.onto);
    for (std::int32_t x = 0; x < yD.total; ++x) CHECK(back.apply(x) == h.apply(x));
  }
}

TEST_CASE("subpresheaf closure, naming, and validation") {
  FinCategory g = make_graphic();
  const FinPresheaf yG = representable(g, g.object_id("G"));

  // closing {G:id_G} must recover the whole representable
  Bitset seed(yG.total);
  seed.set(yG.gid(g.object_id("G"), *yG.find_elem(g.object_id("G"), "id_G")));
  CHECK(subpresheaf_closure(yG, seed).size() == 9);

  const Subpresheaf named = subpresheaf_from_names(yG, {{"G", "alpha"}});
  CHECK(named.size() == 5);  // alpha plus its four restrictions

  Subpresheaf broken{&yG, seed};
  CHECK_THROWS_WITH_AS(validate_subpresheaf(broken), doctest::Contains("NotActionClosed"),
                       Error);
  CHECK_THROWS_WITH_AS(subpresheaf_from_names(yG, {{"G", "nope"}}),
                       doctest::Contains("nope"), Error);
}

TEST_CASE("coproducts and quotients of presheaves") {
  FinCategory g = make_graphic();
  const FinPresheaf yD = representable(g, g.object_id("D"));
  const FinPresheaf co = coproduct_presheaf({&yD, &yD}, "two-copies");
  CHECK(co.total == 2 * yD.total);
  CHECK_NOTHROW(validate_presheaf(co));

  // identifying nothing gives a bijection; gluing the two generator points
  // collapses the copies entirely
  CHECK(is_bijective(quotient_presheaf(co, {}, "same").projection));
  const ObjId D = g.object_id("D");
  const QuotientResult glued =
      quotient_presheaf(co, {{co.gid(D, 0), co.gid(D, yD.count_at(D))}}, "glued");
  CHECK(glued.quotient->total == yD.total);
  CHECK_NOTHROW(validate_presheaf(*glued.quotient));
}

TEST_CASE("presheaf JSON round-trips and rejects unknown morphisms") {
  FinCategory g = make_graphic();
  const FinPresheaf yG = representable(g, g.object_id("G"));
  const FinPresheaf back = load_presheaf(g, presheaf_to_json(yG));
  CHECK(back.total == yG.total);
  CHECK(back.elems == yG.elems);
  CHECK(back.action == yG.action);

  const std::string bogus = R"({
    "category": "graphic",
    "name": "bad",
    "elements": {"1": ["x"], "G": [], "D": []},
    "actions": {"ghost": {"x": "x"}}
  })";
  CHECK_THROWS_WITH_AS(load_presheaf(g, bogus), doctest::Contains("ghost"), Error);
  CHECK_THROWS_WITH_AS(load_presheaf(make_fin(2), presheaf_to_json(yG)),
                       doctest::Contains("graphic"), Error);
}

TEST_CASE("category JSON round-trips through build and classify") {
  FinCategory g = make_graphic();
  const FinCategory back = load_category(category_to_json(g));
  REQUIRE(back.num_morphisms() == g.num_morphisms());
  REQUIRE(back.num_objects() == g.num_objects());
  for (MorId f = 0; f < static_cast<MorId>(g.num_morphisms()); ++f) {
    const MorId bf = back.morphism_id(g.morphisms[f].name);
    const MorphismClass a = g.classes().row(f);
    const MorphismClass b = back.classes().row(bf);
    CHECK(a.mono == b.mono);
    CHECK(a.epi == b.epi);
    CHECK(a.split_mono == b.split_mono);
    CHECK(a.split_epi == b.split_epi);
    CHECK(a.iso == b.iso);
  }
}

TEST_CASE("random fixtures stay valid and factor through their images") {
  FinCategory t4 = make_trees(4);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const FinPresheaf x = testutil::random_presheaf(t4, rng, "rnd" + std::to_string(i));
    CAPTURE(i);
    CHECK_NOTHROW(validate_presheaf(x));
    const FinPresheaf rt = load_presheaf(t4, presheaf_to_json(x));
    CHECK(rt.elems == x.elems);
    CHECK(rt.action == x.action);
  }
}
