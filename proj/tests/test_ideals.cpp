#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "aufheben/fincat.hpp"
#include "aufheben/ideals.hpp"
#include "helpers.hpp"

using namespace aufheben;

namespace {

std::string mc_str(const McVerdict& v) {
  switch (v.result) {
    case McVerdict::Result::kYes: return "yes";
    case McVerdict::Result::kNo: return "no";
    default: return "unknown";
  }
}

}  // namespace

TEST_CASE("closure and ideal validation on the 3-chain poset") {
  FinCategory c3 = make_poset("chain3", {"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});

  // {0<=2} is already two-sided (nothing composes through it to a new map)...
  Bitset seed(c3.num_morphisms());
  seed.set(c3.morphism_id("0<=2"));
  MorphismIdeal only_02 = two_sided_closure(c3, seed);
  CHECK(morphism_names(only_02) == std::vector<std::string>{"0<=2"});
  // ...but it is not idempotent: 0<=2 factors only through 0<=1 / 1<=2,
  // neither of which is a member.
  IdempotentVerdict iv = is_idempotent(c3, only_02);
  CHECK_FALSE(iv.idempotent);
  REQUIRE(iv.counterexample.has_value());
  CHECK(c3.morphisms[*iv.counterexample].name == "0<=2");
  CHECK_THROWS_AS(require_idempotent(c3, only_02), Error);

  // closing {0<=1} must pull in the composite 0<=2
  Bitset seed2(c3.num_morphisms());
  seed2.set(c3.morphism_id("0<=1"));
  CHECK(morphism_names(two_sided_closure(c3, seed2)) ==
        std::vector<std::string>{"0<=1", "0<=2"});

  // a bare {0<=1} bitset is not an ideal at all
  Bitset raw(c3.num_morphisms());
  raw.set(c3.morphism_id("0<=1"));
  CHECK_THROWS_WITH_AS(make_ideal(c3, raw), doctest::Contains("NotAnIdeal"), Error);
}

TEST_CASE("ideal_from_names round-trips through morphism_names") {
  FinCategory g = make_graphic();
  const std::vector<std::string> gens = {"dag", "bot"};
  MorphismIdeal i = two_sided_closure(g, [&] {
    Bitset b(g.num_morphisms());
    for (const auto& n : gens) b.set(g.morphism_id(n));
    return b;
  }());
  const std::vector<std::string> names = morphism_names(i);
  MorphismIdeal j = ideal_from_names(g, names);
  CHECK(i.members == j.members);
  CHECK_NOTHROW(validate_ideal(j));
}

TEST_CASE("closed subcategory counts per fixture") {
  CHECK(enumerate_closed_subcategories(make_delta(4)).size() == 6);
  CHECK(enumerate_closed_subcategories(make_fin(4)).size() == 5);
  CHECK(enumerate_closed_subcategories(make_graphic()).size() == 4);
  CHECK(enumerate_closed_subcategories(make_trees(4)).size() == 10);
  // in a poset every morphism is mono, so closed subcategories = downsets
  FinCategory c3 = make_poset("chain3", {"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  CHECK(enumerate_closed_subcategories(c3).size() == 4);
  CHECK(count_closed_subcategories(c3) == 4);
  FinCategory v = make_poset("vee", {"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  CHECK(count_closed_subcategories(v) == 5);  // downsets of the V poset
}

TEST_CASE("subcategory ideals: sizes, round-trips, idempotence, mono-cartesian") {
  struct Fixture {
    FinCategory cat;
    std::vector<std::size_t> ideal_sizes;  // in enumeration order of closed subcats
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({make_delta(3), {0, 40, 100, 120, 121}});
  fixtures.push_back({make_fin(3), {0, 18, 50, 56}});
  fixtures.push_back({make_graphic(), {0, 12, 16, 17}});
  fixtures.push_back({make_trees(4), {0, 200, 800, 1120, 1200, 1144, 1224, 1230, 1234, 1235}});

  for (const Fixture& fx : fixtures) {
    CAPTURE(fx.cat.name);
    const auto closed = enumerate_closed_subcategories(fx.cat);
    REQUIRE(closed.size() == fx.ideal_sizes.size());
    for (std::size_t k = 0; k < closed.size(); ++k) {
      CAPTURE(k);
      const MorphismIdeal ideal = ideal_of_subcategory(fx.cat, closed[k]);
      CHECK(ideal.size() == fx.ideal_sizes[k]);
      // bijection round-trips both ways
      CHECK(subcategory_of_ideal(fx.cat, ideal) == closed[k]);
      CHECK(ideal_of_subcategory(fx.cat, subcategory_of_ideal(fx.cat, ideal)).members ==
            ideal.members);
      CHECK(is_idempotent(fx.cat, ideal).idempotent);
      const McVerdict mc = is_mono_cartesian(fx.cat, ideal);
      CHECK(mc_str(mc) == "yes");
      CHECK(mc.note == "equal to the ideal of its subobject-closed subcategory");
    }
  }
}

TEST_CASE("a non-mono-cartesian idempotent ideal, with witness") {
  // The ideal of maps factoring through the 3-chain tree: idempotent, but the
  // objects whose identities it contains do not form a subobject-closed
  // subcategory, and the decision procedure names a mono that proves it.
  FinCategory t4 = make_trees(4);
  const MorphismIdeal j = ideal_of_subcategory(t4, make_subcategory(t4, {"((()))"}));
  CHECK(j.size() == 1040);
  CHECK(is_idempotent(t4, j).idempotent);
  const FullSubcategory s = subcategory_of_ideal(t4, j);
  CHECK(object_names(s) == std::vector<std::string>{"((()))", "(())", "()"});
  CHECK_FALSE(is_subobject_closed(t4, s).closed);
  const McVerdict mc = is_mono_cartesian(t4, j);
  CHECK(mc_str(mc) == "no");
  REQUIRE(mc.witness.has_value());
  CHECK(t4.morphisms[*mc.witness].name == "(()())->((())):012");
  CHECK(mc.note == "mono in the ideal whose domain identity is missing");
}

TEST_CASE("the witness bijection is mono and epi but splits neither way") {
  FinCategory t4 = make_trees(4);
  const MorphismClass c = t4.classes().row(t4.morphism_id("(()())->((())):012"));
  CHECK(c.mono);
  CHECK(c.epi);
  CHECK_FALSE(c.split_mono);
  CHECK_FALSE(c.split_epi);
  CHECK_FALSE(c.iso);
}

TEST_CASE("three-valued verdict without the factorization property") {
  FinCategory t5 = make_trees(5, 200000);

  // subcategory ideal of the 2-chain: decided yes by the sufficient condition
  const MorphismIdeal i5 = ideal_of_subcategory(t5, make_subcategory(t5, {"(())"}));
  CHECK(i5.size() == 9618);
  const McVerdict yes = is_mono_cartesian(t5, i5);
  CHECK(mc_str(yes) == "yes");
  CHECK(yes.note == "splitting-style sufficient condition");

  // subcategory ideal of the 3-chain: refuted by the sampled pullback probe
  const MorphismIdeal j5 = ideal_of_subcategory(t5, make_subcategory(t5, {"((()))"}));
  const McVerdict no = is_mono_cartesian(t5, j5);
  CHECK(mc_str(no) == "no");
  CHECK(no.note == "pullback failure at a subpresheaf of y(((())))");
}

TEST_CASE("empty and full ideals") {
  FinCategory g = make_graphic();
  const MorphismIdeal empty = make_ideal(g, Bitset(g.num_morphisms()));
  CHECK(empty.size() == 0);
  CHECK(is_idempotent(g, empty).idempotent);
  CHECK(mc_str(is_mono_cartesian(g, empty)) == "yes");

  Bitset all(g.num_morphisms());
  all.set();
  const MorphismIdeal full = make_ideal(g, all);
  CHECK(is_idempotent(g, full).idempotent);
  CHECK(subcategory_of_ideal(g, full).size() == g.num_objects());
}

TEST_CASE("enumeration order is cardinality then object-index lexicographic") {
  FinCategory t4 = make_trees(4);
  const auto closed = enumerate_closed_subcategories(t4);
  const std::vector<std::string> expected = {
      "{}",
      "{()}",
      "{(()),()}",
      "{(()()),(()),()}",
      "{((())),(()()),(()),()}",
      "{(()()()),(()()),(()),()}",
      "{((())),(()()()),(()()),(()),()}",
      "{((())()),((())),(()()()),(()()),(()),()}",
      "{((()())),((())()),((())),(()()()),(()()),(()),()}",
      "{(((()))),((()())),((())()),((())),(()()()),(()()),(()),()}",
  };
  CHECK(testutil::braced_all(closed) == expected);

  CHECK_THROWS_WITH_AS(enumerate_closed_subcategories(t4, 3),
                       doctest::Contains("closed subcategories"), Error);
}
