#pragma once

// Finite presheaves on a finite category: subobject lattices with their
// Heyting operations, the core comonad of an idempotent ideal, the "on top"
// tests, plus-construction/sheafification for the topology generated by an
// ideal, the coend-style skeleton with its counit, and bounded-depth
// (dimension) formulas.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aufheben/ideals.hpp"

namespace aufheben {

class FinPresheaf {
 public:
  const FinCategory* category = nullptr;
  std::string name;
  // elems[D] lists the element names of X(D); locals index into it.
  std::vector<std::vector<std::string>> elems;
  // action[f][i] for f: C → D is the local index in elems[C] of x_i · f.
  // Identities may be omitted at build time but are filled in here.
  std::vector<std::vector<std::int32_t>> action;

  // Global element ids: gid = offset[D] + local. Subobjects are bitsets of gids.
  std::vector<std::int32_t> offset;
  std::int32_t total = 0;

  std::int32_t gid(ObjId d, std::int32_t local) const { return offset[d] + local; }
  ObjId object_of(std::int32_t g) const { return obj_of_gid_[g]; }
  std::int32_t local_of(std::int32_t g) const { return g - offset[object_of(g)]; }
  const std::string& elem_name(std::int32_t g) const {
    return elems[object_of(g)][local_of(g)];
  }
  // x · f for a global id x at cod(f); result is a global id at dom(f).
  std::int32_t act(std::int32_t g, MorId f) const {
    return gid(category->morphisms[f].dom, action[f][local_of(g)]);
  }
  std::int32_t count_at(ObjId d) const { return static_cast<std::int32_t>(elems[d].size()); }
  std::optional<std::int32_t> find_elem(ObjId d, const std::string& elem) const;

  void finalize();  // recompute offsets / gid tables after elems are set

 private:
  std::vector<ObjId> obj_of_gid_;
};

// Validates sizes, ranges, identity actions, and functoriality on every
// composable pair (FunctorialityViolation carries a witness). Missing
// identity actions are synthesised.
FinPresheaf make_presheaf(const FinCategory& cat, std::string name,
                          std::vector<std::vector<std::string>> elems,
                          std::vector<std::vector<std::int32_t>> action);

// Re-checks every invariant of an already-built presheaf.
void validate_presheaf(const FinPresheaf& x);

struct Subpresheaf {
  const FinPresheaf* host = nullptr;
  Bitset parts;  // gids, action-closed

  bool contains(std::int32_t g) const { return parts.test(g); }
  std::size_t size() const { return parts.count(); }
  bool operator==(const Subpresheaf& o) const { return parts == o.parts; }
  bool operator!=(const Subpresheaf& o) const { return parts != o.parts; }
  bool leq(const Subpresheaf& o) const { return parts.is_subset_of(o.parts); }
};

struct PresheafMap {
  const FinPresheaf* source = nullptr;
  const FinPresheaf* target = nullptr;
  // component[D][i] = local index in target->elems[D] of the image of x_i.
  std::vector<std::vector<std::int32_t>> component;

  std::int32_t apply(std::int32_t g) const {
    ObjId d = source->object_of(g);
    return target->gid(d, component[d][source->local_of(g)]);
  }
};

// Checks shapes and naturality (NaturalityViolation with a witness).
void validate_map(const PresheafMap& h);
PresheafMap identity_map(const FinPresheaf& x);
PresheafMap compose_maps(const PresheafMap& snd, const PresheafMap& fst);
bool is_injective(const PresheafMap& h);
bool is_bijective(const PresheafMap& h);

// Hom(−, c) with elements named after the morphisms.
FinPresheaf representable(const FinCategory& cat, ObjId c);

// The terminal presheaf (a single element "*" at every object).
FinPresheaf terminal_presheaf(const FinCategory& cat);

// Least action-closed subset containing the seed.
Subpresheaf subpresheaf_closure(const FinPresheaf& x, Bitset seed);
Subpresheaf subpresheaf_from_names(const FinPresheaf& x,
                                   const std::vector<std::pair<std::string, std::string>>& named);
void validate_subpresheaf(const Subpresheaf& u);  // NotActionClosed with witness

Subpresheaf sub_top(const FinPresheaf& x);
Subpresheaf sub_bottom(const FinPresheaf& x);
Subpresheaf sub_meet(const Subpresheaf& u, const Subpresheaf& v);
Subpresheaf sub_join(const Subpresheaf& u, const Subpresheaf& v);
// (u ⇒ v)(D) = {x | every restriction of x landing in u lands in v}.
Subpresheaf sub_implies(const Subpresheaf& u, const Subpresheaf& v);
Subpresheaf sub_not(const Subpresheaf& u);

// All subpresheaves, ordered by (cardinality, lex on sorted gids).
std::vector<Subpresheaf> enumerate_subpresheaves(const FinPresheaf& x,
                                                 std::size_t cap = 50000);

// γ_X = {x | x = y·f for some f ∈ I}; the largest I-generated subobject.
// Pre: I idempotent (else NotIdempotent).
Subpresheaf i_generated_core(const MorphismIdeal& ideal, const FinPresheaf& x);
// γ_X = X, i.e. every element is generated through I.
bool is_minimal(const MorphismIdeal& ideal, const FinPresheaf& x);

// Fast characterisation: x ∈ X(D) is on top of I when for every f: E → D,
// either x·f is I-generated (lands in γ_X) or some g: D → E has x·(f∘g) = x.
struct ElementOnTopVerdict {
  bool on_top = false;
  std::optional<MorId> witness;  // an f violating both disjuncts
};
ElementOnTopVerdict element_on_top(const MorphismIdeal& ideal, const FinPresheaf& x,
                                   ObjId d, std::int32_t local);
// Quantified definition: the element's map is on top of γ_X, i.e.
// x ∈ (u ∨ (u ⇒ γ_X))(D) for every subobject u of X. Enumerates Sub(X)
// (CapExceeded beyond cap). Must agree with the fast path.
ElementOnTopVerdict element_on_top_oracle(const MorphismIdeal& ideal, const FinPresheaf& x,
                                          ObjId d, std::int32_t local,
                                          std::size_t cap = 50000);

// ∂_h u ≤ v: does h factor through u ∨ (u ⇒ v)?
bool boundary_leq(const PresheafMap& h, const Subpresheaf& u, const Subpresheaf& v);

// h is on top of v when ∂_h u ≤ v for every subobject u of the target.
struct MapOnTopVerdict {
  bool on_top = false;
  std::optional<std::size_t> witness;  // index (enumeration order) of a failing u
};
MapOnTopVerdict map_on_top(const PresheafMap& h, const Subpresheaf& v,
                           std::size_t cap = 50000);

// Constructions that return a presheaf together with maps touching it hold
// the new presheaf behind a shared_ptr so the maps' endpoint pointers stay
// valid however the result struct is moved around.
struct ImageFactorization {
  std::shared_ptr<const FinPresheaf> image;
  PresheafMap onto;       // source ↠ image
  PresheafMap inclusion;  // image ↪ target
  Subpresheaf as_subobject;
};
ImageFactorization image_factor(const PresheafMap& h);

// Materialise a subpresheaf as a presheaf with its inclusion.
struct SubAsPresheaf {
  std::shared_ptr<const FinPresheaf> presheaf;
  PresheafMap inclusion;
};
SubAsPresheaf subpresheaf_to_presheaf(const Subpresheaf& u, std::string name);

// id_X is on top of the core: map_on_top(identity, γ_X).
MapOnTopVerdict has_skeletal_boundaries(const MorphismIdeal& ideal, const FinPresheaf& x,
                                        std::size_t cap = 50000);

// The covering sieve I(−, D): members of I with codomain D, ascending.
std::vector<MorId> ideal_sieve(const MorphismIdeal& ideal, ObjId d);

struct MatchingFamily {
  ObjId base = 0;
  std::vector<MorId> sieve;           // ideal_sieve(I, base)
  std::vector<std::int32_t> values;   // local index in X(dom f) per sieve slot
};
// All families with x_f·g = x_{f∘g}; deterministic order. Pre: I idempotent.
std::vector<MatchingFamily> matching_families(const MorphismIdeal& ideal,
                                              const FinPresheaf& x, ObjId d);

// Plus-construction for the coverage {I ∩ into(D)}: elements at D are
// matching families over the sieve I(−, D). Pre: I idempotent.
struct PlusResult {
  std::shared_ptr<const FinPresheaf> plus;
  PresheafMap unit;  // X → X⁺
};
PlusResult plus_construction(const MorphismIdeal& ideal, const FinPresheaf& x);

struct SheafifyResult {
  std::shared_ptr<const FinPresheaf> sheaf;
  PresheafMap unit;  // X → aX (plus applied twice)
};
SheafifyResult sheafify(const MorphismIdeal& ideal, const FinPresheaf& x);
bool is_separated(const MorphismIdeal& ideal, const FinPresheaf& x);
bool is_sheaf(const MorphismIdeal& ideal, const FinPresheaf& x);

// Skeleton-style coend: classes of triples (x, f, g) with x ∈ Q(D),
// f: C → D and g: B → C both in I, modulo dinaturality (union-find); the
// class carried at B is named after its least representative in (g, f, x)
// enumeration order. The counit sends [x, f, g] to x·(f∘g); its image must
// equal the core of Q (checked, AssertionFailed otherwise).
struct CoendResult {
  std::shared_ptr<const FinPresheaf> skeleton;
  PresheafMap counit;  // skeleton → Q
};
CoendResult coend_skeleton(const MorphismIdeal& ideal, const FinPresheaf& q,
                           std::size_t cap = 200000);

// All natural maps source → target (backtracking over orbits).
std::vector<PresheafMap> natural_transformations(const FinPresheaf& source,
                                                 const FinPresheaf& target,
                                                 std::size_t cap = 100000);

// Coproduct and congruence quotients, used to synthesise test fixtures.
FinPresheaf coproduct_presheaf(const std::vector<const FinPresheaf*>& parts,
                               std::string name);
struct QuotientResult {
  std::shared_ptr<const FinPresheaf> quotient;
  PresheafMap projection;
};
// Identifies the given same-object gid pairs and closes under the action.
QuotientResult quotient_presheaf(const FinPresheaf& x,
                                 const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                                 std::string name);

// Boolean / bounded-depth structure of Sub(X).
struct BooleanVerdict {
  bool boolean = false;
  std::optional<std::size_t> witness;  // index of a complement-less subobject
};
BooleanVerdict is_boolean_object(const FinPresheaf& x, std::size_t cap = 50000);

// B₀(u₀) = u₀ ∨ ¬u₀ ; B_d(u₀..u_d) = u_d ∨ (u_d ⇒ B_{d−1}(u₀..u_{d−1})).
// bounded_depth_holds: B_d = ⊤ for every assignment of subobjects.
bool bounded_depth_holds(const FinPresheaf& x, int d, std::size_t cap = 50000);
// Least d with B_d valid; -1 for the trivial lattice; nullopt past max_d.
std::optional<int> heyting_dim(const FinPresheaf& x, int max_d = 6, std::size_t cap = 50000);

}  // namespace aufheben
