#pragma once

// Two-sided (idempotent) morphism ideals, their correspondence with
// subobject-closed full subcategories, and mono-cartesianness tests.

#include <optional>
#include <string>
#include <vector>

#include "aufheben/fincat.hpp"

namespace aufheben {

struct MorphismIdeal {
  const FinCategory* category = nullptr;
  Bitset members;  // indexed by morphism

  bool contains(MorId f) const { return members.test(f); }
  std::size_t size() const { return members.count(); }
  bool operator==(const MorphismIdeal& o) const { return members == o.members; }
  bool operator!=(const MorphismIdeal& o) const { return members != o.members; }
};

MorphismIdeal make_ideal(const FinCategory& cat, Bitset members);
MorphismIdeal ideal_from_names(const FinCategory& cat, const std::vector<std::string>& names);
std::vector<std::string> morphism_names(const MorphismIdeal& ideal);  // sorted

// Throws NotAnIdeal (with a witness pair) when the two closure rules fail.
void validate_ideal(const MorphismIdeal& ideal);

// Least two-sided ideal containing the generators (worklist saturation).
MorphismIdeal two_sided_closure(const FinCategory& cat, const Bitset& gens);

struct IdempotentVerdict {
  bool idempotent = false;
  std::optional<MorId> counterexample;  // first member with no decomposition in I
};
// Pre: valid ideal (else NotAnIdeal).
IdempotentVerdict is_idempotent(const FinCategory& cat, const MorphismIdeal& ideal);

// Throws NotIdempotent (witness morphism name) unless is_idempotent holds;
// the shared precondition guard of the comonad-flavoured operations.
void require_idempotent(const FinCategory& cat, const MorphismIdeal& ideal);

// {f | f factors through some object of S}; always a two-sided idempotent
// ideal, for any S.
MorphismIdeal ideal_of_subcategory(const FinCategory& cat, const FullSubcategory& s);

// {D | id_D ∈ I}.
FullSubcategory subcategory_of_ideal(const FinCategory& cat, const MorphismIdeal& ideal);

// All downsets of mono_preorder, ordered by cardinality then lexicographically
// on sorted object-index sequences. Throws CountOverflow beyond the cap.
std::vector<FullSubcategory> enumerate_closed_subcategories(const FinCategory& cat,
                                                            std::size_t cap = 100000);
// Counting-only mode, exempt from the cap.
std::uint64_t count_closed_subcategories(const FinCategory& cat);

// Sufficient condition: every f ∈ I factors as f = g∘b with some s such that
// s∘b ∈ I and b∘s∘b = b. Pre: I idempotent (else NotIdempotent).
bool satisfies_mc_sufficient(const FinCategory& cat, const MorphismIdeal& ideal);

struct McVerdict {
  enum class Result { kYes, kNo, kUnknown } result = Result::kUnknown;
  std::optional<MorId> witness;  // for kNo: a mono in I whose domain identity is missing
  std::string note;              // which rule decided
};

// Decision procedure: with the factorization property, I is mono-cartesian
// iff I = ideal_of_subcategory(subcategory_of_ideal(I)) and that subcategory
// is subobject-closed (equivalently: every mono in I has its domain identity
// in I, which supplies the "no" witness). Without the factorization property
// the verdict degrades to {yes (sufficient condition), no (sampled presheaf
// pullback oracle), unknown}. Pre: I idempotent (else NotIdempotent).
McVerdict is_mono_cartesian(const FinCategory& cat, const MorphismIdeal& ideal);

}  // namespace aufheben
