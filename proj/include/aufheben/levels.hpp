#pragma once

// The successor operation on subobject-closed full subcategories, the
// dimension chain it generates, the "on top" relation for maps versus an
// idempotent ideal, and the level poset with its DOT-able structure.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "aufheben/ideals.hpp"

namespace aufheben {

// successor(S) = {D | every mono into D has domain in S or is invertible}.
// Throws NotClosed when S is not subobject-closed. When the category lacks
// the epi-mono factorization property the value is still computed by this
// formula; *formula_only (if non-null) is set to flag that caveat.
FullSubcategory successor(const FinCategory& cat, const FullSubcategory& s,
                          bool* formula_only = nullptr);

// [∅, succ ∅, succ² ∅, ...] until the first fixed point (which is included
// once). The last entry is all objects when every chain terminates there.
std::vector<FullSubcategory> successor_chain(const FinCategory& cat,
                                             bool* formula_only = nullptr);

struct OnTopVerdict {
  bool on_top = false;
  std::optional<MorId> witness;  // for false: an f with e∘f ∉ I and no g with e∘f∘g = e
};

// e: E → Ω is on top of I when every f: F → E has e∘f ∈ I or admits
// g: E → F with e∘f∘g = e. Pre: I idempotent (else NotIdempotent).
OnTopVerdict map_on_top_of_ideal(const FinCategory& cat, MorId e, const MorphismIdeal& ideal);

// {e | e on top of I}; validates I once, then tests every morphism.
Bitset on_top_ideal(const FinCategory& cat, const MorphismIdeal& ideal);

struct PrecohesiveReport {
  bool has_terminal = false;
  std::optional<ObjId> terminal;
  bool every_object_has_point = false;
  std::vector<MorId> points;      // per object, first point T → X (or -1)
  std::optional<ObjId> pointless; // first object with no point, when any
};
PrecohesiveReport check_precohesive_hypotheses(const FinCategory& cat);

struct EdgewiseVerdict {
  bool connected = false;
  std::optional<std::pair<MorId, MorId>> witness;  // pair of points not joined by an edge
};

// Points u, v: T → D are edgewise connected when some E ∈ level_one carries
// f: E → D and points p, q: T → E with f∘p = u and f∘q = v. Checks all pairs
// of points of D. Throws NoTerminal when the category has no terminal object.
EdgewiseVerdict edgewise_connected(const FinCategory& cat, ObjId d,
                                   const FullSubcategory& level_one);

struct LevelPoset {
  const FinCategory* category = nullptr;
  std::vector<FullSubcategory> levels;                       // (cardinality, lex) order
  std::vector<std::size_t> successor;                        // index into levels
  std::vector<std::pair<std::size_t, std::size_t>> covers;   // containment covers (lo, hi)
  bool formula_only = false;
};
LevelPoset level_poset(const FinCategory& cat, std::size_t cap = 100000);

}  // namespace aufheben
