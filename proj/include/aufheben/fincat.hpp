#pragma once

// Finite-category kernel: validated composition tables, morphism
// classification, split-epi/mono factorizations, binary products, and
// generators for the example categories used throughout the library.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace aufheben {

using ObjId = std::int32_t;
using MorId = std::int32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultMorphismCap = 20000;

// All domain failures carry a stable machine-readable code plus a witness
// string describing the offending datum (the CLI surfaces both verbatim).
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string witness)
      : std::runtime_error(code + ": " + witness),
        code_(std::move(code)),
        witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string code_;
  std::string witness_;
};

[[noreturn]] inline void fail(std::string code, std::string witness) {
  throw Error(std::move(code), std::move(witness));
}

struct Morphism {
  std::string name;
  ObjId dom = -1;
  ObjId cod = -1;
};

struct ClassTable;           // defined below
struct FactorizationVerdict; // defined below

// A finite category presented explicitly: named objects, named morphisms with
// domain/codomain, a distinguished identity per object, and a total
// composition on composable pairs. Immutable once built; the classification
// and factorization caches are filled lazily behind a mutex and never change
// observable behaviour.
class FinCategory {
 public:
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<MorId> identities;  // indexed by object

  std::size_t num_objects() const { return objects.size(); }
  std::size_t num_morphisms() const { return morphisms.size(); }

  ObjId dom(MorId f) const { return morphisms[f].dom; }
  ObjId cod(MorId f) const { return morphisms[f].cod; }
  MorId identity(ObjId x) const { return identities[x]; }
  bool is_identity(MorId f) const {
    return identities[morphisms[f].dom] == f && morphisms[f].dom == morphisms[f].cod;
  }

  // g after f; requires cod(f) == dom(g).
  MorId compose(MorId g, MorId f) const {
    if (backend_ == Backend::kDense) {
      return comp_[static_cast<std::size_t>(g_base_[g]) + into_rank_[f]];
    }
    const MorId rc = static_cast<MorId>(right_->num_morphisms());
    return left_->compose(g / rc, f / rc) * rc + right_->compose(g % rc, f % rc);
  }

  const std::vector<MorId>& hom(ObjId x, ObjId y) const {
    return hom_[static_cast<std::size_t>(x) * num_objects() + y];
  }
  const std::vector<MorId>& into(ObjId y) const { return into_[y]; }
  const std::vector<MorId>& out_of(ObjId x) const { return out_[x]; }

  ObjId object_id(const std::string& obj_name) const;    // throws DanglingReference
  MorId morphism_id(const std::string& mor_name) const;  // throws DanglingReference

  bool is_product() const { return backend_ == Backend::kProduct; }
  const FinCategory& left_factor() const { return *left_; }
  const FinCategory& right_factor() const { return *right_; }

  // Lazily computed, thread-safe, deterministic.
  const ClassTable& classes() const;
  const FactorizationVerdict& factorization() const;

 private:
  enum class Backend { kDense, kProduct };
  Backend backend_ = Backend::kDense;

  // Dense: composition stored flat over composable pairs. Entry for (g, f)
  // lives at g_base_[g] + into_rank_[f], where into_rank_[f] is f's position
  // inside the into(cod f) bucket.
  std::vector<MorId> comp_;
  std::vector<std::uint64_t> g_base_;
  std::vector<MorId> into_rank_;

  // Product: composition delegated componentwise to the two factors; the
  // morphism with index l * |Mor(right)| + r is the pair (l, r).
  std::shared_ptr<const FinCategory> left_, right_;

  std::vector<std::vector<MorId>> hom_;  // (dom, cod) buckets, index order
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> out_;
  std::unordered_map<std::string, ObjId> object_by_name_;
  std::unordered_map<std::string, MorId> morphism_by_name_;

  mutable std::shared_ptr<const ClassTable> class_cache_;
  mutable std::shared_ptr<const FactorizationVerdict> factor_cache_;

  void build_buckets_and_names();

  friend class CategoryBuilder;
  friend FinCategory product(const FinCategory&, const FinCategory&, std::size_t);
};

// Classification of a single morphism. Mono/epi are by cancellation inside
// the category, split flags by existence of a section/retraction, iso by a
// two-sided inverse. Witnesses are the lowest-index ones.
struct MorphismClass {
  bool mono = false;
  bool epi = false;
  bool split_mono = false;
  bool split_epi = false;
  bool iso = false;
  std::optional<MorId> section_witness;     // s with f∘s = id_cod(f)
  std::optional<MorId> retraction_witness;  // r with r∘f = id_dom(f)

  // For an iso the (unique) two-sided inverse, equal to both witnesses.
  std::optional<MorId> inverse() const { return iso ? section_witness : std::nullopt; }
};

// Whole-category classification, one row per morphism.
struct ClassTable {
  std::vector<std::uint8_t> mono, epi, split_mono, split_epi, iso;
  std::vector<MorId> section;     // -1 when absent
  std::vector<MorId> retraction;  // -1 when absent

  MorphismClass row(MorId f) const {
    MorphismClass c;
    c.mono = mono[f];
    c.epi = epi[f];
    c.split_mono = split_mono[f];
    c.split_epi = split_epi[f];
    c.iso = iso[f];
    if (section[f] >= 0) c.section_witness = section[f];
    if (retraction[f] >= 0) c.retraction_witness = retraction[f];
    return c;
  }
};

struct FactorizationVerdict {
  bool holds = false;
  std::optional<MorId> counterexample;  // first (lowest-index) failing morphism
};

// A full subcategory is just a subset of the objects; fullness is implicit.
struct FullSubcategory {
  const FinCategory* category = nullptr;
  Bitset objects;

  bool contains(ObjId x) const { return objects.test(x); }
  std::size_t size() const { return objects.count(); }
  bool operator==(const FullSubcategory& o) const { return objects == o.objects; }
  bool operator!=(const FullSubcategory& o) const { return objects != o.objects; }
};

FullSubcategory make_subcategory(const FinCategory& cat, const std::vector<std::string>& names);
FullSubcategory full_subcategory(const FinCategory& cat, Bitset objects);
std::vector<std::string> object_names(const FullSubcategory& s);

// Plain-data presentation consumed by build_category (the JSON schema mirrors
// this shape one-to-one).
struct MorphismSpec {
  std::string name, dom, cod;
};
struct CompositeSpec {
  std::string g, f, gf;
};
struct CategorySpec {
  std::string name;
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object -> morphism
  std::vector<CompositeSpec> composition;
};

// Builds and eagerly validates. Errors: DanglingReference, MissingComposite,
// IdentityViolation, AssociativityViolation — each with a witness.
FinCategory build_category(const CategorySpec& spec);

// Re-checks every invariant of an already-built category. The associativity
// scan is skipped when the number of composable triples exceeds `assoc_cap`
// (generator-built tables are associative by construction; the cap keeps
// validation of the large fixtures affordable).
void validate_category(const FinCategory& cat,
                       std::uint64_t assoc_cap = UINT64_MAX);

MorphismClass classify_morphism(const FinCategory& cat, MorId f);

// f = m∘e with e split epi, m mono; lexicographically least (e, m) by
// morphism index, or nullopt when no such factorization exists.
std::optional<std::pair<MorId, MorId>> split_epi_mono_factor(const FinCategory& cat, MorId f);

FactorizationVerdict has_factorization_property(const FinCategory& cat);

// Componentwise product; morphism names "(f,g)". Refuses to build more than
// `cap` morphisms.
FinCategory product(const FinCategory& a, const FinCategory& b,
                    std::size_t cap = kDefaultMorphismCap);

// Materializes a dense composition table for any category (used to cross-check
// the product backend against the generic algorithms). Refuses beyond
// `pair_cap` composable pairs.
FinCategory densify(const FinCategory& cat, std::uint64_t pair_cap = 50'000'000);

// row[c] has bit d set iff some mono c -> d exists (reflexive, transitive).
std::vector<Bitset> mono_preorder(const FinCategory& cat);

struct ClosedVerdict {
  bool closed = true;
  std::optional<MorId> counterexample;  // a mono into S whose domain escapes S
};
ClosedVerdict is_subobject_closed(const FinCategory& cat, const FullSubcategory& s);

// ---- Example generators -------------------------------------------------

// Full subcategory of the simplex category on [0]..[n] (nonempty finite
// totally ordered sets, monotone maps).
FinCategory make_delta(int n, std::size_t cap = kDefaultMorphismCap);

// Nonempty finite sets of sizes 1..n and all functions.
FinCategory make_fin(int n, std::size_t cap = kDefaultMorphismCap);

// A finite poset as a category: objects are the elements, one morphism x->y
// whenever x <= y (reflexive-transitive closure of the given pairs).
FinCategory make_poset(const std::string& name,
                       const std::vector<std::string>& elements,
                       const std::vector<std::pair<std::string, std::string>>& leq);

// Rooted trees with at most `max_nodes` nodes, presented as posets with the
// root as bottom element; morphisms are monotone maps.
FinCategory make_trees(int max_nodes, std::size_t cap = kDefaultMorphismCap);

// The idempotent splitting of the four-element graphic monoid (identity, a
// "drop to layer" map and two constants) on objects 1, G, D; ships as a frozen
// table (tests re-derive it from the concrete monoid of endomaps).
FinCategory make_graphic();

// CLI-facing dispatcher; params are the raw positional strings.
FinCategory generate_example(const std::string& kind,
                             const std::vector<std::string>& params,
                             std::size_t cap = kDefaultMorphismCap);

// Deterministic order on object subsets: cardinality first, then
// lexicographic on the sorted index sequences.
bool subset_order_less(const Bitset& a, const Bitset& b);

}  // namespace aufheben
