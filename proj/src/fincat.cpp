#include "aufheben/fincat.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "category_builder.hpp"

namespace aufheben {

namespace {

std::string pair_witness(const FinCategory& cat, MorId g, MorId f) {
  std::ostringstream os;
  os << "(g=" << cat.morphisms[g].name << ", f=" << cat.morphisms[f].name << ")";
  return os.str();
}

}  // namespace

void FinCategory::build_buckets_and_names() {
  const std::size_t n = objects.size();
  object_by_name_.clear();
  morphism_by_name_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!object_by_name_.emplace(objects[i], static_cast<ObjId>(i)).second)
      fail("DuplicateName", "object '" + objects[i] + "'");
  }
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const Morphism& m = morphisms[i];
    if (m.dom < 0 || m.cod < 0 || static_cast<std::size_t>(m.dom) >= n ||
        static_cast<std::size_t>(m.cod) >= n)
      fail("DanglingReference", "morphism '" + m.name + "' has an out-of-range dom/cod");
    if (!morphism_by_name_.emplace(m.name, static_cast<MorId>(i)).second)
      fail("DuplicateName", "morphism '" + m.name + "'");
  }
  hom_.assign(n * n, {});
  into_.assign(n, {});
  out_.assign(n, {});
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const Morphism& m = morphisms[i];
    hom_[static_cast<std::size_t>(m.dom) * n + m.cod].push_back(static_cast<MorId>(i));
    into_[m.cod].push_back(static_cast<MorId>(i));
    out_[m.dom].push_back(static_cast<MorId>(i));
  }
  if (identities.size() != n)
    fail("IdentityViolation", "expected one identity per object");
  for (std::size_t x = 0; x < n; ++x) {
    MorId id = identities[x];
    if (id < 0 || static_cast<std::size_t>(id) >= morphisms.size())
      fail("DanglingReference", "identity of object '" + objects[x] + "' is unknown");
    if (morphisms[id].dom != static_cast<ObjId>(x) || morphisms[id].cod != static_cast<ObjId>(x))
      fail("IdentityViolation",
           "identity of object '" + objects[x] + "' has dom/cod elsewhere");
  }
}

ObjId FinCategory::object_id(const std::string& obj_name) const {
  auto it = object_by_name_.find(obj_name);
  if (it == object_by_name_.end()) fail("DanglingReference", "unknown object '" + obj_name + "'");
  return it->second;
}

MorId FinCategory::morphism_id(const std::string& mor_name) const {
  auto it = morphism_by_name_.find(mor_name);
  if (it == morphism_by_name_.end())
    fail("DanglingReference", "unknown morphism '" + mor_name + "'");
  return it->second;
}

// ---- builder used by build_category, densify and the generators ----------

FinCategory CategoryBuilder::finish() {
  for (std::size_t g = 0; g < cat_.morphisms.size(); ++g) {
    const auto& bucket = cat_.into_[cat_.morphisms[g].dom];
    for (MorId f : bucket) {
      MorId gf = cat_.comp_[static_cast<std::size_t>(cat_.g_base_[g]) + cat_.into_rank_[f]];
      if (gf < 0)
        fail("MissingComposite", "no entry for " + pair_witness(cat_, static_cast<MorId>(g), f));
    }
  }
  return std::move(cat_);
}

FinCategory build_category(const CategorySpec& spec) {
  CategoryBuilder b(spec.name);
  for (const auto& o : spec.objects) b.add_object(o);
  for (const auto& m : spec.morphisms) {
    // Resolve dom/cod by name against the objects declared so far.
    const auto& objs = b.peek().objects;
    auto find_obj = [&](const std::string& nm) -> ObjId {
      for (std::size_t i = 0; i < objs.size(); ++i)
        if (objs[i] == nm) return static_cast<ObjId>(i);
      fail("DanglingReference", "morphism '" + m.name + "' references unknown object '" + nm + "'");
    };
    b.add_morphism(m.name, find_obj(m.dom), find_obj(m.cod));
  }
  // Identities by name.
  {
    const FinCategory& c = b.peek();
    std::vector<MorId> ids(c.num_objects(), -1);
    for (const auto& [obj, mor] : spec.identities) {
      ObjId x = -1;
      for (std::size_t i = 0; i < c.objects.size(); ++i)
        if (c.objects[i] == obj) x = static_cast<ObjId>(i);
      if (x < 0) fail("DanglingReference", "identities mention unknown object '" + obj + "'");
      MorId f = -1;
      for (std::size_t i = 0; i < c.morphisms.size(); ++i)
        if (c.morphisms[i].name == mor) f = static_cast<MorId>(i);
      if (f < 0) fail("DanglingReference", "identities mention unknown morphism '" + mor + "'");
      ids[x] = f;
    }
    for (std::size_t x = 0; x < ids.size(); ++x)
      if (ids[x] < 0) fail("IdentityViolation", "object '" + c.objects[x] + "' has no identity");
    b.set_identities(std::move(ids));
  }
  b.prepare_table();
  {
    const FinCategory& c = b.peek();
    for (const auto& e : spec.composition) {
      MorId g = c.morphism_id(e.g);  // throws DanglingReference when unknown
      MorId f = c.morphism_id(e.f);
      MorId gf = c.morphism_id(e.gf);
      if (c.cod(f) != c.dom(g))
        fail("MissingComposite",
             "entry for non-composable pair " + pair_witness(c, g, f));
      if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g))
        fail("DanglingReference", "composite of " + pair_witness(c, g, f) + " is '" + e.gf +
                                      "', whose dom/cod do not match");
      MorId& slot = b.slot(g, f);
      if (slot >= 0 && slot != gf)
        fail("MissingComposite",
             "conflicting entries for " + pair_witness(c, g, f));
      slot = gf;
    }
  }
  FinCategory cat = b.finish();
  validate_category(cat);
  return cat;
}

void validate_category(const FinCategory& cat, std::uint64_t assoc_cap) {
  // Identity laws.
  for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
    MorId mf = static_cast<MorId>(f);
    MorId idd = cat.identity(cat.dom(mf));
    MorId idc = cat.identity(cat.cod(mf));
    if (cat.compose(mf, idd) != mf)
      fail("IdentityViolation",
           "compose(" + cat.morphisms[f].name + ", id) != " + cat.morphisms[f].name);
    if (cat.compose(idc, mf) != mf)
      fail("IdentityViolation",
           "compose(id, " + cat.morphisms[f].name + ") != " + cat.morphisms[f].name);
  }
  // Typing of every composite.
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
    MorId mg = static_cast<MorId>(g);
    for (MorId f : cat.into(cat.dom(mg))) {
      MorId gf = cat.compose(mg, f);
      if (gf < 0 || static_cast<std::size_t>(gf) >= cat.num_morphisms() ||
          cat.dom(gf) != cat.dom(f) || cat.cod(gf) != cat.cod(mg))
        fail("MissingComposite", "composite of " + pair_witness(cat, mg, f) + " is ill-typed");
    }
  }
  // Associativity, unless the triple count exceeds the cap.
  std::uint64_t triples = 0;
  for (std::size_t g = 0; g < cat.num_morphisms() && triples <= assoc_cap; ++g) {
    MorId mg = static_cast<MorId>(g);
    triples += static_cast<std::uint64_t>(cat.into(cat.dom(mg)).size()) *
               cat.out_of(cat.cod(mg)).size();
  }
  if (triples > assoc_cap) return;
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
    MorId mg = static_cast<MorId>(g);
    for (MorId f : cat.into(cat.dom(mg))) {
      MorId gf = cat.compose(mg, f);
      for (MorId h : cat.out_of(cat.cod(mg))) {
        if (cat.compose(h, gf) != cat.compose(cat.compose(h, mg), f))
          fail("AssociativityViolation",
               "(h=" + cat.morphisms[h].name + ", g=" + cat.morphisms[g].name +
                   ", f=" + cat.morphisms[f].name + ")");
      }
    }
  }
}

// ---- subcategories --------------------------------------------------------

FullSubcategory full_subcategory(const FinCategory& cat, Bitset objs) {
  objs.resize(cat.num_objects());
  return FullSubcategory{&cat, std::move(objs)};
}

FullSubcategory make_subcategory(const FinCategory& cat, const std::vector<std::string>& names) {
  Bitset s(cat.num_objects());
  for (const auto& n : names) s.set(cat.object_id(n));
  return FullSubcategory{&cat, std::move(s)};
}

std::vector<std::string> object_names(const FullSubcategory& s) {
  std::vector<std::string> out;
  for (std::size_t i = s.objects.find_first(); i != Bitset::npos; i = s.objects.find_next(i))
    out.push_back(s.category->objects[i]);
  std::sort(out.begin(), out.end());
  return out;
}

bool subset_order_less(const Bitset& a, const Bitset& b) {
  const std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  Bitset diff = a ^ b;
  std::size_t i = diff.find_first();
  if (i == Bitset::npos) return false;
  return a.test(i);  // the set containing the smaller index comes first
}

// ---- product / densify ----------------------------------------------------

FinCategory product(const FinCategory& a, const FinCategory& b, std::size_t cap) {
  const std::uint64_t mcount =
      static_cast<std::uint64_t>(a.num_morphisms()) * b.num_morphisms();
  if (mcount > cap)
    fail("CapExceeded", "product would have " + std::to_string(mcount) +
                            " morphisms (cap " + std::to_string(cap) + ")");
  FinCategory p;
  p.backend_ = FinCategory::Backend::kProduct;
  p.left_ = std::make_shared<FinCategory>(a);
  p.right_ = std::make_shared<FinCategory>(b);
  p.name = "(" + a.name + "x" + b.name + ")";
  const ObjId bn = static_cast<ObjId>(b.num_objects());
  for (const auto& x : a.objects)
    for (const auto& y : b.objects) p.objects.push_back("(" + x + "," + y + ")");
  const MorId rc = static_cast<MorId>(b.num_morphisms());
  p.morphisms.reserve(mcount);
  for (const auto& f : a.morphisms)
    for (const auto& g : b.morphisms)
      p.morphisms.push_back(Morphism{"(" + f.name + "," + g.name + ")",
                                     static_cast<ObjId>(f.dom * bn + g.dom),
                                     static_cast<ObjId>(f.cod * bn + g.cod)});
  p.identities.resize(p.objects.size());
  for (std::size_t x = 0; x < a.num_objects(); ++x)
    for (std::size_t y = 0; y < b.num_objects(); ++y)
      p.identities[x * bn + y] =
          a.identities[x] * rc + b.identities[y];
  p.build_buckets_and_names();
  return p;
}

FinCategory densify(const FinCategory& cat, std::uint64_t pair_cap) {
  std::uint64_t pairs = 0;
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g)
    pairs += cat.into(cat.dom(static_cast<MorId>(g))).size();
  if (pairs > pair_cap)
    fail("CapExceeded", "densify would materialize " + std::to_string(pairs) +
                            " composable pairs (cap " + std::to_string(pair_cap) + ")");
  CategoryBuilder b(cat.name);
  for (const auto& o : cat.objects) b.add_object(o);
  for (const auto& m : cat.morphisms) b.add_morphism(m.name, m.dom, m.cod);
  b.set_identities(cat.identities);
  b.prepare_table();
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
    MorId mg = static_cast<MorId>(g);
    for (MorId f : cat.into(cat.dom(mg))) b.slot(mg, f) = cat.compose(mg, f);
  }
  return b.finish();
}

// ---- mono preorder / subobject-closedness ---------------------------------

std::vector<Bitset> mono_preorder(const FinCategory& cat) {
  const ClassTable& cls = cat.classes();
  const std::size_t n = cat.num_objects();
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (MorId f : cat.hom(static_cast<ObjId>(c), static_cast<ObjId>(d)))
        if (cls.mono[f]) {
          rows[c].set(d);
          break;
        }
  return rows;
}

ClosedVerdict is_subobject_closed(const FinCategory& cat, const FullSubcategory& s) {
  const ClassTable& cls = cat.classes();
  for (std::size_t d = s.objects.find_first(); d != Bitset::npos; d = s.objects.find_next(d))
    for (MorId f : cat.into(static_cast<ObjId>(d)))
      if (cls.mono[f] && !s.objects.test(cat.dom(f)))
        return ClosedVerdict{false, f};
  return ClosedVerdict{true, std::nullopt};
}

}  // namespace aufheben
