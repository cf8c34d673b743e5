#include <cstdint>
#include <mutex>

#include "aufheben/fincat.hpp"

namespace aufheben {

namespace {

std::mutex cache_mu;

// Generic cancellation-based classification over the dense table.
// Monos: f is mono iff u -> f∘u is injective on every bucket Hom(X, dom f);
// injectivity is detected with an epoch-stamp array, so each bucket costs one
// pass of composes. Split flags come from a single scan of Hom(cod f, dom f);
// a morphism with both a section and a retraction is an iso and the two
// witnesses provably coincide.
ClassTable compute_generic(const FinCategory& cat) {
  const std::size_t M = cat.num_morphisms();
  const std::size_t N = cat.num_objects();
  ClassTable t;
  t.mono.assign(M, 0);
  t.epi.assign(M, 0);
  t.split_mono.assign(M, 0);
  t.split_epi.assign(M, 0);
  t.iso.assign(M, 0);
  t.section.assign(M, -1);
  t.retraction.assign(M, -1);

  for (std::size_t fi = 0; fi < M; ++fi) {
    const MorId f = static_cast<MorId>(fi);
    const ObjId a = cat.dom(f), c = cat.cod(f);
    const MorId ida = cat.identity(a), idc = cat.identity(c);
    for (MorId g : cat.hom(c, a)) {
      if (t.section[f] < 0 && cat.compose(f, g) == idc) {
        t.section[f] = g;
        t.split_epi[f] = 1;
      }
      if (t.retraction[f] < 0 && cat.compose(g, f) == ida) {
        t.retraction[f] = g;
        t.split_mono[f] = 1;
      }
      if (t.section[f] >= 0 && t.retraction[f] >= 0) break;
    }
    t.iso[f] = t.split_mono[f] && t.split_epi[f];
  }

  std::vector<std::uint32_t> stamp(M, 0);
  std::uint32_t epoch = 0;

  for (std::size_t fi = 0; fi < M; ++fi) {
    const MorId f = static_cast<MorId>(fi);
    const ObjId a = cat.dom(f), c = cat.cod(f);
    bool mono = true;
    for (std::size_t x = 0; x < N && mono; ++x) {
      const auto& bucket = cat.hom(static_cast<ObjId>(x), a);
      if (bucket.size() < 2) continue;
      ++epoch;
      for (MorId u : bucket) {
        MorId fu = cat.compose(f, u);
        if (stamp[fu] == epoch) {
          mono = false;
          break;
        }
        stamp[fu] = epoch;
      }
    }
    t.mono[f] = mono;
    bool epi = true;
    for (std::size_t y = 0; y < N && epi; ++y) {
      const auto& bucket = cat.hom(c, static_cast<ObjId>(y));
      if (bucket.size() < 2) continue;
      ++epoch;
      for (MorId v : bucket) {
        MorId vf = cat.compose(v, f);
        if (stamp[vf] == epoch) {
          epi = false;
          break;
        }
        stamp[vf] = epoch;
      }
    }
    t.epi[f] = epi;
  }
  return t;
}

// Product backend: all flags and witnesses are componentwise. The pair of the
// lowest-index factor witnesses is the lowest-index pair witness because pair
// indices are lexicographic in (left, right).
ClassTable compute_product(const FinCategory& cat) {
  const ClassTable& L = cat.left_factor().classes();
  const ClassTable& R = cat.right_factor().classes();
  const std::size_t lm = cat.left_factor().num_morphisms();
  const std::size_t rm = cat.right_factor().num_morphisms();
  const MorId rc = static_cast<MorId>(rm);
  const std::size_t M = cat.num_morphisms();
  ClassTable t;
  t.mono.assign(M, 0);
  t.epi.assign(M, 0);
  t.split_mono.assign(M, 0);
  t.split_epi.assign(M, 0);
  t.iso.assign(M, 0);
  t.section.assign(M, -1);
  t.retraction.assign(M, -1);
  for (std::size_t l = 0; l < lm; ++l) {
    for (std::size_t r = 0; r < rm; ++r) {
      const std::size_t i = l * rm + r;
      t.mono[i] = L.mono[l] && R.mono[r];
      t.epi[i] = L.epi[l] && R.epi[r];
      t.split_mono[i] = L.split_mono[l] && R.split_mono[r];
      t.split_epi[i] = L.split_epi[l] && R.split_epi[r];
      t.iso[i] = L.iso[l] && R.iso[r];
      if (t.split_epi[i]) t.section[i] = L.section[l] * rc + R.section[r];
      if (t.split_mono[i]) t.retraction[i] = L.retraction[l] * rc + R.retraction[r];
    }
  }
  return t;
}

bool factor_exists(const FinCategory& cat, const ClassTable& cls, MorId f) {
  for (MorId e : cat.out_of(cat.dom(f))) {
    if (!cls.split_epi[e]) continue;
    MorId m = cat.compose(f, cls.section[e]);
    if (cls.mono[m] && cat.compose(m, e) == f) return true;
  }
  return false;
}

FactorizationVerdict compute_factorization(const FinCategory& cat) {
  if (cat.is_product()) {
    // A pair factors iff both components do (split epis project to split
    // epis and sections pair up; monos are componentwise here).
    if (cat.num_morphisms() == 0) return {true, std::nullopt};
    const FactorizationVerdict& l = cat.left_factor().factorization();
    const FactorizationVerdict& r = cat.right_factor().factorization();
    if (l.holds && r.holds) return {true, std::nullopt};
    const MorId rc = static_cast<MorId>(cat.right_factor().num_morphisms());
    MorId best = -1;
    if (r.counterexample) best = *r.counterexample;  // pair (0, r0)
    if (l.counterexample) {
      MorId c = *l.counterexample * rc;  // pair (l0, 0)
      if (best < 0 || c < best) best = c;
    }
    return {false, best};
  }
  const ClassTable& cls = cat.classes();
  for (std::size_t f = 0; f < cat.num_morphisms(); ++f)
    if (!factor_exists(cat, cls, static_cast<MorId>(f)))
      return {false, static_cast<MorId>(f)};
  return {true, std::nullopt};
}

}  // namespace

const ClassTable& FinCategory::classes() const {
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    if (class_cache_) return *class_cache_;
  }
  auto fresh = std::make_shared<const ClassTable>(is_product() ? compute_product(*this)
                                                               : compute_generic(*this));
  std::lock_guard<std::mutex> lk(cache_mu);
  if (!class_cache_) class_cache_ = std::move(fresh);
  return *class_cache_;
}

const FactorizationVerdict& FinCategory::factorization() const {
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    if (factor_cache_) return *factor_cache_;
  }
  auto fresh = std::make_shared<const FactorizationVerdict>(compute_factorization(*this));
  std::lock_guard<std::mutex> lk(cache_mu);
  if (!factor_cache_) factor_cache_ = std::move(fresh);
  return *factor_cache_;
}

MorphismClass classify_morphism(const FinCategory& cat, MorId f) {
  if (f < 0 || static_cast<std::size_t>(f) >= cat.num_morphisms())
    fail("DanglingReference", "morphism index " + std::to_string(f) + " out of range");
  return cat.classes().row(f);
}

std::optional<std::pair<MorId, MorId>> split_epi_mono_factor(const FinCategory& cat, MorId f) {
  if (f < 0 || static_cast<std::size_t>(f) >= cat.num_morphisms())
    fail("DanglingReference", "morphism index " + std::to_string(f) + " out of range");
  const ClassTable& cls = cat.classes();
  // Scanning split epis out of dom(f) in index order gives the
  // lexicographically least (e, m): for a fixed split epi e the mono part is
  // forced (m = f∘t for every section t of e), so the first workable e wins.
  for (MorId e : cat.out_of(cat.dom(f))) {
    if (!cls.split_epi[e]) continue;
    MorId m = cat.compose(f, cls.section[e]);
    if (cls.mono[m] && cat.compose(m, e) == f) return std::make_pair(e, m);
  }
  return std::nullopt;
}

FactorizationVerdict has_factorization_property(const FinCategory& cat) {
  return cat.factorization();
}

}  // namespace aufheben
