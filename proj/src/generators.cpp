#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "aufheben/fincat.hpp"
#include "category_builder.hpp"

namespace aufheben {

namespace {

// A finite poset carrier for the "structured sets + monotone maps" examples.
// Element order must be a linear extension (every predecessor comes first);
// all generators below satisfy that by construction.
struct Carrier {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Bitset> up;  // up[i] = { j : i <= j }, includes i
};

std::uint64_t pack_tuple(const std::vector<std::uint8_t>& t) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < t.size(); ++i) k |= static_cast<std::uint64_t>(t[i]) << (8 * i);
  return k;
}

std::string tuple_name(const Carrier& dom, const Carrier& cod,
                       const std::vector<std::uint8_t>& t) {
  bool wide = false;
  for (const auto& l : cod.labels) wide |= l.size() > 1;
  std::string s = dom.name + "->" + cod.name + ":";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (wide && i) s += '.';
    s += cod.labels[t[i]];
  }
  return s;
}

// Builds the category of all monotone maps between the given carriers, with
// morphisms enumerated dom-major, cod-minor, then in lexicographic order of
// the image tuples. Composition is computed on function data once, at build
// time, into a dense table.
FinCategory make_monotone_category(std::string name, const std::vector<Carrier>& cs,
                                   std::size_t cap) {
  for (const auto& c : cs)
    if (c.labels.size() > 8)
      fail("InvalidParams", "carrier '" + c.name + "' has more than 8 elements");
  CategoryBuilder b(std::move(name));
  for (const auto& c : cs) b.add_object(c.name);
  const std::size_t n = cs.size();
  std::vector<std::vector<std::uint8_t>> data;
  std::vector<std::unordered_map<std::uint64_t, MorId>> lookup(n * n);
  std::vector<MorId> ids(n, -1);

  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t c = 0; c < n; ++c) {
      const Carrier& D = cs[d];
      const Carrier& C = cs[c];
      std::vector<std::uint8_t> t(D.labels.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == t.size()) {
          if (data.size() >= cap)
            fail("CapExceeded", "generator exceeds the morphism cap of " + std::to_string(cap));
          MorId id = b.add_morphism(tuple_name(D, C, t), static_cast<ObjId>(d),
                                    static_cast<ObjId>(c));
          data.push_back(t);
          lookup[d * n + c].emplace(pack_tuple(t), id);
          if (d == c) {
            bool ident = true;
            for (std::size_t k = 0; k < t.size(); ++k) ident &= t[k] == k;
            if (ident) ids[d] = id;
          }
          return;
        }
        for (std::uint8_t v = 0; v < C.labels.size(); ++v) {
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j)
            if (D.up[j].test(i)) ok = C.up[t[j]].test(v);
          if (ok) {
            t[i] = v;
            rec(i + 1);
          }
        }
      };
      rec(0);
    }
  }
  b.set_identities(std::move(ids));
  b.prepare_table();
  const FinCategory& cat = b.peek();
  std::vector<std::uint8_t> gf;
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
    const MorId mg = static_cast<MorId>(g);
    const auto& gd = data[g];
    for (MorId f : cat.into(cat.dom(mg))) {
      const auto& fd = data[f];
      gf.resize(fd.size());
      for (std::size_t i = 0; i < fd.size(); ++i) gf[i] = gd[fd[i]];
      b.slot(mg, f) = lookup[static_cast<std::size_t>(cat.dom(f)) * n + cat.cod(mg)]
                          .at(pack_tuple(gf));
    }
  }
  return b.finish();
}

Carrier chain_carrier(const std::string& name, int size, int first_label) {
  Carrier c;
  c.name = name;
  for (int i = 0; i < size; ++i) c.labels.push_back(std::to_string(first_label + i));
  c.up.assign(size, Bitset(size));
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) c.up[i].set(j);
  return c;
}

Carrier discrete_carrier(const std::string& name, int size) {
  Carrier c;
  c.name = name;
  for (int i = 0; i < size; ++i) c.labels.push_back(std::to_string(1 + i));
  c.up.assign(size, Bitset(size));
  for (int i = 0; i < size; ++i) c.up[i].set(i);
  return c;
}

// Canonical rooted trees with exactly `s` nodes, as parenthesized encodings
// ("()" = single node; children concatenated in non-decreasing string order).
const std::vector<std::string>& trees_of_size(int s) {
  static std::vector<std::vector<std::string>> memo;  // memo[s]
  if (static_cast<int>(memo.size()) > s && !memo[s].empty()) return memo[s];
  if (static_cast<int>(memo.size()) <= s) memo.resize(s + 1);
  if (s == 1) {
    memo[1] = {"()"};
    return memo[1];
  }
  std::set<std::string> out;
  std::function<void(int, const std::string&, std::string)> rec =
      [&](int remaining, const std::string& min_enc, std::string acc) {
        if (remaining == 0) {
          out.insert("(" + acc + ")");
          return;
        }
        for (int sz = 1; sz <= remaining; ++sz)
          for (const std::string& t : trees_of_size(sz))
            if (t >= min_enc) rec(remaining - sz, t, acc + t);
      };
  rec(s - 1, "", "");
  memo[s].assign(out.begin(), out.end());
  return memo[s];
}

Carrier tree_carrier(const std::string& enc) {
  // Parse the parenthesization into a parent array (preorder indices).
  std::vector<int> parent;
  std::vector<int> stack;
  for (char ch : enc) {
    if (ch == '(') {
      parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(static_cast<int>(parent.size()) - 1);
    } else {
      stack.pop_back();
    }
  }
  const int n = static_cast<int>(parent.size());
  Carrier c;
  c.name = enc;
  for (int i = 0; i < n; ++i) c.labels.push_back(std::to_string(i));
  c.up.assign(n, Bitset(n));
  // x <= y iff x is an ancestor of y (root is the bottom element).
  for (int y = 0; y < n; ++y)
    for (int x = y; x != -1; x = parent[x]) c.up[x].set(y);
  return c;
}

}  // namespace

FinCategory make_delta(int n, std::size_t cap) {
  if (n < 0 || n > 7) fail("InvalidParams", "delta truncation must be in 0..7");
  std::vector<Carrier> cs;
  for (int a = 0; a <= n; ++a) cs.push_back(chain_carrier("[" + std::to_string(a) + "]", a + 1, 0));
  return make_monotone_category("delta(" + std::to_string(n) + ")", cs, cap);
}

FinCategory make_fin(int n, std::size_t cap) {
  if (n < 0 || n > 8) fail("InvalidParams", "fin truncation must be in 0..8");
  std::vector<Carrier> cs;
  for (int k = 1; k <= n; ++k) cs.push_back(discrete_carrier(std::to_string(k), k));
  return make_monotone_category("fin(" + std::to_string(n) + ")", cs, cap);
}

FinCategory make_trees(int max_nodes, std::size_t cap) {
  if (max_nodes < 1 || max_nodes > 8) fail("InvalidParams", "trees bound must be in 1..8");
  std::vector<Carrier> cs;
  for (int s = 1; s <= max_nodes; ++s)
    for (const std::string& enc : trees_of_size(s)) cs.push_back(tree_carrier(enc));
  return make_monotone_category("trees(" + std::to_string(max_nodes) + ")", cs, cap);
}

FinCategory make_poset(const std::string& name, const std::vector<std::string>& elements,
                       const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = elements.size();
  auto index_of = [&](const std::string& e) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (elements[i] == e) return i;
    fail("DanglingReference", "poset relation mentions unknown element '" + e + "'");
  };
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  for (const auto& [a, b] : leq) rows[index_of(a)].set(index_of(b));
  for (std::size_t k = 0; k < n; ++k)  // transitive closure
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i].test(k)) rows[i] |= rows[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rows[i].test(j) && rows[j].test(i))
        fail("InvalidParams", "relation is cyclic between '" + elements[i] + "' and '" +
                                  elements[j] + "'");
  CategoryBuilder b(name);
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::vector<MorId>> mor(n, std::vector<MorId>(n, -1));
  std::vector<MorId> ids(n, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (rows[x].test(y)) {
        mor[x][y] = b.add_morphism(elements[x] + "<=" + elements[y], static_cast<ObjId>(x),
                                   static_cast<ObjId>(y));
        if (x == y) ids[x] = mor[x][y];
      }
  b.set_identities(std::move(ids));
  b.prepare_table();
  const FinCategory& cat = b.peek();
  for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
    const MorId mg = static_cast<MorId>(g);
    for (MorId f : cat.into(cat.dom(mg))) b.slot(mg, f) = mor[cat.dom(f)][cat.cod(mg)];
  }
  return b.finish();
}

FinCategory make_graphic() {
  // Frozen presentation of the idempotent splitting of the four-element
  // graphic monoid: objects 1 (terminal), G (the generic object), D; the
  // composition table below was derived once from the monoid's concrete
  // action and is re-derived independently by the test suite.
  struct M {
    const char* name;
    ObjId dom, cod;
  };
  static constexpr M kMorphisms[] = {
      {"id_1", 0, 0},  {"top", 0, 1},    {"bot", 0, 1},   {"dag", 0, 2},   {"bang_G", 1, 0},
      {"id_G", 1, 1},  {"alpha", 1, 1},  {"top_G", 1, 1}, {"bot_G", 1, 1}, {"r", 1, 2},
      {"dag_G", 1, 2}, {"bang_D", 2, 0}, {"s", 2, 1},     {"top_D", 2, 1}, {"bot_D", 2, 1},
      {"id_D", 2, 2},  {"dag_D", 2, 2},
  };
  static constexpr int kTable[][3] = {
      {0, 0, 0},    {0, 4, 4},    {0, 11, 11},  {1, 0, 1},    {1, 4, 7},    {1, 11, 13},
      {2, 0, 2},    {2, 4, 8},    {2, 11, 14},  {3, 0, 3},    {3, 4, 10},   {3, 11, 16},
      {4, 1, 0},    {4, 2, 0},    {4, 5, 4},    {4, 6, 4},    {4, 7, 4},    {4, 8, 4},
      {4, 12, 11},  {4, 13, 11},  {4, 14, 11},  {5, 1, 1},    {5, 2, 2},    {5, 5, 5},
      {5, 6, 6},    {5, 7, 7},    {5, 8, 8},    {5, 12, 12},  {5, 13, 13},  {5, 14, 14},
      {6, 1, 2},    {6, 2, 2},    {6, 5, 6},    {6, 6, 6},    {6, 7, 8},    {6, 8, 8},
      {6, 12, 12},  {6, 13, 14},  {6, 14, 14},  {7, 1, 1},    {7, 2, 1},    {7, 5, 7},
      {7, 6, 7},    {7, 7, 7},    {7, 8, 7},    {7, 12, 13},  {7, 13, 13},  {7, 14, 13},
      {8, 1, 2},    {8, 2, 2},    {8, 5, 8},    {8, 6, 8},    {8, 7, 8},    {8, 8, 8},
      {8, 12, 14},  {8, 13, 14},  {8, 14, 14},  {9, 1, 3},    {9, 2, 3},    {9, 5, 9},
      {9, 6, 9},    {9, 7, 10},   {9, 8, 10},   {9, 12, 15},  {9, 13, 16},  {9, 14, 16},
      {10, 1, 3},   {10, 2, 3},   {10, 5, 10},  {10, 6, 10},  {10, 7, 10},  {10, 8, 10},
      {10, 12, 16}, {10, 13, 16}, {10, 14, 16}, {11, 3, 0},   {11, 9, 4},   {11, 10, 4},
      {11, 15, 11}, {11, 16, 11}, {12, 3, 2},   {12, 9, 6},   {12, 10, 8},  {12, 15, 12},
      {12, 16, 14}, {13, 3, 1},   {13, 9, 7},   {13, 10, 7},  {13, 15, 13}, {13, 16, 13},
      {14, 3, 2},   {14, 9, 8},   {14, 10, 8},  {14, 15, 14}, {14, 16, 14}, {15, 3, 3},
      {15, 9, 9},   {15, 10, 10}, {15, 15, 15}, {15, 16, 16}, {16, 3, 3},   {16, 9, 10},
      {16, 10, 10}, {16, 15, 16}, {16, 16, 16},
  };
  CategoryBuilder b("graphic");
  b.add_object("1");
  b.add_object("G");
  b.add_object("D");
  for (const M& m : kMorphisms) b.add_morphism(m.name, m.dom, m.cod);
  b.set_identities({0, 5, 15});
  b.prepare_table();
  for (const auto& e : kTable) b.slot(e[0], e[1]) = e[2];
  FinCategory cat = b.finish();
  validate_category(cat);
  return cat;
}

FinCategory generate_example(const std::string& kind, const std::vector<std::string>& params,
                             std::size_t cap) {
  auto int_param = [&](std::size_t i) -> int {
    if (i >= params.size()) fail("InvalidParams", kind + " needs a numeric parameter");
    try {
      return std::stoi(params[i]);
    } catch (const std::exception&) {
      fail("InvalidParams", "'" + params[i] + "' is not a number");
    }
  };
  if (kind == "delta") return make_delta(int_param(0), cap);
  if (kind == "fin") return make_fin(int_param(0), cap);
  if (kind == "trees") return make_trees(int_param(0), cap);
  if (kind == "graphic") {
    if (!params.empty()) fail("InvalidParams", "graphic takes no parameters");
    return make_graphic();
  }
  if (kind == "poset") {
    // Tokens: "a<b" relation pairs and bare element names, comma-separated in
    // one argument or given as separate arguments.
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> leq;
    auto note_element = [&](const std::string& e) {
      if (e.empty()) fail("InvalidParams", "empty poset element name");
      if (std::find(elements.begin(), elements.end(), e) == elements.end())
        elements.push_back(e);
    };
    auto handle_token = [&](const std::string& tok) {
      auto lt = tok.find('<');
      if (lt == std::string::npos) {
        note_element(tok);
      } else {
        std::string a = tok.substr(0, lt), b = tok.substr(lt + 1);
        note_element(a);
        note_element(b);
        leq.emplace_back(a, b);
      }
    };
    for (const auto& p : params) {
      std::string cur;
      for (char ch : p) {
        if (ch == ',') {
          if (!cur.empty()) handle_token(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      if (!cur.empty()) handle_token(cur);
    }
    if (elements.empty()) fail("InvalidParams", "poset needs at least one element");
    return make_poset("poset", elements, leq);
  }
  fail("InvalidParams", "unknown example kind '" + kind + "'");
}

}  // namespace aufheben
